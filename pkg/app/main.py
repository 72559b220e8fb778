"""
unitgroup-lab - FastAPI application serving verification certificates
"""
from contextlib import asynccontextmanager
import logging
import time

from fastapi import FastAPI, Request
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from app.api.models import ErrorResponse
from app.api.routes import router
from app.services.registry_service import registry_service
from app.utils.config import settings

logging.basicConfig(
    level=logging.DEBUG if settings.DEBUG else logging.INFO,
    format='%(asctime)s - %(name)s - %(levelname)s - %(message)s'
)

logger = logging.getLogger(__name__)


@asynccontextmanager
async def lifespan(app: FastAPI):
    logger.info(f"Starting {settings.APP_NAME} v{settings.APP_VERSION} (data: {settings.DATA_PATH})")
    try:
        claims = registry_service.list_claims()
        logger.info(f"Claims registry loaded ({len(claims)} claims)")
    except Exception as e:
        logger.error(f"Claims registry failed to load: {str(e)}", exc_info=True)
    yield
    logger.info("Application shutting down")


app = FastAPI(
    title=settings.APP_NAME,
    version=settings.APP_VERSION,
    description="Certificates for rings whose unit group is a symmetric or alternating group",
    lifespan=lifespan,
)

app.add_middleware(
    CORSMiddleware,
    allow_origins=settings.ALLOWED_ORIGINS,
    allow_credentials=True,
    allow_methods=["GET"],
    allow_headers=["*"],
)


@app.middleware("http")
async def time_requests(request: Request, call_next):
    """Log method, path, status and wall time of every request"""
    start = time.time()
    try:
        response = await call_next(request)
    except Exception as e:
        logger.error(f"{request.method} {request.url.path} failed: {str(e)}", exc_info=True)
        body = ErrorResponse(detail="Internal Server Error", error_type=type(e).__name__)
        return JSONResponse(status_code=500, content=body.model_dump())
    logger.info(
        f"{request.method} {request.url.path} -> {response.status_code} "
        f"in {(time.time() - start) * 1000:.1f}ms"
    )
    return response


app.include_router(router)


if __name__ == "__main__":
    import uvicorn
    uvicorn.run("app.main:app", host="0.0.0.0", port=8000, reload=settings.DEBUG)
