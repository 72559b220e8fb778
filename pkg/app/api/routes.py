"""
API routes for unitgroup-lab
"""
from fastapi import APIRouter, HTTPException, Query
from typing import List, Optional
from app.api.models import ClaimResponse, ErrorResponse, HealthResponse, VerificationResponse
from app.services.registry_service import registry_service
from app.services.verification_service import CLAIMS, verification_service
from app.utils.config import settings
import logging
import time

logger = logging.getLogger(__name__)

router = APIRouter(prefix=settings.API_PREFIX)

@router.get("/health", response_model=HealthResponse)
async def health_check():
    """Health check endpoint"""
    return HealthResponse(
        status="healthy",
        version=settings.APP_VERSION
    )

@router.get("/claims", response_model=List[ClaimResponse])
async def list_claims():
    """
    List the registered claims

    Returns:
        One entry per row of data/claims.csv
    """
    try:
        return [ClaimResponse(**row) for row in registry_service.list_claims()]
    except Exception as e:
        logger.error(f"Error loading claims: {str(e)}", exc_info=True)
        raise HTTPException(
            status_code=500,
            detail=f"An error occurred while loading claims: {str(e)}"
        )

@router.get(
    "/verify/{claim}",
    response_model=VerificationResponse,
    responses={400: {"model": ErrorResponse}, 404: {"model": ErrorResponse}, 500: {"model": ErrorResponse}},
)
def verify_claim(
    claim: str,
    max_n: Optional[int] = Query(None, description="Largest n for the S_n / A_n families"),
):
    """
    Run a claim certificate

    Args:
        claim: one of c5, s3, sn, an, s4, a4, a8, all
        max_n: upper end of the S_n / A_n range (5..MAX_ENUM_DEGREE)

    Returns:
        The verification reports and overall success
    """
    if claim not in CLAIMS:
        raise HTTPException(status_code=404, detail=f"Unknown claim {claim!r}")
    try:
        start = time.time()
        logger.info(f"Verify request: {claim} (max_n={max_n})")
        reports = verification_service.run(claim, max_n=max_n)
        return VerificationResponse(
            success=all(r.passed for r in reports),
            reports=reports,
            elapsed_ms=(time.time() - start) * 1000,
        )

    except ValueError as e:
        logger.error(f"Validation error: {str(e)}")
        raise HTTPException(status_code=400, detail=str(e))

    except Exception as e:
        logger.error(f"Verification error: {str(e)}", exc_info=True)
        raise HTTPException(
            status_code=500,
            detail=f"An error occurred while verifying {claim}: {str(e)}"
        )

@router.get("/")
async def root():
    """Root endpoint"""
    return {
        "message": "unitgroup-lab API",
        "version": settings.APP_VERSION,
        "claims": list(CLAIMS),
        "docs": "/docs"
    }
