"""
API request and response models
"""
from pydantic import BaseModel, Field
from typing import List, Optional, Dict, Any, Literal

Verdict = Literal["pass", "fail", "obstructed"]


class HealthResponse(BaseModel):
    """Health check response"""
    status: str
    version: str


class Anchor(BaseModel):
    """Where a verified claim comes from"""
    section: str
    quote: str


class VerificationReport(BaseModel):
    """
    Certificate for one claim

    facts holds every computed value; asserted facts are recorded as
    {"observed", "expected", "ok"}. verdict is "pass" when all of them
    hold, "obstructed" when they hold but the argument itself does not
    close (the A8 case), "fail" otherwise.
    """
    id: str
    anchor: Anchor
    inputs: Dict[str, Any] = Field(default_factory=dict)
    facts: Dict[str, Any] = Field(default_factory=dict)
    verdict: Verdict
    ms: Optional[float] = None

    @property
    def passed(self) -> bool:
        return self.verdict != "fail"

    def certified(self) -> Dict[str, Any]:
        """Everything except wall-clock time; identical across runs"""
        return self.model_dump(mode="json", exclude={"ms"})


class VerificationResponse(BaseModel):
    """Reports for one verify request"""
    success: bool
    reports: List[VerificationReport]
    elapsed_ms: float


class ClaimResponse(BaseModel):
    """Registered claim"""
    claim_id: str
    section: str
    quote: str


class ErrorResponse(BaseModel):
    """Error response"""
    detail: str
    error_type: Optional[str] = None
