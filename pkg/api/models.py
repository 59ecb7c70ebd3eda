# api/models.py
# Models for run configuration and verification reports

from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

SYSTEMS = ("h3", "h4")
KINDS = ("a4", "d6", "e8")
FORMATS = ("csv", "json", "md")


class RunConfig(BaseModel):
    """Validated selectors for one hfold invocation."""

    command: Literal["tables", "verify", "blueprint", "history"]
    target: Optional[str] = None
    system: Literal["h3", "h4"] = "h3"
    kind: Literal["a4", "d6", "e8"] = "d6"
    ring: str = "poly"
    format: Literal["csv", "json", "md"] = "csv"
    mode: Literal["verify", "emit-terms"] = "verify"
    jobs: int = Field(1, ge=1, le=256)
    out: Optional[str] = None
    seed: int = 20240601
    e8_sample: int = Field(40, ge=1)
    full: bool = False
    timing: bool = True

    @field_validator("ring")
    @classmethod
    def _check_ring(cls, value: str) -> str:
        value = value.strip().lower()
        if value in ("z", "poly"):
            return value
        if value.startswith("z") and value[1:].isdigit() and int(value[1:]) >= 2:
            return value
        raise ValueError(f"Unsupported ring selector '{value}'. Use z, zN (N >= 2) or poly")


class CheckResult(BaseModel):
    id: str
    anchor: str = Field(..., description="The statement this check certifies, in words")
    status: Literal["pass", "fail", "note"]
    witness: Optional[str] = None

    @property
    def passed(self) -> bool:
        return self.status != "fail"


class SuiteReport(BaseModel):
    suite: str
    checks: List[CheckResult] = []
    elapsed: float = 0.0

    @property
    def failed(self) -> List[CheckResult]:
        return [c for c in self.checks if c.status == "fail"]

    @property
    def ok(self) -> bool:
        return not self.failed


def check(check_id: str, anchor: str, ok: bool, witness: Optional[str] = None) -> CheckResult:
    """Shorthand used by the verification modules."""
    return CheckResult(id=check_id, anchor=anchor, status="pass" if ok else "fail",
                       witness=None if ok else witness)


def note(check_id: str, anchor: str, witness: Optional[str] = None) -> CheckResult:
    return CheckResult(id=check_id, anchor=anchor, status="note", witness=witness)
