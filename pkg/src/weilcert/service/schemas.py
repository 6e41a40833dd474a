"""Request/response models for the certification service."""

from __future__ import annotations

from typing import Any, Optional, Union

from pydantic import BaseModel, Field


class PellRequest(BaseModel):
    D: int = Field(..., gt=1, description="square-free discriminant")


class PellResponse(BaseModel):
    D: int
    solvable: bool
    a: Optional[int] = None
    b: Optional[int] = None
    unit: Optional[str] = None  # grammar string a+b*s


class HyperRequest(BaseModel):
    D: int = Field(..., gt=1)
    genus: int = Field(..., ge=2)
    t: Union[str, int] = "auto"
    etas: Union[str, list[str]] = "auto"
    bound: int = Field(100, ge=2, le=10000)


class PlaneRequest(BaseModel):
    D: int = Field(..., gt=1)
    d: int = Field(..., ge=4)
    t: Union[str, int] = "auto"
    etas: Union[str, list[str]] = "auto"
    bound: int = Field(100, ge=2, le=10000)


class CheckModel(BaseModel):
    name: str
    status: str
    witness: Optional[Any] = None


class AssumptionModel(BaseModel):
    name: str
    statement: str
    evidence: dict[str, Any]


class CertificateModel(BaseModel):
    schema_version: int
    family: str
    params: dict[str, Any]
    checks: list[CheckModel]
    assumptions: list[AssumptionModel]
    verdict: str


class VerifyRequest(BaseModel):
    certificate: CertificateModel


class VerifyResponse(BaseModel):
    match: bool
    diffs: list[str]
    recomputed: CertificateModel


class HealthResponse(BaseModel):
    status: str
    version: str
