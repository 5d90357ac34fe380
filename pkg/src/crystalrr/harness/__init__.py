from .audit import AuditReport, bijection_audit
from .cases import (
    ASSERT,
    CASE_NAMES,
    EXPLORE,
    CaseError,
    IdentityCase,
    all_cases,
    case_from_json,
    get_case,
    load_case,
)
from .verify import (
    FAIL,
    PASS,
    REPORTED,
    Report,
    RunSummary,
    StructuralResult,
    run_all,
    structural_suite,
    verify,
)

__all__ = [
    "ASSERT",
    "AuditReport",
    "CASE_NAMES",
    "CaseError",
    "EXPLORE",
    "FAIL",
    "IdentityCase",
    "PASS",
    "REPORTED",
    "Report",
    "RunSummary",
    "StructuralResult",
    "all_cases",
    "bijection_audit",
    "case_from_json",
    "get_case",
    "load_case",
    "run_all",
    "structural_suite",
    "verify",
]
