from typing import TypedDict, Optional, List, Any, Dict

STATUS_OK = "ok"
STATUS_PARSE_ERROR = "parse_error"
STATUS_DOMAIN_ERROR = "domain_error"
STATUS_VERIFICATION_FAILURE = "verification_failure"
STATUS_INTERNAL_INCONSISTENCY = "internal_inconsistency"

EXIT_CODES = {
    STATUS_OK: 0,
    STATUS_PARSE_ERROR: 1,
    STATUS_DOMAIN_ERROR: 2,
    STATUS_VERIFICATION_FAILURE: 3,
    STATUS_INTERNAL_INCONSISTENCY: 4,
}


class CommandResult(TypedDict):
    status: str
    exit_code: int

    # JSON body (--json) and human-readable lines (default)
    payload: Dict[str, Any]
    lines: List[str]

    # Error text for stderr, None on success
    message: Optional[str]


class ApplyPayload(TypedDict):
    input: str
    output: str


class OrbitPayload(TypedDict):
    iterates: List[str]
    preperiod: Optional[int]
    period: Optional[int]
    truncated: bool
    note: Optional[str]


class ClassifyPayload(TypedDict):
    kind: str
    a: Optional[str]
    c: Optional[str]
    partner: Optional[str]
    k: Optional[str]


class MakePayload(TypedDict, total=False):
    kind: str
    first: str
    second: str
    function: str


# "pass" is a keyword, hence the functional form
VerifyPayload = TypedDict("VerifyPayload", {
    "pass": bool,
    "max_rel_err": float,
    "worst_point": float,
    "points_used": int,
    "points_skipped": int,
    "tol": float,
})


class ErrorPayload(TypedDict):
    status: str
    error: str


def make_result(status: str, payload: Dict[str, Any], lines: List[str],
                message: Optional[str] = None) -> CommandResult:
    return {
        "status": status,
        "exit_code": EXIT_CODES[status],
        "payload": payload,
        "lines": lines,
        "message": message,
    }
