"""Error types shared across the toolkit.

Every error carries a stable machine-readable ``code`` so the CLI can report
failures without parsing messages.
"""


class HKError(Exception):
    code = "HK_ERROR"

    def __init__(self, message="", **details):
        super().__init__(message)
        self.details = details

    def to_dict(self):
        out = {"code": self.code, "message": str(self)}
        if self.details:
            out["details"] = {k: _plain(v) for k, v in self.details.items()}
        return out


def _plain(v):
    if isinstance(v, (list, tuple)):
        return [_plain(x) for x in v]
    if isinstance(v, (int, str, bool)) or v is None:
        return v
    return str(v)


class DimensionMismatch(HKError):
    code = "DIMENSION_MISMATCH"


class InvalidOrder(HKError):
    code = "INVALID_ORDER"


class ParseError(HKError):
    code = "PARSE_ERROR"

    def __init__(self, message, line=1, column=1, **details):
        super().__init__(f"{message} (line {line}, column {column})", line=line, column=column, **details)
        self.line = line
        self.column = column


class FieldMismatch(HKError):
    code = "FIELD_MISMATCH"


class SingularMatrix(HKError):
    code = "SINGULAR_MATRIX"


class ZeroSeries(HKError):
    code = "ZERO_SERIES"


class NotExact(HKError):
    code = "NOT_EXACT"


class EmptyDiagram(HKError):
    code = "EMPTY_DIAGRAM"


class NotFiniteType(HKError):
    code = "NOT_FINITE_TYPE"


class InitialExponentMismatch(HKError):
    code = "INITIAL_EXPONENT_MISMATCH"


class ZeroDivisor(HKError):
    code = "ZERO_DIVISOR"


class JacobianSingular(HKError):
    code = "JACOBIAN_SINGULAR"

    def __init__(self, message, s=None, **details):
        super().__init__(message, s=s, **details)
        self.s = s


class UnitQuotientCheckFailed(HKError):
    code = "UNIT_QUOTIENT_CHECK_FAILED"


class TruncationTooSmall(HKError):
    code = "TRUNCATION_TOO_SMALL"


class RetryExhausted(HKError):
    code = "RETRY_EXHAUSTED"


class VerificationFailed(HKError):
    code = "VERIFICATION_FAILED"


class DegenerateAfterRetries(HKError):
    code = "DEGENERATE_AFTER_RETRIES"


class GuardExceeded(HKError):
    code = "GUARD_EXCEEDED"


class InadmissibleCenter(HKError):
    code = "INADMISSIBLE_CENTER"


class NoTangentDirection(HKError):
    code = "NO_TANGENT_DIRECTION"


class EmptyCosupport(HKError):
    code = "EMPTY_COSUPPORT"


class LimitExceeded(HKError):
    code = "LIMIT_EXCEEDED"

    def __init__(self, message, trace=None, **details):
        super().__init__(message, **details)
        self.trace = trace


class UnsupportedCenter(HKError):
    code = "UNSUPPORTED_CENTER"


class InvalidCenter(HKError):
    code = "INVALID_CENTER"


class DriverInvariantViolated(HKError):
    code = "DRIVER_INVARIANT_VIOLATED"
