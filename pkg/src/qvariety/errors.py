"""Exception hierarchy shared by every module."""
from __future__ import annotations


class QVarietyError(ValueError):
    """Base class; ``code`` is the short machine-readable tag used by the CLI."""

    code = "error"

    def __init__(self, message: str, code: str | None = None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DimensionMismatch(QVarietyError):
    code = "dimension-mismatch"


class ParseError(QVarietyError):
    code = "parse-error"


class PreconditionError(QVarietyError):
    code = "precondition"


class NotOnVariety(QVarietyError):
    code = "point-not-on-variety"


class CertificateError(QVarietyError):
    """A construction could not certify one of its own claims."""

    code = "certificate"
