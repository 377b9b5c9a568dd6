"""Error types shared across the package.

Three failure categories map onto CLI exit codes:
  InputError      -> malformed or invalid input documents (exit 2)
  CapExceeded     -> a configured size cap was hit before an answer (exit 3)
  HypothesisError -> a well-formed input fails a precondition of the requested
                     construction, e.g. a non-monotone system passed to a
                     realizer (reported as a structured refusal, exit 1)

InternalCheckError signals a broken internal invariant (a bug, never a user
error) and is allowed to escape as a crash.
"""

from __future__ import annotations


class PosetSyncError(Exception):
    """Base class; carries a machine-readable code and a payload dict."""

    code = "error"

    def __init__(self, message: str, **payload):
        super().__init__(message)
        self.message = message
        self.payload = payload

    def as_doc(self) -> dict:
        doc = {"code": self.code, "message": self.message}
        if self.payload:
            doc["detail"] = self.payload
        return doc


class InputError(PosetSyncError):
    code = "input"


class CapExceeded(PosetSyncError):
    code = "cap_exceeded"


class HypothesisError(PosetSyncError):
    code = "hypothesis"


class InternalCheckError(AssertionError):
    """An internal cross-check failed; indicates a defect, not bad input."""
