"""Exception hierarchy shared by every module.

Input errors derive from `BidoubleError` and map to CLI exit status 1.
`InternalInconsistency` signals a bug (a value that validation should have made
impossible) and maps to exit status 2.
"""

from __future__ import annotations

from typing import Any, Dict


class BidoubleError(Exception):
    """Base class for rejected inputs and refused computations."""

    invariant: str = "input"

    def __init__(self, message: str, invariant: str | None = None) -> None:
        super().__init__(message)
        self.message = message
        if invariant is not None:
            self.invariant = invariant

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "invariant": self.invariant,
            "message": self.message,
        }


class InvalidCoverType(BidoubleError):
    invariant = "cover_type"


class ParityViolation(InvalidCoverType):
    invariant = "branch coordinates share one parity per ruling"


class TooManyTrivialBranches(InvalidCoverType):
    invariant = "at most one trivial branch"


class BranchBelowMinimum(InvalidCoverType):
    invariant = "nontrivial branch has both coordinates >= 1"


class CoverParseError(InvalidCoverType):
    invariant = "cover type syntax ((n1,m1),(n2,m2)[,(n3,m3)])"


class IrregularityUndetermined(BidoubleError):
    invariant = "every L_i has both coordinates >= 1"


class NotGeneralType(BidoubleError):
    invariant = "n >= 5 and m >= 5"


class SignatureUndetermined(BidoubleError):
    invariant = "simply connected, p_g >= 1, exact divisibility"


class NotClassT(BidoubleError):
    invariant = "1/m(1,q) = 1/(dn^2)(1,dna-1)"


class InvalidInput(BidoubleError):
    invariant = "input"


class InternalInconsistency(Exception):
    """A value that validated input can never produce."""

    invariant: str = "internal"

    def to_dict(self) -> Dict[str, Any]:
        return {
            "error": type(self).__name__,
            "invariant": self.invariant,
            "message": str(self),
        }


class NonIntegralChi(InternalInconsistency):
    invariant = "4 | (n-4)(m-4) + sum n_j m_j"
