"""Exception hierarchy.

Every error carries a short machine code (``NOT_SUBLATTICE`` etc.) and the
name of the module that raised it, so the CLI can map failures to exit codes.
"""

from __future__ import annotations


class FermatError(Exception):
    code = "ERROR"
    module = "core"

    def __init__(self, message: str = "", **context):
        self.context = context
        super().__init__(f"[{self.module}:{self.code}] {message}" if message else f"[{self.module}:{self.code}]")


# exact-algebra
class AlgebraError(FermatError):
    module = "algebra"


class NotSublattice(AlgebraError):
    code = "NOT_SUBLATTICE"


class AmbientMismatch(AlgebraError):
    code = "AMBIENT_MISMATCH"


class DivisionByZero(AlgebraError, ZeroDivisionError):
    code = "DIVISION_BY_ZERO"


# cm-structure
class CMError(FermatError):
    module = "cm"


class InvalidModulus(CMError, ValueError):
    code = "INVALID_MODULUS"


class Unsupported(CMError):
    code = "UNSUPPORTED"


# mt-projection
class MTError(FermatError):
    module = "mt"


class LedgerMismatch(MTError):
    code = "LEDGER_MISMATCH"


# hodge-analysis
class HodgeError(FermatError):
    module = "hodge"


class CodimOutOfRange(HodgeError, ValueError):
    code = "CODIM_OUT_OF_RANGE"


# sato-tate-moments
class MomentError(FermatError):
    module = "moments"


class NotNormalizing(MomentError):
    code = "NOT_NORMALIZING"


# frobenius-arithmetic
class FrobeniusError(FermatError):
    module = "frobenius"


class BoundExceeded(FrobeniusError):
    code = "BOUND_EXCEEDED"


class CongruenceViolation(FrobeniusError, ValueError):
    code = "CONGRUENCE_VIOLATION"


class NotSplit(FrobeniusError, ValueError):
    code = "NOT_SPLIT"


# cli-and-cache
class CacheError(FermatError):
    module = "cache"


class FormatMismatch(CacheError):
    code = "FORMAT_MISMATCH"


class ConflictingEntry(CacheError):
    code = "CONFLICTING_ENTRY"


class ConsistencyFailure(FermatError):
    """Raised by analyze when an internal cross-check or reference fixture fails."""

    code = "CONSISTENCY"

    def __init__(self, module: str, message: str):
        self.module = module
        super().__init__(message)
