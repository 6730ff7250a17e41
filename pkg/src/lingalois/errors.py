"""Exception types shared across the toolkit.

Every failure mode that callers are expected to handle gets its own class
so tests can catch precisely what they mean to catch.  ``CheckFailed`` is
reserved for internal consistency checks that should be unreachable; if it
ever fires there is a bug, not a bad input.
"""


class AlgebraError(Exception):
    """Base class for all toolkit errors."""


# --- field construction and arithmetic ---

class NotPrime(AlgebraError):
    pass


class NotIrreducible(AlgebraError):
    pass


class DivisionByZero(AlgebraError, ZeroDivisionError):
    pass


class ZeroElement(AlgebraError):
    pass


class TooLarge(AlgebraError):
    pass


class FieldMismatch(AlgebraError):
    pass


class EmbeddingUnavailable(AlgebraError):
    pass


class BadInput(AlgebraError):
    pass


# --- polynomial algebra ---

class BothZero(AlgebraError):
    pass


class ZeroPolynomial(AlgebraError):
    pass


class NotSquarefree(AlgebraError):
    pass


# --- linearized polynomials ---

class LeadingZero(AlgebraError):
    pass


class NoInteriorTerm(AlgebraError):
    pass


# --- series, Hensel lifting, Newton polygons ---

class NotCoprime(AlgebraError):
    pass


class NotARoot(AlgebraError):
    pass


class NotAUnit(AlgebraError):
    pass


class NotCoprimeModZ(AlgebraError):
    pass


class PrecisionTooLow(AlgebraError):
    pass


# --- groups and classification ---

class NotADivisor(AlgebraError):
    pass


class BadArity(AlgebraError):
    pass


class GuardExceeded(AlgebraError):
    pass


class NoUsableSamples(AlgebraError):
    pass


class Inseparable(AlgebraError):
    pass


class NoCoprimePair(AlgebraError):
    pass


class CheckFailed(AlgebraError):
    """An internal invariant that is mathematically guaranteed was violated."""
