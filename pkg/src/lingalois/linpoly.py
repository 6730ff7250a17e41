"""q-linearized polynomials L(X) = sum a_i X^(q^i) and their root structure.

Construction normalizes to the monic form with zero constant-exponent
term (a_n = 1, a_0 = 0); the discarded a_0 amounts to translating the
parameter of the pencil L(X)/X - t.  The central operation splits the
reduced quotient L(X)/X into the factor X^(q^m - 1) times the q^m-th
power of a separable polynomial h, and verifies that structure exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from . import ff
from .errors import BadInput, CheckFailed, LeadingZero, NoInteriorTerm
from .poly import Poly, derivative, embed_poly, is_squarefree


class LinearizedPoly:
    """Coefficient sequence of a normalized q-linearized polynomial."""

    __slots__ = ("spec", "n", "coeffs", "orig_a0", "orig_lead")

    def __init__(self, spec: ff.FieldSpec, coeffs: dict):
        coeffs = {int(i): (c.val if isinstance(c, ff.FieldElement) else int(c))
                  for i, c in coeffs.items()}
        coeffs = {i: c for i, c in coeffs.items() if c}
        if not coeffs:
            raise LeadingZero("a linearized polynomial needs a nonzero leading term")
        n = max(coeffs)
        if n < 1:
            raise BadInput("q-degree must be >= 1")
        lead = coeffs[n]
        inv = spec.inv_raw(lead)
        vals = [0] * (n + 1)
        for i, c in coeffs.items():
            if i < 0:
                raise BadInput("negative q-exponent")
            vals[i] = spec.mul_raw(c, inv)
        self.spec = spec
        self.n = n
        self.orig_a0 = vals[0]
        self.orig_lead = lead
        vals[0] = 0  # normalization: shift the pencil parameter
        self.coeffs = tuple(vals)

    @property
    def mlow(self):
        """Least interior index with nonzero coefficient, or None."""
        for i in range(1, self.n):
            if self.coeffs[i]:
                return i
        return None

    def is_pure_power(self) -> bool:
        """True for the excluded shape L(X) = X^(q^n)."""
        return self.mlow is None

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i <= self.n else 0

    def __eq__(self, other):
        if isinstance(other, LinearizedPoly):
            return self.spec == other.spec and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.spec._key, self.coeffs))

    def __str__(self):
        q = self.spec.q
        terms = []
        for i in range(self.n, 0, -1):
            c = self.coeffs[i]
            if not c:
                continue
            cs = str(ff.FieldElement(self.spec, c))
            t = f"X^{q ** i}"
            terms.append(t if cs == "1" else f"{cs}*{t}")
        return " + ".join(terms)

    def __repr__(self):
        return f"LinearizedPoly(q={self.spec.q}, {self})"

    def key(self) -> str:
        """Compact exponent:coefficient form, e.g. '1:1;3:1'."""
        return ";".join(f"{i}:{self.coeffs[i]}" for i in range(1, self.n + 1) if self.coeffs[i])


def make_linearized(spec: ff.FieldSpec, coeffs: dict) -> LinearizedPoly:
    """Normalized linearized polynomial from an {i: a_i} map."""
    return LinearizedPoly(spec, coeffs)


def conventional_form(L: LinearizedPoly) -> Poly:
    """L expanded as an ordinary polynomial of degree q^n."""
    q = L.spec.q
    return Poly.from_terms(L.spec, {q ** i: c for i, c in enumerate(L.coeffs) if c})


def reduced_quotient(L: LinearizedPoly) -> Poly:
    """L(X)/X = sum a_i X^(q^i - 1), of degree q^n - 1."""
    q = L.spec.q
    return Poly.from_terms(L.spec, {q ** i - 1: c for i, c in enumerate(L.coeffs) if c})


def evaluate(L: LinearizedPoly, x: ff.FieldElement) -> ff.FieldElement:
    """L(x) in an extension, via Frobenius powers of x."""
    dst = x.spec
    emb = ff.embedding(L.spec, dst)
    acc = 0
    for i, c in enumerate(L.coeffs):
        if c:
            acc = dst.add_raw(acc, dst.mul_raw(emb(c), dst.frob_raw(x.val, L.spec.k * i)))
    return ff.FieldElement(dst, acc)


@dataclass(frozen=True)
class MultiplicityDecomposition:
    """L(X)/X = X^(q^m - 1) * h(X)^(q^m) with h separable, h(0) != 0."""

    m: int
    h: Poly
    zero_root_multiplicity: int  # q^m - 1
    h_root_multiplicity: int     # q^m

    def to_jsonable(self) -> dict:
        return {
            "m": self.m,
            "h": list(self.h.coeffs),
            "h_str": str(self.h),
            "zero_root_multiplicity": self.zero_root_multiplicity,
            "h_root_multiplicity": self.h_root_multiplicity,
        }


def multiplicity_decomposition(L: LinearizedPoly) -> MultiplicityDecomposition:
    """Extract m and h, verifying the defining identities exactly.

    Checks, all exact: (1) X^(q^m - 1) * h^(q^m) reproduces L(X)/X;
    (2) a_m - X*h'(X) = h(X); (3) h is squarefree with h(0) = a_m != 0.
    """
    m = L.mlow
    if m is None:
        raise NoInteriorTerm("no interior term: the excluded pure Frobenius power")
    spec = L.spec
    q = spec.q
    h = Poly.from_terms(spec, {q ** (i - m) - 1: L.coeffs[i]
                               for i in range(m, L.n + 1) if L.coeffs[i]})

    recon = (h ** (q ** m)).shift(q ** m - 1)
    if recon != reduced_quotient(L):
        raise CheckFailed("reconstruction X^(q^m-1) * h^(q^m) does not match L(X)/X")

    a_m = Poly(spec, (L.coeffs[m],))
    if a_m - Poly.x(spec) * derivative(h) != h:
        raise CheckFailed("identity a_m - X*h'(X) = h(X) failed")

    if h.coeff(0) != L.coeffs[m] or h.coeff(0) == 0:
        raise CheckFailed("h(0) must equal the nonzero coefficient a_m")
    if not is_squarefree(h):
        raise CheckFailed("h must be squarefree")

    return MultiplicityDecomposition(m, h, q ** m - 1, q ** m)


def specialize(L: LinearizedPoly, c: ff.FieldElement) -> Poly:
    """L(X)/X - c with coefficients embedded into the field of c."""
    dst = c.spec
    out = embed_poly(reduced_quotient(L), dst)
    return out - Poly(dst, (c,))


def enumerate_normalized(spec: ff.FieldSpec, n: int, include_pure_power: bool = False):
    """All monic normalized linearized polynomials of q-degree n.

    Interior coefficient vectors (a_1, ..., a_{n-1}) run over GF(q)^(n-1);
    the all-zero vector (the excluded case) is skipped unless requested.
    """
    if n < 1:
        raise BadInput("q-degree must be >= 1")
    for interior in product(range(spec.q), repeat=n - 1):
        if not include_pure_power and not any(interior):
            continue
        coeffs = {n: 1}
        for i, c in enumerate(interior, start=1):
            if c:
                coeffs[i] = c
        yield LinearizedPoly(spec, coeffs)


def identity_sweep(q_values=(2, 3, 4, 5), n_max: int = 5, seed: int = 0) -> dict:
    """Exhaustively run multiplicity_decomposition over small (q, n).

    Every monic normalized L with an interior term is decomposed; the
    three built-in exactness checks raise on any failure.  Returns counts.
    """
    from .ff import make_extension, make_prime_field, prime_factors

    checked = 0
    per_field = {}
    for q in q_values:
        fac = prime_factors(q)
        if len(fac) != 1:
            raise BadInput(f"{q} is not a prime power")
        p = fac[0]
        k = 0
        t = q
        while t > 1:
            t //= p
            k += 1
        spec = make_prime_field(p) if k == 1 else make_extension(make_prime_field(p), k)
        count = 0
        for n in range(2, n_max + 1):
            for L in enumerate_normalized(spec, n):
                multiplicity_decomposition(L)
                count += 1
        per_field[q] = count
        checked += count
    return {"checked": checked, "per_q": per_field}
