"""Orders and cycle types for GL_n(q) and the semilinear groups inside it.

Cycle types are taken with respect to the natural action on the q^n - 1
nonzero vectors.  Semilinear groups are realized concretely: the field
GF(q^n) is identified with a vector space over GF(q^d) through the
canonical embedding, and every group element is a pair (matrix, Frobenius
twist).  Enumeration is exhaustive under hard guards; there is no
sampling fallback, so a returned type set is always complete.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from math import lcm

from . import ff
from .errors import BadArity, CheckFailed, GuardExceeded, NotADivisor, TooLarge
from .rng import DEFAULT_SEED

ORDER_GUARD = 10 ** 7
POINT_GUARD = 1 << 20


@dataclass(frozen=True)
class CycleType:
    """Multiset of cycle lengths as sorted (length, count) pairs."""

    pairs: tuple

    @classmethod
    def from_lengths(cls, lengths) -> "CycleType":
        counts: dict = {}
        for ln in lengths:
            counts[ln] = counts.get(ln, 0) + 1
        return cls(tuple(sorted(counts.items())))

    @property
    def total(self) -> int:
        return sum(ln * ct for ln, ct in self.pairs)

    @property
    def order(self) -> int:
        """Order of any permutation with this type (lcm of lengths)."""
        return lcm(*(ln for ln, _ in self.pairs)) if self.pairs else 1

    def lengths(self) -> list:
        out = []
        for ln, ct in self.pairs:
            out.extend([ln] * ct)
        return out

    def __str__(self):
        return " ".join(f"{ln}^{ct}" if ct > 1 else str(ln) for ln, ct in self.pairs)

    def to_jsonable(self) -> list:
        return [[ln, ct] for ln, ct in self.pairs]


def permutation_order(t: CycleType) -> int:
    return t.order


@dataclass(frozen=True)
class GroupDescriptor:
    kind: str
    order: int
    realizable_types: frozenset = None

    def to_jsonable(self) -> dict:
        out = {"kind": self.kind, "order": self.order}
        if self.realizable_types is not None:
            out["types"] = sorted(t.to_jsonable() for t in self.realizable_types)
        return out


# ---------------------------------------------------------------------------
# Orders
# ---------------------------------------------------------------------------

def order_gl(n: int, q: int) -> int:
    """prod_{i<n} (q^n - q^i), exactly."""
    if n < 1 or q < 2:
        raise BadArity("need n >= 1 and q >= 2")
    qn = q ** n
    out = 1
    for i in range(n):
        out *= qn - q ** i
    return out


def order_gammaL(n: int, q: int, d: int) -> int:
    """d * |GL_{n/d}(q^d)|; for d = n this is n * (q^n - 1)."""
    if d < 1 or n % d != 0:
        raise NotADivisor(f"{d} does not divide {n}")
    return d * order_gl(n // d, q ** d)


# ---------------------------------------------------------------------------
# Matrix enumeration over a field spec
# ---------------------------------------------------------------------------

def _matvec(M, v, spec):
    add, mul = spec.add_raw, spec.mul_raw
    out = []
    for row in M:
        acc = 0
        for c, x in zip(row, v):
            if c and x:
                acc = add(acc, mul(c, x))
        out.append(acc)
    return tuple(out)


def _vec_add(u, v, spec):
    add = spec.add_raw
    return tuple(add(a, b) for a, b in zip(u, v))


def _scale(c, v, spec):
    mul = spec.mul_raw
    return tuple(mul(c, x) for x in v)


def invertible_matrices(m: int, spec: ff.FieldSpec):
    """Yield every invertible m x m matrix over spec, by row building."""
    vecs = list(product(spec.enumerate_raw(), repeat=m))
    zero = tuple([0] * m)

    def build(rows, span):
        if len(rows) == m:
            yield tuple(rows)
            return
        for v in vecs:
            if v in span:
                continue
            new_span = set(span)
            for c in spec.enumerate_raw():
                if c:
                    cv = _scale(c, v, spec)
                    for s in span:
                        new_span.add(_vec_add(s, cv, spec))
            rows.append(v)
            yield from build(rows, new_span)
            rows.pop()

    yield from build([], {zero})


def _perm_cycle_type(image: list, points: int) -> CycleType:
    seen = [False] * points
    lengths = []
    for i in range(points):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = image[j]
            ln += 1
        lengths.append(ln)
    return CycleType.from_lengths(lengths)


def gl_cycle_type_counts(n: int, q: int) -> dict:
    """{cycle type: element count} over all of GL_n(q) on nonzero vectors."""
    order = order_gl(n, q)
    if order > ORDER_GUARD:
        raise TooLarge(f"|GL_{n}({q})| = {order} exceeds the enumeration guard")
    if q ** n > POINT_GUARD:
        raise TooLarge("point set exceeds the guard")
    spec = _field_for_power(q)
    nonzero = [v for v in product(spec.enumerate_raw(), repeat=n) if any(v)]
    index = {v: i for i, v in enumerate(nonzero)}
    counts: dict = {}
    total = 0
    for M in invertible_matrices(n, spec):
        image = [index[_matvec(M, v, spec)] for v in nonzero]
        t = _perm_cycle_type(image, len(nonzero))
        counts[t] = counts.get(t, 0) + 1
        total += 1
    if total != order:
        raise CheckFailed("matrix enumeration count disagrees with the order formula")
    return counts


def gl_cycle_types(n: int, q: int) -> frozenset:
    return frozenset(gl_cycle_type_counts(n, q))


def _field_for_power(q: int, seed: int = DEFAULT_SEED) -> ff.FieldSpec:
    fac = ff.prime_factors(q)
    if len(fac) != 1:
        raise BadArity(f"{q} is not a prime power")
    p = fac[0]
    k = 0
    t = q
    while t > 1:
        t //= p
        k += 1
    base = ff.make_prime_field(p)
    return base if k == 1 else ff.make_extension(base, k, seed=seed)


def semilinear_cycle_type_counts(q: int, n: int, d: int, seed: int = DEFAULT_SEED) -> dict:
    """{cycle type: count} over GammaL_{n/d}(q^d) acting on GF(q^n)*.

    Elements are the maps x -> M(x^(q^j)) for M in GL_{n/d}(q^d) and
    0 <= j < d, read through the identification of GF(q^n) with the
    (n/d)-dimensional space over GF(q^d) given by the canonical embedding.
    """
    if d < 1 or n % d != 0:
        raise NotADivisor(f"{d} does not divide {n}")
    order = order_gammaL(n, q, d)
    if order > ORDER_GUARD or q ** n > POINT_GUARD:
        raise TooLarge(f"|GammaL| = {order} exceeds the enumeration guard")
    base = _field_for_power(q, seed)
    e = base.k
    m = n // d
    sub = ff.extension_field(base, d, seed)       # GF(q^d)
    big = ff.extension_field(base, n, seed)       # GF(q^n)
    emb = ff.embedding(sub, big)

    # greedy basis of GF(q^n) over the embedded GF(q^d)
    basis = []
    span = {0}
    for cand in big.enumerate_raw():
        if cand in span:
            continue
        basis.append(cand)
        span = {big.add_raw(s, big.mul_raw(emb(c), cand))
                for s in span for c in sub.enumerate_raw()}
        if len(basis) == m:
            break
    if len(span) != big.q:
        raise CheckFailed("basis construction did not span the field")

    # coordinates: tuple over GF(q^d) <-> element of GF(q^n)
    elem_of: dict = {}
    for coords in product(sub.enumerate_raw(), repeat=m):
        val = 0
        for c, b in zip(coords, basis):
            if c:
                val = big.add_raw(val, big.mul_raw(emb(c), b))
        elem_of[coords] = val
    coords_of = {v: c for c, v in elem_of.items()}

    nonzero = [v for v in big.enumerate_raw() if v]
    index = {v: i for i, v in enumerate(nonzero)}
    counts: dict = {}
    total = 0
    for M in invertible_matrices(m, sub):
        for j in range(d):
            image = []
            for v in nonzero:
                w = big.frob_raw(v, e * j) if j else v
                image.append(index[elem_of[_matvec(M, coords_of[w], sub)]])
            t = _perm_cycle_type(image, len(nonzero))
            counts[t] = counts.get(t, 0) + 1
            total += 1
    if total != order:
        raise CheckFailed("semilinear enumeration count disagrees with the order formula")
    return counts


_SEMILINEAR_CACHE: dict = {}


def semilinear_cycle_types(q: int, n: int, d: int, seed: int = DEFAULT_SEED) -> frozenset:
    """The (cached) set of cycle types realized in GammaL_{n/d}(q^d)."""
    key = (q, n, d)
    out = _SEMILINEAR_CACHE.get(key)
    if out is None:
        out = frozenset(semilinear_cycle_type_counts(q, n, d, seed))
        _SEMILINEAR_CACHE[key] = out
    return out


def semilinear_descriptor(q: int, n: int, d: int, seed: int = DEFAULT_SEED) -> GroupDescriptor:
    return GroupDescriptor(
        kind=f"GammaL({n // d}, {q}^{d})",
        order=order_gammaL(n, q, d),
        realizable_types=semilinear_cycle_types(q, n, d, seed),
    )


# ---------------------------------------------------------------------------
# The divisibility deduction for odd prime n
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DeductionRow:
    m: int
    divisor: int                 # q^m (q^m - 1) (q^n - 1)
    admissible: bool             # divisor | n (q^n - 1)
    qm_divides_n: bool
    cofactor_divisible: bool     # (q^m - 1) | n / q^m, when q^m | n

    def to_jsonable(self) -> dict:
        return {
            "m": self.m, "divisor": self.divisor, "admissible": self.admissible,
            "qm_divides_n": self.qm_divides_n,
            "cofactor_divisible": self.cofactor_divisible,
        }


@dataclass(frozen=True)
class DivisibilityReport:
    q: int
    n: int
    target: int  # n (q^n - 1), the semilinear order bound
    rows: tuple
    admissible_m: tuple

    @property
    def conclusion_holds(self) -> bool:
        """True when no interior m survives, forcing the full linear group."""
        return not self.admissible_m

    def to_jsonable(self) -> dict:
        return {
            "q": self.q, "n": self.n, "target": self.target,
            "rows": [r.to_jsonable() for r in self.rows],
            "admissible_m": list(self.admissible_m),
            "conclusion_holds": self.conclusion_holds,
        }


def divisibility_deduction(q: int, n: int) -> DivisibilityReport:
    """Test q^m (q^m - 1) (q^n - 1) | n (q^n - 1) for every interior m.

    For an odd prime n no m passes: a passing m would force q^m | n, hence
    m = 1 and q = n, and then (q - 1) | 1, impossible for n >= 3.  The
    report carries that chain per row.
    """
    if n < 3 or n % 2 == 0 or not ff.is_prime(n):
        raise BadArity(f"n = {n} is not an odd prime")
    fac = ff.prime_factors(q)
    if len(fac) != 1:
        raise BadArity(f"q = {q} is not a prime power")
    qn1 = q ** n - 1
    target = n * qn1
    rows = []
    admissible = []
    for m in range(1, n):
        qm = q ** m
        divisor = qm * (qm - 1) * qn1
        ok = target % divisor == 0
        qm_div = n % qm == 0
        cof = qm_div and (n // qm) % (qm - 1) == 0
        rows.append(DeductionRow(m, divisor, ok, qm_div, cof))
        if ok:
            admissible.append(m)
    return DivisibilityReport(q, n, target, tuple(rows), tuple(admissible))
