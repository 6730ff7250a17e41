"""Frobenius cycle-type sampling and Galois group certification.

For an unramified specialization c of the pencil L(X)/X - t, the degrees
of the irreducible factors over GF(q^k) are the cycle type of the
Frobenius element at that place acting on the q^n - 1 roots.  The group
is certified to be all of GL_n(q) by exclusion: the group contains a
regular cyclic subgroup of order q^n - 1 (ramification over the infinite
place; trusted classical fact), so it is either GL_n(q) itself or sits
inside a semilinear group GammaL_{n/d}(q^d) for some divisor d > 1 of n.
One sampled type that no candidate semilinear group realizes therefore
pins the group exactly.  Certificates are finite and auditable: the
candidate type sets are enumerated exhaustively, never sampled.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import lcm

from . import ff
from .errors import (
    BadArity,
    BadInput,
    CheckFailed,
    GuardExceeded,
    Inseparable,
    NoCoprimePair,
    NoUsableSamples,
    TooLarge,
)
from .groups import (
    CycleType,
    gl_cycle_type_counts,
    order_gammaL,
    order_gl,
    semilinear_cycle_types,
)
from .linpoly import LinearizedPoly, multiplicity_decomposition, reduced_quotient, specialize
from .poly import Poly, derivative, factor, is_squarefree, squarefree_decomposition
from .rng import DEFAULT_SEED, stream

DEFAULT_BUDGET = tuple((k, 64) for k in range(1, 7))

VERDICT_CERTIFIED = "CertifiedGL"
VERDICT_UNDETERMINED = "UndeterminedWithinBudget"
VERDICT_EXCLUDED = "ExcludedCase"


@dataclass(frozen=True)
class FrobeniusSample:
    """One specialization: the point c and the observed factor-degree type."""

    L: LinearizedPoly
    k: int
    c: ff.FieldElement
    type: CycleType  # None marks a ramified specialization

    @property
    def is_ramified(self) -> bool:
        return self.type is None

    def to_jsonable(self) -> dict:
        return {
            "k": self.k,
            "c": self.c.val,
            "ramified": self.is_ramified,
            "type": None if self.type is None else self.type.to_jsonable(),
        }


def frobenius_sample(L: LinearizedPoly, k: int, count: int, rng, seed: int = DEFAULT_SEED) -> list:
    """Sample `count` random points of GF(q^k); factor where unramified.

    Duplicate draws are deduplicated before any factoring happens, so the
    returned list may be shorter than `count`.
    """
    spec = L.spec
    if spec.q ** k > ff.ENUMERATION_GUARD:
        raise TooLarge(f"q^k = {spec.q ** k} exceeds the sampling guard")
    ext = ff.extension_field(spec, k, seed=seed)
    q_n = spec.q ** L.n
    seen = set()
    points = []
    for _ in range(count):
        v = rng.randrange(ext.q)
        if v not in seen:
            seen.add(v)
            points.append(ff.FieldElement(ext, v))
    out = []
    for c in points:
        P = specialize(L, c)
        if not is_squarefree(P):
            out.append(FrobeniusSample(L, k, c, None))
            continue
        edf_rng = stream(seed, "edf", spec.q, L.coeffs, k, c.val)
        t = CycleType.from_lengths(factor(P, edf_rng).degrees())
        if t.total != q_n - 1:
            raise CheckFailed("cycle type total must be q^n - 1")
        out.append(FrobeniusSample(L, k, c, t))
    return out


def order_lower_bound(samples, q: int, n: int) -> int:
    """lcm of q^n - 1 (the regular cyclic subgroup) and sampled element orders.

    An empty list yields just the cyclic term; a nonempty list in which
    every sample is ramified raises NoUsableSamples.
    """
    samples = list(samples)
    if samples and all(s.is_ramified for s in samples):
        raise NoUsableSamples("every supplied sample is ramified")
    bound = q ** n - 1
    for s in samples:
        if not s.is_ramified:
            bound = lcm(bound, s.type.order)
    if order_gl(n, q) % bound != 0:
        raise CheckFailed("lower bound must divide |GL_n(q)|")
    return bound


@dataclass(frozen=True)
class ClassificationResult:
    verdict: str
    q: int
    n: int
    L: LinearizedPoly
    witness: FrobeniusSample          # None unless CertifiedGL
    candidates_excluded: tuple        # ((d, order, types enumerated), ...)
    order_lower_bound: int
    proposition_divisor: int          # None for the excluded case
    observed_types: tuple
    samples_used: int

    def to_jsonable(self) -> dict:
        return {
            "verdict": self.verdict,
            "q": self.q,
            "n": self.n,
            "L": self.L.key(),
            "L_str": str(self.L),
            "witness": None if self.witness is None else self.witness.to_jsonable(),
            "candidates_excluded": [
                {"d": d, "order": o, "types": t} for d, o, t in self.candidates_excluded
            ],
            "order_lower_bound": self.order_lower_bound,
            "proposition_divisor": self.proposition_divisor,
            "observed_types": sorted(t.to_jsonable() for t in self.observed_types),
            "samples_used": self.samples_used,
        }


def classify(L: LinearizedPoly, budget=None, seed: int = DEFAULT_SEED) -> ClassificationResult:
    """Certify the Galois group of L(X)/X - t by cycle-type exclusion.

    Samples Frobenius types level by level until one lies outside every
    semilinear candidate's exhaustively enumerated type set.  The pure
    Frobenius power L(X) = X^(q^n) short-circuits to the excluded verdict.
    """
    q, n = L.spec.q, L.n
    if budget is None:
        budget = DEFAULT_BUDGET
    if L.is_pure_power():
        return ClassificationResult(
            VERDICT_EXCLUDED, q, n, L, None, (), q ** n - 1, None, (), 0)

    proper = [d for d in range(2, n + 1) if n % d == 0]
    candidate_types = {}
    excluded_info = []
    for d in proper:
        try:
            candidate_types[d] = semilinear_cycle_types(q, n, d, seed)
        except TooLarge as exc:
            raise GuardExceeded(str(exc)) from exc
        excluded_info.append((d, order_gammaL(n, q, d), len(candidate_types[d])))
    union = frozenset().union(*candidate_types.values()) if candidate_types else frozenset()

    m = L.mlow
    prop_divisor = q ** m * (q ** m - 1) * (q ** n - 1)
    all_samples = []
    observed = set()
    for k, count in budget:
        rng = stream(seed, "sampling", q, n, L.coeffs, k)
        batch = frobenius_sample(L, k, count, rng, seed=seed)
        all_samples.extend(batch)
        for s in batch:
            if s.is_ramified:
                continue
            observed.add(s.type)
            if s.type not in union:
                return ClassificationResult(
                    VERDICT_CERTIFIED, q, n, L, s, tuple(excluded_info),
                    order_lower_bound(all_samples, q, n), prop_divisor,
                    tuple(sorted(observed, key=lambda t: t.pairs)), len(all_samples))
    return ClassificationResult(
        VERDICT_UNDETERMINED, q, n, L, None, tuple(excluded_info),
        order_lower_bound(all_samples, q, n) if any(not s.is_ramified for s in all_samples)
        else q ** n - 1,
        prop_divisor, tuple(sorted(observed, key=lambda t: t.pairs)), len(all_samples))


# ---------------------------------------------------------------------------
# Divisor certificates from coprime root multiplicities
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class CorollaryDivisor:
    a: int
    b: int
    degree: int
    divisor: int  # a * b * degree

    def to_jsonable(self) -> dict:
        return {"a": self.a, "b": self.b, "degree": self.degree, "divisor": self.divisor}


def corollary_divisor(f: Poly) -> CorollaryDivisor:
    """From two roots with coprime multiplicities (a, b): a * b * deg f.

    Root multiplicities are read off the squarefree decomposition and the
    factorization of each squarefree part (all roots of one irreducible
    factor share its multiplicity).  The lexicographically smallest
    coprime pair wins.  f(X) - t is separable iff f' != 0, which is
    checked; its irreducibility over the rational function field is
    automatic (degree one in t).
    """
    if f.degree < 1:
        raise BadInput("need a nonconstant polynomial")
    if derivative(f).is_zero():
        raise Inseparable("f' = 0: the pencil f(X) - t is inseparable")
    mult_counts: dict = {}
    for part, mult in squarefree_decomposition(f):
        # distinct roots in the splitting field: one per degree of each factor
        n_roots = sum(g.degree for g, _ in factor(part).factors)
        mult_counts[mult] = mult_counts.get(mult, 0) + n_roots
    mults = sorted(mult_counts)
    best = None
    from math import gcd as int_gcd
    for i, a in enumerate(mults):
        for b in mults[i:]:
            if a == b and mult_counts[a] < 2:
                continue
            if int_gcd(a, b) == 1:
                best = (a, b)
                break
        if best:
            break
    if best is None:
        raise NoCoprimePair("no two roots have coprime multiplicities")
    a, b = best
    return CorollaryDivisor(a, b, f.degree, a * b * f.degree)


@dataclass(frozen=True)
class PropositionReport:
    q: int
    n: int
    m: int
    divisor: int                    # q^m (q^m - 1) (q^n - 1), from the formula
    corollary: CorollaryDivisor     # the same number from root multiplicities
    routes_agree: bool
    gl_order: int
    divides_gl: bool
    lower_bound: int                # None when no classification was supplied
    lcm_divides_gl: bool

    @property
    def ok(self) -> bool:
        return self.routes_agree and self.divides_gl and self.lcm_divides_gl

    def to_jsonable(self) -> dict:
        return {
            "q": self.q, "n": self.n, "m": self.m, "divisor": self.divisor,
            "corollary": self.corollary.to_jsonable(),
            "routes_agree": self.routes_agree,
            "gl_order": self.gl_order, "divides_gl": self.divides_gl,
            "lower_bound": self.lower_bound, "lcm_divides_gl": self.lcm_divides_gl,
            "ok": self.ok,
        }


def proposition_check(L: LinearizedPoly, classification: ClassificationResult = None) -> PropositionReport:
    """Check the divisor q^m (q^m - 1) (q^n - 1) two ways and against |GL|.

    Route one is the closed formula from the multiplicity decomposition;
    route two recovers (a, b) = (q^m - 1, q^m) from the actual root
    multiplicities of L(X)/X via corollary_divisor.  Both must agree
    exactly and divide |GL_n(q)|; with a classification in hand, the lcm
    with the sampled order lower bound must still divide |GL_n(q)|.
    """
    dec = multiplicity_decomposition(L)
    q, n, m = L.spec.q, L.n, dec.m
    divisor = q ** m * (q ** m - 1) * (q ** n - 1)
    cd = corollary_divisor(reduced_quotient(L))
    agree = {cd.a, cd.b} == {q ** m - 1, q ** m} and cd.divisor == divisor
    glo = order_gl(n, q)
    lb = classification.order_lower_bound if classification is not None else None
    lcm_ok = True
    if lb is not None:
        lcm_ok = glo % lcm(divisor, lb) == 0
    return PropositionReport(q, n, m, divisor, cd, agree, glo, glo % divisor == 0,
                             lb, lcm_ok)


# ---------------------------------------------------------------------------
# Theorem-level verification table
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class TheoremRow:
    L_key: str
    L_str: str
    verdict: str
    witness_type: str
    witness_k: int
    samples_used: int
    order_lower_bound: int
    proposition_divisor: int
    proposition_ok: bool

    def to_jsonable(self) -> dict:
        return {
            "L": self.L_key, "L_str": self.L_str, "verdict": self.verdict,
            "witness_type": self.witness_type, "witness_k": self.witness_k,
            "samples_used": self.samples_used,
            "order_lower_bound": self.order_lower_bound,
            "proposition_divisor": self.proposition_divisor,
            "proposition_ok": self.proposition_ok,
        }


@dataclass(frozen=True)
class TheoremTable:
    q: int
    n: int
    rows: tuple
    candidate_orders: tuple  # ((d, order), ...) shared across rows

    @property
    def all_certified(self) -> bool:
        return all(r.verdict == VERDICT_CERTIFIED for r in self.rows)

    def to_jsonable(self) -> dict:
        return {
            "q": self.q, "n": self.n,
            "candidates": [{"d": d, "order": o} for d, o in self.candidate_orders],
            "rows": [r.to_jsonable() for r in self.rows],
            "all_certified": self.all_certified,
        }


def verify_theorem(q: int, n: int, budget=None, seed: int = DEFAULT_SEED) -> TheoremTable:
    """Classify every monic normalized L of q-degree n with an interior term.

    The full-group verdict is expected for each (the excluded pure power
    is not enumerated); any other outcome flips all_certified to False.
    """
    if n < 3 or n % 2 == 0 or not ff.is_prime(n):
        raise BadArity(f"n = {n} must be an odd prime here")
    from .groups import _field_for_power
    from .linpoly import enumerate_normalized

    spec = _field_for_power(q, seed)
    rows = []
    cand = None
    for L in enumerate_normalized(spec, n):
        res = classify(L, budget=budget, seed=seed)
        if cand is None:
            cand = tuple((d, o) for d, o, _ in res.candidates_excluded)
        prop = proposition_check(L, res)
        rows.append(TheoremRow(
            L.key(), str(L), res.verdict,
            str(res.witness.type) if res.witness else "",
            res.witness.k if res.witness else 0,
            res.samples_used, res.order_lower_bound,
            prop.divisor, prop.ok,
        ))
    return TheoremTable(q, n, tuple(rows), cand or ())


# ---------------------------------------------------------------------------
# Distribution diagnostics (informational only)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ChebotarevReport:
    total_samples: int
    ramified: int
    rows: tuple             # (type str, observed count, frequency, exact proportion)
    tv_distance: float
    all_types_realizable: bool
    ramified_fraction_k1: float  # exhaustive over GF(q)

    def to_jsonable(self) -> dict:
        return {
            "total_samples": self.total_samples,
            "ramified": self.ramified,
            "rows": [
                {"type": t, "count": c, "frequency": fr, "gl_proportion": pr}
                for t, c, fr, pr in self.rows
            ],
            "tv_distance": self.tv_distance,
            "all_types_realizable": self.all_types_realizable,
            "ramified_fraction_k1": self.ramified_fraction_k1,
        }


def chebotarev_report(L: LinearizedPoly, samples) -> ChebotarevReport:
    """Observed type frequencies against the exact GL_n(q) proportions."""
    q, n = L.spec.q, L.n
    samples = list(samples)
    ramified_k1 = sum(
        1 for c in ff.enumerate_field(L.spec) if not is_squarefree(specialize(L, c)))
    rf_k1 = ramified_k1 / q
    if not samples:
        return ChebotarevReport(0, 0, (), 0.0, True, rf_k1)
    counts = gl_cycle_type_counts(n, q)
    glo = order_gl(n, q)
    obs: dict = {}
    ramified = 0
    for s in samples:
        if s.is_ramified:
            ramified += 1
        else:
            obs[s.type] = obs.get(s.type, 0) + 1
    n_obs = sum(obs.values())
    rows = []
    tv = 0.0
    for t in sorted(set(obs) | set(counts), key=lambda t: t.pairs):
        c = obs.get(t, 0)
        fr = c / n_obs if n_obs else 0.0
        pr = counts.get(t, 0) / glo
        tv += abs(fr - pr)
        rows.append((str(t), c, fr, pr))
    realizable = all(t in counts for t in obs)
    return ChebotarevReport(len(samples), ramified, tuple(rows), tv / 2, realizable, rf_k1)
