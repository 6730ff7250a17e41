"""Dense univariate polynomial algebra over a FieldSpec.

Coefficients are stored little-endian as raw field values (see ff), with
no trailing zeros; the zero polynomial is the empty tuple.  Complete
factorization runs squarefree decomposition (Yun adapted to positive
characteristic, recognizing p-th powers), distinct-degree splitting, and
equal-degree splitting (Cantor-Zassenhaus in odd characteristic, trace-map
splitting in characteristic 2).
"""

from __future__ import annotations

from dataclasses import dataclass

from . import ff
from .errors import (
    BadInput,
    BothZero,
    CheckFailed,
    DivisionByZero,
    FieldMismatch,
    NotSquarefree,
    ZeroPolynomial,
)
from .rng import DEFAULT_SEED, fingerprint, stream

_EDF_TRY_FACTOR = 64  # per-call retry cap is 64 * d


class Poly:
    """Immutable dense polynomial over a fixed field."""

    __slots__ = ("spec", "coeffs")

    def __init__(self, spec: ff.FieldSpec, coeffs=()):
        vals = []
        for c in coeffs:
            if isinstance(c, ff.FieldElement):
                if c.spec != spec:
                    raise FieldMismatch("coefficient from a different field")
                vals.append(c.val)
            else:
                c = int(c)
                if not 0 <= c < spec.q:
                    raise BadInput(f"raw coefficient {c} outside the field")
                vals.append(c)
        while vals and vals[-1] == 0:
            vals.pop()
        self.spec = spec
        self.coeffs = tuple(vals)

    # -- constructors --------------------------------------------------------

    @classmethod
    def zero(cls, spec) -> "Poly":
        return cls(spec, ())

    @classmethod
    def one(cls, spec) -> "Poly":
        return cls(spec, (1,))

    @classmethod
    def x(cls, spec) -> "Poly":
        return cls(spec, (0, 1))

    @classmethod
    def from_terms(cls, spec, terms: dict) -> "Poly":
        """Build from a {exponent: coefficient} map."""
        if not terms:
            return cls.zero(spec)
        deg = max(terms)
        vals = [0] * (deg + 1)
        for e, c in terms.items():
            if e < 0:
                raise BadInput("negative exponent")
            vals[e] = c.val if isinstance(c, ff.FieldElement) else int(c)
        return cls(spec, vals)

    # -- basics ----------------------------------------------------------------

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, i: int) -> int:
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def lc(self) -> int:
        if not self.coeffs:
            return 0
        return self.coeffs[-1]

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def monic(self) -> "Poly":
        if not self.coeffs:
            raise ZeroPolynomial("the zero polynomial has no monic form")
        if self.coeffs[-1] == 1:
            return self
        inv = self.spec.inv_raw(self.coeffs[-1])
        mul = self.spec.mul_raw
        return Poly(self.spec, [mul(c, inv) for c in self.coeffs])

    def map_coeffs(self, fn) -> "Poly":
        return Poly(self.spec, [fn(c) for c in self.coeffs])

    # -- ring operations ---------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, Poly):
            if other.spec != self.spec:
                raise FieldMismatch("polynomials over different fields")
            return other
        if isinstance(other, (int, ff.FieldElement)):
            return Poly(self.spec, (other,))
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        add = self.spec.add_raw
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = add(out[i], c)
        return Poly(self.spec, out)

    __radd__ = __add__

    def __neg__(self):
        neg = self.spec.neg_raw
        return Poly(self.spec, [neg(c) for c in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly.zero(self.spec)
        add = self.spec.add_raw
        mul = self.spec.mul_raw
        out = [0] * (len(a) + len(b) - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] = add(out[i + j], mul(x, y))
        return Poly(self.spec, out)

    __rmul__ = __mul__

    def __divmod__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise DivisionByZero("polynomial division by zero")
        spec = self.spec
        db = other.degree
        rem = list(self.coeffs)
        if self.degree < db:
            return Poly.zero(spec), self
        inv_lc = spec.inv_raw(other.coeffs[-1])
        sub, mul = spec.sub_raw, spec.mul_raw
        quo = [0] * (len(rem) - db)
        for i in range(len(rem) - db - 1, -1, -1):
            c = rem[i + db]
            if c:
                c = mul(c, inv_lc)
                quo[i] = c
                for j in range(db):
                    if other.coeffs[j]:
                        rem[i + j] = sub(rem[i + j], mul(c, other.coeffs[j]))
            rem[i + db] = 0
        return Poly(spec, quo), Poly(spec, rem[:db])

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def __pow__(self, e: int):
        if e < 0:
            raise BadInput("negative polynomial power")
        if e == 0:
            return Poly.one(self.spec)
        p = self.spec.p
        base = self
        # characteristic-p fast path: f**(p^t) dilates exponents by p^t
        while e % p == 0:
            base = base._pth_power()
            e //= p
        result = Poly.one(self.spec)
        sq = base
        while e:
            if e & 1:
                result = result * sq
            e >>= 1
            if e:
                sq = sq * sq
        return result

    def _pth_power(self) -> "Poly":
        """f**p via the Frobenius identity (sum c_i X^i)^p = sum c_i^p X^(ip)."""
        spec = self.spec
        if not self.coeffs:
            return self
        p = spec.p
        out = [0] * ((len(self.coeffs) - 1) * p + 1)
        for i, c in enumerate(self.coeffs):
            if c:
                out[i * p] = spec.frob_raw(c, 1)
        return Poly(spec, out)

    def shift(self, k: int) -> "Poly":
        """Multiply by X^k."""
        if self.is_zero() or k == 0:
            return self
        return Poly(self.spec, (0,) * k + self.coeffs)

    def __call__(self, x):
        spec = self.spec
        xv = x.val if isinstance(x, ff.FieldElement) else int(x)
        acc = 0
        add, mul = spec.add_raw, spec.mul_raw
        for c in reversed(self.coeffs):
            acc = add(mul(acc, xv), c)
        return ff.FieldElement(spec, acc)

    def taylor_shift(self, a) -> "Poly":
        """f(X + a)."""
        av = a.val if isinstance(a, ff.FieldElement) else int(a)
        spec = self.spec
        lin = Poly(spec, (av, 1))
        acc = Poly.zero(spec)
        for c in reversed(self.coeffs):
            acc = acc * lin + Poly(spec, (c,))
        return acc

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.spec == other.spec and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash((self.spec._key, self.coeffs))

    def __str__(self):
        if not self.coeffs:
            return "0"
        spec = self.spec
        terms = []
        for i in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            cs = str(ff.FieldElement(spec, c))
            if spec.k > 1 and ("+" in cs or "*" in cs):
                cs = f"({cs})"
            if i == 0:
                terms.append(cs)
            else:
                var = "X" if i == 1 else f"X^{i}"
                terms.append(var if cs == "1" else f"{cs}*{var}")
        return " + ".join(terms)

    def __repr__(self):
        return f"Poly({self.spec!r}, {self})"


@dataclass(frozen=True)
class Factorization:
    """unit * product(factor**multiplicity) == the factored polynomial."""

    unit: ff.FieldElement
    factors: tuple  # ((monic irreducible Poly, multiplicity), ...)

    def expand(self) -> Poly:
        spec = self.unit.spec
        out = Poly(spec, (self.unit,))
        for f, m in self.factors:
            out = out * f ** m
        return out

    def degrees(self) -> list:
        """Multiset of factor degrees, one entry per multiplicity."""
        out = []
        for f, m in self.factors:
            out.extend([f.degree] * m)
        return sorted(out)


# ---------------------------------------------------------------------------
# gcd, derivatives, squarefree structure
# ---------------------------------------------------------------------------

def gcd(a: Poly, b: Poly) -> Poly:
    """Monic greatest common divisor."""
    if a.is_zero() and b.is_zero():
        raise BothZero("gcd(0, 0) is undefined")
    while not b.is_zero():
        a, b = b, a % b
    return a.monic()


def xgcd(a: Poly, b: Poly):
    """(g, s, t) with s*a + t*b = g, g monic."""
    if a.is_zero() and b.is_zero():
        raise BothZero("xgcd(0, 0) is undefined")
    spec = a.spec
    r0, r1 = a, b
    s0, s1 = Poly.one(spec), Poly.zero(spec)
    t0, t1 = Poly.zero(spec), Poly.one(spec)
    while not r1.is_zero():
        q, r = divmod(r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    inv = spec.inv_raw(r0.lc())
    unit = Poly(spec, (inv,))
    return r0.monic(), s0 * unit, t0 * unit


def derivative(a: Poly) -> Poly:
    """Formal derivative, with i*c computed mod p."""
    spec = a.spec
    p = spec.p
    out = []
    for i in range(1, len(a.coeffs)):
        s = i % p
        out.append(spec.mul_raw(a.coeffs[i], s) if s else 0)
    return Poly(spec, out)


def mod_pow(base: Poly, e: int, modulus: Poly) -> Poly:
    """base**e mod modulus by repeated squaring."""
    if e < 0:
        raise BadInput("negative exponent")
    result = Poly.one(base.spec)
    base = base % modulus
    while e:
        if e & 1:
            result = result * base % modulus
        base = base * base % modulus
        e >>= 1
    return result


def _pth_root(a: Poly) -> Poly:
    """The unique u with u**p == a (a must have exponents divisible by p)."""
    spec = a.spec
    p = spec.p
    out = []
    for i in range(0, len(a.coeffs), p):
        c = a.coeffs[i]
        # inverse Frobenius: c^(p^(k-1))
        out.append(spec.frob_raw(c, spec.k - 1) if c else 0)
    return Poly(spec, out)


def squarefree_decomposition(a: Poly) -> list:
    """[(monic squarefree part, multiplicity), ...] sorted by multiplicity.

    Characteristic p adaptation of Yun: layers whose multiplicity is
    divisible by p survive into a p-th power, whose root is decomposed
    recursively with multiplicities scaled by p.
    """
    if a.is_zero():
        raise ZeroPolynomial("cannot decompose the zero polynomial")
    a = a.monic() if a.degree >= 0 and a.lc() != 1 else a
    acc: dict = {}
    _sqf_into(a, 1, acc)
    return sorted(acc.items(), key=lambda fm: (fm[1], fm[0].coeffs))


def _sqf_into(f: Poly, scale: int, acc: dict):
    if f.degree < 1:
        return
    p = f.spec.p
    d = derivative(f)
    if d.is_zero():
        _sqf_into(_pth_root(f), scale * p, acc)
        return
    c = gcd(f, d)
    w = f // c
    i = 1
    while w.degree > 0:
        y = gcd(w, c)
        z = w // y
        if z.degree > 0:
            acc[z] = acc.get(z, 0) + i * scale
        w = y
        c = c // y
        i += 1
    if c.degree > 0:
        _sqf_into(_pth_root(c), scale * p, acc)


def is_squarefree(a: Poly) -> bool:
    if a.is_zero():
        raise ZeroPolynomial("squarefreeness of zero is undefined")
    if a.degree < 1:
        return True
    d = derivative(a)
    if d.is_zero():
        return False
    return gcd(a, d).degree == 0


# ---------------------------------------------------------------------------
# Factorization: distinct degree + equal degree
# ---------------------------------------------------------------------------

def ddf(a: Poly) -> list:
    """Split a squarefree monic polynomial by irreducible-factor degree.

    Returns [(product of all degree-d irreducible factors, d), ...].
    """
    if a.is_zero() or a.degree < 1:
        raise BadInput("ddf needs a nonzero polynomial of degree >= 1")
    if not a.is_monic():
        raise BadInput("ddf input must be monic")
    if not is_squarefree(a):
        raise NotSquarefree("ddf input must be squarefree")
    spec = a.spec
    q = spec.q
    out = []
    f = a
    h = Poly.x(spec)
    d = 0
    while f.degree > 2 * d + 1:
        d += 1
        h = mod_pow(h, q, f)
        g = gcd(h - Poly.x(spec), f) if not (h - Poly.x(spec)).is_zero() else f
        if g.degree > 0:
            out.append((g, d))
            f = f // g
            h = h % f if f.degree > 0 else h
    if f.degree > 0:
        out.append((f, f.degree))
    return sorted(out, key=lambda gd: gd[1])


def _trace_split(a: Poly, d: int, rng) -> Poly:
    """Characteristic 2: gcd with the GF(2)-trace of a random residue."""
    spec = a.spec
    levels = spec.k * d  # [F_{q^d} : F_2]
    r = Poly(spec, [rng.randrange(spec.q) for _ in range(a.degree)])
    t = r % a
    acc = t
    for _ in range(levels - 1):
        t = t * t % a
        acc = acc + t
    if acc.is_zero() or acc.degree == 0:
        return a
    return gcd(a, acc)


def _cz_split(a: Poly, d: int, rng) -> Poly:
    """Odd characteristic Cantor-Zassenhaus splitting step."""
    spec = a.spec
    e = (spec.q ** d - 1) // 2
    r = Poly(spec, [rng.randrange(spec.q) for _ in range(a.degree)])
    if r.is_zero():
        return a
    s = mod_pow(r, e, a) - Poly.one(spec)
    if s.is_zero():
        return a
    return gcd(a, s)


def edf(a: Poly, d: int, rng=None) -> list:
    """All monic irreducible factors of a product of distinct degree-d irreducibles."""
    if a.degree % d != 0:
        raise BadInput(f"degree {a.degree} is not a multiple of {d}")
    if rng is None:
        rng = stream(DEFAULT_SEED, "edf", a.spec._key, a.coeffs)
    a = a.monic()
    out = []
    split = _trace_split if a.spec.p == 2 else _cz_split
    stack = [a]
    tries = 0
    while stack:
        f = stack.pop()
        if f.degree == d:
            out.append(f)
            continue
        g = split(f, d, rng)
        if 0 < g.degree < f.degree:
            stack.append(g)
            stack.append(f // g)
        else:
            tries += 1
            if tries > _EDF_TRY_FACTOR * d:
                raise CheckFailed("equal-degree splitting exceeded its retry cap")
            stack.append(f)
    return sorted(out, key=lambda f: f.coeffs)


def factor(a: Poly, rng=None) -> Factorization:
    """Complete factorization into monic irreducibles; verified by re-expansion."""
    if a.is_zero():
        raise ZeroPolynomial("cannot factor the zero polynomial")
    spec = a.spec
    unit = ff.FieldElement(spec, a.lc())
    if a.degree == 0:
        return Factorization(unit, ())
    if rng is None:
        rng = stream(DEFAULT_SEED, "edf", spec._key, a.coeffs)
    factors = []
    for part, mult in squarefree_decomposition(a.monic()):
        for prod, d in ddf(part):
            for irr in edf(prod, d, rng):
                factors.append((irr, mult))
    factors.sort(key=lambda fm: (fm[0].degree, fm[0].coeffs, fm[1]))
    result = Factorization(unit, tuple(factors))
    if result.expand() != a:
        raise CheckFailed("factorization does not re-multiply to the input")
    return result


def is_irreducible(a: Poly) -> bool:
    """Rabin's criterion over GF(q)."""
    if a.is_zero() or a.degree < 1:
        raise BadInput("irreducibility needs degree >= 1")
    spec = a.spec
    q = spec.q
    d = a.degree
    if d == 1:
        return True
    a = a.monic()
    x = Poly.x(spec)
    if mod_pow(x, q ** d, a) != x % a:
        return False
    for ell in ff.prime_factors(d):
        g = mod_pow(x, q ** (d // ell), a) - x
        if g.is_zero() or gcd(g, a).degree != 0:
            return False
    return True


def roots(a: Poly, rng=None) -> list:
    """[(root FieldElement, multiplicity), ...] over a's own field."""
    out = []
    for part, mult in squarefree_decomposition(a):
        lin = [(g, 1) for g, d in ddf(part) if d == 1]
        for g, _ in lin:
            for irr in edf(g, 1, rng):
                out.append((ff.FieldElement(a.spec, a.spec.neg_raw(irr.coeffs[0])), mult))
    out.sort(key=lambda rm: (rm[1], rm[0].val))
    return out


def embed_poly(a: Poly, dst: ff.FieldSpec) -> Poly:
    """Map coefficients through the canonical embedding into dst."""
    emb = ff.embedding(a.spec, dst)
    return Poly(dst, [emb(c) for c in a.coeffs])
