"""Exact arithmetic in small finite fields GF(p^k).

An element of GF(p^k) is stored as an integer in [0, p^k) encoding its
little-endian coefficient vector over GF(p): the value sum(c_i * p**i)
stands for sum(c_i * w**i) where w is a root of the defining modulus.
Integers appearing where an element is expected are read as such raw
values (for prime fields this is the usual residue).

Prime fields use direct modular arithmetic.  Extensions lazily build
exponent/discrete-log tables over a multiplicative generator, after which
multiplication, inversion and powering are table lookups; addition is XOR
in characteristic 2 and digit-vector arithmetic otherwise.  This keeps
every field of size up to the enumeration guard (2^20) fast enough for
exhaustive desk-scale loops.
"""

from __future__ import annotations

from itertools import product

from .errors import (
    BadInput,
    DivisionByZero,
    EmbeddingUnavailable,
    FieldMismatch,
    NotIrreducible,
    NotPrime,
    TooLarge,
    ZeroElement,
)
from .rng import DEFAULT_SEED, stream

ENUMERATION_GUARD = 1 << 20
_DIGIT_CACHE_MAX = 1 << 16

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin (exact for n < 3.3e24)."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def prime_factors(n: int) -> list:
    """Sorted distinct prime divisors of n (trial division)."""
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            while n % d == 0:
                n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out.append(n)
    return out


def divisors(n: int) -> list:
    out = [d for d in range(1, n + 1) if n % d == 0]
    return out


# ---------------------------------------------------------------------------
# Raw coefficient-vector polynomials over GF(p).
#
# Used only for field construction (irreducibility of moduli, building the
# exp table); general polynomial algebra lives in the poly module.
# ---------------------------------------------------------------------------

def _ptrim(v):
    while v and v[-1] == 0:
        v.pop()
    return v


def _pmul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                if y:
                    out[i + j] = (out[i + j] + x * y) % p
    return _ptrim(out)


def _pmod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        c = a[-1]
        if c:
            off = len(a) - 1 - dm
            for j in range(dm):
                a[off + j] = (a[off + j] - c * m[j]) % p
        a.pop()
    return _ptrim(a)


def _psub(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] - y) % p
    return _ptrim(out)


def _ppowmod(base, e, m, p):
    result = [1]
    base = _pmod(base, m, p)
    while e:
        if e & 1:
            result = _pmod(_pmul(result, base, p), m, p)
        base = _pmod(_pmul(base, base, p), m, p)
        e >>= 1
    return result


def _pgcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        # reduce a mod b (b made monic on the fly)
        inv = pow(b[-1], p - 2, p)
        bm = [(c * inv) % p for c in b]
        a, b = b, _pmod(a, bm, p)
    return a


def _p_is_irreducible(f, p) -> bool:
    """Rabin's criterion for a monic polynomial over GF(p)."""
    k = len(f) - 1
    if k < 1:
        return False
    if k == 1:
        return True
    x = [0, 1]
    if _ppowmod(x, p ** k, f, p) != x:
        return False
    for ell in prime_factors(k):
        g = _psub(_ppowmod(x, p ** (k // ell), f, p), x, p)
        if len(_pgcd(f, g, p)) - 1 != 0:
            return False
    return True


# ---------------------------------------------------------------------------
# Field specifications and elements
# ---------------------------------------------------------------------------

class FieldSpec:
    """GF(p^k): characteristic, degree, defining modulus, lazy tables."""

    __slots__ = ("p", "k", "q", "modulus", "_exp", "_log", "_digits", "_enum")

    def __init__(self, p: int, k: int = 1, modulus=None):
        if not is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if k < 1:
            raise BadInput("extension degree must be >= 1")
        q = p ** k
        if q > ENUMERATION_GUARD:
            raise TooLarge(f"field size {q} exceeds the 2^20 guard")
        if k == 1:
            if modulus is not None:
                raise BadInput("prime fields carry no modulus")
        else:
            modulus = tuple(int(c) % p for c in modulus)
            if len(modulus) != k + 1 or modulus[-1] != 1:
                raise BadInput("modulus must be monic of degree k")
            if not _p_is_irreducible(list(modulus), p):
                raise NotIrreducible(f"modulus {list(modulus)} is reducible over GF({p})")
        self.p = p
        self.k = k
        self.q = q
        self.modulus = modulus
        self._exp = None
        self._log = None
        self._digits = None
        self._enum = None

    # -- identity ----------------------------------------------------------

    @property
    def _key(self):
        return (self.p, self.k, self.modulus)

    def __eq__(self, other):
        return isinstance(other, FieldSpec) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __repr__(self):
        if self.k == 1:
            return f"GF({self.p})"
        return f"GF({self.p}^{self.k})"

    # -- element construction ----------------------------------------------

    def element(self, value) -> "FieldElement":
        if isinstance(value, FieldElement):
            if value.spec != self:
                raise FieldMismatch("element belongs to a different field")
            return value
        if isinstance(value, int):
            if not 0 <= value < self.q:
                raise BadInput(f"raw value {value} outside [0, {self.q})")
            return FieldElement(self, value)
        # little-endian digit sequence
        digs = [int(c) % self.p for c in value]
        if len(digs) > self.k:
            raise BadInput("too many digits for this field")
        val = 0
        for c in reversed(digs):
            val = val * self.p + c
        return FieldElement(self, val)

    @property
    def zero(self) -> "FieldElement":
        return FieldElement(self, 0)

    @property
    def one(self) -> "FieldElement":
        return FieldElement(self, 1)

    @property
    def gen(self) -> "FieldElement":
        """The residue of w (prime fields: the residue 1)."""
        return FieldElement(self, self.p if self.k > 1 else 1)

    def digits(self, a: int) -> tuple:
        p = self.p
        out = []
        for _ in range(self.k):
            a, r = divmod(a, p)
            out.append(r)
        return tuple(out)

    # -- table construction --------------------------------------------------

    def _raw_mul(self, a: int, b: int) -> int:
        # polynomial multiplication in the digit representation; setup only
        p = self.p
        da, db = list(self.digits(a)), list(self.digits(b))
        prod = _pmod(_pmul(_ptrim(da), _ptrim(db), p), list(self.modulus), p)
        val = 0
        for c in reversed(prod):
            val = val * p + c
        return val

    def _ensure_tables(self):
        if self._exp is not None:
            return
        q = self.q
        fac = prime_factors(q - 1) if q > 2 else []
        gen = None
        for cand in range(1, q):
            if all(self._raw_pow(cand, (q - 1) // f) != 1 for f in fac):
                gen = cand
                break
        exp = [1] * (q - 1)
        cur = 1
        for i in range(1, q - 1):
            cur = self._raw_mul(cur, gen)
            exp[i] = cur
        log = [0] * q
        for i, v in enumerate(exp):
            log[v] = i
        self._exp = exp + exp  # doubled so index sums need no reduction
        self._log = log
        if self.p != 2 and q <= _DIGIT_CACHE_MAX:
            self._digits = [self.digits(a) for a in range(q)]

    def _raw_pow(self, a: int, e: int) -> int:
        result = 1
        while e:
            if e & 1:
                result = self._raw_mul(result, a)
            a = self._raw_mul(a, a)
            e >>= 1
        return result

    # -- raw arithmetic ------------------------------------------------------

    def add_raw(self, a: int, b: int) -> int:
        p = self.p
        if self.k == 1:
            return (a + b) % p
        if p == 2:
            return a ^ b
        if self._digits is None:
            self._ensure_tables()
        if self._digits is not None:
            da, db = self._digits[a], self._digits[b]
        else:
            da, db = self.digits(a), self.digits(b)
        val = 0
        w = 1
        for x, y in zip(da, db):
            val += ((x + y) % p) * w
            w *= p
        return val

    def neg_raw(self, a: int) -> int:
        p = self.p
        if self.k == 1:
            return (-a) % p
        if p == 2:
            return a
        if self._digits is None:
            self._ensure_tables()
        da = self._digits[a] if self._digits is not None else self.digits(a)
        val = 0
        w = 1
        for x in da:
            val += ((-x) % p) * w
            w *= p
        return val

    def sub_raw(self, a: int, b: int) -> int:
        if self.p == 2:
            return self.add_raw(a, b)
        return self.add_raw(a, self.neg_raw(b))

    def mul_raw(self, a: int, b: int) -> int:
        if self.k == 1:
            return a * b % self.p
        if a == 0 or b == 0:
            return 0
        if self._exp is None:
            self._ensure_tables()
        return self._exp[self._log[a] + self._log[b]]

    def inv_raw(self, a: int) -> int:
        if a == 0:
            raise DivisionByZero("inverse of zero")
        if self.k == 1:
            return pow(a, self.p - 2, self.p)
        if self._exp is None:
            self._ensure_tables()
        return self._exp[self.q - 1 - self._log[a]]

    def div_raw(self, a: int, b: int) -> int:
        return self.mul_raw(a, self.inv_raw(b))

    def pow_raw(self, a: int, e: int) -> int:
        if a == 0:
            if e == 0:
                return 1
            if e < 0:
                raise DivisionByZero("negative power of zero")
            return 0
        if self.k == 1:
            # Fermat: exponents reduce mod p-1 (also maps e = -1 to p-2)
            return pow(a, e % (self.p - 1), self.p)
        if self._exp is None:
            self._ensure_tables()
        return self._exp[(self._log[a] * e) % (self.q - 1)]

    def frob_raw(self, a: int, levels: int = 1) -> int:
        """a ** (p ** levels)."""
        if self.k == 1 or a == 0:
            return a
        if self._exp is None:
            self._ensure_tables()
        return self._exp[(self._log[a] * pow(self.p, levels, self.q - 1)) % (self.q - 1)]

    def enumerate_raw(self) -> list:
        """All raw values, lexicographic on the little-endian digit vector."""
        if self._enum is None:
            if self.k == 1:
                self._enum = list(range(self.p))
            else:
                p = self.p
                vals = []
                for digs in product(range(p), repeat=self.k):
                    val = 0
                    for c in reversed(digs):
                        val = val * p + c
                    vals.append(val)
                self._enum = vals
        return self._enum


class FieldElement:
    """An immutable element of a FieldSpec with operator arithmetic."""

    __slots__ = ("spec", "val")

    def __init__(self, spec: FieldSpec, val: int):
        self.spec = spec
        self.val = val

    def _coerce(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise FieldMismatch("operands lie in different fields")
            return other.val
        if isinstance(other, int):
            if not 0 <= other < self.spec.q:
                raise BadInput(f"raw value {other} outside the field")
            return other
        return NotImplemented

    def __add__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.add_raw(self.val, v))

    __radd__ = __add__

    def __sub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub_raw(self.val, v))

    def __rsub__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.sub_raw(v, self.val))

    def __mul__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.mul_raw(self.val, v))

    __rmul__ = __mul__

    def __truediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div_raw(self.val, v))

    def __rtruediv__(self, other):
        v = self._coerce(other)
        if v is NotImplemented:
            return NotImplemented
        return FieldElement(self.spec, self.spec.div_raw(v, self.val))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg_raw(self.val))

    def __pow__(self, e: int):
        if e < 0:
            return FieldElement(self.spec, self.spec.pow_raw(self.spec.inv_raw(self.val), -e))
        return FieldElement(self.spec, self.spec.pow_raw(self.val, e))

    def inv(self):
        return FieldElement(self.spec, self.spec.inv_raw(self.val))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.val == other.val
        if isinstance(other, int):
            return self.val == other
        return NotImplemented

    def __hash__(self):
        return hash((self.spec._key, self.val))

    def __bool__(self):
        return self.val != 0

    def __int__(self):
        return self.val

    def digits(self) -> tuple:
        return self.spec.digits(self.val)

    def __str__(self):
        if self.spec.k == 1:
            return str(self.val)
        terms = []
        for i, c in enumerate(self.digits()):
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            elif i == 1:
                terms.append("w" if c == 1 else f"{c}*w")
            else:
                terms.append(f"w^{i}" if c == 1 else f"{c}*w^{i}")
        return " + ".join(reversed(terms)) if terms else "0"

    def __repr__(self):
        return f"{self} in {self.spec!r}"


# ---------------------------------------------------------------------------
# Public construction and helpers
# ---------------------------------------------------------------------------

_PRIME_CACHE: dict = {}
_EXT_CACHE: dict = {}
_SEARCH_CACHE: dict = {}
_EMBED_CACHE: dict = {}


def make_prime_field(p: int) -> FieldSpec:
    """GF(p) for a prime p."""
    spec = _PRIME_CACHE.get(p)
    if spec is None:
        spec = FieldSpec(p)
        _PRIME_CACHE[p] = spec
    return spec


def make_extension(base: FieldSpec, k: int, modulus=None, seed: int = DEFAULT_SEED) -> FieldSpec:
    """GF(p^k) over the prime field ``base``.

    When no modulus is supplied, a monic irreducible of degree k is found
    by seeded random search (reproducible: same seed, same modulus).
    """
    if base.k != 1:
        raise BadInput("extensions are built over prime fields only")
    p = base.p
    if k == 1 and modulus is None:
        return base
    if modulus is not None:
        coeffs = tuple(int(c) % p for c in getattr(modulus, "coeffs", modulus))
        if k == 1:
            return base
        key = (p, k, coeffs)
        spec = _EXT_CACHE.get(key)
        if spec is None:
            spec = FieldSpec(p, k, coeffs)
            _EXT_CACHE[key] = spec
        return spec
    found = _SEARCH_CACHE.get((p, k, seed))
    if found is None:
        rng = stream(seed, "modulus-search", p, k)
        while True:
            cand = [rng.randrange(p) for _ in range(k)] + [1]
            if _p_is_irreducible(cand, p):
                found = tuple(cand)
                break
        _SEARCH_CACHE[(p, k, seed)] = found
    return make_extension(base, k, found, seed)


def extension_field(base: FieldSpec, ext_degree: int, seed: int = DEFAULT_SEED) -> FieldSpec:
    """GF(q^ext_degree) for q = |base|, as a single-step extension of GF(p)."""
    total = base.k * ext_degree
    if total == 1:
        return base if base.k == 1 else make_prime_field(base.p)
    return make_extension(make_prime_field(base.p), total, seed=seed)


def frobenius(x: FieldElement, levels: int) -> FieldElement:
    """x ** (p ** levels); the q-power Frobenius is levels = k."""
    if levels < 0:
        raise BadInput("levels must be >= 0")
    return FieldElement(x.spec, x.spec.frob_raw(x.val, levels))


def element_order(x: FieldElement) -> int:
    """Least e >= 1 with x^e = 1, by factoring q-1 and descending."""
    if x.val == 0:
        raise ZeroElement("the zero element has no multiplicative order")
    spec = x.spec
    e = spec.q - 1
    for ell in prime_factors(e):
        while e % ell == 0 and spec.pow_raw(x.val, e // ell) == 1:
            e //= ell
    return e


def enumerate_field(spec: FieldSpec) -> list:
    """Every element exactly once, lexicographic on the digit vector."""
    if spec.q > ENUMERATION_GUARD:
        raise TooLarge(f"refusing to enumerate {spec.q} elements")
    return [FieldElement(spec, v) for v in spec.enumerate_raw()]


def embedding(src: FieldSpec, dst: FieldSpec):
    """The field embedding src -> dst as a raw-value map.

    The generator of src is sent to the first root (in enumeration order)
    of src's modulus in dst.  Raises EmbeddingUnavailable when src is not
    a subfield of dst.
    """
    if src == dst:
        return lambda v: v
    if src.p != dst.p or dst.k % src.k != 0:
        raise EmbeddingUnavailable(f"{src!r} does not embed into {dst!r}")
    key = (src._key, dst._key)
    images = _EMBED_CACHE.get(key)
    if images is None:
        if src.k == 1:
            images = [1]
        else:
            root = None
            mod = src.modulus
            for cand in dst.enumerate_raw():
                acc = 0
                for c in reversed(mod):
                    acc = dst.add_raw(dst.mul_raw(acc, cand), c)
                if acc == 0:
                    root = cand
                    break
            if root is None:
                raise EmbeddingUnavailable("modulus has no root in the target field")
            images = [1]
            for _ in range(1, src.k):
                images.append(dst.mul_raw(images[-1], root))
        _EMBED_CACHE[key] = images

    p = src.p

    def emb(v: int) -> int:
        out = 0
        i = 0
        while v:
            v, c = divmod(v, p)
            if c:
                out = dst.add_raw(out, dst.mul_raw(images[i], c) if c > 1 else images[i])
            i += 1
        return out

    return emb


def embed(x: FieldElement, dst: FieldSpec) -> FieldElement:
    """Image of x under the canonical embedding into dst."""
    return FieldElement(dst, embedding(x.spec, dst)(x.val))
