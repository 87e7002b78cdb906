"""Exact arithmetic in finite fields F_{p^e} and in the local test rings
F_q[x]/(x^m).

Every F_{p^e} is presented as F_p[g]/(modulus) where the modulus is the
first monic irreducible of degree e in the fixed enumeration (coefficient
vectors read as base-p integers, constant digit least significant).  For
e = 1 nothing depends on the modulus.  A FieldSpec caches the tables the
rest of the library relies on: the element list in enumeration order, the
smallest primitive element, discrete logs, and the Artin-Schreier data
(preimages of u^p - u and the lex-smallest coset transversal).

All values are immutable; tables are computed once per spec and shared.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError, NotInvertible


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


# -- polynomial helpers over F_p (tuples, constant coefficient first) --


def _poly_trim(c):
    i = len(c)
    while i > 0 and c[i - 1] == 0:
        i -= 1
    return tuple(c[:i])


def _poly_mul(a, b, p):
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    return _poly_trim(out)


def _poly_mod(a, m, p):
    # m monic
    a = list(a)
    dm = len(m) - 1
    while len(a) - 1 >= dm and a:
        lead = a[-1] % p
        if lead:
            shift = len(a) - 1 - dm
            for i in range(dm + 1):
                a[shift + i] = (a[shift + i] - lead * m[i]) % p
        a.pop()
    return _poly_trim(a)


def _monic_poly_from_index(idx: int, deg: int, p: int):
    coeffs = []
    for _ in range(deg):
        coeffs.append(idx % p)
        idx //= p
    return tuple(coeffs) + (1,)


def _poly_is_irreducible(f, p: int) -> bool:
    deg = len(f) - 1
    if deg <= 0:
        return False
    if deg == 1:
        return True
    # trial division by every monic polynomial of degree 1..deg//2
    for d in range(1, deg // 2 + 1):
        for idx in range(p**d):
            g = _monic_poly_from_index(idx, d, p)
            if not _poly_mod(f, g, p):
                return False
    return True


def _smallest_irreducible(p: int, e: int):
    for idx in range(p**e):
        f = _monic_poly_from_index(idx, e, p)
        if _poly_is_irreducible(f, p):
            return f
    raise AssertionError("no irreducible polynomial found")  # unreachable


@dataclass(frozen=True)
class FieldSpec:
    """The field F_q, q = p^e, with its fixed modulus and cached tables."""

    p: int
    e: int
    modulus: tuple  # monic, length e+1, constant coefficient first

    @property
    def q(self) -> int:
        return self.p**self.e

    def zero(self) -> "FqElem":
        return FqElem(self, (0,) * self.e)

    def one(self) -> "FqElem":
        return self.from_int(1)

    def from_int(self, n: int) -> "FqElem":
        return FqElem(self, (n % self.p,) + (0,) * (self.e - 1))

    def from_index(self, idx: int) -> "FqElem":
        coords = []
        for _ in range(self.e):
            coords.append(idx % self.p)
            idx //= self.p
        return FqElem(self, tuple(coords))

    def gen(self) -> "FqElem":
        """The coordinate generator g (= the class of x)."""
        if self.e == 1:
            raise DomainError("prime field has no coordinate generator g")
        return self.from_index(self.p)

    def elements(self):
        return [self.from_index(i) for i in range(self.q)]

    @property
    def char(self) -> int:
        return self.p

    # -- cached structure tables ------------------------------------

    @property
    def generator(self) -> "FqElem":
        """Smallest primitive element in enumeration order."""
        return _field_tables(self)[0]

    def dlog(self, a: "FqElem") -> int:
        if a.is_zero():
            raise DomainError("dlog of 0")
        return _field_tables(self)[1][a.coords]

    def wp_preimages(self, c: "FqElem"):
        """All u with u^p - u = c (a list of size 0 or p)."""
        return list(_field_tables(self)[2].get(c.coords, ()))

    def wp_transversal_rep(self, c: "FqElem") -> "FqElem":
        """Lex-smallest representative of c's coset mod the image of u -> u^p - u."""
        return _field_tables(self)[3][c.coords]

    def __repr__(self):
        return f"F_{self.q}" if self.e > 1 else f"F_{self.p}"


@lru_cache(maxsize=None)
def field(p: int, e: int = 1) -> FieldSpec:
    if not _is_prime(p):
        raise DomainError(f"p = {p} is not prime")
    if e < 1:
        raise DomainError("extension degree must be >= 1")
    return FieldSpec(p, e, _smallest_irreducible(p, e))


@lru_cache(maxsize=None)
def _field_tables(spec: FieldSpec):
    elems = spec.elements()
    one = spec.one()
    # smallest primitive element
    generator = None
    for a in elems:
        if a.is_zero():
            continue
        order = 1
        x = a
        while x != one:
            x = x * a
            order += 1
        if order == spec.q - 1:
            generator = a
            break
    dlog = {}
    x = one
    for k in range(spec.q - 1):
        dlog[x.coords] = k
        x = x * generator
    # Artin-Schreier operator u -> u^p - u at the residue level
    preimages: dict = {}
    for u in elems:
        preimages.setdefault((u**spec.p - u).coords, []).append(u)
    image_elems = [a for a in elems if a.coords in preimages]
    # transversal: lex-smallest element of each coset of the image subgroup
    transversal = {}
    for a in elems:
        rep = spec.from_index(min((a + w).index for w in image_elems))
        transversal[a.coords] = rep
    return generator, dlog, {k: tuple(v) for k, v in preimages.items()}, transversal


@dataclass(frozen=True)
class FqElem:
    spec: FieldSpec
    coords: tuple  # length e, entries in 0..p-1

    def _check(self, other: "FqElem"):
        if self.spec is not other.spec and self.spec != other.spec:
            raise DomainError("mixed field arithmetic")

    @property
    def index(self) -> int:
        idx = 0
        for c in reversed(self.coords):
            idx = idx * self.spec.p + c
        return idx

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def is_unit(self) -> bool:
        return not self.is_zero()

    def is_nilpotent(self) -> bool:
        return self.is_zero()

    def __add__(self, other):
        self._check(other)
        p = self.spec.p
        return FqElem(self.spec, tuple((a + b) % p for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        p = self.spec.p
        return FqElem(self.spec, tuple((a - b) % p for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        p = self.spec.p
        return FqElem(self.spec, tuple((-a) % p for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        prod = _poly_mul(self.coords, other.coords, self.spec.p)
        red = _poly_mod(prod, self.spec.modulus, self.spec.p)
        return FqElem(self.spec, red + (0,) * (self.spec.e - len(red)))

    __rmul__ = __mul__

    def scale(self, n: int) -> "FqElem":
        p = self.spec.p
        return FqElem(self.spec, tuple((a * n) % p for a in self.coords))

    def __pow__(self, n: int) -> "FqElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "FqElem":
        if self.is_zero():
            raise NotInvertible("division by zero in a field")
        return self ** (self.spec.q - 2)

    def frobenius(self) -> "FqElem":
        return self**self.spec.p

    def pth_root(self) -> "FqElem":
        # inverse of Frobenius on a perfect field: x -> x^{p^{e-1}}
        return self ** (self.spec.p ** (self.spec.e - 1))

    def in_prime_field(self) -> bool:
        return all(c == 0 for c in self.coords[1:])

    def as_int(self) -> int:
        """The value in 0..p-1, defined only for prime-field elements."""
        if not self.in_prime_field():
            raise DomainError(f"{self} is not in the prime field")
        return self.coords[0]

    def __str__(self):
        if self.spec.e == 1:
            return str(self.coords[0])
        terms = []
        for i in reversed(range(self.spec.e)):
            c = self.coords[i]
            if c == 0:
                continue
            if i == 0:
                terms.append(str(c))
            else:
                v = "g" if i == 1 else f"g^{i}"
                terms.append(v if c == 1 else f"{c}{v}")
        return "+".join(terms) if terms else "0"

    def __repr__(self):
        return f"{self} in {self.spec!r}"


# -- spec-level operations ------------------------------------------


def frobenius(a: FqElem) -> FqElem:
    return a.frobenius()


def pth_root(a: FqElem) -> FqElem:
    return a.pth_root()


def as_residue_solve(c: FqElem):
    """All u in F_q with u^p - u = c.  Empty or of size exactly p."""
    return c.spec.wp_preimages(c)


def nth_power_class(c: FqElem, n: int) -> int:
    """Class of c in F_q^* / (F_q^*)^n, as a residue in Z/gcd(n, q-1).

    Computed against the field's fixed generator, so equal outputs
    characterise ratios that are n-th powers.
    """
    if c.is_zero():
        raise DomainError("0 has no power class")
    if math.gcd(n, c.spec.p) != 1:
        raise DomainError("n must be coprime to the characteristic")
    d = math.gcd(n, c.spec.q - 1)
    return c.spec.dlog(c) % d


def canonical_nth_root(c: FqElem, n: int) -> FqElem:
    """The smallest r (enumeration order) with r^n = c; DomainError if none."""
    best = None
    for r in c.spec.elements():
        if r**n == c and (best is None or r.index < best.index):
            best = r
    if best is None:
        raise DomainError(f"{c} is not an n-th power for n = {n}")
    return best


def nth_roots_of_unity(spec: FieldSpec, n: int):
    """All xi in F_q with xi^n = 1; there are gcd(n, q-1) of them."""
    return [a for a in spec.elements() if not a.is_zero() and a**n == spec.one()]


def canonical_wp_shift(c: FqElem):
    """(rep, w): the transversal representative of c and the smallest w with
    w^p - w = rep - c."""
    rep = c.spec.wp_transversal_rep(c)
    sols = as_residue_solve(rep - c)
    w = min(sols, key=lambda u: u.index)
    return rep, w


# -- test rings F_q[x]/(x^m) -----------------------------------------


@dataclass(frozen=True)
class TestRingSpec:
    """The local ring F_q[x]/(x^m); every element is a unit or nilpotent."""

    base: FieldSpec
    m: int

    @property
    def p(self) -> int:
        return self.base.p

    @property
    def char(self) -> int:
        return self.base.p

    def zero(self) -> "TestRingElem":
        return TestRingElem(self, (self.base.zero(),) * self.m)

    def one(self) -> "TestRingElem":
        return self.from_field(self.base.one())

    def from_int(self, n: int) -> "TestRingElem":
        return self.from_field(self.base.from_int(n))

    def from_field(self, a: FqElem) -> "TestRingElem":
        return TestRingElem(self, (a,) + (self.base.zero(),) * (self.m - 1))

    def from_index(self, idx: int) -> "TestRingElem":
        q = self.base.q
        coords = []
        for _ in range(self.m):
            coords.append(self.base.from_index(idx % q))
            idx //= q
        return TestRingElem(self, tuple(coords))

    def elements(self):
        return [self.from_index(i) for i in range(self.base.q**self.m)]

    def x(self) -> "TestRingElem":
        if self.m < 2:
            raise DomainError("x = 0 in a test ring with m = 1")
        mid = [self.base.zero()] * self.m
        mid[1] = self.base.one()
        return TestRingElem(self, tuple(mid))

    def __repr__(self):
        return f"{self.base!r}[x]/(x^{self.m})"


@lru_cache(maxsize=None)
def test_ring(p: int, e: int = 1, m: int = 2) -> TestRingSpec:
    if not 1 <= m <= 4:
        raise DomainError("test rings are limited to F_q[x]/(x^m) with m <= 4")
    return TestRingSpec(field(p, e), m)


@dataclass(frozen=True)
class TestRingElem:
    spec: TestRingSpec
    coords: tuple  # m field elements, x-adic, constant first

    def _check(self, other):
        if self.spec != other.spec:
            raise DomainError("mixed test-ring arithmetic")

    @property
    def index(self) -> int:
        q = self.spec.base.q
        idx = 0
        for c in reversed(self.coords):
            idx = idx * q + c.index
        return idx

    def is_zero(self) -> bool:
        return all(c.is_zero() for c in self.coords)

    def is_unit(self) -> bool:
        return not self.coords[0].is_zero()

    def is_nilpotent(self) -> bool:
        return self.coords[0].is_zero()

    def residue(self) -> FqElem:
        return self.coords[0]

    def __add__(self, other):
        self._check(other)
        return TestRingElem(self.spec, tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __sub__(self, other):
        self._check(other)
        return TestRingElem(self.spec, tuple(a - b for a, b in zip(self.coords, other.coords)))

    def __neg__(self):
        return TestRingElem(self.spec, tuple(-a for a in self.coords))

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        m = self.spec.m
        zero = self.spec.base.zero()
        out = [zero] * m
        for i, a in enumerate(self.coords):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coords):
                if i + j < m and not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return TestRingElem(self.spec, tuple(out))

    __rmul__ = __mul__

    def scale(self, n: int) -> "TestRingElem":
        return TestRingElem(self.spec, tuple(a.scale(n) for a in self.coords))

    def __pow__(self, n: int) -> "TestRingElem":
        if n < 0:
            return self.inverse() ** (-n)
        result = self.spec.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def inverse(self) -> "TestRingElem":
        if not self.is_unit():
            raise NotInvertible(f"{self} is not a unit (residue 0)")
        # a = a0 (1 + nu) with nu nilpotent; geometric series stops at x^m = 0
        a0_inv = self.spec.from_field(self.coords[0].inverse())
        nu = self * a0_inv - self.spec.one()
        acc = self.spec.one()
        term = self.spec.one()
        for _ in range(self.spec.m - 1):
            term = -(term * nu)
            acc = acc + term
        return acc * a0_inv

    def frobenius(self) -> "TestRingElem":
        return self**self.spec.p

    def __str__(self):
        parts = []
        for i, c in enumerate(self.coords):
            if c.is_zero():
                continue
            cs = str(c)
            if "+" in cs:
                cs = f"({cs})"
            if i == 0:
                parts.append(cs)
            else:
                xs = "x" if i == 1 else f"x^{i}"
                parts.append(xs if cs == "1" else f"{cs}{xs}")
        return "+".join(parts) if parts else "0"

    def __repr__(self):
        return f"{self} in {self.spec!r}"
