"""Exact Laurent-polynomial arithmetic over ZZ and over prime fields.

A Laurent polynomial in t is stored sparsely as a map from integer
exponents to nonzero integer coefficients; the zero polynomial is the
empty map.  All arithmetic uses Python integers, so it is exact at any
size.  ``FpLaurent`` is the mod-p variant with coefficients reduced to
{1, ..., p-1}.

Associate classes: two polynomials are *associates* when they differ by
a unit of the Laurent ring, i.e. by +-t^k over ZZ and by c*t^k (c != 0)
over F_p.  ``assoc_normalize`` picks the canonical representative with
lowest exponent 0 and positive (resp. monic) leading coefficient, so
associate testing is plain equality of canonical forms.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, isqrt

from .errors import ParseError, ZeroPolynomialError

# --------------------------------------------------------------------------
# integer Laurent polynomials


class LaurentPoly:
    """Immutable Laurent polynomial in t with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c = {}
        if coeffs:
            for e, a in dict(coeffs).items():
                if a:
                    c[int(e)] = int(a)
        self._c = c

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls()

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls({0: 1})

    @classmethod
    def term(cls, coeff: int, exp: int = 0) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def t(cls, exp: int = 1) -> "LaurentPoly":
        return cls({exp: 1})

    @classmethod
    def parse(cls, text: str) -> "LaurentPoly":
        return parse_poly(text)

    # -- basic queries -----------------------------------------------------

    def items(self):
        return sorted(self._c.items())

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_unit(self) -> bool:
        """True for +-t^k, the units of ZZ[t, t^-1]."""
        return len(self._c) == 1 and abs(next(iter(self._c.values()))) == 1

    def min_exp(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no exponents")
        return max(self._c)

    def lead_coeff(self) -> int:
        return self._c[self.max_exp()]

    def content(self) -> int:
        """gcd of the coefficients (0 for the zero polynomial)."""
        g = 0
        for a in self._c.values():
            g = gcd(g, a)
        return g

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        return isinstance(other, LaurentPoly) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __repr__(self):
        return f"LaurentPoly({poly_to_text(self)!r})"

    def __str__(self):
        return poly_to_text(self)

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        c = dict(self._c)
        for e, a in other._c.items():
            s = c.get(e, 0) + a
            if s:
                c[e] = s
            elif e in c:
                del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    def __neg__(self) -> "LaurentPoly":
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e: -a for e, a in self._c.items()}
        return out

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                s = c.get(e, 0) + a1 * a2
                if s:
                    c[e] = s
                elif e in c:
                    del c[e]
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = c
        return out

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise ValueError("negative powers only for units")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by t^k."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {e + k: a for e, a in self._c.items()}
        return out

    def scale(self, c: int) -> "LaurentPoly":
        return LaurentPoly({e: c * a for e, a in self._c.items()})

    def invert_t(self) -> "LaurentPoly":
        """Substitute t -> t^-1."""
        out = LaurentPoly.__new__(LaurentPoly)
        out._c = {-e: a for e, a in self._c.items()}
        return out

    def evaluate(self, x):
        """Evaluate at a nonzero rational point."""
        x = Fraction(x)
        val = Fraction(0)
        for e, a in self._c.items():
            val += a * x**e
        return val

    # -- divisibility --------------------------------------------------------

    def div_exact(self, other: "LaurentPoly") -> "LaurentPoly":
        q = self.div_or_none(other)
        if q is None:
            raise ArithmeticError(f"inexact division {self} / {other}")
        return q

    def div_or_none(self, other: "LaurentPoly"):
        """Exact quotient self/other in ZZ[t, t^-1], or None."""
        if other.is_zero():
            raise ZeroPolynomialError("division by zero polynomial")
        if self.is_zero():
            return LaurentPoly.zero()
        lo_s, lo_o = self.min_exp(), other.min_exp()
        num = _dense(self)
        den = _dense(other)
        quo, rem = _qdivmod(num, den)
        if any(rem) or any(c.denominator != 1 for c in quo):
            return None
        return _from_dense([int(c) for c in quo], lo_s - lo_o)

    def divides(self, other: "LaurentPoly") -> bool:
        """True when self | other in ZZ[t, t^-1]."""
        if self.is_zero():
            return other.is_zero()
        return other.div_or_none(self) is not None

    def sqrt_or_none(self):
        """g with g*g an associate of self, or None (used by the 2p rules)."""
        if self.is_zero():
            return LaurentPoly.zero()
        f = assoc_normalize(self)
        n = f.max_exp()
        if n % 2:
            return None
        lead = f.lead_coeff()
        r = isqrt(lead)
        if r * r != lead:
            return None
        # solve for the coefficients of g from the top down
        g = {n // 2: r}
        for e in range(n // 2 - 1, -1, -1):
            acc = sum(
                g.get(i, 0) * g.get(n // 2 + e - i, 0)
                for i in range(e + 1, n // 2)
            )
            num = f.coeff(n // 2 + e) - acc
            if num % (2 * r):
                return None
            g[e] = num // (2 * r)
        cand = LaurentPoly(g)
        return cand if assoc_normalize(cand * cand) == f else None


def _dense(f: LaurentPoly) -> list[Fraction]:
    lo, hi = f.min_exp(), f.max_exp()
    out = [Fraction(0)] * (hi - lo + 1)
    for e, a in f._c.items():
        out[e - lo] = Fraction(a)
    return out


def _from_dense(coeffs, lo: int) -> LaurentPoly:
    return LaurentPoly({lo + i: c for i, c in enumerate(coeffs)})


def _qdivmod(num: list[Fraction], den: list[Fraction]):
    """Long division over QQ on ascending dense coefficient lists."""
    num = list(num)
    dn = len(den) - 1
    lead = den[-1]
    if len(num) - 1 < dn:
        return [Fraction(0)], num
    quo = [Fraction(0)] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] / lead
        quo[i - dn] = c
        if c:
            for j, d in enumerate(den):
                num[i - dn + j] -= c * d
    return quo, num[:dn] if dn else []


# --------------------------------------------------------------------------
# Laurent polynomials over F_p


class FpLaurent:
    """Laurent polynomial over the prime field F_p."""

    __slots__ = ("p", "_c")

    def __init__(self, p: int, coeffs=None):
        self.p = p
        c = {}
        if coeffs:
            for e, a in dict(coeffs).items():
                a %= p
                if a:
                    c[int(e)] = a
        self._c = c

    @classmethod
    def from_int_poly(cls, f: LaurentPoly, p: int) -> "FpLaurent":
        return cls(p, dict(f.items()))

    @classmethod
    def one(cls, p: int) -> "FpLaurent":
        return cls(p, {0: 1})

    def items(self):
        return sorted(self._c.items())

    def coeff(self, exp: int) -> int:
        return self._c.get(exp, 0)

    def is_zero(self) -> bool:
        return not self._c

    def is_unit(self) -> bool:
        """Units of F_p[t, t^-1] are the nonzero monomials c*t^k."""
        return len(self._c) == 1

    def min_exp(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no exponents")
        return min(self._c)

    def max_exp(self) -> int:
        if not self._c:
            raise ZeroPolynomialError("zero polynomial has no exponents")
        return max(self._c)

    def lead_coeff(self) -> int:
        return self._c[self.max_exp()]

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        return (
            isinstance(other, FpLaurent)
            and self.p == other.p
            and self._c == other._c
        )

    def __hash__(self):
        return hash((self.p, frozenset(self._c.items())))

    def __repr__(self):
        return f"FpLaurent(p={self.p}, {poly_to_text(self)!r})"

    def __str__(self):
        return poly_to_text(self)

    def _wrap(self, c: dict[int, int]) -> "FpLaurent":
        out = FpLaurent.__new__(FpLaurent)
        out.p = self.p
        out._c = c
        return out

    def __add__(self, other: "FpLaurent") -> "FpLaurent":
        c = dict(self._c)
        for e, a in other._c.items():
            s = (c.get(e, 0) + a) % self.p
            if s:
                c[e] = s
            elif e in c:
                del c[e]
        return self._wrap(c)

    def __neg__(self) -> "FpLaurent":
        return self._wrap({e: self.p - a for e, a in self._c.items()})

    def __sub__(self, other: "FpLaurent") -> "FpLaurent":
        return self + (-other)

    def __mul__(self, other: "FpLaurent") -> "FpLaurent":
        c: dict[int, int] = {}
        for e1, a1 in self._c.items():
            for e2, a2 in other._c.items():
                e = e1 + e2
                s = (c.get(e, 0) + a1 * a2) % self.p
                if s:
                    c[e] = s
                elif e in c:
                    del c[e]
        return self._wrap(c)

    def __pow__(self, n: int) -> "FpLaurent":
        result = FpLaurent.one(self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "FpLaurent":
        return self._wrap({e + k: a for e, a in self._c.items()})

    def scale(self, c: int) -> "FpLaurent":
        return FpLaurent(self.p, {e: c * a for e, a in self._c.items()})

    def monic(self) -> "FpLaurent":
        if self.is_zero():
            return self
        inv = pow(self.lead_coeff(), -1, self.p)
        return self.scale(inv)

    def div_exact(self, other: "FpLaurent") -> "FpLaurent":
        q = self.div_or_none(other)
        if q is None:
            raise ArithmeticError(f"inexact division mod {self.p}")
        return q

    def div_or_none(self, other: "FpLaurent"):
        if other.is_zero():
            raise ZeroPolynomialError("division by zero polynomial")
        if self.is_zero():
            return FpLaurent(self.p, {})
        lo_s, lo_o = self.min_exp(), other.min_exp()
        quo, rem = _fp_divmod(_fp_dense(self), _fp_dense(other), self.p)
        if any(rem):
            return None
        return FpLaurent(
            self.p, {lo_s - lo_o + i: c for i, c in enumerate(quo)}
        )

    def divides(self, other: "FpLaurent") -> bool:
        if self.is_zero():
            return other.is_zero()
        return other.div_or_none(self) is not None

    def associates(self, other: "FpLaurent") -> bool:
        """self == c * t^k * other for some unit c*t^k."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        return assoc_normalize(self, self.p) == assoc_normalize(other, self.p)

    def associates_strict(self, other: "FpLaurent") -> bool:
        """self == +-t^k * other, the integral associate relation mod p."""
        if self.is_zero() or other.is_zero():
            return self.is_zero() and other.is_zero()
        k = self.min_exp() - other.min_exp()
        shifted = other.shift(k)
        return self == shifted or self == -shifted


def _fp_dense(f: FpLaurent) -> list[int]:
    lo, hi = f.min_exp(), f.max_exp()
    out = [0] * (hi - lo + 1)
    for e, a in f._c.items():
        out[e - lo] = a
    return out


def _fp_trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def _fp_divmod(num: list[int], den: list[int], p: int):
    num = list(num)
    den = _fp_trim(list(den))
    dn = len(den) - 1
    inv = pow(den[-1], -1, p)
    if len(num) - 1 < dn:
        return [0], _fp_trim(num)
    quo = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i] * inv % p
        quo[i - dn] = c
        if c:
            for j, d in enumerate(den):
                num[i - dn + j] = (num[i - dn + j] - c * d) % p
    return quo, _fp_trim(num[:dn] if dn else [])


def _fp_gcd_lists(a: list[int], b: list[int], p: int) -> list[int]:
    a, b = _fp_trim(list(a)), _fp_trim(list(b))
    while b:
        _, r = _fp_divmod(a, b, p)
        a, b = b, r
    if a:
        inv = pow(a[-1], -1, p)
        a = [c * inv % p for c in a]
    return a


# --------------------------------------------------------------------------
# the operations of the module API


def span(f) -> int:
    """Difference of the extreme exponents of a nonzero polynomial."""
    if f.is_zero():
        raise ZeroPolynomialError("span of the zero polynomial")
    return f.max_exp() - f.min_exp()


def assoc_normalize(f, modulus: int | None = None):
    """Canonical associate: lowest exponent 0, positive/monic leading term.

    Over ZZ the unit group is {+-t^k}; over F_p it is {c t^k, c != 0}.
    Two polynomials are associates exactly when their canonical forms
    are equal.
    """
    if isinstance(f, FpLaurent):
        if f.is_zero():
            raise ZeroPolynomialError("no canonical form for 0")
        return f.shift(-f.min_exp()).monic()
    if modulus is not None:
        return assoc_normalize(FpLaurent.from_int_poly(f, modulus))
    if f.is_zero():
        raise ZeroPolynomialError("no canonical form for 0")
    g = f.shift(-f.min_exp())
    if g.lead_coeff() < 0:
        g = -g
    return g


def associates(f: LaurentPoly, g: LaurentPoly) -> bool:
    """f == +-t^k g over ZZ."""
    if f.is_zero() or g.is_zero():
        return f.is_zero() and g.is_zero()
    return assoc_normalize(f) == assoc_normalize(g)


def gcd_many(fs, modulus: int | None = None):
    """gcd of a family of Laurent polynomials, in canonical associate form.

    Over ZZ this is gcd of contents times the primitive gcd (Gauss's
    lemma makes the rational Euclidean algorithm exact); over F_p it is
    the ordinary Euclidean gcd.  The gcd of an empty or all-zero family
    is 0.
    """
    fs = list(fs)
    if modulus is not None or any(isinstance(f, FpLaurent) for f in fs):
        p = modulus if modulus is not None else fs[0].p
        fs = [
            f if isinstance(f, FpLaurent) else FpLaurent.from_int_poly(f, p)
            for f in fs
        ]
        acc: list[int] = []
        for f in fs:
            if f.is_zero():
                continue
            acc = _fp_gcd_lists(acc, _fp_dense(f), p) if acc else [
                c * pow(f.lead_coeff(), -1, p) % p for c in _fp_dense(f)
            ]
            if acc == [1]:
                break
        return FpLaurent(p, {i: c for i, c in enumerate(acc)})

    nonzero = [f for f in fs if not f.is_zero()]
    if not nonzero:
        return LaurentPoly.zero()
    cont = 0
    for f in nonzero:
        cont = gcd(cont, f.content())
    prim: list[Fraction] = []
    for f in nonzero:
        d = [Fraction(c) for c in _dense(f)]
        if not prim:
            prim = d
        else:
            prim = _qgcd(prim, d)
        if len(prim) == 1:
            break
    # clear denominators and make primitive
    den_lcm = 1
    for c in prim:
        den_lcm = den_lcm * c.denominator // gcd(den_lcm, c.denominator)
    ints = [int(c * den_lcm) for c in prim]
    g = 0
    for c in ints:
        g = gcd(g, c)
    ints = [c // g for c in ints]
    out = _from_dense(ints, 0).scale(cont)
    return assoc_normalize(out)


def _qgcd(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    def trim(x):
        while x and x[-1] == 0:
            x.pop()
        return x

    a, b = trim(list(a)), trim(list(b))
    while b:
        _, r = _qdivmod(a, b)
        a, b = b, trim(list(r))
    return a


@dataclass(frozen=True)
class Factorization:
    """Complete factorization over F_p[t, t^-1]: unit * prod(factor^mult)."""

    unit: FpLaurent
    factors: tuple[tuple[FpLaurent, int], ...]

    def value(self) -> FpLaurent:
        out = self.unit
        for f, m in self.factors:
            out = out * f**m
        return out

    def is_squarefree(self) -> bool:
        return all(m == 1 for _, m in self.factors)

    def radical_span(self) -> int:
        return sum(span(f) for f, _ in self.factors)


def _monic_polys(p: int, deg: int):
    """All monic degree-deg polynomials over F_p, lexicographically."""
    for tail in itertools.product(range(p), repeat=deg):
        yield list(tail) + [1]


def _irreducibles(p: int, deg: int, _cache={}) -> list[list[int]]:
    """Monic irreducibles of the given degree over F_p (trial division)."""
    key = (p, deg)
    if key not in _cache:
        smaller = [
            q for d in range(1, deg // 2 + 1) for q in _irreducibles(p, d)
        ]
        out = []
        for cand in _monic_polys(p, deg):
            if all(any(_fp_divmod(cand, q, p)[1]) for q in smaller):
                out.append(cand)
        _cache[key] = out
    return _cache[key]


def factor_mod_p(f: FpLaurent) -> Factorization:
    """Irreducible factorization over F_p[t, t^-1].

    Powers of t and the leading coefficient are split off as the unit;
    the factors are monic, ordered by (degree, coefficient tuple).
    """
    if f.is_zero():
        raise ZeroPolynomialError("cannot factor 0")
    p = f.p
    k = f.min_exp()
    c = f.lead_coeff()
    unit = FpLaurent(p, {k: c})
    rest = _fp_dense(f.monic())
    factors: list[tuple[FpLaurent, int]] = []
    deg = 1
    while len(rest) - 1 > 0:
        if deg > (len(rest) - 1) // 2:
            # what is left is irreducible
            factors.append((FpLaurent(p, dict(enumerate(rest))), 1))
            break
        for cand in _irreducibles(p, deg):
            mult = 0
            while True:
                quo, rem = _fp_divmod(rest, cand, p)
                if any(rem):
                    break
                rest = _fp_trim(quo)
                mult += 1
            if mult:
                factors.append((FpLaurent(p, dict(enumerate(cand))), mult))
        deg += 1
    factors.sort(key=lambda fm: (span(fm[0]), _fp_dense(fm[0])))
    return Factorization(unit=unit, factors=tuple(factors))


@dataclass(frozen=True)
class Irreducible:
    pass


@dataclass(frozen=True)
class Reducible:
    witness: LaurentPoly


@dataclass(frozen=True)
class Undecided:
    pass


_CERT_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31)


def irreducible_over_z(f: LaurentPoly, max_span: int = 6):
    """Decide irreducibility in ZZ[t, t^-1] for span <= max_span.

    A prime with irreducible, span-preserving image certifies
    irreducibility; otherwise a bounded Kronecker search either exhibits
    a factor or rules all factors out.  Larger spans may return
    Undecided.
    """
    if f.is_zero():
        raise ZeroPolynomialError("irreducibility of 0")
    n = span(f)
    if n < 1:
        raise ValueError("units have no irreducible factorization")
    cont = abs(f.content())
    if cont > 1:
        return Reducible(witness=_smallest_prime_factor_poly(cont))
    if n == 1:
        return Irreducible()
    for p in _CERT_PRIMES:
        fp = FpLaurent.from_int_poly(f, p)
        if fp.is_zero() or span(fp) != n:
            continue
        fac = factor_mod_p(fp)
        if len(fac.factors) == 1 and fac.factors[0][1] == 1:
            return Irreducible()
    witness = _kronecker_factor(f, n)
    if witness is not None:
        return Reducible(witness=witness)
    if n <= max_span:
        return Irreducible()
    return Undecided()


def _smallest_prime_factor_poly(n: int) -> LaurentPoly:
    d = 2
    while d * d <= n:
        if n % d == 0:
            return LaurentPoly.term(d)
        d += 1
    return LaurentPoly.term(n)


def _divisors(n: int) -> list[int]:
    n = abs(n)
    out = set()
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.add(d)
            out.add(n // d)
        d += 1
    return sorted(out)


def _kronecker_factor(f: LaurentPoly, n: int, budget: int = 500_000):
    """Search for a proper factor of a primitive polynomial by
    interpolation through divisors of small values (Kronecker)."""
    g = f.shift(-f.min_exp())
    points = [0, 1, -1, 2, -2, 3, -3]
    # an integer root gives a linear factor immediately
    for x in points[1:]:
        if g.evaluate(x) == 0:
            return assoc_normalize(LaurentPoly({1: 1, 0: -x}))
    for d in range(1, n // 2 + 1):
        xs = points[: d + 1]
        vals = [int(g.evaluate(x)) for x in xs]
        if any(v == 0 for v in vals):
            return None  # root handled above except x=0, impossible here
        div_lists = []
        total = 1
        for i, v in enumerate(vals):
            ds = _divisors(v)
            if i > 0:
                ds = [e for s in ds for e in (s, -s)]
            div_lists.append(ds)
            total *= len(ds)
        if total > budget:
            continue
        for combo in itertools.product(*div_lists):
            cand = _interpolate_int(xs, combo, d)
            if cand is None:
                continue
            if span(cand) != d:
                continue
            if cand.divides(g):
                return assoc_normalize(cand)
    return None


def _interpolate_int(xs, ys, d):
    """Lagrange interpolation; None unless the result has integer
    coefficients and degree exactly d."""
    coeffs = [Fraction(0)] * (d + 1)
    for i, (xi, yi) in enumerate(zip(xs, ys)):
        basis = [Fraction(1)]
        denom = Fraction(1)
        for j, xj in enumerate(xs):
            if j == i:
                continue
            new = [Fraction(0)] * (len(basis) + 1)
            for k, b in enumerate(basis):
                new[k] -= b * xj
                new[k + 1] += b
            basis = new
            denom *= xi - xj
        for k, b in enumerate(basis):
            coeffs[k] += yi * b / denom
    if any(c.denominator != 1 for c in coeffs):
        return None
    if coeffs[d] == 0:
        return None
    return LaurentPoly({i: int(c) for i, c in enumerate(coeffs)})


# --------------------------------------------------------------------------
# text form: terms like ``t^2``, ``-3t``, ``+1``; ``*`` optional


_TERM_RE = re.compile(
    r"""\s*(?P<sign>[+-]?)\s*
        (?:
            (?P<coeff>\d+)\s*\*?\s*(?:t(?:\^(?P<exp1>-?\d+))?)?
          | t(?:\^(?P<exp2>-?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_poly(text: str) -> LaurentPoly:
    """Parse integer Laurent polynomials such as ``t^2-t+1`` or ``2t-1``."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial text")
    if s == "0":
        return LaurentPoly.zero()
    coeffs: dict[int, int] = {}
    pos = 0
    first = True
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise ParseError(f"bad polynomial syntax near {s[pos:]!r}")
        if not first and not m.group("sign"):
            raise ParseError(f"missing +/- before term at {s[pos:]!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coeff") is not None:
            coeff = int(m.group("coeff"))
            has_t = "t" in m.group(0)
            exp = int(m.group("exp1")) if m.group("exp1") else (1 if has_t else 0)
        else:
            coeff = 1
            exp = int(m.group("exp2")) if m.group("exp2") else 1
        coeffs[exp] = coeffs.get(exp, 0) + sign * coeff
        pos = m.end()
        first = False
    return LaurentPoly(coeffs)


def poly_to_text(f) -> str:
    """Render with descending exponents, e.g. ``t^2-t+1``."""
    if f.is_zero():
        return "0"
    parts = []
    for e, a in sorted(f.items(), reverse=True):
        sign = "-" if a < 0 else ("+" if parts else "")
        mag = abs(a)
        if e == 0:
            body = str(mag)
        else:
            tpow = "t" if e == 1 else f"t^{e}"
            body = tpow if mag == 1 else f"{mag}{tpow}"
        parts.append(sign + body)
    return "".join(parts)
