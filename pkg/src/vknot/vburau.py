"""The virtual Burau representation and the three-variable Alexander
polynomial of virtual braid closures.

Psi sends sigma_i to the block [[1 - 1/(st), 1/t], [1/s, 0]] and tau_i
to the weighted swap [[0, q], [1/q, 0]] inside the identity, acting on
k strands over ZZ[s^-1, t^-1, q^-1].  These are the standard blocks
composed with the ring automorphism s, t, q -> 1/s, 1/t, 1/q; the
substituted form is the one consistent with this package's crossing
convention, in the sense that evaluating at s = q = 1 recovers the
unreduced Burau matrix presenting the same Alexander module as the
Wirtinger matrices of :mod:`vknot.alexander`.  The full determinant
H(s, t, q) = det(Psi(beta) - I) vanishes exactly on the almost
classical closures and its q-width bounds the virtual crossing number
of the knot from below.
"""

from __future__ import annotations

from functools import lru_cache
from math import exp

from .braid import BraidWord
from .errors import ZeroPolynomialError
from .laurent import LaurentPoly

Mono = tuple[int, int, int]  # exponents of (s, t, q)


class TriLaurent:
    """Laurent polynomial in s, t, q with integer coefficients."""

    __slots__ = ("_c",)

    def __init__(self, coeffs=None):
        c: dict[Mono, int] = {}
        if coeffs:
            for m, a in dict(coeffs).items():
                if a:
                    c[tuple(m)] = int(a)
        self._c = c

    @classmethod
    def zero(cls) -> "TriLaurent":
        return cls()

    @classmethod
    def one(cls) -> "TriLaurent":
        return cls({(0, 0, 0): 1})

    @classmethod
    def term(cls, coeff: int, s: int = 0, t: int = 0, q: int = 0):
        return cls({(s, t, q): coeff})

    def items(self):
        return sorted(self._c.items())

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self):
        return bool(self._c)

    def __eq__(self, other):
        return isinstance(other, TriLaurent) and self._c == other._c

    def __hash__(self):
        return hash(frozenset(self._c.items()))

    def __add__(self, other: "TriLaurent") -> "TriLaurent":
        c = dict(self._c)
        for m, a in other._c.items():
            v = c.get(m, 0) + a
            if v:
                c[m] = v
            elif m in c:
                del c[m]
        out = TriLaurent.__new__(TriLaurent)
        out._c = c
        return out

    def __neg__(self) -> "TriLaurent":
        out = TriLaurent.__new__(TriLaurent)
        out._c = {m: -a for m, a in self._c.items()}
        return out

    def __sub__(self, other: "TriLaurent") -> "TriLaurent":
        return self + (-other)

    def __mul__(self, other: "TriLaurent") -> "TriLaurent":
        c: dict[Mono, int] = {}
        for m1, a1 in self._c.items():
            for m2, a2 in other._c.items():
                m = (m1[0] + m2[0], m1[1] + m2[1], m1[2] + m2[2])
                v = c.get(m, 0) + a1 * a2
                if v:
                    c[m] = v
                elif m in c:
                    del c[m]
        out = TriLaurent.__new__(TriLaurent)
        out._c = c
        return out

    def __pow__(self, n: int) -> "TriLaurent":
        result = TriLaurent.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def scale(self, c: int) -> "TriLaurent":
        return TriLaurent({m: c * a for m, a in self._c.items()})

    def shift_st(self, k: int) -> "TriLaurent":
        """Multiply by (st)^k."""
        out = TriLaurent.__new__(TriLaurent)
        out._c = {(a + k, b + k, c): v for (a, b, c), v in self._c.items()}
        return out

    def mod(self, p: int) -> "TriLaurent":
        return TriLaurent({m: a % p for m, a in self._c.items()})

    def eval_s1_q1(self) -> LaurentPoly:
        """Collapse to the t-variable by s = q = 1."""
        coeffs: dict[int, int] = {}
        for (a, b, c), v in self._c.items():
            coeffs[b] = coeffs.get(b, 0) + v
        return LaurentPoly(coeffs)

    def exponents(self, axis: int) -> list[int]:
        return sorted({m[axis] for m in self._c})

    def canonical_st(self) -> "TriLaurent":
        """Normalise the (st)-power ambiguity: lowest s-exponent 0."""
        if self.is_zero():
            return self
        return self.shift_st(-min(m[0] for m in self._c))

    def div_or_none(self, other: "TriLaurent"):
        """Exact division in the Laurent ring (lex leading-term walk)."""
        if other.is_zero():
            raise ZeroPolynomialError("division by zero polynomial")
        rem = self
        quo = TriLaurent.zero()
        lead_o = max(other._c)
        co = other._c[lead_o]
        guard = len(self._c) * max(32, len(self._c)) + 64
        while not rem.is_zero():
            lead_r = max(rem._c)
            cr = rem._c[lead_r]
            if cr % co:
                return None
            m = tuple(a - b for a, b in zip(lead_r, lead_o))
            termp = TriLaurent({tuple(m): cr // co})
            quo = quo + termp
            rem = rem - termp * other
            guard -= 1
            if guard < 0:
                return None
        return quo

    def __str__(self):
        if self.is_zero():
            return "0"
        parts = []
        for (a, b, c), v in sorted(self._c.items(), reverse=True):
            body = []
            for name, e in (("s", a), ("t", b), ("q", c)):
                if e == 1:
                    body.append(name)
                elif e:
                    body.append(f"{name}^{e}")
            mag = abs(v)
            core = "".join(body) or "1"
            if mag != 1 or not body:
                core = f"{mag}{core}" if body else str(mag)
            parts.append(("-" if v < 0 else ("+" if parts else "")) + core)
        return "".join(parts)

    def __repr__(self):
        return f"TriLaurent({str(self)!r})"


def _tl(s=0, t=0, q=0, c=1):
    return TriLaurent({(s, t, q): c})


@lru_cache(maxsize=None)
def _sigma_block(sign: int):
    if sign > 0:
        # [[1 - 1/(st), 1/t], [1/s, 0]]
        return (
            (TriLaurent({(0, 0, 0): 1, (-1, -1, 0): -1}), _tl(t=-1)),
            (_tl(s=-1), TriLaurent.zero()),
        )
    # the inverse block: [[0, s], [t, 1 - st]]
    return (
        (TriLaurent.zero(), _tl(s=1)),
        (_tl(t=1), TriLaurent({(0, 0, 0): 1, (1, 1, 0): -1})),
    )


_TAU_BLOCK = (
    (TriLaurent.zero(), _tl(q=1)),
    (_tl(q=-1), TriLaurent.zero()),
)


def _identity(k: int):
    one, zero = TriLaurent.one(), TriLaurent.zero()
    return [[one if i == j else zero for j in range(k)] for i in range(k)]


def _matmul(a, b):
    n, m, l = len(a), len(b[0]), len(b)
    zero = TriLaurent.zero()
    out = []
    for i in range(n):
        row = []
        for j in range(m):
            acc = zero
            for k in range(l):
                if a[i][k].is_zero() or b[k][j].is_zero():
                    continue
                acc = acc + a[i][k] * b[k][j]
            row.append(acc)
        out.append(row)
    return out


def psi(w: BraidWord):
    """The virtual Burau matrix of the word, a k x k TriLaurent array."""
    mat = _identity(w.k)
    for kind, i, s in w.letters:
        block = _TAU_BLOCK if kind == "v" else _sigma_block(s)
        gen = _identity(w.k)
        gen[i - 1][i - 1] = block[0][0]
        gen[i - 1][i] = block[0][1]
        gen[i][i - 1] = block[1][0]
        gen[i][i] = block[1][1]
        mat = _matmul(mat, gen)
    return mat


def bar_psi(w: BraidWord):
    """Psi evaluated at s = q = 1: the unreduced Burau matrix over
    ZZ[t, t^-1]."""
    return [[e.eval_s1_q1() for e in row] for row in psi(w)]


def _det_laplace(mat) -> TriLaurent:
    """Determinant by memoised cofactor expansion (division free)."""
    n = len(mat)
    if n == 0:
        return TriLaurent.one()
    cache: dict[tuple[int, ...], TriLaurent] = {}

    def rec(cols: tuple[int, ...]) -> TriLaurent:
        if not cols:
            return TriLaurent.one()
        if cols in cache:
            return cache[cols]
        i = n - len(cols)
        acc = TriLaurent.zero()
        for pos, j in enumerate(cols):
            e = mat[i][j]
            if e.is_zero():
                continue
            sub = rec(cols[:pos] + cols[pos + 1 :])
            term = e * sub
            acc = acc + (term if pos % 2 == 0 else -term)
        cache[cols] = acc
        return acc

    return rec(tuple(range(n)))


def h_poly(w: BraidWord) -> TriLaurent:
    """H(s, t, q) = det(Psi(w) - I)."""
    mat = psi(w)
    one = TriLaurent.one()
    for i in range(w.k):
        mat[i][i] = mat[i][i] - one
    return _det_laplace(mat)


def h_hat(w: BraidWord) -> TriLaurent:
    """Normalised polynomial (-1)^(writhe + virtual count) * H, reported
    with the canonical (st)-shift (lowest s-exponent zero)."""
    h = h_poly(w)
    if (w.writhe() + w.virtual_count()) % 2:
        h = -h
    return h.canonical_st()


def h_hat_raw(w: BraidWord) -> TriLaurent:
    """As h_hat but without the (st)-normalisation (used by the exact
    periodicity congruence)."""
    h = h_poly(w)
    if (w.writhe() + w.virtual_count()) % 2:
        h = -h
    return h


def q_span(f: TriLaurent, modulus: int | None = None) -> int:
    """Width in the q-variable, optionally after reduction mod p."""
    if modulus is not None:
        f = f.mod(modulus)
    if f.is_zero():
        raise ZeroPolynomialError("q-span of the zero polynomial")
    exps = f.exponents(2)
    return exps[-1] - exps[0]


def divisible_by_tq_qs(f: TriLaurent) -> bool:
    """Whether (1 - tq)(q - s) divides f."""
    one_minus_tq = TriLaurent({(0, 0, 0): 1, (0, 1, 1): -1})
    q_minus_s = TriLaurent({(0, 0, 1): 1, (1, 0, 0): -1})
    g = f.div_or_none(one_minus_tq)
    if g is None:
        return False
    return g.div_or_none(q_minus_s) is not None


def equal_up_to_st(a: TriLaurent, b: TriLaurent) -> bool:
    """a == (st)^m b for some integer m."""
    if a.is_zero() or b.is_zero():
        return a.is_zero() and b.is_zero()
    return a.canonical_st() == b.canonical_st()


# -- period bounds from the virtual crossing number -------------------------


def v_period_bound(v: int, p: int) -> int:
    """Largest r with p^r <= v (0 when even p exceeds v)."""
    from .circulant import is_prime

    if not is_prime(p):
        from .errors import NotPrimeError

        raise NotPrimeError(f"{p} is not prime")
    r = 0
    q = p
    while q <= v:
        r += 1
        q *= p
    return r


def admissible_periods(v: int, horizon: int) -> list[int]:
    """Periods n <= horizon all of whose maximal prime-power parts are
    at most v."""
    from .circulant import prime_power_root

    def parts(n):
        out = []
        d = 2
        while d * d <= n:
            if n % d == 0:
                pk = 1
                while n % d == 0:
                    pk *= d
                    n //= d
                out.append(pk)
            d += 1
        if n > 1:
            out.append(n)
        return out

    return [n for n in range(2, horizon + 1) if all(pk <= v for pk in parts(n))]


def robin_bound(v: int) -> float:
    """Closed-form reference bound exp(v^1.3841) on any period."""
    return exp(v**1.3841)
