"""Circulant and block-circulant matrices in prime characteristic.

For a prime power q = p^r the cyclic-shift circulant P of size q over
F_p is conjugate to the full Jordan block J by an explicit matrix of
binomial coefficients, and conjugating any block circulant
C(A_0, ..., A_{q-1}) by the same matrix produces an upper-triangular
band matrix whose (j, j+l) block is sum_{i>=l} binom(i, l) A_i.

Blocks may live in any commutative coefficient ring the library
provides (plain residues, or matrices over F_p[t, t^-1]); the
conjugator acts through scalar multiplication by F_p residues.
"""

from __future__ import annotations

from .errors import NotPrimeError, NotPrimePowerError
from .laurent import FpLaurent


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def prime_power_root(q: int):
    """(p, r) with q = p^r, or None."""
    if q < 2:
        return None
    p = 2
    while p * p <= q:
        if q % p == 0:
            r = 0
            m = q
            while m % p == 0:
                m //= p
                r += 1
            return (p, r) if m == 1 else None
        p += 1
    return (q, 1)


def lucas_binom(a: int, b: int, p: int) -> int:
    """Binomial coefficient mod p by base-p digits (Lucas), with the
    conventions binom(a, b) = 0 for a < b and binom(-1, b) = (-1)^b."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    if a == -1:
        return pow(-1, b, p)
    if a < 0 or b < 0 or b > a:
        return 0
    out = 1
    while a or b:
        da, db = a % p, b % p
        if db > da:
            return 0
        num = den = 1
        for i in range(db):
            num = num * (da - i) % p
            den = den * (i + 1) % p
        out = out * num * pow(den, -1, p) % p
        a //= p
        b //= p
    return out


def x_matrix(p: int, r: int) -> list[list[int]]:
    """X with X[i][j] = binom(i-2, j-1) (1-based), size p^r over F_p."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    q = p**r
    return [
        [lucas_binom(i - 2, j - 1, p) for j in range(1, q + 1)]
        for i in range(1, q + 1)
    ]


def x_inverse(p: int, r: int) -> list[list[int]]:
    """X^-1 with entries binom(p^r - j + 1, p^r - i) (1-based)."""
    if not is_prime(p):
        raise NotPrimeError(f"{p} is not prime")
    q = p**r
    return [
        [lucas_binom(q - j + 1, q - i, p) for j in range(1, q + 1)]
        for i in range(1, q + 1)
    ]


def shift_matrix(q: int) -> list[list[int]]:
    """P = C(0, 1, 0, ..., 0)."""
    return [[1 if j == (i + 1) % q else 0 for j in range(q)] for i in range(q)]


def jordan_matrix(q: int) -> list[list[int]]:
    """Unipotent full Jordan block J."""
    return [
        [1 if j == i or j == i + 1 else 0 for j in range(q)] for i in range(q)
    ]


def fp_matmul(a, b, p: int):
    n, m, l = len(a), len(b[0]), len(b)
    return [
        [sum(a[i][k] * b[k][j] for k in range(l)) % p for j in range(m)]
        for i in range(n)
    ]


def fp_identity(n: int):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


# -- block circulants over an arbitrary coefficient module ------------------
#
# a "block" is anything with +, scalar action by integers mod p (via
# repeated addition is too slow, so blocks must implement scale(c)), and
# a zero of the right shape.


class ScalarBlock:
    """F_p residue wrapped as a 1x1 block."""

    __slots__ = ("p", "value")

    def __init__(self, p: int, value: int):
        self.p = p
        self.value = value % p

    def __add__(self, other):
        return ScalarBlock(self.p, self.value + other.value)

    def scale(self, c: int):
        return ScalarBlock(self.p, self.value * c)

    def is_zero(self):
        return self.value == 0

    def __eq__(self, other):
        return (
            isinstance(other, ScalarBlock)
            and self.p == other.p
            and self.value == other.value
        )

    def __repr__(self):
        return f"ScalarBlock({self.value} mod {self.p})"


class PolyBlock:
    """Matrix over F_p[t, t^-1] as a block."""

    __slots__ = ("p", "rows")

    def __init__(self, p: int, rows):
        self.p = p
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def zero(cls, p: int, n: int, m: int):
        z = FpLaurent(p, {})
        return cls(p, [[z] * m for _ in range(n)])

    def __add__(self, other):
        return PolyBlock(
            self.p,
            [
                [a + b for a, b in zip(ra, rb)]
                for ra, rb in zip(self.rows, other.rows)
            ],
        )

    def scale(self, c: int):
        return PolyBlock(
            self.p, [[e.scale(c) for e in row] for row in self.rows]
        )

    def is_zero(self):
        return all(e.is_zero() for row in self.rows for e in row)

    def __eq__(self, other):
        return isinstance(other, PolyBlock) and self.rows == other.rows

    def __repr__(self):
        return f"PolyBlock({self.rows!r})"


def circulant(blocks):
    """C(A_0, ..., A_{n-1}) as an n x n array of blocks."""
    n = len(blocks)
    return [[blocks[(j - i) % n] for j in range(n)] for i in range(n)]


def block_conjugate(blocks, p: int, r: int):
    """X^-1 B X for B = C(A_0, ..., A_{p^r - 1}), computed directly.

    The conjugator has F_p entries acting on blocks by scalars.
    """
    q = p**r
    if len(blocks) != q:
        raise NotPrimePowerError("block count must equal p^r")
    xinv = x_inverse(p, r)
    x = x_matrix(p, r)
    b = circulant(blocks)
    zero = blocks[0].scale(0)

    def scalar_mul(mat_scalar, mat_blocks):
        n = len(mat_scalar)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    c = mat_scalar[i][k]
                    if c:
                        acc = acc + mat_blocks[k][j].scale(c)
                row.append(acc)
            out.append(row)
        return out

    def block_scalar_mul(mat_blocks, mat_scalar):
        n = len(mat_scalar)
        out = []
        for i in range(n):
            row = []
            for j in range(n):
                acc = zero
                for k in range(n):
                    c = mat_scalar[k][j]
                    if c:
                        acc = acc + mat_blocks[i][k].scale(c)
                row.append(acc)
            out.append(row)
        return out

    return block_scalar_mul(scalar_mul(xinv, b), x)


def band_formula(blocks, p: int, r: int):
    """The closed form: entry (j, j+l) is sum_{i=l}^{p^r-1} binom(i, l) A_i,
    and zero below the diagonal."""
    q = p**r
    if len(blocks) != q:
        raise NotPrimePowerError("block count must equal p^r")
    zero = blocks[0].scale(0)
    band = []
    for ell in range(q):
        acc = zero
        for i in range(ell, q):
            c = lucas_binom(i, ell, p)
            if c:
                acc = acc + blocks[i].scale(c)
        band.append(acc)
    out = []
    for i in range(q):
        row = []
        for j in range(q):
            row.append(band[j - i] if j >= i else zero)
        out.append(row)
    return out


def verify_conjugation_identities(p: int, r: int) -> dict[str, bool]:
    """X X^-1 = I and X^-1 P X = J, entrywise over F_p."""
    q = p**r
    x = x_matrix(p, r)
    xinv = x_inverse(p, r)
    ident = fp_matmul(x, xinv, p) == fp_identity(q)
    conj = fp_matmul(fp_matmul(xinv, shift_matrix(q), p), x, p) == jordan_matrix(q)
    return {"x_times_xinv_is_identity": ident, "xinv_p_x_is_jordan": conj}
