"""Gauss codes and Gauss diagrams of virtual knots.

A diagram with n chords is a sequence of 2n passages around the base
circle; each chord appears once as an over-passage (token ``O``, the
arrow tail) and once as an under-passage (token ``U``, the arrow head),
with a sign shared by both passages.  Internally chords are indexed
0..n-1 in the order their heads are met from the basepoint, which is
also the row order of the Wirtinger/Jacobian conventions downstream.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    InvalidPeriodError,
    LabelError,
    NotDivisibleError,
    ParseError,
    SignMismatchError,
)

_TOKEN_RE = re.compile(r"\s*([OU])\s*(\d+)\s*([+-])\s*")


@dataclass(frozen=True)
class GaussDiagram:
    """Chords with signed head (U) and tail (O) positions on 0..2n-1."""

    heads: tuple[int, ...]
    tails: tuple[int, ...]
    signs: tuple[int, ...]

    @property
    def n(self) -> int:
        return len(self.heads)

    def tokens(self) -> list[tuple[str, int, int]]:
        """Passages in circle order as (kind, chord, sign)."""
        out: list[tuple[str, int, int]] = [None] * (2 * self.n)
        for c in range(self.n):
            out[self.heads[c]] = ("U", c, self.signs[c])
            out[self.tails[c]] = ("O", c, self.signs[c])
        return out

    def writhe(self) -> int:
        return sum(self.signs)

    def __str__(self) -> str:
        return to_text(self)


def _from_tokens(tokens: list[tuple[str, object, int]]) -> GaussDiagram:
    """Build a diagram from (kind, label, sign) passages, re-indexing
    chords by head order."""
    heads: dict[object, int] = {}
    tails: dict[object, int] = {}
    signs: dict[object, int] = {}
    for pos, (kind, label, sign) in enumerate(tokens):
        store = heads if kind == "U" else tails
        if label in store:
            raise LabelError(f"label {label!r} appears twice as {kind}")
        store[label] = pos
        if label in signs and signs[label] != sign:
            raise SignMismatchError(f"label {label!r} has mismatched signs")
        signs[label] = sign
    if set(heads) != set(tails):
        missing = set(heads) ^ set(tails)
        raise LabelError(f"labels without both passages: {sorted(map(str, missing))}")
    order = sorted(heads, key=heads.get)
    return GaussDiagram(
        heads=tuple(heads[l] for l in order),
        tails=tuple(tails[l] for l in order),
        signs=tuple(signs[l] for l in order),
    )


def parse_gauss(text: str) -> GaussDiagram:
    """Parse a code such as ``O1+U2+O3+U1+O2+U3+`` (empty = unknot)."""
    s = text.strip()
    if not s:
        return GaussDiagram((), (), ())
    tokens = []
    pos = 0
    while pos < len(s):
        m = _TOKEN_RE.match(s, pos)
        if not m:
            raise ParseError(f"bad Gauss-code token near {s[pos:]!r}")
        kind, label, sign = m.group(1), int(m.group(2)), m.group(3)
        tokens.append((kind, label, 1 if sign == "+" else -1))
        pos = m.end()
    return _from_tokens(tokens)


def to_text(d: GaussDiagram) -> str:
    """Canonical code: traversal from the basepoint, chords labelled
    1..n by first appearance."""
    labels: dict[int, int] = {}
    parts = []
    for kind, c, sign in d.tokens():
        if c not in labels:
            labels[c] = len(labels) + 1
        parts.append(f"{kind}{labels[c]}{'+' if sign > 0 else '-'}")
    return "".join(parts)


def rotate(d: GaussDiagram, shift: int) -> GaussDiagram:
    """Move the basepoint forward by ``shift`` passages."""
    m = 2 * d.n
    if m == 0:
        return d
    shift %= m
    return GaussDiagram(
        heads=tuple((h - shift) % m for h in d.heads),
        tails=tuple((t - shift) % m for t in d.tails),
        signs=d.signs,
    )


def equivalent_codes(a: GaussDiagram, b: GaussDiagram) -> bool:
    """Equality up to basepoint rotation and chord relabelling."""
    if a.n != b.n:
        return False
    if a.n == 0:
        return True
    ta = [(k, s) for k, _, s in a.tokens()]
    for shift in range(2 * b.n):
        rb = rotate(b, shift)
        if [(k, s) for k, _, s in rb.tokens()] != ta:
            continue
        mapping: dict[int, int] = {}
        ok = True
        for (ka, ca, sa), (kb, cb, sb) in zip(a.tokens(), rb.tokens()):
            if mapping.setdefault(ca, cb) != cb:
                ok = False
                break
        if ok:
            return True
    return False


# --------------------------------------------------------------------------
# chord index and Alexander numbering


def _between(m: int, start: int, stop: int) -> range:
    """Positions strictly between start and stop going forward (cyclic)."""
    if start <= stop:
        return range(start + 1, stop)
    return range(start + 1, stop + m)


def chord_index(d: GaussDiagram, i: int) -> int:
    """Signed, direction-weighted count of the chords crossing chord i.

    A chord crossing c_i counts with its sign when its head lies on the
    forward arc from c_i's tail to its head, and with the opposite sign
    otherwise; this is the convention for which an all-zero index is the
    same as Alexander numberability.
    """
    if not 0 <= i < d.n:
        raise IndexError(f"chord {i} out of range")
    m = 2 * d.n
    arc = {p % m for p in _between(m, d.tails[i], d.heads[i])}
    total = 0
    for j in range(d.n):
        if j == i:
            continue
        head_in = d.heads[j] in arc
        tail_in = d.tails[j] in arc
        if head_in == tail_in:
            continue  # does not cross c_i
        total += d.signs[j] if head_in else -d.signs[j]
    return total


def index_multiset(d: GaussDiagram) -> list[int]:
    return sorted(chord_index(d, i) for i in range(d.n))


@dataclass(frozen=True)
class Numbering:
    """Alexander numbering of the short arcs.

    ``values[i]`` labels the arc between passages i and i+1 (cyclic);
    the arc containing the basepoint gets 0.
    """

    values: tuple[int, ...]

    def before(self, pos: int) -> int:
        """Label of the short arc entering the passage at ``pos``."""
        n = len(self.values)
        return 0 if n == 0 else self.values[(pos - 1) % n]


@dataclass(frozen=True)
class NotNumberable:
    """Witness for failure: the chords of nonzero index."""

    odd_chords: tuple[int, ...]


def alexander_numbering(d: GaussDiagram):
    """Numbering of the short arcs, or the offending chords.

    Traversing the circle, the label jumps by +sign at a head and by
    -sign at a tail; the numbering is valid when at every chord the arc
    entering the tail exceeds the arc entering the head by the sign.
    That consistency holds exactly when every chord index vanishes.
    """
    if d.n == 0:
        return Numbering(values=())
    odd = tuple(i for i in range(d.n) if chord_index(d, i) != 0)
    if odd:
        return NotNumberable(odd_chords=odd)
    m = 2 * d.n
    incr = [0] * m
    for c in range(d.n):
        incr[d.heads[c]] = d.signs[c]
        incr[d.tails[c]] = -d.signs[c]
    values = [0] * m
    acc = 0
    for pos in range(m):
        acc += incr[pos]
        values[pos] = acc
    base = values[m - 1]
    values = [v - base for v in values]  # arc after the basepoint gets 0
    numbering = Numbering(values=tuple(values))
    for c in range(d.n):  # re-verify the local condition at every chord
        if numbering.before(d.tails[c]) != numbering.before(d.heads[c]) + d.signs[c]:
            raise AssertionError("numbering accumulation is inconsistent")
    return numbering


def is_almost_classical(d: GaussDiagram) -> bool:
    return isinstance(alexander_numbering(d), Numbering)


# --------------------------------------------------------------------------
# periodicity


@dataclass(frozen=True)
class PeriodStructure:
    """Rotation symmetry of order q of a Gauss code.

    ``crossing_map[i]`` is the chord that chord i is carried to by the
    rotation; ``token_shift`` is the corresponding shift of the passage
    sequence (2n/q positions).
    """

    q: int
    crossing_map: tuple[int, ...]
    token_shift: int


def detect_period(d: GaussDiagram, q: int):
    """Find the rotation-by-2n/q symmetry, or None.

    The periodicity of a cyclic code does not depend on the basepoint:
    the symmetry condition is checked over all passages at once.
    """
    if q < 2:
        raise NotDivisibleError("periods start at 2")
    if d.n == 0:
        return PeriodStructure(q=q, crossing_map=(), token_shift=0)
    if d.n % q:
        raise NotDivisibleError(f"{q} does not divide {d.n}")
    m = 2 * d.n
    shift = m // q
    tokens = d.tokens()
    mapping: dict[int, int] = {}
    for pos, (kind, c, sign) in enumerate(tokens):
        kind2, c2, sign2 = tokens[(pos + shift) % m]
        if kind2 != kind or sign2 != sign:
            return None
        if mapping.setdefault(c, c2) != c2:
            return None
    cmap = tuple(mapping[c] for c in range(d.n))
    # the induced permutation must consist of q-cycles
    seen = [False] * d.n
    for start in range(d.n):
        if seen[start]:
            continue
        length = 0
        c = start
        while not seen[c]:
            seen[c] = True
            c = cmap[c]
            length += 1
        if length != q:
            return None
    return PeriodStructure(q=q, crossing_map=cmap, token_shift=shift)


def all_periods(d: GaussDiagram) -> list[int]:
    """Every q >= 2 admitting a period structure."""
    out = []
    for q in range(2, d.n + 1):
        if d.n % q == 0 and detect_period(d, q) is not None:
            out.append(q)
    return out


def quotient(d: GaussDiagram, p: PeriodStructure) -> GaussDiagram:
    """Close up one fundamental domain of a periodic code."""
    if p.q < 2:
        raise InvalidPeriodError("quotient requires q >= 2")
    if d.n == 0:
        return d
    if d.n % p.q or p.token_shift != 2 * d.n // p.q:
        raise InvalidPeriodError("period structure does not fit the diagram")
    if detect_period(d, p.q) is None:
        raise InvalidPeriodError("diagram is not periodic with this q")
    # orbit representatives: smallest chord id in each rotation orbit
    rep: dict[int, int] = {}
    for start in range(d.n):
        if start in rep:
            continue
        orbit = [start]
        c = p.crossing_map[start]
        while c != start:
            orbit.append(c)
            c = p.crossing_map[c]
        r = min(orbit)
        for c in orbit:
            rep[c] = r
    tokens = d.tokens()[: p.token_shift]
    return _from_tokens([(kind, rep[c], sign) for kind, c, sign in tokens])


def lift(d: GaussDiagram, q: int) -> GaussDiagram:
    """Repeat the code q times with fresh labels: the q-periodic cover."""
    tokens = []
    for j in range(q):
        for kind, c, sign in d.tokens():
            tokens.append((kind, (c, j), sign))
    return _from_tokens(tokens)
