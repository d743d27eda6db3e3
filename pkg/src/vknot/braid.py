"""Virtual braid words, closures, and braiding algorithms.

Words in VB_k are sequences of classical letters s<i> (sigma_i),
S<i> (sigma_i inverse) and virtual letters v<i> (tau_i), with strands
numbered 1..k left to right and braids read top to bottom.

Crossing geometry: at sigma_i the strand entering on the *left* passes
over and the crossing sign is +1; at sigma_i^-1 the right strand passes
over and the sign is -1.  This is the calibration for which the
closures of the bundled braid certificates reproduce the published
Alexander polynomials; the mirror convention negates every exponent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import (
    EmptyCodeError,
    NotAKnotError,
    NotPeriodicError,
    ParseError,
)
from .gauss import (
    GaussDiagram,
    PeriodStructure,
    _from_tokens,
    detect_period,
    equivalent_codes,
    quotient,
    rotate,
)
from .laurent import LaurentPoly, assoc_normalize

# a letter is ("s", i, +-1) for sigma_i^{+-1} or ("v", i, 0) for tau_i


@dataclass(frozen=True)
class BraidWord:
    """A word in the virtual braid group VB_k."""

    k: int
    letters: tuple[tuple[str, int, int], ...]

    def __post_init__(self):
        for kind, i, _ in self.letters:
            if not 1 <= i <= self.k - 1:
                raise ParseError(f"letter index {i} needs k > {i}")

    def __mul__(self, other: "BraidWord") -> "BraidWord":
        if other.k != self.k:
            raise ValueError("strand counts differ")
        return BraidWord(self.k, self.letters + other.letters)

    def __pow__(self, q: int) -> "BraidWord":
        if q < 0:
            raise ValueError("use inverse() first")
        return BraidWord(self.k, self.letters * q)

    def inverse(self) -> "BraidWord":
        inv = []
        for kind, i, s in reversed(self.letters):
            inv.append((kind, i, -s))
        return BraidWord(self.k, tuple(inv))

    def writhe(self) -> int:
        return sum(s for kind, _, s in self.letters if kind == "s")

    def virtual_count(self) -> int:
        return sum(1 for kind, _, _ in self.letters if kind == "v")

    def classical_count(self) -> int:
        return sum(1 for kind, _, _ in self.letters if kind == "s")

    def __str__(self) -> str:
        return word_to_text(self)


def sigma(i: int, k: int, sign: int = 1) -> BraidWord:
    return BraidWord(k, ((("s", i, 1 if sign > 0 else -1)),))


def tau(i: int, k: int) -> BraidWord:
    return BraidWord(k, (("v", i, 0),))


# --------------------------------------------------------------------------
# parsing: ``s1 S2 v3`` with parenthesised powers ``(s1 v2)^3``

_LETTER_RE = re.compile(r"([sSv])(\d+)")
_POWER_RE = re.compile(r"\^(\d+)")


def _tokenize_braid(text: str):
    pos = 0
    while pos < len(text):
        ch = text[pos]
        if ch.isspace():
            pos += 1
            continue
        if ch in "()":
            yield ch
            pos += 1
            continue
        if ch == "^":
            m = _POWER_RE.match(text, pos)
            if not m:
                raise ParseError("'^' must be followed by an integer")
            yield ("^", int(m.group(1)))
            pos = m.end()
            continue
        m = _LETTER_RE.match(text, pos)
        if not m:
            raise ParseError(f"bad braid syntax near {text[pos:]!r}")
        kind, i = m.group(1), int(m.group(2))
        if i < 1:
            raise ParseError("letter indices start at 1")
        if kind == "v":
            yield ("v", i, 0)
        else:
            yield ("s", i, 1 if kind == "s" else -1)
        pos = m.end()


def parse_braid(text: str, k: int | None = None) -> BraidWord:
    """Parse a braid word; k defaults to 1 + the largest index used."""
    tokens = list(_tokenize_braid(text))
    letters, rest = _parse_group(tokens, top=True)
    if rest:
        raise ParseError("unbalanced ')'")
    max_i = max((i for _, i, _ in letters), default=1)
    if k is None:
        k = max_i + 1
    if max_i >= k:
        raise ParseError(f"index {max_i} out of range for {k} strands")
    return BraidWord(max(k, 2), tuple(letters))


def _parse_group(tokens, top: bool):
    letters: list[tuple[str, int, int]] = []
    while tokens:
        tok = tokens[0]
        if tok == ")":
            if top:
                raise ParseError("unbalanced ')'")
            return letters, tokens
        tokens = tokens[1:]
        if tok == "(":
            inner, tokens = _parse_group(tokens, top=False)
            if not tokens or tokens[0] != ")":
                raise ParseError("unbalanced '('")
            tokens = tokens[1:]
            power = 1
            if tokens and isinstance(tokens[0], tuple) and tokens[0][0] == "^":
                power = tokens[0][1]
                tokens = tokens[1:]
            letters.extend(inner * power)
        elif isinstance(tok, tuple) and tok[0] == "^":
            if not letters:
                raise ParseError("power without a base")
            base = [letters.pop()]
            letters.extend(base * tok[1])
        else:
            letters.append(tok)
    return letters, tokens


def word_to_text(w: BraidWord) -> str:
    parts = []
    for kind, i, s in w.letters:
        if kind == "v":
            parts.append(f"v{i}")
        else:
            parts.append(f"{'s' if s > 0 else 'S'}{i}")
    return " ".join(parts)


# --------------------------------------------------------------------------
# permutations and closure


def underlying_permutation(w: BraidWord) -> tuple[int, ...]:
    """perm[a] = bottom position of the strand entering top position a
    (0-based)."""
    perm = list(range(w.k))
    # track the journey of each strand; letters act on positions
    out = []
    for a in range(w.k):
        pos = a
        for kind, i, _ in w.letters:
            if pos == i - 1:
                pos = i
            elif pos == i:
                pos = i - 1
        out.append(pos)
    return tuple(out)


def _cycle_count(perm: tuple[int, ...]) -> int:
    seen = [False] * len(perm)
    cycles = 0
    for a in range(len(perm)):
        if seen[a]:
            continue
        cycles += 1
        while not seen[a]:
            seen[a] = True
            a = perm[a]
    return cycles


def closure_components(w: BraidWord) -> int:
    return _cycle_count(underlying_permutation(w))


def _over_is_left(sign: int) -> bool:
    """Side of the over-strand for a classical letter of this sign."""
    return sign > 0


def closure(w: BraidWord) -> GaussDiagram:
    """Gauss code of the braid closure, traversed from the top of
    strand 1; classical letters become chords, virtual letters none."""
    d, _ = closure_trace(w)
    return d


def closure_trace(w: BraidWord):
    """Closure diagram plus per-chord trace data for cross-checks.

    Returns ``(diagram, info)`` where ``info["letter_of_chord"][c]`` is
    the word index of the letter realising chord c, and
    ``info["under_out_arc"][c]`` is the internal arc id (from
    :func:`trace_arcs`) born at c's under-passage.
    """
    if closure_components(w) != 1:
        raise NotAKnotError("closure has more than one component")
    classical = [idx for idx, (kind, _, _) in enumerate(w.letters) if kind == "s"]
    tokens: list[tuple[str, int, int]] = []
    pos = 0
    start = 0
    while True:
        for idx, (kind, i, s) in enumerate(w.letters):
            left, right = i - 1, i
            if pos not in (left, right):
                continue
            if kind == "v":
                pos = right if pos == left else left
                continue
            over_left = _over_is_left(s)
            on_left = pos == left
            over = on_left == over_left
            tokens.append(("O" if over else "U", idx, s))
            pos = right if on_left else left
        if pos == start:
            break
    if len(tokens) != 2 * len(classical):
        raise NotAKnotError("traversal did not cover every crossing")
    d = _from_tokens(tokens)
    # recover which chord id each letter became
    heads_by_label: dict[int, int] = {}
    for p, (kind, label, s) in enumerate(tokens):
        if kind == "U":
            heads_by_label[label] = p
    head_order = sorted(heads_by_label, key=heads_by_label.get)
    letter_of_chord = tuple(head_order)
    info = {"letter_of_chord": letter_of_chord, "tokens": tokens}
    return d, info


# --------------------------------------------------------------------------
# arc tracing (shared by the Fox-calculus matrices)


def trace_arcs(w: BraidWord):
    """Walk the strands of the open braid, labelling its arcs.

    Arcs are ``("x", j)`` for the top of strand j (1-based) and
    ``("c", idx)`` for the arc born at the under-passage of the
    classical letter ``idx``.  Returns ``(relations, bottoms)`` where
    relations[m] = (letter index, sign, under-in arc, over arc, out arc)
    for the m-th classical letter, and bottoms is the tuple of arcs at
    the bottom positions 1..k.
    """
    current = [("x", j + 1) for j in range(w.k)]
    relations = []
    for idx, (kind, i, s) in enumerate(w.letters):
        left, right = i - 1, i
        if kind == "v":
            current[left], current[right] = current[right], current[left]
            continue
        if _over_is_left(s):
            over_pos, under_pos = left, right
        else:
            over_pos, under_pos = right, left
        over_arc = current[over_pos]
        under_in = current[under_pos]
        out_arc = ("c", idx)
        relations.append((idx, s, under_in, over_arc, out_arc))
        # strands swap sides: the over arc survives, the under arc ends
        current[under_pos] = over_arc
        current[over_pos] = out_arc
    return relations, tuple(current)


# --------------------------------------------------------------------------
# Alexander numbering of braids


@dataclass(frozen=True)
class BraidNumbering:
    """Strand numbers at the top of an almost classical braid.

    ``f«t» = sum_i t^lambda_i`` is the strand-count generating
    polynomial entering the periodicity congruence; it is well defined
    up to a unit and reported both raw (lambda_1 = 0) and canonical.
    """

    lambdas: tuple[int, ...]

    @property
    def f(self) -> LaurentPoly:
        coeffs: dict[int, int] = {}
        for lam in self.lambdas:
            coeffs[lam] = coeffs.get(lam, 0) + 1
        return LaurentPoly(coeffs)

    @property
    def f_canonical(self) -> LaurentPoly:
        return assoc_normalize(self.f)


@dataclass(frozen=True)
class NumberingConflict:
    """Inconsistent slot-constraint system: the offending relation."""

    detail: str


class _OffsetUnionFind:
    """Union-find storing val(a) - val(root) offsets."""

    def __init__(self, n: int):
        self.parent = list(range(n))
        self.offset = [0] * n  # val(i) = val(parent) + offset

    def find(self, a: int) -> tuple[int, int]:
        if self.parent[a] == a:
            return a, 0
        root, off = self.find(self.parent[a])
        self.parent[a] = root
        self.offset[a] += off
        return root, self.offset[a]

    def union(self, a: int, b: int, diff: int) -> bool:
        """Impose val(a) - val(b) = diff; False on contradiction."""
        ra, oa = self.find(a)
        rb, ob = self.find(b)
        if ra == rb:
            return oa - ob == diff
        self.parent[rb] = ra
        self.offset[rb] = oa - ob - diff
        return True


def braid_numbering(w: BraidWord):
    """Solve the slot-constraint system for the strand numbers.

    Slots carry symbolic values; a virtual letter swaps the two slot
    contents, a classical letter (either sign) requires the left slot
    to exceed the right by one and leaves the contents in place, and
    the closure requires the final contents to equal the initial ones
    slotwise.  Total: returns a conflict witness when inconsistent.
    """
    k = w.k
    uf = _OffsetUnionFind(k)
    slots = [(j, 0) for j in range(k)]  # (top variable, additive offset)
    for idx, (kind, i, s) in enumerate(w.letters):
        left, right = i - 1, i
        if kind == "v":
            slots[left], slots[right] = slots[right], slots[left]
            continue
        (va, oa), (vb, ob) = slots[left], slots[right]
        # value(left slot) = value(right slot) + 1
        if not uf.union(va, vb, (ob + 1) - oa):
            return NumberingConflict(
                detail=f"letter {idx} forces an inconsistent cycle"
            )
    for j in range(k):
        (va, oa) = slots[j]
        if not uf.union(va, j, -oa):
            return NumberingConflict(detail=f"closure of strand {j + 1}")
    # ground every component; the component of strand 1 is pinned by
    # lambda_1 = 0 and split components default to 0 as well
    root_val: dict[int, int] = {}
    lambdas = []
    for j in range(k):
        root, off = uf.find(j)
        if root not in root_val:
            root_val[root] = 0
        lambdas.append(root_val[root] + off)
    base = lambdas[0]
    return BraidNumbering(lambdas=tuple(v - base for v in lambdas))


def crossing_numbers(w: BraidWord, numbering: BraidNumbering):
    """Per classical letter: (number on the under-in arc, sign).

    Feeds the row-dependence units of the Fox matrices.
    """
    vals = list(numbering.lambdas)
    out = []
    for kind, i, s in w.letters:
        left, right = i - 1, i
        if kind == "v":
            vals[left], vals[right] = vals[right], vals[left]
            continue
        under_pos = right if _over_is_left(s) else left
        out.append((vals[under_pos], s))
        # numbers stay with the slots at a classical crossing
    return out


# --------------------------------------------------------------------------
# braiding algorithms


def _left_slot_kind(sign: int) -> str:
    """Token kind entering a crossing box on the left."""
    return "O" if _over_is_left(sign) else "U"


def _tau_word_for(perm_targets: list[int], offset: int = 0):
    """Adjacent-transposition word realising top position a ->
    bottom position perm_targets[a] (0-based), by insertion sort."""
    n = len(perm_targets)
    cur = list(range(n))  # cur[pos] = strand currently at pos
    letters = []
    want = [0] * n  # want[pos] = strand that must end at pos
    for a, b in enumerate(perm_targets):
        want[b] = a
    for p in range(n):
        q = cur.index(want[p])
        while q > p:
            letters.append(("v", offset + q, 0))
            cur[q - 1], cur[q] = cur[q], cur[q - 1]
            q -= 1
    return letters


def braid_from_code(code: GaussDiagram) -> BraidWord:
    """Braiding algorithm: a word on 2n strands whose closure has the
    given Gauss code (up to basepoint choice for the first passage).

    The n crossings sit side by side at strand pairs (2i-1, 2i) with
    the over-strand entering on the side its sign dictates; the code's
    consecutive passages determine a connecting permutation realised by
    virtual letters.
    """
    if code.n == 0:
        raise EmptyCodeError("cannot braid the empty code")
    tokens = code.tokens()
    # rotate so the first passage enters its crossing on the left
    shift = None
    for s, (kind, c, sign) in enumerate(tokens):
        if kind == _left_slot_kind(sign):
            shift = s
            break
    if shift is None:  # cannot happen: every chord has both kinds
        raise AssertionError("no compatible starting passage")
    d = rotate(code, shift)
    tokens = d.tokens()
    order: list[int] = []
    for kind, c, sign in tokens:
        if c not in order:
            order.append(c)
    slot = {c: i for i, c in enumerate(order)}  # crossing box index, 0-based

    def top_pos(kind: str, c: int) -> int:
        left = _left_slot_kind(d.signs[c]) == kind
        return 2 * slot[c] + (0 if left else 1)

    def out_pos(kind: str, c: int) -> int:
        left_in = _left_slot_kind(d.signs[c]) == kind
        return 2 * slot[c] + (1 if left_in else 0)

    n = d.n
    rho = [0] * (2 * n)
    for j, (kind, c, sign) in enumerate(tokens):
        nk, nc, _ = tokens[(j + 1) % (2 * n)]
        rho[out_pos(kind, c)] = top_pos(nk, nc)
    letters = [("s", 2 * slot[c] + 1, d.signs[c]) for c in order]
    letters += _tau_word_for(rho)
    return BraidWord(2 * n, tuple(letters))


def connecting_permutation(code: GaussDiagram) -> tuple[int, ...]:
    """The virtual wiring of :func:`braid_from_code` as a permutation."""
    w = braid_from_code(code)
    n = code.n
    tail = BraidWord(w.k, tuple(w.letters[n:]))
    return underlying_permutation(tail)


def periodic_braid_from_code(code: GaussDiagram, q: int) -> BraidWord:
    """Equivariant braiding: beta with closure(beta^q) the given code.

    The diagram is laid out radially with the crossing of chord c at
    the angle of its head and every connecting arc winding forward
    monotonically to its next passage; one sector is returned.  All
    bookkeeping is rotation invariant, so the sweep of the full circle
    produces the sector word q times, which is asserted, as is the
    round trip closure(beta^q) ~ code.
    """
    ps = detect_period(code, q)
    if ps is None:
        raise NotPeriodicError(f"code is not {q}-periodic")
    if code.n == 0:
        raise EmptyCodeError("cannot braid the empty code")
    tokens = code.tokens()
    m = 2 * code.n
    block = ps.token_shift

    # orbit index of each chord (rotation-invariant tiebreak for sorting)
    orbit = {}
    for start in range(code.n):
        if start in orbit:
            continue
        members = [start]
        c = ps.crossing_map[start]
        while c != start:
            members.append(c)
            c = ps.crossing_map[c]
        for c in members:
            orbit[c] = min(members)

    # arcs: from the passage at position j to the passage at j+1
    def arc_length(j: int) -> int:
        src = code.heads[tokens[j][1]]
        tgt = code.heads[tokens[(j + 1) % m][1]]
        return ((tgt - src - 1) % m) + 1

    # pool entries: (arrival_abs, target_chord, target_kind, source_j)
    pool = []
    for j in range(m):
        src = code.heads[tokens[j][1]]
        arrive = src + arc_length(j)
        if arrive >= m:  # wraps past the base ray: a strand of the braid
            nk, nc, _ = tokens[(j + 1) % m]
            pool.append([arrive - m, nc, nk])
    k = len(pool)
    if k < 2:
        raise AssertionError("degenerate sweep pool")

    def key(entry, angle):
        arrive, c, kind = entry
        return (arrive - angle, orbit[c], kind)

    letters: list[tuple[str, int, int]] = []

    def sort_pool(angle):
        # bubble sort emitting virtual letters for each adjacent swap
        changed = True
        while changed:
            changed = False
            for p in range(k - 1):
                if key(pool[p], angle) > key(pool[p + 1], angle):
                    pool[p], pool[p + 1] = pool[p + 1], pool[p]
                    letters.append(("v", p + 1, 0))
                    changed = True

    head_at = {code.heads[c]: c for c in range(code.n)}
    tail_pos_of = {c: code.tails[c] for c in range(code.n)}
    pool.sort(key=lambda e: key(e, 0))
    for a in range(m):
        if a in head_at:
            x = head_at[a]
            arriving = [p for p, e in enumerate(pool) if e[0] == a]
            if len(arriving) != 2 or any(pool[p][1] != x for p in arriving):
                raise AssertionError("sweep arrival mismatch")
            # bring the pair to positions 0, 1
            for target, p in ((0, min(arriving)), (1, max(arriving))):
                while p > target:
                    pool[p - 1], pool[p] = pool[p], pool[p - 1]
                    letters.append(("v", p, 0))
                    p -= 1
            left_kind = _left_slot_kind(code.signs[x])
            if pool[0][2] != left_kind:
                pool[0], pool[1] = pool[1], pool[0]
                letters.append(("v", 1, 0))
            letters.append(("s", 1, code.signs[x]))
            # continuations leave on the side opposite their entry; the
            # under-out arc starts at the head token, the over-out arc
            # at the tail token
            cont_under = tokens[(a + 1) % m]
            cont_over = tokens[(tail_pos_of[x] + 1) % m]
            under_entry = [a + arc_length(a), cont_under[1], cont_under[0]]
            over_entry = [
                a + arc_length(tail_pos_of[x]),
                cont_over[1],
                cont_over[0],
            ]
            if left_kind == "U":
                pool[0], pool[1] = over_entry, under_entry
            else:
                pool[0], pool[1] = under_entry, over_entry
            sort_pool(a)
        if (a + 1) % block == 0:
            sort_pool(a + 1)
    per = len(letters) // q
    if letters[:per] * q != letters:
        raise AssertionError("sweep word is not periodic")
    beta = BraidWord(k, tuple(letters[:per]))
    if not equivalent_codes(closure(beta**q), code):
        raise AssertionError("periodic braiding round trip failed")
    return beta


def quotient_of_braid(code: GaussDiagram, q: int) -> GaussDiagram:
    """Quotient knot of a periodic code (convenience wrapper)."""
    ps = detect_period(code, q)
    if ps is None:
        raise NotPeriodicError(f"code is not {q}-periodic")
    return quotient(code, ps)
