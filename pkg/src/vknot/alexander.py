"""Fox-derivative Jacobian matrices and Alexander invariants.

Two presentations of the same module are computed: the diagram route
(one Wirtinger relation per chord, one generator per long arc) and the
braid route (crossing relations plus closure identifications).  Both
have vanishing column sums, and for almost classical inputs an explicit
unit row dependence, so the first elementary ideal is principal and a
single minor computes the Alexander polynomial.

Determinants use fraction-free Bareiss elimination, which stays inside
the Laurent ring; elementary divisors are gcds of fixed-size minors
with an early exit once the running gcd is a unit.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from .braid import (
    BraidWord,
    BraidNumbering,
    braid_numbering,
    closure,
    closure_trace,
    crossing_numbers,
    trace_arcs,
)
from .errors import EmptyCodeError, InvalidPeriodError, NotAlmostClassicalError
from .gauss import (
    GaussDiagram,
    Numbering,
    PeriodStructure,
    alexander_numbering,
    quotient,
)
from .laurent import (
    FpLaurent,
    LaurentPoly,
    assoc_normalize,
    gcd_many,
)


@dataclass(frozen=True)
class PresMatrix:
    """Labelled presentation matrix over the Laurent ring."""

    rows: tuple[str, ...]
    cols: tuple[str, ...]
    entries: tuple[tuple[LaurentPoly, ...], ...]

    @property
    def nrows(self) -> int:
        return len(self.rows)

    @property
    def ncols(self) -> int:
        return len(self.cols)

    def entry(self, i: int, j: int) -> LaurentPoly:
        return self.entries[i][j]

    def column_sums(self) -> tuple[LaurentPoly, ...]:
        out = []
        for j in range(self.ncols):
            acc = LaurentPoly.zero()
            for i in range(self.nrows):
                acc = acc + self.entries[i][j]
            out.append(acc)
        return tuple(out)

    def col_index(self, label: str) -> int:
        return self.cols.index(label)

    def mod(self, p: int) -> tuple[tuple[FpLaurent, ...], ...]:
        return tuple(
            tuple(FpLaurent.from_int_poly(e, p) for e in row)
            for row in self.entries
        )


# --------------------------------------------------------------------------
# determinants and minors


def det_bareiss(rows):
    """Fraction-free determinant over an exact domain.

    Entries must support +, -, *, is_zero and exact division
    (``div_exact``); intermediate divisions are exact by Sylvester's
    identity.
    """
    n = len(rows)
    if n == 0:
        return LaurentPoly.one()
    m = [list(r) for r in rows]
    sample = m[0][0]
    one = (
        FpLaurent.one(sample.p)
        if isinstance(sample, FpLaurent)
        else LaurentPoly.one()
    )
    zero = one - one
    sign = 1
    prev = one
    for k in range(n - 1):
        if m[k][k].is_zero():
            pivot = next(
                (i for i in range(k + 1, n) if not m[i][k].is_zero()), None
            )
            if pivot is None:
                return zero
            m[k], m[pivot] = m[pivot], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.div_exact(prev)
            m[i][k] = zero
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def _minor_rows(entries, rows_idx, cols_idx):
    return [[entries[i][j] for j in cols_idx] for i in rows_idx]


def elementary_divisor(mat: PresMatrix, ell: int, modulus: int | None = None):
    """gcd of the (ncols - ell)-minors, in canonical associate form.

    Conventions: the zero ideal when the minors are larger than the
    matrix, the unit ideal when their size drops to zero or below.
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    entries = mat.mod(modulus) if modulus is not None else mat.entries
    size = mat.ncols - ell
    zero = FpLaurent(modulus, {}) if modulus is not None else LaurentPoly.zero()
    one = FpLaurent.one(modulus) if modulus is not None else LaurentPoly.one()
    if size <= 0:
        return one
    if size > mat.nrows or size > mat.ncols:
        return zero
    if ell >= 2 and max(mat.nrows, mat.ncols) > 12:
        raise ValueError(
            "higher elementary divisors are restricted to matrices of size "
            "at most 12 (minor enumeration grows combinatorially)"
        )
    running = zero
    for rows_idx in itertools.combinations(range(mat.nrows), size):
        for cols_idx in itertools.combinations(range(mat.ncols), size):
            d = det_bareiss(_minor_rows(entries, rows_idx, cols_idx))
            if d.is_zero():
                continue
            running = gcd_many([running, d], modulus)
            if running.is_unit():
                return assoc_normalize(running, modulus)
    if running.is_zero():
        return zero
    return assoc_normalize(running, modulus)


# --------------------------------------------------------------------------
# method 1: the diagram Jacobian


def _long_arc_of(pos: int, heads_sorted, head_rank) -> int:
    """Index of the long arc containing the passage at ``pos``: long arc
    j ends at the head of chord j (0-based)."""
    import bisect

    i = bisect.bisect_left(heads_sorted, pos)
    if i == len(heads_sorted):
        i = 0
    return head_rank[heads_sorted[i]]


def jacobian_gauss(d: GaussDiagram) -> PresMatrix:
    """n x n Fox Jacobian of the Wirtinger presentation read off the
    chords: row i has t^-eps at column i, -1 at column i+1 and
    1 - t^-eps at the over-arc column, entries summed on collision."""
    if d.n == 0:
        raise EmptyCodeError("empty code has no Jacobian")
    n = d.n
    heads_sorted = sorted(d.heads)
    head_rank = {h: c for c, h in enumerate(d.heads)}
    rows = []
    for i in range(n):
        row = [LaurentPoly.zero()] * n
        eps = d.signs[i]
        t_neg = LaurentPoly.t(-eps)
        row[i] = row[i] + t_neg
        row[(i + 1) % n] = row[(i + 1) % n] - LaurentPoly.one()
        k = _long_arc_of(d.tails[i], heads_sorted, head_rank)
        row[k] = row[k] + (LaurentPoly.one() - t_neg)
        rows.append(tuple(row))
    labels = tuple(f"x{j + 1}" for j in range(n))
    return PresMatrix(
        rows=tuple(f"r{i + 1}" for i in range(n)),
        cols=labels,
        entries=tuple(rows),
    )


# --------------------------------------------------------------------------
# method 2: the braid Jacobian


def _braid_arc_labels(w: BraidWord):
    """Name the arcs of the open braid: tops x_j, bottoms z_j, interior
    y_m.  A strand with no under-passage keeps its top name all the way
    down; its bottom label is merged into that generator."""
    relations, bottoms = trace_arcs(w)
    names: dict[tuple, str] = {("x", j + 1): f"x{j + 1}" for j in range(w.k)}
    for pos, arc in enumerate(bottoms):
        if arc[0] == "c":
            names[arc] = f"z{pos + 1}"
    y_count = 0
    for idx, s, under_in, over, out in relations:
        if out not in names:
            y_count += 1
            names[out] = f"y{y_count}"
    cols = (
        [f"x{j + 1}" for j in range(w.k)]
        + [f"y{m + 1}" for m in range(y_count)]
        + sorted(
            (nm for nm in names.values() if nm.startswith("z")),
            key=lambda nm: int(nm[1:]),
        )
    )
    return relations, bottoms, names, cols


def jacobian_braid(w: BraidWord) -> PresMatrix:
    """(n+k) x (n+k) Fox Jacobian of the braid presentation: crossing
    rows R_i then closure rows S_j identifying bottom with top arcs."""
    from .braid import closure_components
    from .errors import NotAKnotError

    if closure_components(w) != 1:
        raise NotAKnotError("closure has more than one component")
    relations, bottoms, names, cols = _braid_arc_labels(w)
    col_of = {nm: j for j, nm in enumerate(cols)}
    rows = []
    row_labels = []
    one = LaurentPoly.one()
    for m, (idx, s, under_in, over, out) in enumerate(relations):
        row = [LaurentPoly.zero()] * len(cols)
        t_neg = LaurentPoly.t(-s)
        row[col_of[names[under_in]]] += t_neg
        row[col_of[names[out]]] -= one
        row[col_of[names[over]]] += one - t_neg
        rows.append(tuple(row))
        row_labels.append(f"R{m + 1}")
    for j in range(w.k):
        row = [LaurentPoly.zero()] * len(cols)
        row[col_of[names[bottoms[j]]]] += one
        row[col_of[f"x{j + 1}"]] -= one
        rows.append(tuple(row))
        row_labels.append(f"S{j + 1}")
    return PresMatrix(
        rows=tuple(row_labels), cols=tuple(cols), entries=tuple(rows)
    )


def merge_closure_columns(mat: PresMatrix) -> PresMatrix:
    """Add each z_j column into x_j and drop the closure rows; this
    reproduces the diagram Jacobian of the braid closure up to a
    simultaneous permutation of rows and columns."""
    keep_cols = [j for j, nm in enumerate(mat.cols) if not nm.startswith("z")]
    rows = []
    for i, lbl in enumerate(mat.rows):
        if lbl.startswith("S"):
            continue
        row = []
        for j in keep_cols:
            acc = mat.entries[i][j]
            nm = mat.cols[j]
            if nm.startswith("x"):
                z = f"z{nm[1:]}"
                if z in mat.cols:
                    acc = acc + mat.entries[i][mat.col_index(z)]
            row.append(acc)
        rows.append(tuple(row))
    return PresMatrix(
        rows=tuple(l for l in mat.rows if l.startswith("R")),
        cols=tuple(mat.cols[j] for j in keep_cols),
        entries=tuple(rows),
    )


# --------------------------------------------------------------------------
# the Alexander polynomial and the unit row dependence


def _first_minor(mat: PresMatrix) -> LaurentPoly:
    rows = [row[1:] for row in mat.entries[1:]]
    return det_bareiss(rows)


def alexander_poly(obj) -> LaurentPoly:
    """Generator of the smallest principal ideal containing the first
    elementary ideal, in canonical associate form.

    For almost classical inputs a single (n-1)-minor suffices (the unit
    row dependence makes E_1 principal); otherwise the gcd of all
    (n-1)-minors is taken.
    """
    if isinstance(obj, BraidWord):
        obj = closure(obj)
    if not isinstance(obj, GaussDiagram):
        raise TypeError("expected a Gauss diagram or braid word")
    if obj.n == 0:
        return LaurentPoly.one()
    mat = jacobian_gauss(obj)
    if isinstance(alexander_numbering(obj), Numbering):
        det = _first_minor(mat)
        if det.is_zero():
            return LaurentPoly.zero()
        return assoc_normalize(det)
    return elementary_divisor(mat, 1)


def row_dependence(obj):
    """Units theta_i with sum_i theta_i * (row i) = 0, verified exactly.

    Diagram case: theta_i = t^(m_i + eps_i) with m_i the Alexander
    number on the arc entering the head of chord i.  Braid case: the
    same for crossing rows plus t^(lambda_j) for the closure rows.
    """
    if isinstance(obj, GaussDiagram):
        numbering = alexander_numbering(obj)
        if not isinstance(numbering, Numbering):
            raise NotAlmostClassicalError("no Alexander numbering")
        if obj.n == 0:
            return (LaurentPoly.one(),)
        mat = jacobian_gauss(obj)
        units = tuple(
            LaurentPoly.t(numbering.before(obj.heads[i]) + obj.signs[i])
            for i in range(obj.n)
        )
    elif isinstance(obj, BraidWord):
        numbering = braid_numbering(obj)
        if not isinstance(numbering, BraidNumbering):
            raise NotAlmostClassicalError("no braid Alexander numbering")
        mat = jacobian_braid(obj)
        units = tuple(
            LaurentPoly.t(m + s) for m, s in crossing_numbers(obj, numbering)
        ) + tuple(LaurentPoly.t(lam) for lam in numbering.lambdas)
    else:
        raise TypeError("expected a Gauss diagram or braid word")
    for j in range(mat.ncols):
        acc = LaurentPoly.zero()
        for i in range(mat.nrows):
            acc = acc + units[i] * mat.entries[i][j]
        if not acc.is_zero():
            raise AssertionError("row dependence is not exactly zero")
    return units


# --------------------------------------------------------------------------
# periodic block decompositions


@dataclass(frozen=True)
class BlockDecomposition:
    """Blocks A_0..A_{q-1} whose circulant assembly is the periodic
    Jacobian; their sum presents the quotient."""

    blocks: tuple[PresMatrix, ...]

    @property
    def q(self) -> int:
        return len(self.blocks)

    def block_sum(self) -> PresMatrix:
        first = self.blocks[0]
        rows = []
        for i in range(first.nrows):
            row = []
            for j in range(first.ncols):
                acc = LaurentPoly.zero()
                for b in self.blocks:
                    acc = acc + b.entries[i][j]
                row.append(acc)
            rows.append(tuple(row))
        return PresMatrix(first.rows, first.cols, tuple(rows))

    def assemble(self) -> PresMatrix:
        """The full block-circulant matrix C(A_0, ..., A_{q-1})."""
        q = self.q
        n = self.blocks[0].nrows
        m = self.blocks[0].ncols
        rows = []
        labels_r = []
        labels_c = [
            f"{self.blocks[0].cols[j]}^{b}" for b in range(q) for j in range(m)
        ]
        for br in range(q):
            for i in range(n):
                row = []
                for bc in range(q):
                    blk = self.blocks[(bc - br) % q]
                    row.extend(blk.entries[i])
                rows.append(tuple(row))
                labels_r.append(f"{self.blocks[0].rows[i]}^{br}")
        return PresMatrix(tuple(labels_r), tuple(labels_c), tuple(rows))


def periodic_blocks(d: GaussDiagram, ps: PeriodStructure | None) -> BlockDecomposition:
    """Split the diagram Jacobian of a periodic code into its circulant
    blocks; ``ps=None`` treats the whole matrix as a single block."""
    full = jacobian_gauss(d)
    if ps is None:
        return BlockDecomposition(blocks=(full,))
    q = ps.q
    if d.n % q:
        raise InvalidPeriodError("q does not divide the chord count")
    n1 = d.n // q
    for i in range(d.n):
        for j in range(d.n):
            if full.entries[(i + n1) % d.n][(j + n1) % d.n] != full.entries[i][j]:
                raise InvalidPeriodError("Jacobian is not block circulant")
    blocks = []
    for b in range(q):
        rows = tuple(
            tuple(full.entries[i][b * n1 + j] for j in range(n1))
            for i in range(n1)
        )
        blocks.append(
            PresMatrix(
                rows=tuple(f"r{i + 1}" for i in range(n1)),
                cols=tuple(f"x{j + 1}" for j in range(n1)),
                entries=rows,
            )
        )
    return BlockDecomposition(blocks=tuple(blocks))


def periodic_blocks_braid(beta: BraidWord, q: int) -> BlockDecomposition:
    """Blocks of the braid Jacobian of beta^q in per-period labelling:
    only A_0 and A_1 are nonzero, and A_1 = [0; -I_k 0] from the
    closure rows reaching into the next period."""
    if q < 1:
        raise ValueError("q must be positive")
    relations, bottoms, names, cols = _braid_arc_labels(beta)
    col_of = {nm: j for j, nm in enumerate(cols)}
    k = beta.k
    n_rows = len(relations) + k
    zero_row = tuple([LaurentPoly.zero()] * len(cols))
    a0_rows = []
    a1_rows = [list(zero_row) for _ in range(n_rows)]
    one = LaurentPoly.one()
    labels = []
    for m, (idx, s, under_in, over, out) in enumerate(relations):
        row = [LaurentPoly.zero()] * len(cols)
        t_neg = LaurentPoly.t(-s)
        row[col_of[names[under_in]]] += t_neg
        row[col_of[names[out]]] -= one
        row[col_of[names[over]]] += one - t_neg
        a0_rows.append(row)
        labels.append(f"R{m + 1}")
    for j in range(k):
        row = [LaurentPoly.zero()] * len(cols)
        row[col_of[names[bottoms[j]]]] += one  # z_j^0 (or a merged x)
        a0_rows.append(row)
        a1_rows[len(relations) + j][col_of[f"x{j + 1}"]] -= one  # x_j^1
        labels.append(f"S{j + 1}")
    a0 = PresMatrix(tuple(labels), tuple(cols), tuple(tuple(r) for r in a0_rows))
    a1 = PresMatrix(tuple(labels), tuple(cols), tuple(tuple(r) for r in a1_rows))
    if q == 1:  # the closure identification stays within the single period
        combined = tuple(
            tuple(a0.entries[i][j] + a1.entries[i][j] for j in range(len(cols)))
            for i in range(n_rows)
        )
        return BlockDecomposition(
            blocks=(PresMatrix(tuple(labels), tuple(cols), combined),)
        )
    zero_block = PresMatrix(
        rows=tuple(labels),
        cols=tuple(cols),
        entries=tuple(tuple(zero_row) for _ in range(n_rows)),
    )
    return BlockDecomposition(blocks=tuple([a0, a1] + [zero_block] * (q - 2)))
