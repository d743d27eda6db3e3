"""Total Gaussian parity, Manturov projection, and the writhe polynomial.

A chord is even exactly when its index vanishes.  Projection deletes
the odd chords of a Gauss diagram; iterating reaches a fixed point with
all chords even, i.e. an Alexander-numberable diagram.
"""

from __future__ import annotations

from .gauss import GaussDiagram, _from_tokens, chord_index
from .laurent import LaurentPoly


def total_parity(d: GaussDiagram) -> tuple[int, ...]:
    """Per-chord parity: 0 when the index is 0, else 1."""
    return tuple(0 if chord_index(d, i) == 0 else 1 for i in range(d.n))


def project(d: GaussDiagram) -> GaussDiagram:
    """Delete the odd chords; identity on all-even diagrams."""
    parity = total_parity(d)
    if not any(parity):
        return d
    keep = {c for c in range(d.n) if parity[c] == 0}
    tokens = [(k, c, s) for k, c, s in d.tokens() if c in keep]
    return _from_tokens(tokens)


def stable_project(d: GaussDiagram) -> GaussDiagram:
    """Iterate projection to its fixed point (at most n steps)."""
    while True:
        nxt = project(d)
        if nxt.n == d.n:
            return nxt
        d = nxt


def writhe_poly(d: GaussDiagram) -> LaurentPoly:
    """W(t) = sum_n w_n t^n - Wr, with w_n the signed count of chords of
    index n.  Always vanishes at t = 1."""
    coeffs: dict[int, int] = {}
    for c in range(d.n):
        e = chord_index(d, c)
        coeffs[e] = coeffs.get(e, 0) + d.signs[c]
    coeffs[0] = coeffs.get(0, 0) - d.writhe()
    return LaurentPoly(coeffs)
