"""Alexander-type invariants of virtual knots and period exclusion.

The package computes exact Alexander invariants of virtual knots given
as Gauss codes or virtual braid words, verifies the prime-power
periodicity congruence on periodic braid closures, and runs a period
exclusion engine driven by the Alexander polynomial alone.  All
arithmetic is exact.
"""

__version__ = "1.0.0"

from .laurent import (
    FpLaurent,
    Factorization,
    Irreducible,
    LaurentPoly,
    Reducible,
    Undecided,
    assoc_normalize,
    associates,
    factor_mod_p,
    gcd_many,
    irreducible_over_z,
    parse_poly,
    poly_to_text,
    span,
)
from .gauss import (
    GaussDiagram,
    Numbering,
    NotNumberable,
    PeriodStructure,
    alexander_numbering,
    all_periods,
    chord_index,
    detect_period,
    equivalent_codes,
    is_almost_classical,
    lift,
    parse_gauss,
    quotient,
    to_text,
)
from .parity import project, stable_project, total_parity, writhe_poly
from .braid import (
    BraidNumbering,
    BraidWord,
    NumberingConflict,
    braid_from_code,
    braid_numbering,
    closure,
    closure_components,
    connecting_permutation,
    parse_braid,
    periodic_braid_from_code,
    underlying_permutation,
    word_to_text,
)
from .alexander import (
    BlockDecomposition,
    PresMatrix,
    alexander_poly,
    elementary_divisor,
    jacobian_braid,
    jacobian_gauss,
    merge_closure_columns,
    periodic_blocks,
    periodic_blocks_braid,
    row_dependence,
)
from .circulant import (
    band_formula,
    block_conjugate,
    lucas_binom,
    verify_conjugation_identities,
    x_inverse,
    x_matrix,
)
from .vburau import (
    TriLaurent,
    admissible_periods,
    bar_psi,
    h_hat,
    h_poly,
    psi,
    q_span,
    robin_bound,
    v_period_bound,
)
from .murasugi import (
    CongruenceReport,
    PeriodReport,
    check_reference_row,
    congruence_check,
    exclude_periods,
    hhat_congruence,
    load_braid_table,
    load_reference_table,
    table_run,
    torus_periods,
)

__all__ = [name for name in dir() if not name.startswith("_")]
