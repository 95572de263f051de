"""Exact computation with finite-dimensional n-ary algebras given by
matrices of structure constants: generation from binary algebras,
associativity and isomorphism checking, and solvability of the
expressibility system."""

from .ring import (
    Ring,
    RingElem,
    rationals,
    prime_field,
    polynomial_ring,
    parse_scalar,
    substitute,
)
from .msc import (
    Matrix,
    Msc,
    BasisChange,
    kron,
    eval_product,
    transform,
    basis_vector,
    msc_to_doc,
    msc_from_doc,
)
from .generate import generate_nary, expressibility_residual, symbolic_system
from .identities import (
    total_assoc_residuals,
    is_totally_associative,
    quintuple_oracle,
    binary_assoc_residual,
    assoc_report,
)
from .iso import iso_verify, iso_search, iso_report
from .polysolve import (
    PolySystem,
    SolveOutcome,
    solve_ff_exhaustive,
    buchberger,
    certify_expressibility,
)
from .catalog import (
    catalog_get,
    catalog_names,
    table1_verify,
    totassoc_scan,
    claims_verify,
    paper_replay,
)

__version__ = "0.1.0"
