"""Associativity checkers.

A ternary algebra A is totally associative when the three ways of nesting
two products agree on all quintuples, which in matrix form is

    A (A x I x I - I x A x I) = 0
    A (A x I x I - I x I x A) = 0
    A (I x A x I - I x I x A) = 0

with I the m x m identity.  The binary analogue is M (M x I) - M (I x M).
Residuals are returned in full (not just verdicts) so that parameter scans
can treat their entries as polynomials in the family parameters.
"""

from __future__ import annotations

from itertools import product as iter_product

from .msc import Matrix, Msc, basis_vector, eval_product

__all__ = [
    "total_assoc_residuals",
    "is_totally_associative",
    "quintuple_oracle",
    "binary_assoc_residual",
    "binary_triple_oracle",
    "AssocReport",
    "assoc_report",
]


def total_assoc_residuals(A: Msc):
    """The three total-associativity residual matrices, each m x m^5."""
    if A.arity != 3:
        raise ValueError(f"total associativity is defined for arity 3, got {A.arity}")
    ident = Matrix.identity(A.ring, A.dim)
    a_i_i = A.mat.kron(ident).kron(ident)
    i_a_i = ident.kron(A.mat).kron(ident)
    i_i_a = ident.kron(ident.kron(A.mat))
    r_a = A.mat * (a_i_i - i_a_i)
    r_b = A.mat * (a_i_i - i_i_a)
    r_c = A.mat * (i_a_i - i_i_a)
    return r_a, r_b, r_c


def is_totally_associative(A: Msc) -> bool:
    return all(r.is_zero() for r in total_assoc_residuals(A))


def quintuple_oracle(A: Msc):
    """Check total associativity by expanding all basis quintuples.

    Uses eval_product only, so it is independent of the residual matrices.
    Returns (True, None) or (False, first violating 1-based quintuple).
    """
    if A.arity != 3:
        raise ValueError(f"quintuple oracle is defined for arity 3, got {A.arity}")
    if A.ring.kind == "poly":
        raise ValueError("quintuple oracle needs field scalars; it is enumerative")
    basis = [basis_vector(A.ring, A.dim, i) for i in range(1, A.dim + 1)]
    for tup in iter_product(range(A.dim), repeat=5):
        u, v, w, x, y = (basis[i] for i in tup)
        left = eval_product(A, (eval_product(A, (u, v, w)), x, y))
        mid = eval_product(A, (u, eval_product(A, (v, w, x)), y))
        right = eval_product(A, (u, v, eval_product(A, (w, x, y))))
        if left != mid or left != right:
            return False, tuple(i + 1 for i in tup)
    return True, None


def binary_assoc_residual(M: Msc) -> Matrix:
    """M (M x I) - M (I x M); the zero matrix iff M is associative."""
    if M.arity != 2:
        raise ValueError(f"binary associativity is defined for arity 2, got {M.arity}")
    ident = Matrix.identity(M.ring, M.dim)
    return M.mat * M.mat.kron(ident) - M.mat * ident.kron(M.mat)


def binary_triple_oracle(M: Msc):
    """Basis-triple associativity witness search for a binary algebra."""
    if M.arity != 2:
        raise ValueError(f"expected a binary algebra, got arity {M.arity}")
    if M.ring.kind == "poly":
        raise ValueError("the triple oracle needs field scalars")
    basis = [basis_vector(M.ring, M.dim, i) for i in range(1, M.dim + 1)]
    for tup in iter_product(range(M.dim), repeat=3):
        u, v, w = (basis[i] for i in tup)
        left = eval_product(M, (eval_product(M, (u, v)), w))
        right = eval_product(M, (u, eval_product(M, (v, w))))
        if left != right:
            return False, tuple(i + 1 for i in tup)
    return True, None


class AssocReport:
    """Residuals plus verdict for one algebra (ternary or binary)."""

    __slots__ = ("subject", "residuals", "verdict", "violating_tuple")

    def __init__(self, subject, residuals, verdict, violating_tuple=None):
        self.subject = subject
        self.residuals = residuals
        self.verdict = verdict
        self.violating_tuple = violating_tuple

    def to_doc(self) -> dict:
        labels = ("a", "b", "c") if len(self.residuals) == 3 else ("binary",)
        nonzeros = []
        for label, mat in zip(labels, self.residuals):
            for i, row in enumerate(mat.rows):
                for j, x in enumerate(row):
                    if not x.is_zero():
                        nonzeros.append(
                            {"which": label, "row": i + 1, "col": j + 1, "value": str(x)}
                        )
        return {
            "verdict": self.verdict,
            "residual_nonzeros": nonzeros,
            "violating_tuple": list(self.violating_tuple) if self.violating_tuple else None,
        }


def assoc_report(A: Msc) -> AssocReport:
    """Run the appropriate associativity check for a binary or ternary algebra."""
    if A.arity == 3:
        residuals = total_assoc_residuals(A)
        verdict = all(r.is_zero() for r in residuals)
        tup = None
        if not verdict and A.ring.kind != "poly":
            _, tup = quintuple_oracle(A)
        return AssocReport(A, residuals, verdict, tup)
    if A.arity == 2:
        residual = binary_assoc_residual(A)
        verdict = residual.is_zero()
        tup = None
        if not verdict and A.ring.kind != "poly":
            _, tup = binary_triple_oracle(A)
        return AssocReport(A, (residual,), verdict, tup)
    raise ValueError(f"associativity reports cover arity 2 and 3, got {A.arity}")
