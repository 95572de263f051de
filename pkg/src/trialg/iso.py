"""Isomorphism checking and search for algebras given by structure constants.

Two algebras A, B of the same dimension and arity are isomorphic exactly
when B = g . A . (g^-1)^(tensor n) for some invertible g.  Over a prime
field the whole of GL(m, GF(p)) can be enumerated, which decides the
question there; an empty search is evidence (never proof) about fields of
characteristic zero.

Candidates g are enumerated in row-major lexicographic order of their
entries over 0..p-1, so results are reproducible bit for bit.  The inner
loop works on plain integer matrices and tests the equivalent identity
B . g^(tensor n) = g . A column by column, bailing out on the first
mismatch; accepted candidates are re-verified through the exact
transform path before they are returned.
"""

from __future__ import annotations

import warnings
from concurrent.futures import ProcessPoolExecutor

from . import ring as rg
from .msc import BasisChange, Matrix, Msc, column_tuple, transform

__all__ = ["IsoWitness", "iso_verify", "iso_search", "iso_report",
           "DEFAULT_EVIDENCE_PRIMES"]

# avoids the excluded characteristics 2 and 3; keeps 2x2 searches instant
DEFAULT_EVIDENCE_PRIMES = (5, 7, 11)

_SEARCH_SPACE_WARN = 10_000_000


class IsoWitness:
    """A basis change carrying source to target, verified exactly."""

    __slots__ = ("g", "source", "target")

    def __init__(self, g: BasisChange, source: Msc, target: Msc):
        self.g = g
        self.source = source
        self.target = target

    def __repr__(self):
        return f"IsoWitness(g={self.g.mat.to_strings()})"


def iso_verify(A: Msc, B: Msc, g: BasisChange) -> bool:
    """True iff transform(A, g) equals B entrywise."""
    if A.dim != B.dim or A.arity != B.arity:
        raise ValueError("algebras must share dimension and arity")
    if A.ring != B.ring:
        raise ValueError("algebras must share one ring")
    return transform(A, g) == B


def _det_mod(g, p: int) -> int:
    n = len(g)
    if n == 1:
        return g[0][0] % p
    if n == 2:
        return (g[0][0] * g[1][1] - g[0][1] * g[1][0]) % p
    work = [row[:] for row in g]
    det = 1
    for col in range(n):
        pivot = next((r for r in range(col, n) if work[r][col] % p), None)
        if pivot is None:
            return 0
        if pivot != col:
            work[col], work[pivot] = work[pivot], work[col]
            det = -det
        det = det * work[col][col] % p
        inv = pow(work[col][col], p - 2, p)
        for r in range(col + 1, n):
            f = work[r][col] * inv % p
            if f:
                work[r] = [(x - f * y) % p for x, y in zip(work[r], work[col])]
    return det % p


def _candidate_matrix(idx: int, m: int, p: int):
    digits = []
    for _ in range(m * m):
        digits.append(idx % p)
        idx //= p
    digits.reverse()
    return [digits[r * m:(r + 1) * m] for r in range(m)]


def _scan_range(a, b, m, n, p, start, stop, col_digits, limit):
    """Return candidate indices in [start, stop) whose g satisfies B g^(x n) = g A."""
    found = []
    ncols = m ** n
    for idx in range(start, stop):
        g = _candidate_matrix(idx, m, p)
        if _det_mod(g, p) == 0:
            continue
        ok = True
        for c in range(ncols):
            kv = [1]
            for d in col_digits[c]:
                kv = [x * g[r][d] % p for x in kv for r in range(m)]
            for i in range(m):
                lhs = 0
                for r in range(ncols):
                    lhs += b[i][r] * kv[r]
                gi = g[i]
                rhs = 0
                for k in range(m):
                    rhs += gi[k] * a[k][c]
                if (lhs - rhs) % p:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            found.append(idx)
            if limit is not None and len(found) >= limit:
                break
    return found


def _scan_worker(args):
    return _scan_range(*args)


def _int_rows(A: Msc):
    return [[x.v for x in row] for row in A.mat.rows]


def iso_search(A: Msc, B: Msc, p: int, find_all: bool = True, jobs: int = 1):
    """Enumerate GL(m, GF(p)) for basis changes carrying A to B.

    A and B may have rational entries (reduced mod p; p must not divide a
    denominator) or already live over GF(p).  Returns every witness in
    enumeration order, or just the first when find_all is False.  An empty
    result means an exhaustive scan found no isomorphism over GF(p).
    """
    if A.dim != B.dim or A.arity != B.arity:
        raise ValueError("algebras must share dimension and arity")
    if not isinstance(p, int) or not rg.is_prime(p):
        raise ValueError(f"search modulus must be prime, got {p!r}")
    if p in (2, 3):
        warnings.warn(
            f"isomorphism evidence over GF({p}) is weak: characteristics 2 and 3 "
            "sit outside the intended evidence range",
            RuntimeWarning,
            stacklevel=2,
        )
    Ap = A.reduce_mod(p)
    Bp = B.reduce_mod(p)
    m, n = A.dim, A.arity
    space = p ** (m * m)
    if space > _SEARCH_SPACE_WARN:
        warnings.warn(
            f"enumerating {space} candidate matrices in GL({m}, GF({p})); "
            "this may take a long time",
            RuntimeWarning,
            stacklevel=2,
        )
    a, b = _int_rows(Ap), _int_rows(Bp)
    col_digits = [
        tuple(i - 1 for i in column_tuple(m, n, c)) for c in range(m ** n)
    ]
    limit = None if find_all else 1
    if jobs > 1:
        chunk = (space + jobs - 1) // jobs
        tasks = [
            (a, b, m, n, p, lo, min(lo + chunk, space), col_digits, None)
            for lo in range(0, space, chunk)
        ]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            parts = list(pool.map(_scan_worker, tasks))
        indices = sorted(i for part in parts for i in part)
        if limit is not None:
            indices = indices[:limit]
    else:
        indices = _scan_range(a, b, m, n, p, 0, space, col_digits, limit)
    gf = rg.prime_field(p)
    witnesses = []
    for idx in indices:
        rows = _candidate_matrix(idx, m, p)
        g = BasisChange(Matrix(gf, [[rg.RingElem(gf, x) for x in row] for row in rows]))
        if not iso_verify(Ap, Bp, g):
            raise RuntimeError("search produced a candidate the exact check rejects")
        witnesses.append(IsoWitness(g, Ap, Bp))
    return witnesses


def iso_report(A: Msc, B: Msc, p: int, find_all: bool = False, jobs: int = 1) -> dict:
    """JSON-ready summary of one search."""
    witnesses = iso_search(A, B, p, find_all=find_all, jobs=jobs)
    exhaustive = find_all or not witnesses
    return {
        "prime": p,
        "witness_count": len(witnesses),
        "witnesses": [w.g.mat.to_strings() for w in witnesses],
        "exhaustive": exhaustive,
    }
