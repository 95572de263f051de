"""Deciding solvability of small polynomial systems.

Two engines back every verdict:

* an exhaustive finite-field sweep: all p^k assignments of the k variables
  are enumerated in lexicographic order (first variable most significant)
  and every polynomial is evaluated mod p.  The sweep is vectorized in
  chunks; a separate straightforward per-assignment evaluator exists purely
  as an independent cross-check.

* a bounded Buchberger engine over Q in graded reverse lexicographic
  order, with the normal selection strategy, coprime-lead and chain
  criteria, and content removal after every reduction.  A reduced basis
  {1} certifies that the system has no solution over the algebraic
  closure; hitting a cap yields "inconclusive", never a wrong verdict.

certify_expressibility chains both: per-prime sweeps (with a bounded
rational-reconstruction lift of any witness found, verified exactly over
Q) followed by the Groebner run, reporting the strongest outcome with all
evidence attached.
"""

from __future__ import annotations

import heapq
import math
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from itertools import product as iter_product

import numpy as np

from . import ring as rg
from .ring import (
    Ring,
    RingElem,
    _grevlex_key,
    _mono_div,
    _mono_divides,
    _mono_lcm,
    _mono_mul,
    _poly_add,
    _poly_eval,
    _poly_mul_term,
    _poly_sub,
)

__all__ = [
    "PolySystem",
    "SolveOutcome",
    "solve_ff_exhaustive",
    "solve_ff_reference",
    "buchberger",
    "certify_expressibility",
    "reduce_poly",
    "groebner_selfcheck",
    "DEFAULT_CAPS",
]

DEFAULT_CAPS = {"max_pairs": 20000, "max_degree": 12}
MAX_FF_VARS = 9
_F0 = Fraction(0)
_F1 = Fraction(1)


class PolySystem:
    """A finite set of polynomials over one Q[vars] ring; zero polys dropped."""

    __slots__ = ("ring", "polys")

    def __init__(self, ring: Ring, polys):
        if ring.kind != "poly":
            raise ValueError("a polynomial system needs a polynomial ring")
        kept = []
        for p in polys:
            if not isinstance(p, RingElem) or (p.ring is not ring and p.ring != ring):
                raise ValueError("system polynomial outside the declared ring")
            if not p.is_zero():
                kept.append(p)
        self.ring = ring
        self.polys = tuple(kept)

    @property
    def vars(self):
        return self.ring.vars

    @classmethod
    def from_strings(cls, names, texts) -> "PolySystem":
        ring = rg.polynomial_ring(names)
        return cls(ring, [rg.parse_scalar(t, ring) for t in texts])

    def to_doc(self) -> dict:
        return {"vars": list(self.vars), "polys": [str(p) for p in self.polys]}

    @classmethod
    def from_doc(cls, doc) -> "PolySystem":
        if not isinstance(doc, dict) or "vars" not in doc or "polys" not in doc:
            raise ValueError("system: expected an object with 'vars' and 'polys'")
        return cls.from_strings(doc["vars"], doc["polys"])

    def __repr__(self):
        return f"PolySystem({len(self.polys)} polys in {', '.join(self.vars)})"


class SolveOutcome:
    """Result of a solver run: a status plus whatever evidence supports it.

    status is one of "witness", "no_solution_mod_p",
    "certified_empty_over_closure" or "inconclusive".  A witness, when
    present, zeroes every input polynomial exactly (over Q, or over GF(p)
    when ``prime`` is set).
    """

    __slots__ = (
        "status", "witness", "prime", "basis", "effort", "witnesses",
        "evidence", "cofactors",
    )

    def __init__(self, status, witness=None, prime=None, basis=None,
                 effort=None, witnesses=None, evidence=None, cofactors=None):
        self.status = status
        self.witness = witness
        self.prime = prime
        self.basis = basis
        self.effort = effort
        self.witnesses = witnesses
        self.evidence = evidence
        self.cofactors = cofactors

    def to_doc(self) -> dict:
        doc = {
            "status": self.status,
            "witness": {k: str(v) for k, v in self.witness.items()} if self.witness else None,
            "prime": self.prime,
            "basis": [str(b) for b in self.basis] if self.basis is not None else None,
            "effort": self.effort,
        }
        if self.witnesses is not None:
            doc["witness_count"] = len(self.witnesses)
        if self.evidence is not None:
            doc["evidence"] = [e.to_doc() for e in self.evidence]
        return doc

    def __repr__(self):
        return f"SolveOutcome({self.status})"


# ---------------------------------------------------------------------------
# exhaustive finite-field sweep
# ---------------------------------------------------------------------------

def _compile_mod_p(system: PolySystem, p: int):
    """Reduce every polynomial mod p to (coeff array, exponent matrix) pairs.

    Returns (compiled, obstructed) where obstructed means some polynomial
    reduced to a nonzero constant, so no assignment can work.
    """
    compiled = []
    for poly in system.polys:
        coeffs, monos = [], []
        for mono, q in poly.v.items():
            den = q.denominator % p
            if den == 0:
                raise ValueError(
                    f"prime {p} divides the denominator of coefficient {q}"
                )
            c = q.numerator * pow(den, p - 2, p) % p
            if c:
                coeffs.append(c)
                monos.append(mono)
        if not coeffs:
            continue
        if all(sum(m) == 0 for m in monos):
            return [], True
        compiled.append(
            (np.asarray(coeffs, dtype=np.int64), np.asarray(monos, dtype=np.int64))
        )
    return compiled, False


def _vec_pow(col, e, p):
    if e == 1:
        return col
    out = col
    for _ in range(e - 1):
        out = out * col % p
    return out


def _sweep_chunk(compiled, p, nvars, lo, hi, cap):
    """Indices in [lo, hi) whose decoded assignments zero every polynomial."""
    alive = np.arange(lo, hi, dtype=np.int64)
    cols = [
        (alive // int(p ** (nvars - 1 - i))) % p for i in range(nvars)
    ]
    for coeffs, monos in compiled:
        if len(alive) == 0:
            break
        acc = np.zeros(len(alive), dtype=np.int64)
        for c, mono in zip(coeffs, monos):
            t = np.full(len(alive), int(c), dtype=np.int64)
            for i, e in enumerate(mono):
                if e:
                    t = t * _vec_pow(cols[i], int(e), p) % p
            acc = (acc + t) % p
        keep = acc == 0
        if not keep.all():
            alive = alive[keep]
            cols = [col[keep] for col in cols]
    if cap is not None and len(alive) > cap:
        alive = alive[:cap]
    return alive.tolist()


def _sweep_worker(args):
    return _sweep_chunk(*args)


def _decode_assignment(idx: int, nvars: int, p: int):
    digits = []
    for _ in range(nvars):
        digits.append(idx % p)
        idx //= p
    return tuple(reversed(digits))


def solve_ff_exhaustive(system: PolySystem, p: int, all_witnesses: bool = False,
                        max_witnesses: int = 4096, jobs: int = 1,
                        chunk: int = 1 << 19) -> SolveOutcome:
    """Decide the system mod p by sweeping every assignment.

    Assignments are enumerated in lexicographic order (first declared
    variable most significant).  Returns the first witness, or all of them
    (up to ``max_witnesses``) when ``all_witnesses`` is set; a
    "no_solution_mod_p" outcome always rests on a full sweep.
    """
    if not rg.is_prime(p):
        raise ValueError(f"sweep modulus must be prime, got {p!r}")
    nvars = len(system.vars)
    if nvars > MAX_FF_VARS:
        raise ValueError(
            f"{nvars} variables exceed the exhaustive-sweep limit of {MAX_FF_VARS}"
        )
    total = p ** nvars
    compiled, obstructed = _compile_mod_p(system, p)
    effort = {"prime": p, "assignments": total, "exhaustive": True}
    if obstructed:
        effort["constant_obstruction"] = True
        return SolveOutcome("no_solution_mod_p", prime=p, effort=effort)

    cap = max_witnesses if all_witnesses else 1
    hits: list[int] = []
    ranges = [(lo, min(lo + chunk, total)) for lo in range(0, total, chunk)]
    if jobs > 1 and len(ranges) > 1:
        tasks = [(compiled, p, nvars, lo, hi, cap) for lo, hi in ranges]
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            for part in pool.map(_sweep_worker, tasks):
                hits.extend(part)
                if len(hits) >= cap:
                    break
    else:
        for lo, hi in ranges:
            hits.extend(_sweep_chunk(compiled, p, nvars, lo, hi, cap - len(hits)))
            if len(hits) >= cap:
                break
    hits = sorted(hits)[:cap]

    if not hits:
        return SolveOutcome("no_solution_mod_p", prime=p, effort=effort)

    gf = rg.prime_field(p)
    names = system.vars
    assignments = []
    for idx in hits:
        values = _decode_assignment(idx, nvars, p)
        assignment = {n: RingElem(gf, v) for n, v in zip(names, values)}
        if not _check_assignment_mod_p(system, p, values):
            raise RuntimeError("sweep produced an assignment the scalar check rejects")
        assignments.append(assignment)
    truncated = all_witnesses and len(hits) >= max_witnesses
    effort["exhaustive"] = not truncated
    if truncated:
        effort["witness_cap_hit"] = True
    return SolveOutcome(
        "witness",
        witness=assignments[0],
        prime=p,
        effort=effort,
        witnesses=assignments if all_witnesses else None,
    )


def _check_assignment_mod_p(system: PolySystem, p: int, values) -> bool:
    """Scalar re-check of one assignment, independent of the vectorized path."""
    for poly in system.polys:
        total = 0
        for mono, q in poly.v.items():
            den = q.denominator % p
            if den == 0:
                return False
            t = q.numerator * pow(den, p - 2, p) % p
            for v, e in zip(values, mono):
                if e:
                    t = t * pow(v, e, p) % p
            total = (total + t) % p
        if total:
            return False
    return True


def solve_ff_reference(system: PolySystem, p: int):
    """Straightforward per-assignment evaluator (cross-check oracle).

    Walks every assignment with exact prime-field scalars; intended for
    small systems in tests, not for production sweeps.
    """
    gf = rg.prime_field(p)
    names = system.vars
    solutions = []
    for values in iter_product(range(p), repeat=len(names)):
        elems = [RingElem(gf, v) for v in values]
        ok = True
        for poly in system.polys:
            acc = rg.zero(gf)
            for mono, q in poly.v.items():
                term = rg.from_fraction(gf, q)
                for x, e in zip(elems, mono):
                    term = term * x ** e
                acc = acc + term
            if not acc.is_zero():
                ok = False
                break
        if ok:
            solutions.append(dict(zip(names, elems)))
    return solutions


# ---------------------------------------------------------------------------
# Buchberger engine
# ---------------------------------------------------------------------------

def _lm(terms):
    return max(terms, key=_grevlex_key)


def _make_primitive(terms, rep=None):
    """Divide by the content and make the leading coefficient positive."""
    if not terms:
        return terms, rep
    num_gcd, den_lcm = 0, 1
    for c in terms.values():
        num_gcd = math.gcd(num_gcd, abs(c.numerator))
        den_lcm = den_lcm * c.denominator // math.gcd(den_lcm, c.denominator)
    scale = Fraction(den_lcm, num_gcd)
    if terms[_lm(terms)] < 0:
        scale = -scale
    terms = {m: c * scale for m, c in terms.items()}
    if rep is not None:
        rep = [{m: c * scale for m, c in r.items()} for r in rep]
    return terms, rep


def _normal_form(f, basis, lms, lcs, rep=None, reps=None):
    """Full multivariate division remainder of f by the basis.

    When ``rep``/``reps`` carry representations over the original inputs,
    the remainder's representation is updated alongside.
    """
    work = dict(f)
    rem = {}
    while work:
        lm_w = _lm(work)
        lc_w = work[lm_w]
        hit = None
        for gi, lmg in enumerate(lms):
            if _mono_divides(lmg, lm_w):
                hit = gi
                break
        if hit is None:
            rem[lm_w] = lc_w
            del work[lm_w]
            continue
        q_mono = _mono_div(lm_w, lms[hit])
        q_coeff = lc_w / lcs[hit]
        for m, c in basis[hit].items():
            mm = _mono_mul(m, q_mono)
            nc = work.get(mm, _F0) - q_coeff * c
            if nc:
                work[mm] = nc
            else:
                work.pop(mm, None)
        if rep is not None:
            for t, r in enumerate(reps[hit]):
                if r:
                    rep[t] = _poly_sub(rep[t], _poly_mul_term(r, q_coeff, q_mono))
    return rem, rep


def _pair_key(lms, i, j):
    L = _mono_lcm(lms[i], lms[j])
    return (sum(L), _grevlex_key(L), i, j)


def buchberger(system: PolySystem, caps=None, track: bool = False) -> SolveOutcome:
    """Run Buchberger's algorithm with the normal selection strategy.

    The outcome carries the reduced basis (monic, sorted by leading
    monomial).  A basis {1} gives "certified_empty_over_closure"; hitting
    a cap gives "inconclusive" with the partial basis and effort counters;
    a completed run with a nontrivial basis is also reported as
    "inconclusive" (no witness is extracted) with effort["completed"]
    set.  With ``track`` every basis element carries cofactors over the
    input polynomials.
    """
    caps = {**DEFAULT_CAPS, **(caps or {})}
    max_pairs, max_degree = caps["max_pairs"], caps["max_degree"]
    nin = len(system.polys)
    nvars = len(system.vars)
    zero_mono = (0,) * nvars

    basis, lms, lcs = [], [], []
    reps = [] if track else None

    def push_basis(terms, rep):
        basis.append(terms)
        lms.append(_lm(terms))
        lcs.append(terms[lms[-1]])
        if track:
            reps.append(rep)

    for j, poly in enumerate(system.polys):
        rep = None
        if track:
            rep = [({zero_mono: _F1} if t == j else {}) for t in range(nin)]
        terms, rep = _make_primitive(dict(poly.v), rep)
        push_basis(terms, rep)

    heap = []
    for j in range(len(basis)):
        for i in range(j):
            heapq.heappush(heap, _pair_key(lms, i, j))

    done = set()
    processed = skipped = degree_skipped = 0
    max_deg_seen = max((sum(lm) for lm in lms), default=0)
    certified = False
    pairs_capped = False

    while heap:
        if processed >= max_pairs:
            pairs_capped = True
            break
        deg, _, i, j = heapq.heappop(heap)
        if deg > max_degree:
            degree_skipped += 1
            continue
        lmi, lmj = lms[i], lms[j]
        if all(min(a, b) == 0 for a, b in zip(lmi, lmj)):
            done.add((i, j))
            skipped += 1
            continue
        L = _mono_lcm(lmi, lmj)
        chained = False
        for k in range(len(basis)):
            if k in (i, j):
                continue
            if (
                _mono_divides(lms[k], L)
                and (min(i, k), max(i, k)) in done
                and (min(j, k), max(j, k)) in done
            ):
                chained = True
                break
        if chained:
            done.add((i, j))
            skipped += 1
            continue

        processed += 1
        max_deg_seen = max(max_deg_seen, deg)
        ui, uj = _mono_div(L, lmi), _mono_div(L, lmj)
        s_terms = _poly_sub(
            _poly_mul_term(basis[i], 1 / lcs[i], ui),
            _poly_mul_term(basis[j], 1 / lcs[j], uj),
        )
        s_rep = None
        if track:
            s_rep = [
                _poly_sub(
                    _poly_mul_term(reps[i][t], 1 / lcs[i], ui),
                    _poly_mul_term(reps[j][t], 1 / lcs[j], uj),
                )
                for t in range(nin)
            ]
        rem, s_rep = _normal_form(s_terms, basis, lms, lcs, s_rep, reps)
        done.add((i, j))
        if not rem:
            continue
        rem, s_rep = _make_primitive(rem, s_rep)
        idx = len(basis)
        push_basis(rem, s_rep)
        if sum(lms[idx]) == 0:
            certified = True
            break
        for k in range(idx):
            heapq.heappush(heap, _pair_key(lms, k, idx))

    degree_capped = degree_skipped > 0
    completed = not pairs_capped and not degree_capped
    red_basis, red_reps = _reduced_basis(basis, lms, lcs, reps, nvars)
    effort = {
        "pairs_processed": processed,
        "pairs_skipped_by_criteria": skipped,
        "pairs_skipped_by_degree_cap": degree_skipped,
        "max_lcm_degree": max_deg_seen,
        "basis_size": len(red_basis),
        "caps_hit": pairs_capped or degree_capped,
        "completed": completed or certified,
    }
    basis_elems = [RingElem(system.ring, t) for t in red_basis]
    cof_elems = None
    if track:
        cof_elems = [
            [RingElem(system.ring, r) for r in rep] for rep in red_reps
        ]
    if certified or (completed and _basis_is_one(red_basis, nvars)):
        return SolveOutcome(
            "certified_empty_over_closure",
            basis=basis_elems, effort=effort, cofactors=cof_elems,
        )
    return SolveOutcome(
        "inconclusive", basis=basis_elems, effort=effort, cofactors=cof_elems,
    )


def _basis_is_one(basis, nvars) -> bool:
    zero_mono = (0,) * nvars
    return len(basis) == 1 and list(basis[0]) == [zero_mono]


def _reduced_basis(basis, lms, lcs, reps, nvars):
    """Minimalize, fully inter-reduce and make monic; deterministic order."""
    order = sorted(range(len(basis)), key=lambda i: (_grevlex_key(lms[i]), i))
    kept = []
    for i in order:
        if not any(_mono_divides(lms[k], lms[i]) for k in kept):
            kept.append(i)
    out_terms, out_reps = [], []
    for i in kept:
        others = [k for k in kept if k != i]
        ob = [basis[k] for k in others]
        ol = [lms[k] for k in others]
        oc = [lcs[k] for k in others]
        rep = [dict(r) for r in reps[i]] if reps is not None else None
        oreps = [reps[k] for k in others] if reps is not None else None
        rem, rep = _normal_form(dict(basis[i]), ob, ol, oc, rep, oreps)
        if not rem:
            continue
        lc = rem[_lm(rem)]
        rem = {m: c / lc for m, c in rem.items()}
        if rep is not None:
            rep = [{m: c / lc for m, c in r.items()} for r in rep]
        out_terms.append(rem)
        out_reps.append(rep)
    pairs = sorted(
        range(len(out_terms)), key=lambda t: _grevlex_key(_lm(out_terms[t]))
    )
    return [out_terms[t] for t in pairs], (
        [out_reps[t] for t in pairs] if reps is not None else None
    )


def reduce_poly(f: RingElem, basis_elems) -> RingElem:
    """Normal form of f modulo a list of polynomials in the same ring."""
    basis = [dict(b.v) for b in basis_elems if not b.is_zero()]
    lms = [_lm(t) for t in basis]
    lcs = [t[lm] for t, lm in zip(basis, lms)]
    rem, _ = _normal_form(dict(f.v), basis, lms, lcs)
    return RingElem(f.ring, rem)


def groebner_selfcheck(basis_elems) -> bool:
    """Every S-polynomial of the basis reduces to zero modulo the basis."""
    basis = [dict(b.v) for b in basis_elems if not b.is_zero()]
    if not basis:
        return True
    lms = [_lm(t) for t in basis]
    lcs = [t[lm] for t, lm in zip(basis, lms)]
    ring = basis_elems[0].ring
    for j in range(len(basis)):
        for i in range(j):
            L = _mono_lcm(lms[i], lms[j])
            s = _poly_sub(
                _poly_mul_term(basis[i], 1 / lcs[i], _mono_div(L, lms[i])),
                _poly_mul_term(basis[j], 1 / lcs[j], _mono_div(L, lms[j])),
            )
            rem, _ = _normal_form(s, basis, lms, lcs)
            if rem:
                return False
    return True


# ---------------------------------------------------------------------------
# rational lifting and the expressibility pipeline
# ---------------------------------------------------------------------------

def _eval_exact(system: PolySystem, assignment) -> bool:
    """Exact check over Q that an assignment zeroes every polynomial."""
    vals = [Fraction(assignment[name]) for name in system.vars]
    return all(_poly_eval(poly.v, vals) == 0 for poly in system.polys)


def _lift_candidates(residues, modulus, bound):
    """Common-denominator rational reconstructions of a residue vector."""
    half = modulus // 2
    for d in range(1, bound + 1):
        if math.gcd(d, modulus) != 1:
            continue
        out = []
        for r in residues:
            num = r * d % modulus
            if num > half:
                num -= modulus
            out.append(Fraction(num, d))
        yield out


def _try_lift(system: PolySystem, residue_vectors, modulus, bound=64,
              max_attempts=4096):
    """First exact rational witness reconstructed from mod-``modulus`` data."""
    attempts = 0
    names = system.vars
    for residues in residue_vectors:
        for vals in _lift_candidates(residues, modulus, bound):
            attempts += 1
            if attempts > max_attempts:
                return None, attempts
            if all(_poly_eval(poly.v, vals) == 0 for poly in system.polys):
                return dict(zip(names, (RingElem(rg.QQ, v) for v in vals))), attempts
    return None, attempts


def _crt_pair(r1, p1, r2, p2):
    inv = pow(p1, p2 - 2, p2)
    return [(a + p1 * ((b - a) * inv % p2)) % (p1 * p2) for a, b in zip(r1, r2)]


def certify_expressibility(C, primes=(5, 7), caps=None, jobs: int = 1,
                           max_witnesses: int = 4096,
                           groebner: bool = True) -> SolveOutcome:
    """Strongest available verdict on whether a ternary algebra is generated
    by some binary algebra.

    Pipeline: per-prime exhaustive sweeps (witnesses trigger a bounded
    rational lift, denominators up to 64, verified exactly over Q; a CRT
    combination across the first two witness-bearing primes is tried when
    per-prime lifting fails), then the Groebner run when no exact witness
    was found.  The outcome's evidence list carries every stage.
    """
    from .generate import symbolic_system

    system = symbolic_system(C)
    evidence = []
    witness_data = []  # (prime, residue vectors)
    names = system.vars

    if not system.polys:
        witness = {n: rg.zero(rg.QQ) for n in names}
        return SolveOutcome(
            "witness", witness=witness,
            effort={"primes": list(primes), "trivial": True}, evidence=evidence,
        )

    for p in primes:
        out = solve_ff_exhaustive(
            system, p, all_witnesses=True, max_witnesses=max_witnesses, jobs=jobs,
        )
        evidence.append(out)
        if out.status != "witness":
            continue
        vectors = [
            [assignment[n].v for n in names] for assignment in out.witnesses
        ]
        witness_data.append((p, vectors))
        lifted, attempts = _try_lift(system, vectors, p)
        if lifted is not None:
            return SolveOutcome(
                "witness", witness=lifted,
                effort={
                    "primes": list(primes), "lifted_from": p,
                    "lift_attempts": attempts,
                },
                evidence=evidence,
            )

    if len(witness_data) >= 2:
        (p1, v1), (p2, v2) = witness_data[0], witness_data[1]
        combined = (
            _crt_pair(a, p1, b, p2) for a in v1[:64] for b in v2[:64]
        )
        lifted, attempts = _try_lift(system, combined, p1 * p2)
        if lifted is not None:
            return SolveOutcome(
                "witness", witness=lifted,
                effort={
                    "primes": list(primes), "lifted_from": [p1, p2],
                    "lift_attempts": attempts,
                },
                evidence=evidence,
            )

    sweeps = list(evidence)
    groebner_out = None
    if groebner:
        groebner_out = buchberger(system, caps=caps)
        evidence.append(groebner_out)
    effort = {"primes": list(primes)}
    if groebner_out is not None and groebner_out.status == "certified_empty_over_closure":
        return SolveOutcome(
            "certified_empty_over_closure", basis=groebner_out.basis,
            effort=effort, evidence=evidence,
        )
    if witness_data:
        p, vectors = witness_data[0]
        gf = rg.prime_field(p)
        witness = {n: RingElem(gf, v) for n, v in zip(names, vectors[0])}
        return SolveOutcome(
            "witness", witness=witness, prime=p, effort=effort, evidence=evidence,
        )
    if sweeps and all(e.status == "no_solution_mod_p" for e in sweeps):
        return SolveOutcome("no_solution_mod_p", effort=effort, evidence=evidence)
    return SolveOutcome("inconclusive", effort=effort, evidence=evidence)
