import random
from fractions import Fraction

import pytest

from trialg import ring as rg
from trialg.catalog import catalog_get
from trialg.generate import expressibility_residual, symbolic_system
from trialg.msc import Msc
from trialg.polysolve import (
    DEFAULT_CAPS,
    PolySystem,
    buchberger,
    certify_expressibility,
    groebner_selfcheck,
    reduce_poly,
    solve_ff_exhaustive,
    solve_ff_reference,
)

Q = rg.QQ
F = Fraction


def sys_of(names, texts):
    return PolySystem.from_strings(names, texts)


# ---------------------------------------------------------------------------
# PolySystem basics
# ---------------------------------------------------------------------------

def test_polysystem_drops_zero_polys():
    system = sys_of(["x", "y"], ["x - x", "x*y - 1"])
    assert len(system.polys) == 1


def test_polysystem_doc_roundtrip():
    system = sys_of(["x", "y"], ["x^2 - 1", "x*y - 1"])
    doc = system.to_doc()
    assert doc == {"vars": ["x", "y"], "polys": ["x^2 - 1", "x*y - 1"]}
    again = PolySystem.from_doc(doc)
    assert [str(p) for p in again.polys] == doc["polys"]


def test_polysystem_rejects_foreign_polys():
    other = rg.polynomial_ring(["z"])
    with pytest.raises(ValueError):
        PolySystem(rg.polynomial_ring(["x"]), [rg.variable(other, "z")])


# ---------------------------------------------------------------------------
# exhaustive sweeps
# ---------------------------------------------------------------------------

def test_sweep_single_variable_witness():
    out = solve_ff_exhaustive(sys_of(["h111"], ["h111"]), 5)
    assert out.status == "witness"
    assert out.witness["h111"].v == 0


def test_sweep_finds_lexicographically_first_witness():
    out = solve_ff_exhaustive(sys_of(["x", "y"], ["x - 3", "y^2 - 4"]), 5)
    assert out.status == "witness"
    assert (out.witness["x"].v, out.witness["y"].v) == (3, 2)


def test_sweep_no_solution_is_exhaustive():
    out = solve_ff_exhaustive(sys_of(["x"], ["x^2 - 2"]), 5)
    assert out.status == "no_solution_mod_p"
    assert out.effort["exhaustive"] is True
    assert out.effort["assignments"] == 5


def test_sweep_matches_reference_evaluator_on_random_systems():
    rng = random.Random(4242)
    names_pool = (["x", "y"], ["x", "y", "z"], ["w", "x", "y", "z"])
    for trial in range(50):
        names = names_pool[trial % 3]
        ring = rg.polynomial_ring(names)
        polys = []
        for _ in range(rng.randint(1, 3)):
            terms = {}
            for _ in range(rng.randint(1, 4)):
                mono = tuple(rng.randint(0, 2) for _ in names)
                c = F(rng.randint(-4, 4))
                if c:
                    terms[mono] = terms.get(mono, F(0)) + c
            polys.append(rg.RingElem(ring, {m: c for m, c in terms.items() if c}))
        system = PolySystem(ring, polys)
        expected = solve_ff_reference(system, 5)
        got = solve_ff_exhaustive(system, 5, all_witnesses=True, max_witnesses=5 ** 4)
        if not expected:
            assert got.status == "no_solution_mod_p"
        else:
            assert got.status == "witness"
            as_tuples = [
                tuple(w[n].v for n in names) for w in got.witnesses
            ]
            ref_tuples = [tuple(w[n].v for n in names) for w in expected]
            assert as_tuples == ref_tuples


def test_sweep_rejects_bad_inputs():
    with pytest.raises(ValueError):
        solve_ff_exhaustive(sys_of(["x"], ["x"]), 6)
    with pytest.raises(ValueError):
        solve_ff_exhaustive(sys_of(["x"], ["1/5*x - 1"]), 5)
    wide = sys_of([f"x{i}" for i in range(10)], ["x0"])
    with pytest.raises(ValueError):
        solve_ff_exhaustive(wide, 5)


def test_sweep_constant_obstruction():
    out = solve_ff_exhaustive(sys_of(["x"], ["5*x + 1"]), 5)
    assert out.status == "no_solution_mod_p"
    assert out.effort.get("constant_obstruction") is True


def test_sweep_jobs_deterministic():
    system = sys_of(["x", "y", "z"], ["x*y - z", "x + y + z"])
    serial = solve_ff_exhaustive(system, 5, all_witnesses=True, chunk=8)
    parallel = solve_ff_exhaustive(system, 5, all_witnesses=True, chunk=8, jobs=2)
    key = lambda out: [[w[n].v for n in system.vars] for w in out.witnesses]
    assert key(serial) == key(parallel)


def test_sweep_b9_system_contains_a9_mod_7():
    system = symbolic_system(catalog_get("B9"))
    out = solve_ff_exhaustive(system, 7, all_witnesses=True)
    assert out.status == "witness"
    a9 = catalog_get("A9").reduce_mod(7)
    expected = tuple(
        a9.entry(k, (r, s)).v for k in (1, 2) for r in (1, 2) for s in (1, 2)
    )
    found = {tuple(w[n].v for n in system.vars) for w in out.witnesses}
    assert expected in found


# ---------------------------------------------------------------------------
# Buchberger engine
# ---------------------------------------------------------------------------

def test_buchberger_linear_fixture():
    out = buchberger(sys_of(["x"], ["3*x - 6"]))
    assert [str(b) for b in out.basis] == ["x - 2"]
    assert out.status == "inconclusive"
    assert out.effort["completed"] is True


def test_buchberger_certifies_inconsistent_pair():
    out = buchberger(sys_of(["x"], ["x", "x + 1"]))
    assert out.status == "certified_empty_over_closure"
    assert [str(b) for b in out.basis] == ["1"]


def test_buchberger_reduced_basis_fixture():
    out = buchberger(sys_of(["x", "y"], ["x^2 - 1", "x*y - 1"]))
    assert [str(b) for b in out.basis] == ["x - y", "y^2 - 1"]
    assert groebner_selfcheck(out.basis)


def test_buchberger_spoly_property_on_random_small_systems():
    rng = random.Random(77)
    for _ in range(10):
        names = ["x", "y"]
        ring = rg.polynomial_ring(names)
        polys = []
        for _ in range(2):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                mono = (rng.randint(0, 2), rng.randint(0, 2))
                c = F(rng.randint(-3, 3))
                if c:
                    terms[mono] = terms.get(mono, F(0)) + c
            if terms:
                polys.append(rg.RingElem(ring, terms))
        if not polys:
            continue
        system = PolySystem(ring, polys)
        if not system.polys:
            continue
        out = buchberger(system)
        if out.effort["completed"]:
            assert groebner_selfcheck(out.basis)
            for f in system.polys:
                assert reduce_poly(f, out.basis).is_zero()


def test_buchberger_cofactors_certify_ideal_membership():
    rng = random.Random(31)
    checked = 0
    while checked < 20:
        names = ["x", "y"]
        ring = rg.polynomial_ring(names)
        polys = []
        for _ in range(2):
            terms = {}
            for _ in range(rng.randint(1, 3)):
                mono = (rng.randint(0, 2), rng.randint(0, 2))
                c = F(rng.randint(-3, 3))
                if c:
                    terms[mono] = terms.get(mono, F(0)) + c
            if terms:
                polys.append(rg.RingElem(ring, terms))
        if not polys:
            continue
        system = PolySystem(ring, polys)
        if not system.polys:
            continue
        out = buchberger(system, track=True)
        assert out.cofactors is not None
        for elem, cof in zip(out.basis, out.cofactors):
            acc = rg.zero(ring)
            for q, f in zip(cof, system.polys):
                acc = acc + q * f
            assert acc == elem
        checked += 1


def test_buchberger_caps_yield_inconclusive():
    system = symbolic_system(catalog_get("Cstar"))
    out = buchberger(system, caps={"max_pairs": 3})
    assert out.status == "inconclusive"
    assert out.effort["caps_hit"] is True


def test_degree_cap_marks_inconclusive():
    out = buchberger(sys_of(["x", "y"], ["x^2 - 1", "x*y - 1"]), caps={"max_degree": 1})
    assert out.status == "inconclusive"
    assert out.effort["caps_hit"] is True


def test_certified_empty_implies_no_solution_mod_p():
    system = sys_of(["x"], ["x", "x + 1"])
    assert buchberger(system).status == "certified_empty_over_closure"
    for p in (5, 7, 11):
        assert solve_ff_exhaustive(system, p).status == "no_solution_mod_p"


def test_reduce_poly_normal_form():
    system = sys_of(["x", "y"], ["x^2 - 1", "x*y - 1"])
    out = buchberger(system)
    ring = system.ring
    f = rg.parse_scalar("x^2*y - y", ring)
    assert reduce_poly(f, out.basis).is_zero()
    g = rg.parse_scalar("x + 1", ring)
    assert not reduce_poly(g, out.basis).is_zero()


def test_buchberger_rejects_non_rational_carrier():
    # systems are built over Q[vars] by construction; the engine trusts that
    system = sys_of(["x"], ["x - 2"])
    out = buchberger(system)
    assert out.basis and str(out.basis[0]) == "x - 2"


# ---------------------------------------------------------------------------
# expressibility pipeline
# ---------------------------------------------------------------------------

def test_certify_b9_lifts_an_exact_witness():
    out = certify_expressibility(catalog_get("B9"), primes=(5, 7))
    assert out.status == "witness"
    assert out.prime is None  # rational witness, not a residue
    witness_msc = Msc.from_strings(Q, 2, 2, [
        [str(out.witness[f"h1{r}{s}"]) for r in (1, 2) for s in (1, 2)],
        [str(out.witness[f"h2{r}{s}"]) for r in (1, 2) for s in (1, 2)],
    ])
    assert expressibility_residual(witness_msc, catalog_get("B9")).is_zero()


def test_certify_cdagger_recovers_a_listed_generator():
    out = certify_expressibility(catalog_get("Cdagger"), primes=(5, 7))
    assert out.status == "witness"
    values = {k: str(v) for k, v in out.witness.items()}
    assert values == {
        "h111": "1/3", "h112": "0", "h121": "0", "h122": "0",
        "h211": "0", "h212": "-1/3", "h221": "2/3", "h222": "0",
    }


def test_certify_zero_target_returns_zero_witness():
    out = certify_expressibility(Msc.zero(Q, 2, 3), primes=(5,))
    assert out.status == "witness"
    assert all(v.is_zero() for v in out.witness.values())


def test_certify_cstar_reports_strongest_negative_outcome():
    out = certify_expressibility(catalog_get("Cstar"), primes=(5, 7))
    assert out.status == "certified_empty_over_closure"
    stages = [e.status for e in out.evidence]
    assert stages[:2] == ["no_solution_mod_p", "no_solution_mod_p"]
    assert stages[2] == "certified_empty_over_closure"
    assert [str(b) for b in out.evidence[2].basis] == ["1"]


def test_certify_cstar_without_groebner():
    out = certify_expressibility(catalog_get("Cstar"), primes=(5,), groebner=False)
    assert out.status == "no_solution_mod_p"
    assert [e.status for e in out.evidence] == ["no_solution_mod_p"]


def test_solve_outcome_documents():
    out = certify_expressibility(catalog_get("Cstar"), primes=(5,), groebner=False)
    doc = out.to_doc()
    assert doc["status"] == "no_solution_mod_p"
    assert doc["witness"] is None
    assert isinstance(doc["evidence"], list) and doc["evidence"]


def test_default_caps_are_pinned():
    assert DEFAULT_CAPS == {"max_pairs": 20000, "max_degree": 12}
