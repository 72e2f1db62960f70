import json

import pytest

from gquadforms.csa import Quaternion
from gquadforms.errors import InputError
from gquadforms.funcfield import Place, RatFunc
from gquadforms.grpalg import direct_tensor_commutant
from gquadforms.linalg import KSpan, Mat, PolyMat
from gquadforms.quadform import QuadForm, equivalent_global, is_hyperbolic

P = 3


def rf(s):
    return RatFunc.from_string(P, s)


# ---------------------------------------------------------------------
# factor bundles (3.1 / 3.2 structure)
# ---------------------------------------------------------------------


def test_bundle_dimensions(bundle1, bundle2):
    for b in (bundle1, bundle2):
        assert b.module.dim == 8
        assert b.end_algebra.dim == 20
        assert b.radical.dim == 16
        assert b.quotient.algebra.dim == 4
        assert b.checks["quotient_isomorphic_to_Hop"]


def test_bundle_g1_action_is_unipotent_identity_block(bundle1):
    g1 = bundle1.module.action["g1"]
    ident = Mat.identity(P, 4)
    from gquadforms.construct import _block

    assert _block(g1, 0, 0) == ident
    assert _block(g1, 0, 1) == ident  # a_1 = f(1 (x) 1) = 1
    assert _block(g1, 1, 1) == ident
    assert _block(g1, 1, 0).is_zero()


def test_bundle_generators_square_zero_displacement(bundle1):
    ident = PolyMat.identity(P, 8)
    for M in bundle1.module.poly_action().values():
        N = M - ident
        assert (N * N).is_zero()


def test_alpha_and_gram_identities(bundle1):
    alpha = bundle1.alpha
    assert alpha.T == -alpha
    A = bundle1.form.gram
    assert A == A.T
    pa = bundle1.module.poly_action()
    pA = PolyMat.from_mat(A)
    for M in pa.values():
        assert M.T * pA * M == pA


def test_base_form_is_hyperbolic_rank8(bundle1):
    assert bundle1.form.rank == 8
    assert is_hyperbolic(bundle1.form)


def test_quotient_involution_is_canonical(bundle1):
    # kind symplectic and ibar(x) = Trd(x) - x were certified during build
    assert bundle1.quotient.involution.kind() == "symplectic"
    assert bundle1.checks["quotient_involution_canonical"]


# ---------------------------------------------------------------------
# tensor stage (3.3)
# ---------------------------------------------------------------------


def test_tensor_dimensions(tensor_bundle):
    assert tensor_bundle.module.dim == 64
    assert tensor_bundle.end_algebra.dim == 400
    assert tensor_bundle.radical.dim == 384
    assert tensor_bundle.quotient_algebra.dim == 16
    assert tensor_bundle.checks["quotient_sym_dim"] == 10


def test_tensor_gram_is_kronecker(tensor_bundle, bundle1, bundle2):
    assert tensor_bundle.form.gram == bundle1.form.gram.kron(bundle2.form.gram)
    assert is_hyperbolic(tensor_bundle.form)


def test_tensor_lifts_project_to_basis(tensor_bundle):
    # lift matrices were built to project exactly onto the quotient basis:
    # their pairwise products reduce mod radical to the structure constants
    alg = tensor_bundle.quotient_algebra
    lifts = tensor_bundle.lift_mats
    rad_span = KSpan(P)
    for M in tensor_bundle.radical.basis:
        rad_span.add(M.flatten())
    for i in (0, 5, 10):
        for j in (0, 7):
            prod = lifts[i] * lifts[j]
            coords = alg.mult(alg.basis_coords(i), alg.basis_coords(j))
            expect = tensor_bundle.lift_of(coords)
            assert rad_span.contains((prod - expect).flatten())


def test_direct_commutant_agrees_with_kron_path(tensor_bundle, bundle1, bundle2):
    left, right = direct_tensor_commutant(tensor_bundle.module, 8)
    assert len(left) == 20 and len(right) == 20
    span1 = KSpan(P)
    for M in bundle1.end_algebra.basis:
        span1.add(M.flatten())
    for M in left:
        assert span1.contains(M.flatten())
    span2 = KSpan(P)
    for M in bundle2.end_algebra.basis:
        span2.add(M.flatten())
    for M in right:
        assert span2.contains(M.flatten())


# ---------------------------------------------------------------------
# the full pipeline (3.4)
# ---------------------------------------------------------------------


def test_pipeline_preconditions_rejected(h1):
    split = Quaternion(rf("1"), rf("t"))
    from gquadforms.construct import counterexample_pipeline

    with pytest.raises(InputError, match="ramified at exactly two"):
        counterexample_pipeline(split, h1)
    with pytest.raises(InputError, match="distinct"):
        counterexample_pipeline(h1, h1)


def test_pipeline_report_content(pipeline_report):
    rep = pipeline_report
    assert rep["ramification"]["Q"] == ["t", "t+1", "t+2", "inf"]
    assert rep["dimensions"] == {
        "module": 64,
        "end_algebra": 400,
        "radical": 384,
        "quotient": 16,
    }
    assert rep["g_verdict"] == "inequivalent"
    assert rep["plain_forms_equivalent"] is True
    assert rep["base_form_hyperbolic"] is True
    assert rep["hp_verdicts"]["factor_module"] == "guaranteed"
    assert rep["hp_verdicts"]["tensor_module"] == "not-guaranteed-by-criterion"
    assert all(row["equal"] for row in rep["local_table"])
    cert = rep["global_certificate"]
    assert cert["value_for_u"] != cert["value_for_1"]
    assert sorted(x for pair in cert["value_for_1"] for x in pair) == sorted(
        ["t", "inf", "t+1", "t+2"]
    )


def test_pipeline_gram_pair_well_formed(pipeline_report):
    rep = pipeline_report
    gq = rep["gram_q"]
    gqp = rep["gram_q_prime"]
    assert len(gq) == 64 and len(gqp) == 64
    # reparse both Gram matrices: symmetric, and invariants as reported
    G1 = Mat(P, [[rf(e) for e in row] for row in gq])
    G2 = Mat(P, [[rf(e) for e in row] for row in gqp])
    assert G1 == G1.T and G2 == G2.T
    inv = rep["form_invariants"]
    assert inv["q"]["rank"] == 64 and inv["q_prime"]["rank"] == 64
    assert inv["q"]["disc"] == "1" and inv["q_prime"]["disc"] == "1"


def test_pipeline_local_table_covers_bad_set(pipeline_report):
    places = [row["place"] for row in pipeline_report["local_table"]]
    for v in ("t", "t+1", "t+2", "inf"):
        assert v in places
    assert len(places) >= 9  # four ramified + at least five sampled


def test_pipeline_determinism(pipeline_report, h1, h2):
    from gquadforms.construct import counterexample_pipeline, report_to_json

    rep2 = counterexample_pipeline(h1, h2)
    assert report_to_json(pipeline_report) == report_to_json(rep2)
