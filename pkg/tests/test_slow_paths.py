"""Slow cross-checks (CI-slow mode): the direct 64-dimensional solves that
the pipeline replaces with certified structured paths."""

import pytest

from gquadforms.funcfield import RatFunc
from gquadforms.linalg import KSpan, Mat
from gquadforms.quadform import QuadForm, equivalent_global

P = 3

pytestmark = pytest.mark.slow


def test_direct_64dim_diagonalization_agrees_with_kron(tensor_bundle):
    """Diagonalize the rank-64 Gram from scratch (no Kronecker shortcut) and
    compare all Hasse-Minkowski data with the factored diagonal."""
    G = tensor_bundle.form.gram
    fresh = QuadForm(Mat(P, [list(r) for r in G.rows]))  # no cached diagonal
    assert equivalent_global(fresh, tensor_bundle.form)
    assert fresh.disc() == tensor_bundle.form.disc()


def test_direct_64dim_commutant_block_stages(tensor_bundle, bundle1, bundle2):
    """The direct staged solve of the full commutation system on the 64-dim
    module spans exactly the Kronecker basis (agreement of both paths)."""
    from gquadforms.grpalg import direct_tensor_commutant

    left, right = direct_tensor_commutant(tensor_bundle.module, 8)
    assert len(left) * len(right) == tensor_bundle.end_algebra.dim == 400
    span_left = KSpan(P)
    for M in bundle1.end_algebra.basis:
        span_left.add(M.flatten())
    assert all(span_left.contains(M.flatten()) for M in left)
    span_right = KSpan(P)
    for M in bundle2.end_algebra.basis:
        span_right.add(M.flatten())
    assert all(span_right.contains(M.flatten()) for M in right)
    # and per-element: every Kronecker product commutes with all generators
    pa = tensor_bundle.module.poly_action()
    from gquadforms.linalg import PolyMat

    X = PolyMat.from_mat(left[3].clear_denominators()).kron(
        PolyMat.from_mat(right[7].clear_denominators())
    )
    for M in pa.values():
        assert X * M == M * X


def test_q_prime_direct_rediagonalization(pipeline_report):
    """Reparse the emitted Gram pair and recheck their global equivalence
    with a fresh 64x64 elimination."""
    G1 = Mat(P, [[RatFunc.from_string(P, e) for e in row] for row in pipeline_report["gram_q"]])
    G2 = Mat(P, [[RatFunc.from_string(P, e) for e in row] for row in pipeline_report["gram_q_prime"]])
    q1, q2 = QuadForm(G1), QuadForm(G2)
    assert equivalent_global(q1, q2)
