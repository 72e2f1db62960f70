import itertools
import random

import numpy as np
import pytest

from gquadforms.algebra import InvolutionAlgebra, quotient_algebra
from gquadforms.errors import CertificateError, InputError
from gquadforms.funcfield import Poly, RatFunc
from gquadforms.grpalg import (
    EndAlgebra,
    GModule,
    GroupSpec,
    check_module,
    decompose_components,
    endomorphism_algebra,
    hp_verdict,
    is_projective,
    jacobson_radical,
)
from gquadforms.linalg import Mat, modp_rref
from gquadforms.quadform import QuadForm

P = 3


def _cyclic_regular(p):
    """Regular representation of C_p (cyclic shift)."""
    rows = [[1 if (i - 1) % p == j else 0 for j in range(p)] for i in range(p)]
    return Mat.from_int_rows(p, rows)


def _regular_module_cp3():
    """k[C_3^3] acting on itself: Kronecker shifts of dimension 27."""
    g = _cyclic_regular(P)
    ident = Mat.identity(P, P)
    grp = GroupSpec.cp_cubed(P)
    a1 = g.kron(ident).kron(ident)
    a2 = ident.kron(g).kron(ident)
    a3 = ident.kron(ident).kron(g)
    return GModule(grp, {"g1": a1, "g2": a2, "g3": a3})


# ---------------------------------------------------------------------
# module validation
# ---------------------------------------------------------------------


def test_check_module_trivial_valid():
    grp = GroupSpec(P, ["g"])
    m = GModule(grp, {"g": Mat.identity(P, 4)})
    assert check_module(m).valid


def test_check_module_order_violation():
    grp = GroupSpec(P, ["g"])
    # an order-2 generator with p = 3
    m = GModule(grp, {"g": Mat.from_int_rows(P, [[0, 1], [1, 0]])})
    rep = check_module(m)
    assert not rep.valid
    assert "g" in rep.problems[0]
    with pytest.raises(InputError):
        rep.raise_if_invalid()


def test_check_module_commutation_violation():
    grp = GroupSpec(P, ["a", "b"])
    # (I + E_01) and (I + E_12) have order 3 in char 3 but do not commute
    x = Mat.from_int_rows(P, [[1, 1, 0], [0, 1, 0], [0, 0, 1]])
    y = Mat.from_int_rows(P, [[1, 0, 0], [0, 1, 1], [0, 0, 1]])
    m = GModule(grp, {"a": x, "b": y})
    rep = check_module(m)
    assert not rep.valid
    assert any("commute" in prob for prob in rep.problems)


# ---------------------------------------------------------------------
# endomorphism algebras
# ---------------------------------------------------------------------


def test_trivial_module_full_matrix_algebra():
    grp = GroupSpec(P, ["g"])
    m = GModule(grp, {"g": Mat.identity(P, 3)})
    E = endomorphism_algebra(m)
    assert E.dim == 9


def test_group_algebra_self_endomorphisms():
    m = _regular_module_cp3()
    assert check_module(m).valid
    E = endomorphism_algebra(m)
    assert E.dim == 27  # commutative group algebra is its own endomorphism ring


def test_generic_commutant_polynomial_entries():
    grp = GroupSpec(P, ["g"])
    t = RatFunc.t(P)
    one = RatFunc.one(P)
    zero = RatFunc.zero(P)
    # unipotent with polynomial entry
    A = Mat(P, [[one, t], [zero, one]])
    m = GModule(grp, {"g": A})
    E = endomorphism_algebra(m)
    assert E.dim == 2  # scalars + the nilpotent direction


# ---------------------------------------------------------------------
# radical: known answers and certificates
# ---------------------------------------------------------------------


def test_radical_full_matrix_algebra_is_zero():
    units = [
        Mat.from_int_rows(P, [[1 if (r, c) == (i, j) else 0 for c in range(3)] for r in range(3)])
        for i in range(3)
        for j in range(3)
    ]
    res = jacobson_radical(EndAlgebra(P, 3, units))
    assert res.dim == 0
    assert res.certificate["quotient_radical_dim"] == 0


def test_radical_scalars_in_M3():
    # the characteristic-p trap: trace form on scalars inside M_3 vanishes
    res = jacobson_radical(EndAlgebra(P, 3, [Mat.identity(P, 3)]))
    assert res.dim == 0


def test_radical_kc3_augmentation_ideal():
    grp = GroupSpec(P, ["g"])
    m = GModule(grp, {"g": _cyclic_regular(P)})
    E = endomorphism_algebra(m)
    res = jacobson_radical(E)
    assert res.dim == 2
    assert res.certificate["dims"]["quotient"] == 1
    # the radical is the augmentation-type ideal: g - 1 generates it
    g = _cyclic_regular(P)
    ident = Mat.identity(P, P)
    span_probe = E.span()
    assert span_probe.contains((g - ident).flatten())
    from gquadforms.linalg import KSpan

    sp = KSpan(P)
    for M in res.basis:
        sp.add(M.flatten())
    assert sp.contains((g - ident).flatten())
    assert sp.contains(((g - ident) * (g - ident)).flatten())


def test_radical_kc3cubed():
    m = _regular_module_cp3()
    E = endomorphism_algebra(m)
    res = jacobson_radical(E)
    assert res.dim == 26
    assert res.certificate["dims"]["quotient"] == 1


def test_radical_matches_brute_force_on_random_constant_algebras():
    rng = random.Random(12)

    def closure(gens, n):
        mats = [np.eye(n, dtype=np.int64)] + [g % P for g in gens]
        basis = _rref_basis(mats, n)
        while True:
            added = False
            for A in list(basis):
                for B in list(basis):
                    C = (A @ B) % P
                    new = _rref_basis(basis + [C], n)
                    if len(new) > len(basis):
                        basis = new
                        added = True
            if not added:
                return basis

    def _rref_basis(mats, n):
        flat = np.stack([M.reshape(-1) for M in mats])
        R, piv = modp_rref(flat, P)
        return [R[i].reshape(n, n) for i in range(len(piv))]

    def brute_radical_dim(basis, n):
        sols = []
        for coeffs in itertools.product(range(P), repeat=len(basis)):
            X = sum(int(c) * B for c, B in zip(coeffs, basis)) % P
            if all(not (np.linalg.matrix_power((X @ Y) % P, n) % P).any() for Y in basis):
                sols.append(np.array(coeffs, dtype=np.int64))
        if not sols:
            return 0
        _, piv = modp_rref(np.stack(sols), P)
        return len(piv)

    tested = 0
    for _ in range(12):
        n = rng.choice([2, 3])
        gens = [
            np.array([[rng.randrange(P) for _ in range(n)] for _ in range(n)], dtype=np.int64)
            for _ in range(rng.choice([1, 2]))
        ]
        basis = closure(gens, n)
        if len(basis) > 6:
            continue
        E = EndAlgebra(P, n, [Mat.from_int_rows(P, B.tolist()) for B in basis])
        assert jacobson_radical(E).dim == brute_radical_dim(basis, n)
        tested += 1
    assert tested >= 5


def test_certificate_rejects_non_ideal():
    from gquadforms.grpalg import certify_radical

    units = [
        Mat.from_int_rows(P, [[1 if (r, c) == (i, j) else 0 for c in range(2)] for r in range(2)])
        for i in range(2)
        for j in range(2)
    ]
    E = EndAlgebra(P, 2, units)
    bad = [units[1]]  # e_12 alone is not an ideal of M_2
    with pytest.raises(CertificateError):
        certify_radical(E, bad)


# ---------------------------------------------------------------------
# components
# ---------------------------------------------------------------------


def test_decompose_k_times_k_swap_is_unitary():
    e11 = Mat.from_int_rows(P, [[1, 0], [0, 0]])
    e22 = Mat.from_int_rows(P, [[0, 0], [0, 1]])
    from gquadforms.algebra import Algebra

    alg = Algebra.from_matrices(P, [e11, e22])
    # swap involution
    cols = [alg.coords_of(e22), alg.coords_of(e11)]
    # careful: basis order is the RREF basis; build images accordingly
    imgs = []
    for M in alg.matrices:
        swapped = Mat.from_int_rows(
            P, [[int(str(M.rows[1][1])), 0], [0, int(str(M.rows[0][0]))]]
        )
        imgs.append(alg.coords_of(swapped))
    inv_mat = Mat(P, [[imgs[j][i] for j in range(2)] for i in range(2)])
    ia = InvolutionAlgebra(alg, inv_mat)
    report = decompose_components(ia)
    comps = list(report)
    assert len(comps) == 1
    assert comps[0]["kind"] == "unitary"
    assert comps[0]["involution"] == "swapped-with-partner"


def test_decompose_single_split_component():
    units = [
        Mat.from_int_rows(P, [[1 if (r, c) == (i, j) else 0 for c in range(2)] for r in range(2)])
        for i in range(2)
        for j in range(2)
    ]
    from gquadforms.algebra import Algebra

    alg = Algebra.from_matrices(P, units)
    cols = [alg.coords_of(alg.matrix_of(alg.basis_coords(m)).T) for m in range(4)]
    ia = InvolutionAlgebra(alg, Mat(P, [[cols[j][i] for j in range(4)] for i in range(4)]))
    comps = list(decompose_components(ia))
    assert len(comps) == 1
    assert comps[0]["kind"] == "orthogonal"
    assert comps[0]["splitness"] == "split"


# ---------------------------------------------------------------------
# projectivity and verdicts
# ---------------------------------------------------------------------


def test_projective_spec_examples(bundle1):
    assert is_projective(_regular_module_cp3())  # k[G] itself
    assert not is_projective(bundle1.module)  # dim 8 vs |G| = 27
    grp = GroupSpec.cp_cubed(P)
    ident = Mat.identity(P, 1)
    trivial = GModule(grp, {g: ident for g in grp.generators})
    assert not is_projective(trivial)  # free cover kernel nonzero


def test_hp_verdict_trivial_module_with_unit_form():
    grp = GroupSpec.cp_cubed(P)
    ident = Mat.identity(P, 1)
    m = GModule(grp, {g: ident for g in grp.generators})
    q = QuadForm(Mat.identity(P, 1))
    out = hp_verdict(m, q)
    assert out["verdict"] == "guaranteed"
    comps = out["evidence"]["components"]
    assert comps[0]["kind"] == "orthogonal" and comps[0]["splitness"] == "split"


def test_hp_verdict_free_module_path():
    out = hp_verdict(_regular_module_cp3())
    assert out["verdict"] == "guaranteed"
    assert out["path"] == "projective-module"


def test_hp_verdict_trivial_group_path():
    grp = GroupSpec(P, [])
    m = GModule(grp, {}, dim=3)
    out = hp_verdict(m)
    assert out["verdict"] == "guaranteed"
    assert out["path"] == "order-prime-to-p"


def test_hp_verdict_NH_with_form_guaranteed(bundle1):
    out = hp_verdict(bundle1.module, bundle1.form)
    assert out["verdict"] == "guaranteed"
    comps = out["evidence"]["components"]
    assert len(comps) == 1
    assert comps[0]["kind"] == "symplectic"


def test_hp_verdict_invariant_under_base_change(bundle1):
    rng = random.Random(8)
    m = bundle1.module
    n = m.dim
    while True:
        Pm = Mat(P, [[RatFunc.from_int(P, rng.randrange(P)) for _ in range(n)] for _ in range(n)])
        try:
            Pm.inverse()
            break
        except ValueError:
            continue
    conj = m.conjugate(Pm)
    q2 = QuadForm(Pm.T * bundle1.form.gram * Pm)
    out = hp_verdict(conj, q2)
    assert out["verdict"] == "guaranteed"
    comps = out["evidence"]["components"]
    assert comps[0]["kind"] == "symplectic"
