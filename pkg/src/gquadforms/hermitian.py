"""Hermitian elements, induced involutions, and the local/global machinery
for classes of G-invariant forms on a fixed module.

A G-form h' on the module of a base G-form h corresponds to the symmetric
unit u = Gram(h)^{-1} Gram(h') of (End V, gamma), and h ~ h' exactly when
u is congruent to 1 (the classifying-bijection dictionary).  Everything
here manipulates such elements: projecting them to the semisimple quotient
(where classes are detected), lifting back, and computing local invariant
records.

For the degree-4 orthogonal quotients arising from two quaternion factors,
the decisive invariant is the pair of commuting quaternion subalgebras
spanned by the two Lie ideals of the skew space: conjugating the
involution transports skew spaces, Lie ideals and their associative
closures, so the unordered pair of isomorphism classes (recorded as
ramification sets) is an exact conjugation invariant.  Two forms whose
twisted involutions have different pairs cannot be isometric.  That one
elementary fact carries the global inequivalence certificate; the local
classification used for the per-place records is isolated in
`records_equal` / `local_hyperbolicity` and documented there.
"""

from .algebra import InvolutionAlgebra, algebra_from_span
from .errors import CertificateError, ExtractionError, InputError
from .funcfield import (
    RatFunc,
    is_local_square,
    sqrt_of_square,
    square_class,
)
from .linalg import KSpan, Mat, PolyMat
from .quadform import QuadForm, is_hyperbolic


class InducedInvolution:
    """The adjoint involution X -> A^{-1} X^T A of a G-invariant Gram matrix."""

    __slots__ = ("module", "gram", "gram_inv", "_kron")

    def __init__(self, module, gram, gram_inv=None, kron_factors=None):
        self.module = module
        self.gram = gram
        self._kron = kron_factors
        if gram_inv is None:
            if kron_factors is not None:
                a1, a2 = kron_factors
                gram_inv = a1.inverse().kron(a2.inverse())
            else:
                gram_inv = gram.inverse()
        self.gram_inv = gram_inv

    @property
    def p(self):
        return self.gram.p

    def apply_matrix(self, X):
        return self.gram_inv * X.T * self.gram

    def verify_adjoint_identity(self, X):
        """q(Xv, w) = q(v, gamma(X) w) as the exact identity X^T A = A gamma(X)."""
        return X.T * self.gram == self.gram * self.apply_matrix(X)

    def verify_generator_inverses(self):
        """gamma(g) = g^{-1} for every generator action (= G-invariance of q)."""
        for g, M in self.module.action.items():
            if self.apply_matrix(M) * M != Mat.identity(self.p, self.module.dim):
                return False, g
        return True, None


def induced_involution(module, form, gram_inv=None, kron_factors=None):
    """Involution induced by a G-invariant form; rejects non-invariant input."""
    if form.rank != module.dim:
        raise InputError("form rank does not match the module dimension")
    A = form.gram if isinstance(form, QuadForm) else form
    try:
        pa = {g: PolyMat.from_mat(M) for g, M in module.action.items()}
        pA = PolyMat.from_mat(A)
        for g, M in pa.items():
            if M.T * pA * M != pA:
                raise InputError(f"form is not G-invariant at generator {g}")
    except ValueError:
        for g, M in module.action.items():
            if M.T * A * M != A:
                raise InputError(f"form is not G-invariant at generator {g}")
    return InducedInvolution(module, A, gram_inv=gram_inv, kron_factors=kron_factors)


def class_element(base_form, other_form, gamma, end_algebra=None):
    """u = Gram(q)^{-1} Gram(q'): the hermitian element classifying q' against q."""
    u = gamma.gram_inv * (other_form.gram if isinstance(other_form, QuadForm) else other_form)
    if gamma.apply_matrix(u) != u:
        raise InputError("class element is not symmetric for the induced involution")
    if end_algebra is not None and not end_algebra.contains(u):
        raise InputError("class element does not commute with the group action")
    return u


def witness_check(gamma, u, u_prime, e):
    """Exact check sigma(e) * u * e = u' with e invertible."""
    try:
        e.inverse()
    except ValueError:
        return False
    return gamma.apply_matrix(e) * u * e == u_prime


# ---------------------------------------------------------------------------
# project / lift along E -> Ebar
# ---------------------------------------------------------------------------


def project_class(quot, u):
    """Image of a hermitian element in the quotient (coords in Ebar)."""
    return quot.project_matrix(u)


def lift_class(quot, ubar_coords):
    """Hermitian-unit preimage of a quotient class, by symmetrized lifting.

    Takes the complement lift, replaces it by (x + sigma(x))/2, and if that
    is singular retries with symmetric radical shifts.  Bijectivity of the
    class projection guarantees a hermitian unit exists above every
    hermitian unit below.
    """
    E = quot.end_algebra
    p = E.p
    half = RatFunc.from_int(p, pow(2, p - 2, p))
    lift = quot.lift_matrix(ubar_coords)

    def symmetrize(X):
        return (X + quot.parent_iota(X)) * half

    cand = symmetrize(lift)
    if _matrix_invertible(cand):
        return cand
    # retry with symmetric radical shifts (deterministic order)
    for R in quot.radical.basis:
        Rs = symmetrize(R)
        if Rs.is_zero():
            continue
        shifted = cand + Rs
        if project_class_coords_equal(quot, shifted, ubar_coords) and _matrix_invertible(shifted):
            return shifted
    raise CertificateError("no invertible symmetric lift found (unexpected)")


def project_class_coords_equal(quot, u, ubar_coords):
    return tuple(quot.project_matrix(u)) == tuple(ubar_coords)


def _matrix_invertible(X):
    try:
        X.inverse()
        return True
    except ValueError:
        return False


def radical_shift_witness(gamma_apply, r, nil_bound, p):
    """Explicit e with sigma(e) (1 + r) e = 1 for symmetric radical r.

    e = (1 + r)^(-1/2) computed by the Newton iteration
    x <- x (3 - S x^2) / 2 inside the commutative algebra k[r] (valid for
    odd p); it stabilizes after O(log nil_bound) steps since r is nilpotent.
    """
    n = r.nrows
    ident = Mat.identity(p, n)
    S = ident + r
    half = RatFunc.from_int(p, pow(2, p - 2, p))
    three = RatFunc.from_int(p, 3)
    x = ident
    for _ in range(max(3, nil_bound)):
        x = (x * (ident * three - S * x * x)) * half
        if x * x * S == ident:
            break
    if x * x * S != ident:
        raise CertificateError("inverse square root iteration failed")
    return x


# ---------------------------------------------------------------------------
# the quaternion pair of a degree-4 orthogonal involution
# ---------------------------------------------------------------------------


class PairMember:
    """One commuting quaternion subalgebra: presentation + ambient coords."""

    __slots__ = ("quaternion", "coords", "lie_basis")

    def __init__(self, quaternion, coords, lie_basis):
        self.quaternion = quaternion
        self.coords = coords  # (1, x1, x2, x1 x2) as ambient coordinate tuples
        self.lie_basis = lie_basis

    def __repr__(self):
        return f"PairMember({self.quaternion})"


def clifford_quaternion_pair(inv_alg):
    """The two commuting quaternion subalgebras of a 16-dim orthogonal
    involution algebra with trivially-split skew decomposition.

    Skew(sigma) is a 6-dimensional Lie algebra; when it splits into two
    commuting 3-dimensional ideals L+ and L-, the associative closures
    k + L± are commuting quaternion subalgebras generating the algebra,
    and sigma restricts to their canonical involutions.  All of that is
    verified exactly; failure raises (never guesses).
    """
    A = inv_alg.algebra
    p = A.p
    if A.dim != 16:
        raise ExtractionError("pair extraction expects a 16-dimensional algebra")
    skew = inv_alg.skew_basis()
    if len(skew) != 6:
        raise ExtractionError(f"skew space has dimension {len(skew)}, expected 6")

    def bracket(x, y):
        return A.sub(A.mult(x, y), A.mult(y, x))

    def closure(seed):
        sp = KSpan(p)
        sp.add(list(seed))
        changed = True
        while changed:
            changed = False
            for b in skew:
                for l in list(sp.basis_rows()):
                    if sp.add(list(bracket(tuple(b), tuple(l)))):
                        changed = True
        return sp

    seeds = [tuple(s) for s in skew]
    for i in range(len(skew)):
        for j in range(i + 1, len(skew)):
            seeds.append(A.add(tuple(skew[i]), tuple(skew[j])))
    lie_plus = None
    for seed in seeds:
        sp = closure(seed)
        if sp.dim == 3:
            lie_plus = sp
            break
    if lie_plus is None:
        raise ExtractionError(
            "skew space has no 3-dimensional Lie ideal (nontrivial discriminant?)"
        )
    # centralizer of L+ inside the skew space
    rows = []
    Lbasis = lie_plus.basis_rows()
    for l in Lbasis:
        for idx in range(16):
            rows.append([bracket(tuple(b), tuple(l))[idx] for b in skew])
    combos = Mat(p, rows).nullspace()
    minus_vecs = []
    for combo in combos:
        v = A.zero_coords()
        for c, b in zip(combo, skew):
            v = A.add(v, A.smul(c, tuple(b)))
        minus_vecs.append(v)
    lie_minus = KSpan(p)
    for v in minus_vecs:
        lie_minus.add(list(v))
    if lie_minus.dim != 3:
        raise ExtractionError("centralizer ideal is not 3-dimensional")
    both = KSpan(p)
    for v in Lbasis + lie_minus.basis_rows():
        both.add(list(v))
    if both.dim != 6:
        raise ExtractionError("Lie ideals do not decompose the skew space")

    members = []
    for sp in (lie_plus, lie_minus):
        vectors = [A.unit] + [tuple(r) for r in sp.basis_rows()]
        # close under multiplication (pure products may leave span{1, L})
        sub, sub_span = algebra_from_span(A, _mult_closure(A, vectors))
        if sub.dim != 4:
            raise ExtractionError("associative closure of a Lie ideal is not quaternion")
        from .csa import quaternion_from_algebra

        quat, local_coords = quaternion_from_algebra(sub)
        ambient = []
        for lc in local_coords:
            v = A.zero_coords()
            for c, row in zip(lc, sub_span.basis_rows()):
                v = A.add(v, A.smul(c, tuple(row)))
            ambient.append(v)
        members.append(PairMember(quat, tuple(ambient), [tuple(r) for r in sp.basis_rows()]))

    # exact certificates: commuting, generating, canonical restriction
    for x in members[0].lie_basis:
        for y in members[1].lie_basis:
            if A.mult(x, y) != A.mult(y, x):
                raise CertificateError("pair subalgebras do not commute")
    gen = KSpan(p)
    for c0 in members[0].coords:
        for c1 in members[1].coords:
            gen.add(list(A.mult(c0, c1)))
    if gen.dim != 16:
        raise CertificateError("pair subalgebras do not generate the algebra")
    for mem in members:
        for x in mem.lie_basis:
            if inv_alg.apply(x) != tuple(A.smul(RatFunc.from_int(p, -1), x)):
                raise CertificateError("involution is not canonical on a pair member")
    members.sort(key=lambda m: _ram_key(m.quaternion))
    return tuple(members)


def _mult_closure(A, vectors):
    sp = KSpan(A.p)
    out = [tuple(v) for v in vectors]
    for v in out:
        sp.add(list(v))
    changed = True
    while changed:
        changed = False
        cur = [tuple(r) for r in sp.basis_rows()]
        for x in cur:
            for y in cur:
                z = A.mult(x, y)
                if sp.add(list(z)):
                    changed = True
    return [tuple(r) for r in sp.basis_rows()]


def _ram_key(quat):
    return tuple(v.sort_key() for v in quat.ramification_set())


def twisted_involution_algebra(inv_alg, u_coords):
    """The involution x -> u^{-1} sigma(x) u for a symmetric unit u."""
    A = inv_alg.algebra
    if inv_alg.apply(u_coords) != tuple(u_coords):
        raise InputError("twist element must be symmetric")
    u_inv = A.inverse(u_coords)
    d = A.dim
    cols = []
    for i in range(d):
        img = A.mult(u_inv, A.mult(inv_alg.apply(A.basis_coords(i)), u_coords))
        cols.append(img)
    inv_mat = Mat(A.p, [[cols[j][i] for j in range(d)] for i in range(d)])
    return InvolutionAlgebra(A, inv_mat)


def reduced_norm_deg4(alg, u_coords):
    """Reduced norm of an element of a degree-4 central simple algebra.

    The regular characteristic polynomial is the 4th power of the reduced
    one; extract the quartic root coefficient-wise (valid since p does not
    divide 4) and read off the constant term.
    """
    cp = alg.charpoly_regular(u_coords)  # ascending, degree 16
    red = poly_nth_root_monic(cp, 4)
    return red[0]  # (-1)^4 * Nrd


def poly_nth_root_monic(coeffs, m):
    """Monic m-th root of a monic polynomial (ascending RatFunc coeffs).

    Solves descending coefficient by coefficient; the unknown always enters
    linearly with factor m, so only p not dividing m is needed.
    """
    p = coeffs[0].p
    n = len(coeffs) - 1
    if n % m:
        raise ValueError("degree is not divisible by m")
    d = n // m
    zero, one = RatFunc.zero(p), RatFunc.one(p)
    m_inv = RatFunc.from_int(p, m).inverse()
    g = [zero] * d + [one]  # start with T^d
    for j in range(1, d + 1):
        gm = _poly_power(g, m, p)
        target_idx = n - j
        diff = coeffs[target_idx] - gm[target_idx]
        g[d - j] = diff * m_inv
    gm = _poly_power(g, m, p)
    if gm != list(coeffs):
        raise ValueError("polynomial is not a perfect m-th power")
    return g


def _poly_power(g, m, p):
    out = [RatFunc.one(p)]
    for _ in range(m):
        new = [RatFunc.zero(p)] * (len(out) + len(g) - 1)
        for i, a in enumerate(out):
            if a.is_zero():
                continue
            for j, b in enumerate(g):
                if not b.is_zero():
                    new[i + j] = new[i + j] + a * b
        out = new
    return out


# ---------------------------------------------------------------------------
# local invariant records and their comparison
# ---------------------------------------------------------------------------


class SplitAdjointShape:
    """Component shape (a): full matrix algebra over k, involution adjoint
    to an explicit symmetric Gram A.  Hermitian elements are matrices U in
    M_n(k); the translation U -> quadratic form with Gram A*U is exact."""

    def __init__(self, gram):
        self.gram = gram

    def morita_form(self, U=None):
        G = self.gram if U is None else self.gram * U
        if G != G.T:
            raise InputError("Morita Gram of a hermitian element must be symmetric")
        return QuadForm(G)

    def local_record(self, U, v):
        q = self.morita_form(U)
        det = RatFunc.one(self.gram.p)
        for e in q.diagonal():
            det = det * e
        return {
            "shape": "split-matrix",
            "rank": q.rank,
            "det": str(det),
            "hasse": q.hasse_invariant(v),
            "_det": det,
        }

    def local_hyperbolic(self, v, U=None):
        return is_hyperbolic(self.morita_form(U), v)


class QuaternionPairShape:
    """Component shape (b): degree-4 orthogonal involution algebra whose
    skew space splits into two commuting quaternion subalgebras (the
    M_2(Q)-shaped components of the two-quaternion pipeline)."""

    def __init__(self, inv_alg, pair=None):
        self.inv_alg = inv_alg
        self.pair = pair if pair is not None else clifford_quaternion_pair(inv_alg)
        self._twist_cache = {}
        r1 = set(self.pair[0].quaternion.ramification_set())
        r2 = set(self.pair[1].quaternion.ramification_set())
        self.q_ramification = sorted(r1 ^ r2, key=lambda v: v.sort_key())

    def twisted_pair(self, u_coords):
        key = tuple(u_coords)
        if key not in self._twist_cache:
            if key == tuple(self.inv_alg.algebra.unit):
                self._twist_cache[key] = self.pair
            else:
                tw = twisted_involution_algebra(self.inv_alg, u_coords)
                self._twist_cache[key] = clifford_quaternion_pair(tw)
        return self._twist_cache[key]

    def nrd(self, u_coords):
        return reduced_norm_deg4(self.inv_alg.algebra, u_coords)

    def local_record(self, u_coords, v):
        """Complete local record of the class of u at v.

        Division place of the residual quaternion: (rank 2, disc), the
        complete invariant of rank-2 skew-hermitian forms over a local
        division quaternion.  Split place: rank-4 quadratic data, pinned by
        the reduced norm (relative discriminant) and the local splitting
        pattern of the twisted quaternion pair (relative Clifford datum).
        """
        nrd = self.nrd(u_coords)
        tw = self.twisted_pair(u_coords)
        pattern = sorted(
            "division" if any(w == v for w in m.quaternion.ramification_set()) else "split"
            for m in tw
        )
        division = any(w == v for w in self.q_ramification)
        return {
            "shape": "quaternion-division" if division else "split-local",
            "rank": 2 if division else 4,
            "nrd": str(nrd),
            "pair_pattern": pattern,
            "_nrd": nrd,
        }

    def local_hyperbolic(self, v, u_coords=None):
        """Hyperbolicity of the (possibly twisted) involution at v.

        Classification fact used (isolated here per the design decision):
        a degree-4 orthogonal involution with trivial discriminant is
        hyperbolic over a field iff one member of its quaternion pair
        splits; in the tensor-of-canonical-involutions normal form this is
        the statement that (H1, conj) (x) (H2, conj) is hyperbolic iff
        H1 ~ H2, which at a local place reduces to `not both members
        division at v`.
        """
        u = u_coords if u_coords is not None else self.inv_alg.algebra.unit
        tw = self.twisted_pair(u)
        division_count = sum(
            1
            for m in tw
            if any(w == v for w in m.quaternion.ramification_set())
        )
        return division_count < 2

    def globally_hyperbolic_certificate(self, u_coords):
        """Search for an explicit hyperbolicity witness of the u-twist:
        an idempotent e with sigma_u(e) = 1 - e.  Returns e or None."""
        A = self.inv_alg.algebra
        p = A.p
        su = twisted_involution_algebra(self.inv_alg, u_coords)
        minus_one = RatFunc.from_int(p, -1)
        half = RatFunc.from_int(p, pow(2, p - 2, p))
        for w in _symmetric_square_roots_of_one(A, su):
            e = A.smul(half, A.add(A.unit, w))
            if A.mult(e, e) == e and su.apply(e) == A.sub(A.unit, e):
                return e
        return None


def _symmetric_square_roots_of_one(A, su):
    """Candidate w with w^2 = 1, sigma(w) fixed sign, from the skew basis."""
    from .csa import _as_scalar

    p = A.p
    sk = su.skew_basis()
    cands = [tuple(b) for b in sk]
    for i in range(len(sk)):
        for j in range(i + 1, len(sk)):
            cands.append(A.add(tuple(sk[i]), tuple(sk[j])))
    out = []
    for w in cands:
        sq = _as_scalar(A, A.mult(w, w))
        if sq is None or sq.is_zero():
            continue
        if square_class(sq).is_trivial():
            mu = sqrt_of_square(sq).inverse()
            out.append(A.smul(mu, w))
    return out


def records_equal(rec1, rec2, v):
    """Local-equality decision for two invariant records at the place v.

    This is the single point where the transcribed local classification is
    consulted: rank-2 skew-hermitian forms over a local division quaternion
    are classified by (rank, disc) -- the reduced-norm ratio must be a
    local square -- and rank-4 quadratic forms with matching relative
    discriminant and matching quaternion-pair pattern (which pins the local
    similarity class; with trivial relative discriminant, similarity plus
    discriminant decide isometry in rank 4) are isometric.
    """
    if rec1["shape"] != rec2["shape"] or rec1["rank"] != rec2["rank"]:
        return False
    ratio = rec1["_nrd" if "_nrd" in rec1 else "_det"] / rec2["_nrd" if "_nrd" in rec2 else "_det"]
    if not is_local_square(ratio, v):
        return False
    if "pair_pattern" in rec1 and rec1["pair_pattern"] != rec2["pair_pattern"]:
        return False
    if "hasse" in rec1 and rec1["hasse"] != rec2["hasse"]:
        return False
    return True


def local_class_invariants(shape, element, v):
    """Dispatch to the component shape (split matrix / quaternion pair)."""
    return shape.local_record(element, v)


def local_hyperbolicity(shape, v, element=None):
    return shape.local_hyperbolic(v, element)


# ---------------------------------------------------------------------------
# the counterexample element
# ---------------------------------------------------------------------------


def counterexample_element(shape):
    """An element ubar with [ubar] != [1] globally but locally trivial
    everywhere, plus a classification certificate.

    Hypotheses verified first: the residual quaternion Q is division and
    the base involution is locally hyperbolic at every place (no place
    where both pair members are division).  The element is found as a
    product u = a * b of skew elements of the two pair subalgebras whose
    twist admits an explicit hyperbolicity witness; then

      * [u] is the class of the hyperbolic form (witnessed by an exact
        idempotent with sigma_u(e) = 1 - e),
      * [1] is not (its quaternion pair has no split member), and
      * both are locally hyperbolic everywhere, hence locally equal
        (hyperbolic forms of equal rank are unique up to isometry).

    The certificate records the two quaternion pairs; conjugation
    transports skew spaces, Lie ideals and associative closures, so the
    unordered pair of ramification sets is a conjugation invariant and
    distinct pairs prove the classes distinct.
    """
    inv_alg = shape.inv_alg
    A = inv_alg.algebra
    p = A.p
    from .csa import _as_scalar

    base_rams = [set(m.quaternion.ramification_set()) for m in shape.pair]
    if not shape.q_ramification:
        raise InputError("residual quaternion is split; no counterexample regime")
    if base_rams[0] & base_rams[1]:
        raise InputError(
            "base involution is not locally hyperbolic everywhere "
            "(pair members share a ramified place)"
        )
    if not (base_rams[0] and base_rams[1]):
        raise InputError("base involution is already hyperbolic (a pair member splits)")

    Lp = shape.pair[0].lie_basis
    Lm = shape.pair[1].lie_basis

    def combos(basis):
        out = [tuple(bv) for bv in basis]
        for i in range(len(basis)):
            for j in range(len(basis)):
                if i != j:
                    out.append(A.add(tuple(basis[i]), tuple(basis[j])))
                    out.append(
                        A.add(tuple(basis[i]), A.smul(RatFunc.from_int(p, 2), tuple(basis[j])))
                    )
        return out

    for a in combos(Lp):
        asq = _as_scalar(A, A.mult(a, a))
        if asq is None or asq.is_zero():
            continue
        for b in combos(Lm):
            bsq = _as_scalar(A, A.mult(b, b))
            if bsq is None or bsq.is_zero():
                continue
            u = A.mult(a, b)
            witness = shape.globally_hyperbolic_certificate(u)
            if witness is None:
                continue
            return _package_counterexample(shape, u, witness)
    raise CertificateError("no counterexample produced (witness search exhausted)")


def _package_counterexample(shape, u, witness):
    A = shape.inv_alg.algebra
    p = A.p
    from .csa import _as_scalar

    usq = _as_scalar(A, A.mult(u, u))
    if usq is None or usq.is_zero():
        raise CertificateError("counterexample element does not square to a scalar")
    nrd = shape.nrd(u)
    if not square_class(nrd).is_trivial():
        raise CertificateError("reduced norm of the counterexample element is not a square")
    if nrd != usq * usq:
        raise CertificateError("reduced norm is inconsistent with the scalar square")
    tw = shape.twisted_pair(u)
    base_pair_rams = sorted(
        [sorted(str(w) for w in m.quaternion.ramification_set()) for m in shape.pair]
    )
    twist_pair_rams = sorted(
        [sorted(str(w) for w in m.quaternion.ramification_set()) for m in tw]
    )
    if base_pair_rams == twist_pair_rams:
        raise CertificateError("pair invariant failed to separate the classes")
    su = twisted_involution_algebra(shape.inv_alg, u)
    e = witness
    if A.mult(e, e) != e or su.apply(e) != A.sub(A.unit, e):
        raise CertificateError("hyperbolicity witness failed verification")
    certificate = {
        "invariant": "quaternion pair of the twisted involution "
        "(even Clifford datum; classification of rank-2 forms over the quaternion)",
        "value_for_u": twist_pair_rams,
        "value_for_1": base_pair_rams,
        "hyperbolicity_witness_for_u": True,
        "reduced_norm_of_u": str(nrd),
    }
    return {"ubar": u, "witness_idempotent": e, "certificate": certificate}
