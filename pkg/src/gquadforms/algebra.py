"""Finite-dimensional associative algebras over k = F_p(t).

An `Algebra` always owns structure constants on a deterministic basis.  It
may additionally hold a concrete realization as matrices inside some
M_n(k); quotient algebras are abstract and fall back to the left regular
representation when a matrix carrier is needed (faithful, since every
algebra here is unital).

`InvolutionAlgebra` couples an algebra with the coordinate action of a
k-linear involution and provides the symmetric/skew splitting and the
orthogonal/symplectic/unitary kind classification.
"""

from .funcfield import RatFunc
from .linalg import KSpan, Mat


class Algebra:
    """Associative unital algebra with structure constants over F_p(t)."""

    __slots__ = ("p", "dim", "mult_table", "unit", "matrices", "ambient_n", "_span", "_regular")

    def __init__(self, p, mult_table, unit, matrices=None, ambient_n=None, _span=None):
        self.p = p
        self.dim = len(mult_table)
        self.mult_table = mult_table  # mult_table[i][j] = coords of b_i * b_j
        self.unit = tuple(unit)
        self.matrices = matrices
        self.ambient_n = ambient_n
        self._span = _span
        self._regular = None

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_matrices(cls, p, mats, check_closure=True):
        """Algebra spanned by the given matrices (must be closed, contain I)."""
        if not mats:
            raise ValueError("empty generating set")
        n = mats[0].nrows
        span = KSpan(p)
        for M in mats:
            span.add(M.flatten())
        # deterministic basis: the RREF rows themselves, reshaped
        basis = [_unflatten(p, row, n) for row in span.basis_rows()]
        dim = len(basis)
        table = []
        for i, A in enumerate(basis):
            row = []
            for j, B in enumerate(basis):
                coords = span.coordinates((A * B).flatten())
                if coords is None:
                    if check_closure:
                        raise ValueError(
                            f"span not multiplicatively closed at basis pair ({i}, {j})"
                        )
                    coords = [RatFunc.zero(p)] * dim
                row.append(tuple(coords))
            table.append(row)
        unit = span.coordinates(Mat.identity(p, n).flatten())
        if unit is None:
            raise ValueError("algebra does not contain the identity matrix")
        return cls(p, table, unit, matrices=basis, ambient_n=n, _span=span)

    @classmethod
    def from_structure(cls, p, mult_table, unit):
        return cls(p, mult_table, unit)

    # -- coordinates ----------------------------------------------------

    @property
    def span(self):
        if self._span is None:
            raise ValueError("abstract algebra has no ambient span")
        return self._span

    def coords_of(self, M):
        return self.span.coordinates(M.flatten())

    def matrix_of(self, coords):
        if self.matrices is None:
            raise ValueError("abstract algebra has no matrix basis")
        out = Mat.zeros(self.p, self.ambient_n)
        for c, B in zip(coords, self.matrices):
            if not c.is_zero():
                out = out + B * c
        return out

    def zero_coords(self):
        return tuple([RatFunc.zero(self.p)] * self.dim)

    def basis_coords(self, i):
        z = [RatFunc.zero(self.p)] * self.dim
        z[i] = RatFunc.one(self.p)
        return tuple(z)

    # -- arithmetic in coordinates ---------------------------------------

    def mult(self, u, v):
        p = self.p
        out = [RatFunc.zero(p)] * self.dim
        for i, ui in enumerate(u):
            if ui.is_zero():
                continue
            row = self.mult_table[i]
            for j, vj in enumerate(v):
                if vj.is_zero():
                    continue
                f = ui * vj
                for l, c in enumerate(row[j]):
                    if not c.is_zero():
                        out[l] = out[l] + f * c
        return tuple(out)

    def add(self, u, v):
        return tuple(a + b for a, b in zip(u, v))

    def sub(self, u, v):
        return tuple(a - b for a, b in zip(u, v))

    def smul(self, c, u):
        return tuple(c * a for a in u)

    def left_mult_matrix(self, u):
        """Matrix of x -> u*x on the structure basis."""
        cols = [self.mult(u, self.basis_coords(j)) for j in range(self.dim)]
        return Mat(self.p, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def regular_representation(self):
        """Left-regular matrices of the basis (faithful: the algebra is unital)."""
        if self._regular is None:
            self._regular = [
                self.left_mult_matrix(self.basis_coords(i)) for i in range(self.dim)
            ]
        return self._regular

    def is_invertible(self, u):
        return self.left_mult_matrix(u).rank() == self.dim

    def inverse(self, u):
        sol = self.left_mult_matrix(u).solve(self.unit)
        if sol is None:
            raise ValueError("element not invertible")
        return tuple(sol)

    def center(self):
        """Basis (coord tuples) of the center."""
        p = self.p
        rows = []
        for i in range(self.dim):
            Li = self.left_mult_matrix(self.basis_coords(i))
            Ri = self.right_mult_matrix(self.basis_coords(i))
            D = Li - Ri
            rows.extend(list(r) for r in D.rows)
        if not rows:
            return [self.unit]
        return Mat(p, rows).nullspace()

    def right_mult_matrix(self, u):
        cols = [self.mult(self.basis_coords(j), u) for j in range(self.dim)]
        return Mat(self.p, [[cols[j][i] for j in range(self.dim)] for i in range(self.dim)])

    def charpoly_regular(self, u):
        """Characteristic polynomial (ascending coeffs) of left mult by u."""
        return self.left_mult_matrix(u).charpoly()

    def subspace(self, coord_vectors):
        sp = KSpan(self.p)
        for vec in coord_vectors:
            sp.add(list(vec))
        return sp

    def __repr__(self):
        kind = "matrix" if self.matrices is not None else "abstract"
        return f"Algebra(dim {self.dim}, {kind}, p={self.p})"


def _unflatten(p, flat, n):
    rows = [list(flat[i * n : (i + 1) * n]) for i in range(n)]
    return Mat(p, rows)


class QuotientData:
    """A quotient E/R with explicit lift/project maps in E-coordinates."""

    __slots__ = ("parent", "ideal_span", "algebra", "lift_coords", "_solve_inv")

    def __init__(self, parent, ideal_span, algebra, lift_coords, solve_mat):
        self.parent = parent
        self.ideal_span = ideal_span
        self.algebra = algebra
        self.lift_coords = lift_coords  # list of E-coord tuples, one per quotient basis elt
        self._solve_inv = solve_mat.inverse()

    def project(self, e_coords):
        """Coordinates in the quotient of an element of E."""
        col = Mat(self.parent.p, [[c] for c in e_coords])
        sol = self._solve_inv * col
        r = self.ideal_span.dim
        return tuple(sol.rows[i][0] for i in range(r, self.parent.dim))

    def lift(self, q_coords):
        out = [RatFunc.zero(self.parent.p)] * self.parent.dim
        for c, L in zip(q_coords, self.lift_coords):
            if not c.is_zero():
                for idx, x in enumerate(L):
                    if not x.is_zero():
                        out[idx] = out[idx] + c * x
        return tuple(out)


def quotient_algebra(E, ideal_vectors):
    """Quotient of E by the span of the given ideal coordinate vectors."""
    p = E.p
    span = E.subspace(ideal_vectors)
    lifts = []
    probe = E.subspace(span.basis_rows())
    for i in range(E.dim):
        cand = E.basis_coords(i)
        if probe.add(list(cand)):
            lifts.append(cand)
    d = probe.dim - span.dim
    assert len(lifts) == d
    # solve matrix: columns are (ideal basis | lifts)
    cols = span.basis_rows() + lifts
    solve_mat = Mat(p, [[cols[j][i] for j in range(len(cols))] for i in range(E.dim)])
    table = []
    qd_tmp = QuotientData(E, span, None, lifts, solve_mat)
    for a in range(d):
        row = []
        for b in range(d):
            prod = E.mult(lifts[a], lifts[b])
            row.append(qd_tmp.project(prod))
        table.append(row)
    unit = qd_tmp.project(E.unit)
    Q = Algebra.from_structure(p, table, unit)
    qd_tmp.algebra = Q
    return qd_tmp


def algebra_from_span(alg, vectors):
    """Subalgebra of `alg` spanned by the given coordinate vectors.

    Returns (sub_algebra, span); the span's RREF rows fix the sub-basis and
    its coordinates map back to `alg`.  Raises if the span is not closed
    under multiplication or misses a unit of its own.
    """
    sp = KSpan(alg.p)
    for v in vectors:
        sp.add(list(v))
    basis = sp.basis_rows()
    table = []
    for u in basis:
        row = []
        for w in basis:
            prod = alg.mult(u, w)
            coords = sp.coordinates(list(prod))
            if coords is None:
                raise ValueError("span is not multiplicatively closed")
            row.append(tuple(coords))
        table.append(row)
    # unit: solve e with e*b = b for all b (two-sided by closure)
    unit = None
    if sp.contains(list(alg.unit)):
        unit = sp.coordinates(list(alg.unit))
    else:
        d = len(basis)
        rows = []
        rhs = []
        for bidx in range(d):
            for l in range(d):
                rows.append([table[m][bidx][l] for m in range(d)])
                rhs.append(RatFunc.one(alg.p) if (l == bidx) else RatFunc.zero(alg.p))
        aug = Mat(alg.p, rows)
        unit = aug.solve(tuple(rhs))
        if unit is None:
            raise ValueError("span has no unit element")
    sub = Algebra.from_structure(alg.p, table, tuple(unit))
    return sub, sp


class InvolutionAlgebra:
    """Algebra with the coordinate action of a k-linear involution.

    `inv_mat` sends coordinates of x to coordinates of iota(x).  Validity
    (iota^2 = id, anti-multiplicativity) is checked on the whole basis.
    """

    __slots__ = ("algebra", "inv_mat")

    def __init__(self, algebra, inv_mat, check=True):
        self.algebra = algebra
        self.inv_mat = inv_mat
        if check:
            self.verify()

    def verify(self):
        A = self.algebra
        n = A.dim
        ident = Mat.identity(A.p, n)
        if self.inv_mat * self.inv_mat != ident:
            raise ValueError("involution does not square to the identity")
        for i in range(n):
            for j in range(n):
                lhs = self.apply(A.mult(A.basis_coords(i), A.basis_coords(j)))
                rhs = A.mult(
                    self.apply(A.basis_coords(j)), self.apply(A.basis_coords(i))
                )
                if lhs != rhs:
                    raise ValueError(
                        f"involution not anti-multiplicative at basis pair ({i}, {j})"
                    )
        if self.apply(A.unit) != A.unit:
            raise ValueError("involution must fix the identity")

    def apply(self, coords):
        col = Mat(self.algebra.p, [[c] for c in coords])
        out = self.inv_mat * col
        return tuple(out.rows[i][0] for i in range(self.algebra.dim))

    def symmetric_basis(self):
        D = self.inv_mat - Mat.identity(self.algebra.p, self.algebra.dim)
        return D.nullspace()

    def skew_basis(self):
        D = self.inv_mat + Mat.identity(self.algebra.p, self.algebra.dim)
        return D.nullspace()

    def sym_dim(self):
        return len(self.symmetric_basis())

    def fixes_center(self):
        A = self.algebra
        return all(self.apply(z) == tuple(z) for z in A.center())

    def kind(self):
        """'orthogonal' / 'symplectic' / 'unitary' for a simple carrier.

        First kind: the involution fixes the center; the two flavors are
        separated by dim Sym = m(m+1)/2 vs m(m-1)/2 where m is the degree.
        """
        A = self.algebra
        z = A.center()
        if not all(self.apply(c) == tuple(c) for c in z):
            return "unitary"
        center_dim = len(z)
        if center_dim != 1:
            raise ValueError("decompose first: carrier is not simple over k")
        m2 = A.dim
        m = _isqrt(m2)
        if m * m != m2:
            raise ValueError("carrier dimension is not a square over its center")
        s = self.sym_dim()
        if s == m * (m + 1) // 2:
            return "orthogonal"
        if s == m * (m - 1) // 2:
            return "symplectic"
        raise ValueError(f"symmetric dimension {s} matches neither kind for degree {m}")


def _isqrt(n):
    r = int(n**0.5)
    while r * r > n:
        r -= 1
    while (r + 1) * (r + 1) <= n:
        r += 1
    return r
