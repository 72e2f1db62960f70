"""Exact dense linear algebra over k = F_p(t) plus a numpy engine for
polynomial matrices.

Two representations coexist:

* `Mat` — list-of-tuples of RatFunc entries; fully general, used for all
  solves up to a few dozen rows and for anything with denominators.
* `PolyMat` — an int64 ndarray of coefficient slices (D, rows, cols) for
  matrices with polynomial entries; products run through float64 BLAS
  (entries stay far below 2^53) and are reduced mod p afterwards.  This is
  what makes the 64-dimensional tensor computations cheap.

Charpoly is Berkowitz (division-free: correct in characteristic p).
Symmetric diagonalization is fraction-free via leading principal minors
(Jacobi), with symmetric pivoting and the e_i + e_j trick for zero
diagonals; pivot modifications restart the elimination on the transformed
matrix so exact divisibility is preserved.
"""

import numpy as np

from .funcfield import Poly, RatFunc


class Mat:
    """Immutable dense matrix over F_p(t)."""

    __slots__ = ("p", "rows")

    def __init__(self, p, rows):
        self.p = p
        self.rows = tuple(tuple(r) for r in rows)

    @classmethod
    def from_rows(cls, p, rows):
        return cls(p, rows)

    @classmethod
    def zeros(cls, p, n, m=None):
        m = n if m is None else m
        z = RatFunc.zero(p)
        return cls(p, [[z] * m for _ in range(n)])

    @classmethod
    def identity(cls, p, n):
        z, o = RatFunc.zero(p), RatFunc.one(p)
        return cls(p, [[o if i == j else z for j in range(n)] for i in range(n)])

    @classmethod
    def from_int_rows(cls, p, rows):
        return cls(p, [[RatFunc.from_int(p, c) for c in r] for r in rows])

    @property
    def nrows(self):
        return len(self.rows)

    @property
    def ncols(self):
        return len(self.rows[0]) if self.rows else 0

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.p == other.p and self.rows == other.rows

    def __hash__(self):
        return hash((self.p, self.rows))

    def is_zero(self):
        return all(e.is_zero() for r in self.rows for e in r)

    def __add__(self, other):
        return Mat(
            self.p,
            [
                [a + b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __sub__(self, other):
        return Mat(
            self.p,
            [
                [a - b for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.rows, other.rows)
            ],
        )

    def __neg__(self):
        return Mat(self.p, [[-a for a in r] for r in self.rows])

    def __mul__(self, other):
        if isinstance(other, RatFunc):
            return Mat(self.p, [[a * other for a in r] for r in self.rows])
        n, k, m = self.nrows, self.ncols, other.ncols
        if other.nrows != k:
            raise ValueError("matrix dimension mismatch")
        zero = RatFunc.zero(self.p)
        bt = list(zip(*other.rows))
        out = []
        for r in self.rows:
            row = []
            nz = [(j, a) for j, a in enumerate(r) if not a.is_zero()]
            for col in bt:
                acc = zero
                for j, a in nz:
                    b = col[j]
                    if not b.is_zero():
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return Mat(self.p, out)

    def scale(self, s):
        return self * s

    @property
    def T(self):
        return Mat(self.p, list(zip(*self.rows)))

    def trace(self):
        acc = RatFunc.zero(self.p)
        for i in range(self.nrows):
            acc = acc + self.rows[i][i]
        return acc

    def kron(self, other):
        out = []
        for r1 in self.rows:
            for r2 in other.rows:
                out.append([a * b for a in r1 for b in r2])
        return Mat(self.p, out)

    def flatten(self):
        """Row-major entry list (the fixed flattening order used everywhere)."""
        return [e for r in self.rows for e in r]

    def map(self, fn):
        return Mat(self.p, [[fn(e) for e in r] for r in self.rows])

    def clear_denominators(self):
        """Scale by the lcm of all entry denominators: polynomial entries."""
        lcm = Poly.one(self.p)
        for r in self.rows:
            for e in r:
                g = lcm.gcd(e.den)
                lcm = lcm * e.den.exact_div(g)
        if lcm.is_one():
            return self
        return self * RatFunc(lcm)

    def is_symmetric(self):
        return self == self.T

    def __pow__(self, e):
        result = Mat.identity(self.p, self.nrows)
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    # -- elimination ---------------------------------------------------

    def rref(self):
        """Reduced row echelon form: (Mat, pivot column tuple)."""
        rows = [list(r) for r in self.rows]
        nr, nc = len(rows), self.ncols
        pivots = []
        r = 0
        for c in range(nc):
            pr = None
            for i in range(r, nr):
                if not rows[i][c].is_zero():
                    pr = i
                    break
            if pr is None:
                continue
            rows[r], rows[pr] = rows[pr], rows[r]
            inv = rows[r][c].inverse()
            rows[r] = [a * inv for a in rows[r]]
            for i in range(nr):
                if i != r and not rows[i][c].is_zero():
                    f = rows[i][c]
                    rows[i] = [
                        a - f * b if not b.is_zero() else a
                        for a, b in zip(rows[i], rows[r])
                    ]
            pivots.append(c)
            r += 1
            if r == nr:
                break
        return Mat(self.p, rows), tuple(pivots)

    def rank(self):
        return len(self.rref()[1])

    def nullspace(self):
        """Basis of the right nullspace as a list of row vectors (tuples)."""
        R, pivots = self.rref()
        nc = self.ncols
        free = [c for c in range(nc) if c not in pivots]
        zero, one = RatFunc.zero(self.p), RatFunc.one(self.p)
        basis = []
        for fc in free:
            vec = [zero] * nc
            vec[fc] = one
            for r, pc in enumerate(pivots):
                vec[pc] = -R.rows[r][fc]
            basis.append(tuple(vec))
        return basis

    def solve(self, rhs):
        """One solution x of self @ x = rhs (rhs row-tuple), or None."""
        aug = Mat(
            self.p, [list(r) + [rhs[i]] for i, r in enumerate(self.rows)]
        )
        R, pivots = aug.rref()
        nc = self.ncols
        if nc in pivots:
            return None
        zero = RatFunc.zero(self.p)
        x = [zero] * nc
        for r, pc in enumerate(pivots):
            x[pc] = R.rows[r][nc]
        return tuple(x)

    def inverse(self):
        n = self.nrows
        aug = Mat(
            self.p,
            [
                list(self.rows[i]) + list(Mat.identity(self.p, n).rows[i])
                for i in range(n)
            ],
        )
        R, pivots = aug.rref()
        if pivots[:n] != tuple(range(n)):
            raise ValueError("matrix not invertible")
        return Mat(self.p, [list(R.rows[i])[n:] for i in range(n)])

    def det(self):
        """Determinant via fraction-free Bareiss on a denominator-cleared copy."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("det of non-square matrix")
        p = self.p
        # clear denominators row by row, tracking the correction factor
        correction = RatFunc.one(p)
        rows = []
        for r in self.rows:
            lcm = Poly.one(p)
            for e in r:
                g = lcm.gcd(e.den)
                lcm = lcm * e.den.exact_div(g)
            correction = correction * RatFunc(lcm)
            scaled = RatFunc(lcm)
            rows.append([(e * scaled).num for e in r])
        d = _bareiss_det(p, rows)
        return RatFunc(d) / correction

    def charpoly(self):
        """Characteristic polynomial coefficients [c_0, ..., c_n], c_n = 1.

        Berkowitz: division-free, valid in characteristic p.  det(T*I - M)
        = sum c_i T^i.
        """
        return berkowitz_charpoly(self)

    def charpoly_coeff(self, k):
        """Coefficient of T^k in det(T*I - M)."""
        return self.charpoly()[k]

    def __repr__(self):
        body = "; ".join(", ".join(str(e) for e in r) for r in self.rows)
        return f"Mat[{body}]"


def _bareiss_det(p, rows):
    """Determinant of a square polynomial matrix (Poly entries), exact."""
    n = len(rows)
    m = [list(r) for r in rows]
    sign = 1
    prev = Poly.one(p)
    for k in range(n - 1):
        if m[k][k].is_zero():
            swap = None
            for i in range(k + 1, n):
                if not m[i][k].is_zero():
                    swap = i
                    break
            if swap is None:
                return Poly.zero(p)
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num.exact_div(prev)
            m[i][k] = Poly.zero(p)
        prev = m[k][k]
    d = m[n - 1][n - 1]
    return d.scale(-1) if sign < 0 else d


def berkowitz_charpoly(M):
    """Berkowitz characteristic polynomial for Mat (ascending coefficients)."""
    p = M.p
    n = M.nrows
    one = RatFunc.one(p)
    zero = RatFunc.zero(p)
    if n == 0:
        return [one]
    # vectors of length r+2 of charpoly coefficients of leading principal minors
    polys = [(-M.rows[0][0], one)]  # charpoly of 1x1 block, ascending
    for r in range(1, n):
        a = M.rows[r][r]
        R = M.rows[r][:r]
        C = [M.rows[i][r] for i in range(r)]
        A = [row[:r] for row in M.rows[:r]]
        # Toeplitz column: [1, -a, -R*C, -R*A*C, -R*A^2*C, ...]
        tvals = [one, -a]
        vec = C
        for _ in range(r - 1):
            dot = zero
            for x, y in zip(R, vec):
                if not x.is_zero() and not y.is_zero():
                    dot = dot + x * y
            tvals.append(-dot)
            vec = [
                sum(
                    (A[i][j] * vec[j] for j in range(r) if not vec[j].is_zero()),
                    zero,
                )
                for i in range(r)
            ]
        dot = zero
        for x, y in zip(R, vec):
            if not x.is_zero() and not y.is_zero():
                dot = dot + x * y
        tvals.append(-dot)
        prev = polys[-1]  # ascending coeffs, length r+1
        new = [zero] * (r + 2)
        # new (descending conv): new_desc[i] = sum_j tvals[j] * prev_desc[i-j]
        prev_desc = list(reversed(prev))
        for i in range(r + 2):
            acc = zero
            for j in range(max(0, i - r), min(i, r + 1) + 1):
                if j < len(tvals) and i - j < len(prev_desc):
                    tv = tvals[j]
                    pv = prev_desc[i - j]
                    if not tv.is_zero() and not pv.is_zero():
                        acc = acc + tv * pv
            new[i] = acc
        polys.append(tuple(reversed(new)))
    return list(polys[-1])


def charpoly_coeff_of_product(X, Y, k):
    return (X * Y).charpoly_coeff(k)


class KSpan:
    """Row space over k with incremental RREF; deterministic basis."""

    __slots__ = ("p", "rows", "pivots")

    def __init__(self, p, ncols=None):
        self.p = p
        self.rows = []
        self.pivots = []

    def reduce(self, vec):
        """Reduce vec against the current basis; returns the residual list."""
        v = list(vec)
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            if not c.is_zero():
                for j, b in enumerate(row):
                    if not b.is_zero():
                        v[j] = v[j] - c * b
        return v

    def add(self, vec):
        """Insert vec; True if it enlarged the span."""
        v = self.reduce(vec)
        piv = next((j for j, e in enumerate(v) if not e.is_zero()), None)
        if piv is None:
            return False
        inv = v[piv].inverse()
        v = [e * inv for e in v]
        # back-substitute to keep full RREF
        for row, q in zip(self.rows, self.pivots):
            c = row[piv]
            if not c.is_zero():
                for j in range(len(row)):
                    if not v[j].is_zero():
                        row[j] = row[j] - c * v[j]
        idx = 0
        while idx < len(self.pivots) and self.pivots[idx] < piv:
            idx += 1
        self.rows.insert(idx, v)
        self.pivots.insert(idx, piv)
        return True

    def contains(self, vec):
        return all(e.is_zero() for e in self.reduce(vec))

    @property
    def dim(self):
        return len(self.rows)

    def coordinates(self, vec):
        """Coordinates of vec in the RREF basis, or None if outside the span."""
        v = list(vec)
        coords = []
        for row, piv in zip(self.rows, self.pivots):
            c = v[piv]
            coords.append(c)
            if not c.is_zero():
                for j, b in enumerate(row):
                    if not b.is_zero():
                        v[j] = v[j] - c * b
        if any(not e.is_zero() for e in v):
            return None
        return coords

    def basis_rows(self):
        return [tuple(r) for r in self.rows]


# ---------------------------------------------------------------------------
# numpy polynomial-matrix engine
# ---------------------------------------------------------------------------


class PolyMat:
    """Matrix over F_p[t] as an int64 array of coefficient slices (D, n, m)."""

    __slots__ = ("p", "arr")

    def __init__(self, p, arr):
        self.p = p
        a = np.asarray(arr, dtype=np.int64) % p
        if a.ndim != 3:
            raise ValueError("PolyMat wants a (degree, rows, cols) array")
        self.arr = _trim(a)

    @classmethod
    def from_mat(cls, M):
        """Exact conversion; every entry must be a polynomial."""
        deg = 0
        for r in M.rows:
            for e in r:
                if not e.is_polynomial():
                    raise ValueError("PolyMat.from_mat needs polynomial entries")
                deg = max(deg, max(e.num.degree, 0))
        arr = np.zeros((deg + 1, M.nrows, M.ncols), dtype=np.int64)
        for i, r in enumerate(M.rows):
            for j, e in enumerate(r):
                for d, c in enumerate(e.num.coeffs):
                    arr[d, i, j] = c
        return cls(M.p, arr)

    def to_mat(self):
        D, n, m = self.arr.shape
        rows = []
        for i in range(n):
            row = []
            for j in range(m):
                row.append(RatFunc(Poly(self.p, [int(self.arr[d, i, j]) for d in range(D)])))
            rows.append(row)
        return Mat(self.p, rows)

    @classmethod
    def identity(cls, p, n):
        return cls(p, np.eye(n, dtype=np.int64)[None, :, :])

    @classmethod
    def zeros(cls, p, n, m=None):
        m = n if m is None else m
        return cls(p, np.zeros((1, n, m), dtype=np.int64))

    @property
    def shape(self):
        return self.arr.shape[1:]

    @property
    def maxdeg(self):
        return self.arr.shape[0] - 1

    def __eq__(self, other):
        if not isinstance(other, PolyMat) or self.p != other.p:
            return False
        a, b = self.arr, other.arr
        D = max(a.shape[0], b.shape[0])
        if a.shape[1:] != b.shape[1:]:
            return False
        ap = np.zeros((D,) + a.shape[1:], dtype=np.int64)
        bp = np.zeros((D,) + b.shape[1:], dtype=np.int64)
        ap[: a.shape[0]] = a
        bp[: b.shape[0]] = b
        return bool(np.array_equal(ap, bp))

    def is_zero(self):
        return not self.arr.any()

    def __add__(self, other):
        D = max(self.arr.shape[0], other.arr.shape[0])
        out = np.zeros((D,) + self.arr.shape[1:], dtype=np.int64)
        out[: self.arr.shape[0]] += self.arr
        out[: other.arr.shape[0]] += other.arr
        return PolyMat(self.p, out % self.p)

    def __neg__(self):
        return PolyMat(self.p, (-self.arr) % self.p)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        """Matrix product via per-degree float64 BLAS; exact below 2^53."""
        if isinstance(other, PolyMat):
            Da, Db = self.arr.shape[0], other.arr.shape[0]
            n, kk = self.shape
            k2, m = other.shape
            if kk != k2:
                raise ValueError("PolyMat dimension mismatch")
            A = self.arr.astype(np.float64)
            B = other.arr.astype(np.float64)
            out = np.zeros((Da + Db - 1, n, m), dtype=np.int64)
            for i in range(Da):
                Ai = A[i]
                if not Ai.any():
                    continue
                for j in range(Db):
                    Bj = B[j]
                    if not Bj.any():
                        continue
                    prod = Ai @ Bj
                    out[i + j] = (out[i + j] + prod.astype(np.int64)) % self.p
            return PolyMat(self.p, out)
        raise TypeError("PolyMat * expects PolyMat")

    def mul_poly(self, f):
        """Scale by a polynomial (convolution along the degree axis)."""
        cs = np.asarray(f.coeffs, dtype=np.int64)
        if cs.size == 0:
            return PolyMat.zeros(self.p, *self.shape)
        D = self.arr.shape[0]
        out = np.zeros((D + cs.size - 1,) + self.arr.shape[1:], dtype=np.int64)
        for d, c in enumerate(cs):
            if c:
                out[d : d + D] = (out[d : d + D] + c * self.arr) % self.p
        return PolyMat(self.p, out)

    def mul_int(self, c):
        return PolyMat(self.p, (self.arr * (c % self.p)) % self.p)

    @property
    def T(self):
        return PolyMat(self.p, np.swapaxes(self.arr, 1, 2))

    def kron(self, other):
        Da, Db = self.arr.shape[0], other.arr.shape[0]
        n, m = self.shape
        r, c = other.shape
        out = np.zeros((Da + Db - 1, n * r, m * c), dtype=np.int64)
        for i in range(Da):
            if not self.arr[i].any():
                continue
            for j in range(Db):
                if not other.arr[j].any():
                    continue
                out[i + j] = (out[i + j] + np.kron(self.arr[i], other.arr[j])) % self.p
        return PolyMat(self.p, out)

    def trace(self):
        D = self.arr.shape[0]
        return Poly(self.p, [int(np.trace(self.arr[d]) % self.p) for d in range(D)])

    def __pow__(self, e):
        result = PolyMat.identity(self.p, self.shape[0])
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def entry(self, i, j):
        return Poly(self.p, [int(self.arr[d, i, j]) for d in range(self.arr.shape[0])])

    def flatten_coeff_vector(self, deg_bound):
        """Row-major coefficient vector over F_p, padded to deg_bound+1 slices."""
        D, n, m = self.arr.shape
        if D > deg_bound + 1:
            raise ValueError("degree exceeds bound")
        out = np.zeros((deg_bound + 1, n, m), dtype=np.int64)
        out[:D] = self.arr
        return out.reshape(-1)

    def __repr__(self):
        n, m = self.shape
        return f"PolyMat({n}x{m}, deg<={self.maxdeg})"


def _trim(a):
    D = a.shape[0]
    while D > 1 and not a[D - 1].any():
        D -= 1
    return np.ascontiguousarray(a[:D])


# ---------------------------------------------------------------------------
# mod-p dense elimination (numpy)
# ---------------------------------------------------------------------------


def modp_rref(A, p):
    """RREF of an int matrix mod p; returns (R, pivot_cols). In-place safe."""
    M = np.array(A, dtype=np.int64) % p
    nr, nc = M.shape
    pivots = []
    r = 0
    for c in range(nc):
        if r >= nr:
            break
        col = M[r:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            M[[r, i]] = M[[i, r]]
        inv = pow(int(M[r, c]), p - 2, p)
        M[r] = (M[r] * inv) % p
        rows = np.nonzero(M[:, c])[0]
        rows = rows[rows != r]
        if rows.size:
            M[rows] = (M[rows] - np.outer(M[rows, c], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r], pivots


def modp_nullspace(A, p):
    """Basis rows of the right nullspace of A mod p."""
    R, pivots = modp_rref(A, p)
    nc = A.shape[1]
    free = [c for c in range(nc) if c not in set(pivots)]
    out = np.zeros((len(free), nc), dtype=np.int64)
    for idx, fc in enumerate(free):
        out[idx, fc] = 1
        for r, pc in enumerate(pivots):
            out[idx, pc] = (-R[r, fc]) % p
    return out


def modp_rank(A, p):
    """Rank of an int matrix mod p."""
    return len(modp_rref(A, p)[1])


# ---------------------------------------------------------------------------
# symmetric congruence diagonalization
# ---------------------------------------------------------------------------


def symmetric_diagonalize(G):
    """Congruence diagonalization of a symmetric Mat.

    Returns (entries, P) with P invertible and P^T G P = diag(entries).
    Pivoting prefers nonzero diagonal entries; a zero diagonal block is
    handled by the basis change e_i <- e_i + e_j (valid since p is odd).
    Raises on degenerate input.
    """
    n = G.nrows
    p = G.p
    zero, one = RatFunc.zero(p), RatFunc.one(p)
    M = [[G.rows[i][j] for j in range(n)] for i in range(n)]
    P = [[one if i == j else zero for j in range(n)] for i in range(n)]

    def col_op(dst, src, f):
        # column_dst += f * column_src, applied to both M (rows+cols) and P
        for i in range(n):
            if not M[i][src].is_zero():
                M[i][dst] = M[i][dst] + f * M[i][src]
        for j in range(n):
            if not M[src][j].is_zero():
                M[dst][j] = M[dst][j] + f * M[src][j]
        for i in range(n):
            if not P[i][src].is_zero():
                P[i][dst] = P[i][dst] + f * P[i][src]

    def col_swap(a, b):
        for i in range(n):
            M[i][a], M[i][b] = M[i][b], M[i][a]
        M[a], M[b] = M[b], M[a]
        for i in range(n):
            P[i][a], P[i][b] = P[i][b], P[i][a]

    for k in range(n):
        if M[k][k].is_zero():
            swap = next(
                (j for j in range(k + 1, n) if not M[j][j].is_zero()), None
            )
            if swap is not None:
                col_swap(k, swap)
            else:
                pair = next(
                    (
                        (i, j)
                        for i in range(k, n)
                        for j in range(i + 1, n)
                        if not M[i][j].is_zero()
                    ),
                    None,
                )
                if pair is None:
                    raise ValueError("degenerate symmetric matrix")
                i, j = pair
                col_op(i, j, one)
                if i != k:
                    col_swap(k, i)
        inv = M[k][k].inverse()
        for i in range(k + 1, n):
            if not M[k][i].is_zero():
                col_op(i, k, -(M[k][i] * inv))
    entries = [M[k][k] for k in range(n)]
    if any(e.is_zero() for e in entries):
        raise ValueError("degenerate symmetric matrix")
    return entries, Mat(G.p, P)
