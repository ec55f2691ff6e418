"""Linear operators and spectral-norm estimation.

All operators act on flat float64 vectors. Images are flattened row-major,
and 2-D gradient fields are stored as two stacked channels of equal length:
horizontal differences first, then vertical differences.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np
import scipy.sparse as sp

from .errors import ConstructionError, DimensionError, ParameterError


class Shape(NamedTuple):
    """Operator dimensions: x lives in R^domain_dim, Kx in R^codomain_dim."""

    domain_dim: int
    codomain_dim: int


class LinearOperator:
    """Matrix-free linear map with a forward and an adjoint application.

    Subclasses implement ``matvec`` (K x) and ``rmatvec`` (K* y) and must
    satisfy the adjoint identity <Kx, y> == <x, K*y>. Operators are immutable
    after construction; both applications are read-only and reentrant.
    """

    kind = "abstract"

    def __init__(self, shape: Shape):
        # Degenerate zero-row/zero-column operators are tolerated so that
        # edge cases (1x1 grids, empty LIBSVM files) stay representable.
        if shape.domain_dim < 0 or shape.codomain_dim < 0:
            raise DimensionError(f"invalid operator shape {shape}")
        self.shape = shape

    def matvec(self, x):
        raise NotImplementedError

    def rmatvec(self, y):
        raise NotImplementedError

    def __call__(self, x):
        return self.matvec(x)

    def _check_domain(self, x):
        if x.shape != (self.shape.domain_dim,):
            raise DimensionError(
                f"{self.kind}: expected input of length {self.shape.domain_dim}, "
                f"got shape {x.shape}"
            )

    def _check_codomain(self, y):
        if y.shape != (self.shape.codomain_dim,):
            raise DimensionError(
                f"{self.kind}: expected dual input of length {self.shape.codomain_dim}, "
                f"got shape {y.shape}"
            )

    def __repr__(self):
        return f"<{type(self).__name__} {self.shape.domain_dim}->{self.shape.codomain_dim}>"


class DenseOperator(LinearOperator):
    """Dense row-major matrix."""

    kind = "dense"

    def __init__(self, matrix):
        matrix = np.ascontiguousarray(matrix, dtype=np.float64)
        if matrix.ndim != 2:
            raise ConstructionError("dense payload must be a 2-D array")
        self.matrix = matrix
        super().__init__(Shape(matrix.shape[1], matrix.shape[0]))

    def matvec(self, x):
        self._check_domain(x)
        return self.matrix @ x

    def rmatvec(self, y):
        self._check_codomain(y)
        return self.matrix.T @ y


class CsrOperator(LinearOperator):
    """Sparse matrix in canonical CSR form (sorted, deduplicated)."""

    kind = "sparse_csr"

    def __init__(self, csr):
        if not sp.issparse(csr):
            raise ConstructionError("CsrOperator expects a scipy sparse matrix")
        csr = csr.tocsr().astype(np.float64)
        csr.sum_duplicates()
        csr.sort_indices()
        self._mat = csr
        self._mat_t = csr.T.tocsr()
        super().__init__(Shape(csr.shape[1], csr.shape[0]))

    @property
    def indptr(self):
        return self._mat.indptr

    @property
    def indices(self):
        return self._mat.indices

    @property
    def data(self):
        return self._mat.data

    @property
    def nnz(self):
        return self._mat.nnz

    def matvec(self, x):
        self._check_domain(x)
        return self._mat @ x

    def rmatvec(self, y):
        self._check_codomain(y)
        return self._mat_t @ y


def csr_from_triplets(n_rows, n_cols, triplets):
    """Build a CSR operator from (row, col, value) triplets.

    Duplicate entries are summed and the result is stored in canonical
    order. Out-of-range indices raise ConstructionError.
    """
    rows, cols, vals = [], [], []
    for r, c, v in triplets:
        if not (0 <= r < n_rows) or not (0 <= c < n_cols):
            raise ConstructionError(
                f"triplet index ({r}, {c}) outside {n_rows}x{n_cols}"
            )
        rows.append(r)
        cols.append(c)
        vals.append(v)
    mat = sp.coo_matrix(
        (np.asarray(vals, dtype=np.float64), (rows, cols)), shape=(n_rows, n_cols)
    )
    return CsrOperator(mat.tocsr())


class IdentityOperator(LinearOperator):
    kind = "identity"

    def __init__(self, n):
        super().__init__(Shape(n, n))

    def matvec(self, x):
        self._check_domain(x)
        return x

    def rmatvec(self, y):
        self._check_codomain(y)
        return y


class FirstDifference(LinearOperator):
    """Forward difference operator with rows (-1, 1): (Dx)_k = x_{k+1} - x_k."""

    kind = "first_difference"

    def __init__(self, n):
        if n < 2:
            raise DimensionError("first_difference needs n >= 2")
        self.n = n
        super().__init__(Shape(n, n - 1))

    def matvec(self, x):
        self._check_domain(x)
        return x[1:] - x[:-1]

    def rmatvec(self, y):
        self._check_codomain(y)
        out = np.zeros(self.n)
        out[:-1] -= y
        out[1:] += y
        return out


class GridIncidence(CsrOperator):
    """Signed edge-node incidence matrix of an n1 x n2 grid graph.

    Nodes are numbered row-major. Edge rows enumerate all horizontal
    neighbour pairs in row-major order, then all vertical pairs in
    row-major order. Each row carries -1 at the lexicographically smaller
    node and +1 at the other, so (Dx)_e = x_j - x_i for the edge (i, j)
    with i < j.
    """

    kind = "grid_incidence"

    def __init__(self, n1, n2):
        if n1 < 1 or n2 < 1:
            raise DimensionError("grid_incidence needs n1, n2 >= 1")
        self.grid = (n1, n2)
        rows, cols, vals = [], [], []
        edge = 0
        for i in range(n1):
            for j in range(n2 - 1):
                a = i * n2 + j
                rows += [edge, edge]
                cols += [a, a + 1]
                vals += [-1.0, 1.0]
                edge += 1
        for i in range(n1 - 1):
            for j in range(n2):
                a = i * n2 + j
                rows += [edge, edge]
                cols += [a, a + n2]
                vals += [-1.0, 1.0]
                edge += 1
        n_edges = n1 * (n2 - 1) + (n1 - 1) * n2
        mat = sp.coo_matrix(
            (np.asarray(vals), (rows, cols)), shape=(n_edges, n1 * n2)
        )
        super().__init__(mat.tocsr())


class GramOperator(LinearOperator):
    """Symmetric positive-semidefinite D^T D applied as D^T (D x).

    With D a graph incidence matrix this is the graph Laplacian: row sums
    vanish and the diagonal equals the node degree.
    """

    kind = "gram"

    def __init__(self, inner):
        self.inner = inner
        n = inner.shape.domain_dim
        super().__init__(Shape(n, n))

    def matvec(self, x):
        self._check_domain(x)
        return self.inner.rmatvec(self.inner.matvec(x))

    def rmatvec(self, y):
        return self.matvec(y)


def graph_laplacian(incidence):
    """Return the graph Laplacian D^T D of an incidence (or CSR) operator."""
    return GramOperator(incidence)


class DiscreteGradient2D(LinearOperator):
    """Forward-difference image gradient with zero rows at the far boundary.

    The codomain stacks the horizontal channel before the vertical one; the
    last column of the horizontal channel and the last row of the vertical
    channel are identically zero. The adjoint is the negative divergence.
    The operator norm is below sqrt(8) on every grid.
    """

    kind = "discrete_gradient_2d"

    def __init__(self, rows, cols):
        if rows < 1 or cols < 1:
            raise DimensionError("discrete_gradient_2d needs rows, cols >= 1")
        self.rows = rows
        self.cols = cols
        super().__init__(Shape(rows * cols, 2 * rows * cols))

    def matvec(self, x):
        self._check_domain(x)
        u = x.reshape(self.rows, self.cols)
        gh = np.zeros_like(u)
        gv = np.zeros_like(u)
        gh[:, :-1] = u[:, 1:] - u[:, :-1]
        gv[:-1, :] = u[1:, :] - u[:-1, :]
        return np.concatenate([gh.ravel(), gv.ravel()])

    def rmatvec(self, y):
        self._check_codomain(y)
        p = self.rows * self.cols
        yh = y[:p].reshape(self.rows, self.cols)
        yv = y[p:].reshape(self.rows, self.cols)
        out = np.zeros((self.rows, self.cols))
        out[:, :-1] -= yh[:, :-1]
        out[:, 1:] += yh[:, :-1]
        out[:-1, :] -= yv[:-1, :]
        out[1:, :] += yv[:-1, :]
        return out.ravel()


def first_difference(n):
    """First difference operator D in R^{(n-1) x n}."""
    return FirstDifference(n)


def grid_incidence(n1, n2):
    """Incidence operator of the n1 x n2 grid graph."""
    return GridIncidence(n1, n2)


def discrete_gradient_2d(rows, cols):
    """Discrete image gradient on a rows x cols grid."""
    return DiscreteGradient2D(rows, cols)


def identity(n):
    return IdentityOperator(n)


def estimate_operator_norm(op, tol=1e-8, max_iter=5000, seed=0):
    """Estimate ||K|| = sqrt(lambda_max(K* K)) by power iteration.

    Starts from a seeded random unit vector and iterates v <- K*K v,
    stopping when the Rayleigh quotient changes by less than ``tol``
    relative or after ``max_iter`` steps. The result is a lower bound on
    the true norm up to the tolerance, and is nondecreasing in the
    iteration budget for a fixed seed.
    """
    if tol <= 0:
        raise ParameterError("tol must be positive")
    rng = np.random.default_rng(seed)
    v = rng.standard_normal(op.shape.domain_dim)
    nv = np.linalg.norm(v)
    if nv == 0:
        return 0.0
    v /= nv
    rayleigh = 0.0
    prev = -np.inf
    for _ in range(max_iter):
        w = op.rmatvec(op.matvec(v))
        rayleigh = float(v @ w)
        nw = np.linalg.norm(w)
        if nw == 0:
            return 0.0
        v = w / nw
        if abs(rayleigh - prev) <= tol * max(abs(rayleigh), 1e-30):
            break
        prev = rayleigh
    return float(np.sqrt(max(rayleigh, 0.0)))
