"""Finite linear-algebra model of a line bundle on a truncated special fiber:
a union of projective lines glued along a ball of the tree.

The gluing matrix B maps the direct sum of per-vertex spaces of homogeneous
2-variable polynomials (degree k_parity) to one line per edge, by the
difference of evaluations at the two marked points; all gluing scalars are 1
(the tree is contractible, so any other choice gives the same dimensions).
h0 = dim ker B; the truncated h1 adds the per-component h1(O(k)) lines to
coker B.

Ranks are computed by eliminating leaf blocks inward, which keeps every
intermediate row supported on a single block; a dense row-reduction oracle
is available for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from . import arith
from .arith import FiniteField
from .bundles import BundleClass
from .tree import Ball, ResourceLimitError

MAX_COLUMNS = 200_000


@lru_cache(maxsize=None)
def _eval_row(p: int, k: int, label: int):
    """Evaluation of the monomial basis (X^(k-j) Y^j) at the normalized
    representative of a P^1(F_p) point: (lam, 1) for affine labels,
    (1, 0) for label p."""
    if k < 0:
        return ()
    if label == p:
        return (1,) + (0,) * k
    return tuple(pow(label, k - j, p) for j in range(k + 1))


class GluingComplex:
    """Gluing matrix data for one bundle class on one ball."""

    def __init__(self, bundle: BundleClass, ball: Ball,
                 max_columns: int = MAX_COLUMNS):
        if bundle.q != ball.tree.q:
            raise ValueError("bundle and ball live over different residue fields")
        self.bundle = bundle
        self.ball = ball
        self.p = ball.tree.p
        self.degrees = {0: bundle.k0, 1: bundle.k1}
        n = len(ball.vertices)
        self.block_dim = [max(self.degrees[ball.parity(i)] + 1, 0) for i in range(n)]
        self.offsets = [0] * n
        acc = 0
        for i in range(n):
            self.offsets[i] = acc
            acc += self.block_dim[i]
        self.total_cols = acc
        if acc > max_columns:
            raise ResourceLimitError(f"{acc} columns exceeds cap {max_columns}")
        self.n_edges = len(ball.edges)

    def degree_at(self, idx: int) -> int:
        return self.degrees[self.ball.parity(idx)]

    def rows(self):
        """Dense rows of B (ints mod p), one per edge."""
        p = self.p
        out = []
        for e, (u, v) in enumerate(self.ball.edges):
            lab_u, lab_v = self.ball.edge_labels[e]
            row = [0] * self.total_cols
            for j, c in enumerate(_eval_row(p, self.degree_at(u), lab_u)):
                row[self.offsets[u] + j] = c
            for j, c in enumerate(_eval_row(p, self.degree_at(v), lab_v)):
                row[self.offsets[v] + j] = (-c) % p
            out.append(row)
        return out

    def h1_local(self) -> int:
        """Sum over components of h1(P^1, O(k)) = max(-k-1, 0)."""
        return sum(max(-self.degree_at(i) - 1, 0) for i in range(len(self.ball.vertices)))


@dataclass
class CohomologyResult:
    h0_dim: int
    h1_dim: int
    euler: int
    rank: int
    h0_basis: list | None = None


def _echelon_insert(p: int, basis: list, row: list) -> bool:
    """Reduce row against an echelon basis [(pivot, row)], insert if nonzero.
    Returns True when the row was independent."""
    for piv, b in basis:
        c = row[piv]
        if c:
            row[:] = [(x - c * y) % p for x, y in zip(row, b)]
    for j, x in enumerate(row):
        if x:
            inv = pow(x, p - 2, p)
            row[:] = [(inv * v) % p for v in row]
            basis.append((j, row))
            basis.sort(key=lambda t: t[0])
            return True
    return False


def tree_rank(complex_: GluingComplex, emptied=None):
    """(rank B, number of dependent rows) by leaf-block elimination.

    emptied: optional predicate on vertex indices treating their blocks as
    zero-dimensional (used for restriction computations).
    """
    ball = complex_.ball
    p = complex_.p
    n = len(ball.vertices)
    dim = list(complex_.block_dim)
    if emptied is not None:
        for i in range(n):
            if emptied(i):
                dim[i] = 0
    # parent edge (index into edges) per vertex; vertices in BFS order so the
    # reversed order is depth-descending
    parent_edge = [None] * n
    for e, (u, v) in enumerate(ball.edges):
        parent_edge[v] = e
    pending: list[list] = [[] for _ in range(n)]
    rank = 0
    dead = 0
    for v in range(n - 1, 0, -1):
        e = parent_edge[v]
        u, _v = ball.edges[e]
        lab_u, lab_v = ball.edge_labels[e]
        basis: list = []
        for row in pending[v]:
            if _echelon_insert(p, basis, row):
                rank += 1
            else:
                dead += 1
        prow = list(_eval_row(p, complex_.degree_at(v), lab_v)) if dim[v] else []
        if prow and _echelon_insert(p, basis, prow):
            rank += 1
        else:
            # the edge constraint descends to a pure row on the parent block
            urow = list(_eval_row(p, complex_.degree_at(u), lab_u)) if dim[u] else []
            pending[u].append(urow)
    basis = []
    for row in pending[0]:
        if _echelon_insert(p, basis, row):
            rank += 1
        else:
            dead += 1
    assert rank + dead == complex_.n_edges
    return rank, dead


def cohomology(complex_: GluingComplex, with_basis: bool = False) -> CohomologyResult:
    rank, dead = tree_rank(complex_)
    h0 = complex_.total_cols - rank
    h1 = dead + complex_.h1_local()
    basis = None
    if with_basis:
        field = FiniteField(complex_.p)
        basis = arith.kernel_basis(field, complex_.rows())
        assert len(basis) == h0
    res = CohomologyResult(h0_dim=h0, h1_dim=h1, euler=h0 - h1, rank=rank,
                           h0_basis=basis)
    # Euler characteristic identity on the truncation
    assert res.euler == complex_.total_cols - complex_.n_edges - complex_.h1_local()
    return res


def dense_cohomology(complex_: GluingComplex) -> CohomologyResult:
    """Independent dense-elimination oracle for (h0, h1)."""
    rank = arith.rank_mod_p(complex_.rows(), complex_.p) if complex_.total_cols else 0
    h0 = complex_.total_cols - rank
    h1 = (complex_.n_edges - rank) + complex_.h1_local()
    return CohomologyResult(h0_dim=h0, h1_dim=h1, euler=h0 - h1, rank=rank)


def restriction_image_dim(bundle: BundleClass, ball: Ball, r_small: int) -> int:
    """Dimension of the restriction of ker B to the vertex blocks of the
    sub-ball of radius r_small: nullity(B) minus the nullity of B with the
    inner blocks removed."""
    if r_small > ball.radius - 1:
        raise ValueError("r_small must be at most radius - 1")
    complex_ = GluingComplex(bundle, ball)
    rank_full, _ = tree_rank(complex_)
    null_full = complex_.total_cols - rank_full
    inner_cols = sum(complex_.block_dim[i] for i in range(len(ball.vertices))
                     if ball.depth[i] <= r_small)
    rank_outer, _ = tree_rank(complex_, emptied=lambda i: ball.depth[i] <= r_small)
    null_outer = (complex_.total_cols - inner_cols) - rank_outer
    return null_full - null_outer


@dataclass
class PredictedDims:
    h0: int | None
    h1: int | None


def predicted_dims(bundle: BundleClass, ball: Ball) -> PredictedDims | None:
    """Exact truncated predictions where the filtration cases specialize to
    finite subtrees: both orders >= q+1 (surjective gluing: h1 = 0, h0 by
    Euler); both <= -1 (no sections); and the half-large case k_i <= -1,
    k_{i+1} >= q+1 when every parity-(i+1) vertex of the ball is interior
    (h0 counts the fully point-constrained blocks).  Other cases: None."""
    q = bundle.q
    k = {0: bundle.k0, 1: bundle.k1}
    complex_ = GluingComplex(bundle, ball)
    euler = complex_.total_cols - complex_.n_edges - complex_.h1_local()
    if k[0] >= q + 1 and k[1] >= q + 1:
        return PredictedDims(h0=euler, h1=0)
    if k[0] <= -1 and k[1] <= -1:
        return PredictedDims(h0=0, h1=complex_.n_edges + complex_.h1_local())
    for i in (0, 1):
        if k[i] <= -1 and k[1 - i] >= q + 1:
            others = [v for v in range(len(ball.vertices))
                      if ball.parity(v) == 1 - i]
            if any(not ball.is_interior(v) for v in others):
                return None
            return PredictedDims(h0=len(others) * (k[1 - i] - q), h1=None)
    return None


# ---------------------------------------------------------------------------
# evaluation kernels on a single component
# ---------------------------------------------------------------------------


def point_labels(field: FiniteField):
    """P^1(F_q) labels: the field elements then infinity (= field order)."""
    return list(field.elements()) + [field.order]


def eval_matrix(field: FiniteField, k: int):
    """Evaluation of Sym^k at all q+1 normalized points; rows = points."""
    rows = []
    for label in point_labels(field):
        if label == field.order:
            rows.append([1] + [0] * k)
        else:
            rows.append([field.pow(label, k - j) for j in range(k + 1)])
    return rows


def divisor_poly(field: FiniteField):
    """Coefficients of X^q Y - X Y^q in the Sym^(q+1) monomial basis."""
    q = field.order
    coeffs = [0] * (q + 2)
    coeffs[1] = 1
    coeffs[q] = field.neg(1)
    return coeffs


def poly_mul(field: FiniteField, a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = field.add(out[i + j], field.mul(x, y))
    return out


def eval_kernel_basis(field: FiniteField, k: int):
    """Structured basis of ker(Sym^k -> F^(P^1(F_q))): the vanishing divisor
    polynomial times the monomial basis of Sym^(k-q-1)."""
    if k < 0:
        raise ValueError("k must be >= 0")
    q = field.order
    if k <= q:
        return []
    div = divisor_poly(field)
    basis = []
    for j in range(k - q):
        mono = [0] * (k - q)
        mono[j] = 1
        basis.append(poly_mul(field, div, mono))
    return basis


def divide_by_divisor(field: FiniteField, coeffs):
    """Exact quotient of a Sym^k vector by the vanishing divisor polynomial,
    or None when not divisible (solved as a linear system)."""
    q = field.order
    k = len(coeffs) - 1
    if k < q + 1:
        return None if any(coeffs) else []
    div = divisor_poly(field)
    ncols = k - q
    rows = [[0] * ncols for _ in range(k + 1)]
    for j in range(ncols):
        for i, c in enumerate(div):
            rows[i + j][j] = c
    return arith.solve(field, rows, list(coeffs))
