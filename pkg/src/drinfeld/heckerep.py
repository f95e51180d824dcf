"""Compactly induced mod-p representations over the tree, the Hecke operator
T and its polynomial algebra, the evaluation/co-evaluation composite on
weight -1 positive bundles, supersingular quotients, and the parameter
bijection bookkeeping.

Everything is pinned to q = p.  Module elements are stored in chart
coordinates: the value at a vertex v is the fiber vector transported by the
ball's chart g_v, so the group acts through reductions of chart transitions.

Conventions (all forced; see the tests):

* Sym^k carries the column action (rho(g) f)(v) = f(g^{-1} v) on column
  vectors, matching the labeling of tree edges by lattice column lines.
* The rank-one Hecke value U at the diagonal-distance-1 matrix is the unique
  solution of the double-coset invariance equations; in the column
  convention it is the matrix unit sending Y^k to Y^k.
* sigma extends to the vertex stabilizer by p^t u -> a^t det(u)^r Sym^k(u);
  the central parameter enters through half the determinant valuation.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from functools import lru_cache

from . import arith
from .arith import FiniteField, Mat2, padic_val, smith_decompose
from .bundles import BundleClass
from .specialfiber import eval_matrix
from .tree import Ball, Tree


class WindowError(RuntimeError):
    """Support left the computed window."""


# ---------------------------------------------------------------------------
# symmetric-power matrices (column convention) over F_{p^m}
# ---------------------------------------------------------------------------


def _inv2_modp(g, p):
    a, b, c, d = g
    di = pow((a * d - b * c) % p, p - 2, p)
    return ((d * di) % p, (-b * di) % p, (-c * di) % p, (a * di) % p)


@lru_cache(maxsize=None)
def sym_matrix(p: int, gbar, k: int):
    """Matrix of f -> f(g^{-1} (X;Y)) on the monomial basis X^(k-j) Y^j,
    entries in the prime field."""
    A, B, C, D = _inv2_modp(gbar, p)
    # f(g^{-1}(X;Y)): X -> AX + BY, Y -> CX + DY; expand each monomial image
    cols = []
    for j in range(k + 1):
        p1 = [(math.comb(k - j, s) * pow(A, k - j - s, p) * pow(B, s, p)) % p
              for s in range(k - j + 1)]
        p2 = [(math.comb(j, s) * pow(C, j - s, p) * pow(D, s, p)) % p
              for s in range(j + 1)]
        conv = [0] * (k + 1)
        for s1, x in enumerate(p1):
            if x:
                for s2, y in enumerate(p2):
                    conv[s1 + s2] = (conv[s1 + s2] + x * y) % p
        cols.append(conv)
    return tuple(tuple(cols[j][i] for j in range(k + 1)) for i in range(k + 1))


def hecke_projector(ks) -> tuple:
    """U for a weight tuple: Kronecker product of the single-component
    diagonal matrix units (Y^k -> Y^k)."""
    dims = [k + 1 for k in ks]
    n = math.prod(dims)
    mat = [[0] * n for _ in range(n)]
    mat[n - 1][n - 1] = 1
    return tuple(tuple(r) for r in mat)


@dataclass(frozen=True)
class WeightSigma:
    """Weight data (k, r, a): Sym^k (x) det^r with central parameter a in
    F_{p^m}^* acting on squares of p."""

    p: int
    k: int
    r: int
    a: int = 1
    field: FiniteField = None

    def __post_init__(self):
        if not 0 <= self.k <= self.p - 1:
            raise ValueError("weight k must lie in [0, p-1]")
        if self.field is None:
            object.__setattr__(self, "field", FiniteField(self.p))
        if self.a == 0:
            raise ValueError("central parameter a must be nonzero")

    @property
    def dim(self):
        return self.k + 1


def sigma_tilde(w: WeightSigma, h: Mat2):
    """Value of the extended weight at a vertex-stabilizing element
    h = p^t u (u unimodular): a^t det(u)^r Sym^k(u) over w.field."""
    p = w.p
    vdet = padic_val(h.det(), p)
    if vdet % 2:
        raise ValueError("element does not stabilize a vertex (odd det valuation)")
    t = vdet // 2
    u = h.scale(Fraction(1, p ** t)) if t >= 0 else h.scale(Fraction(p) ** (-t))
    if not u.is_unimodular(p):
        raise ValueError("element is not central times unimodular")
    gbar = u.reduce_mod_p(p)
    S = sym_matrix(p, gbar, w.k)
    det = (gbar[0] * gbar[3] - gbar[1] * gbar[2]) % p
    f = w.field
    scalar = f.mul(f.pow(w.a, t), f.pow(det % p, w.r))
    return [[f.mul(scalar, x) for x in row] for row in S]


def hecke_phi(w: WeightSigma, g: Mat2, n: int):
    """The Hecke function of level n evaluated at g: None off the double
    coset, otherwise a^c sigma(h1) U sigma(h2) for an exact factorization
    p^c h1 diag(1, p^n) h2; independent of the factorization."""
    if n < 0:
        raise ValueError("level n must be >= 0")
    u, (va, vb), v = smith_decompose(g, w.p)
    if vb - va != n:
        return None
    if n == 0:
        return sigma_tilde(w, g)   # unit double coset: the weight itself
    f = w.field
    central = f.pow(w.a, va)
    S1 = sigma_tilde(w, u)
    S2 = sigma_tilde(w, v)
    U = hecke_projector((w.k,))
    out = _matmul(f, _matmul(f, S1, U), S2)
    return [[f.mul(central, x) for x in row] for row in out]


def _matmul(f: FiniteField, A, B):
    n, m, l = len(A), len(B[0]), len(B)
    out = [[0] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for k_ in range(l):
            a = Ai[k_]
            if a:
                Bk = B[k_]
                row = out[i]
                for j in range(m):
                    if Bk[j]:
                        row[j] = f.add(row[j], f.mul(a, Bk[j]))
    return out


def _matvec(f: FiniteField, A, v):
    out = []
    for row in A:
        acc = 0
        for a, x in zip(row, v):
            if a and x:
                acc = f.add(acc, f.mul(a, x))
        out.append(acc)
    return out


# ---------------------------------------------------------------------------
# induced elements over a window
# ---------------------------------------------------------------------------


@dataclass
class InducedElement:
    """Finitely supported element of the compact induction, in chart
    coordinates over a ball window."""

    weight: WeightSigma
    window: Ball
    terms: dict = dc_field(default_factory=dict)

    def clean(self):
        self.terms = {v: tuple(vec) for v, vec in self.terms.items()
                      if any(vec)}
        return self

    def support(self):
        return set(self.terms)

    def __eq__(self, other):
        return (self.weight, id(self.window)) == (other.weight, id(other.window)) \
            and self.clean().terms == other.clean().terms

    def add(self, other: "InducedElement") -> "InducedElement":
        f = self.weight.field
        out = dict(self.terms)
        for v, vec in other.terms.items():
            if v in out:
                out[v] = tuple(f.add(a, b) for a, b in zip(out[v], vec))
            else:
                out[v] = vec
        return InducedElement(self.weight, self.window, out).clean()

    def scale(self, c) -> "InducedElement":
        f = self.weight.field
        return InducedElement(self.weight, self.window,
                              {v: tuple(f.mul(c, x) for x in vec)
                               for v, vec in self.terms.items()}).clean()


def delta_element(w: WeightSigma, window: Ball, vertex_idx: int, vec) -> InducedElement:
    return InducedElement(w, window, {vertex_idx: tuple(vec)}).clean()


def act(g: Mat2, f: InducedElement) -> InducedElement:
    """Group action in chart coordinates: the value at g.v is the old value
    transported by the chart transition at v."""
    w, window = f.weight, f.window
    tree = window.tree
    out = {}
    fld = w.field
    for vi, vec in f.terms.items():
        target = tree.act(g, window.vertices[vi])
        ti = window.index.get(target)
        if ti is None:
            raise WindowError(f"g moved support to {target}, outside the window")
        trans = window.charts[ti].inv() @ g @ window.charts[vi]
        mat = sigma_tilde(w, trans)
        new = _matvec(fld, mat, list(vec))
        if ti in out:
            new = [fld.add(a, b) for a, b in zip(out[ti], new)]
        out[ti] = tuple(new)
    return InducedElement(w, window, out).clean()


def t_apply(f: InducedElement) -> InducedElement:
    """The degree-one Hecke operator: T[g, v] = sum over the q+1 cosets
    gamma of [g gamma, phi_1(gamma^{-1}) v]."""
    w, window = f.weight, f.window
    tree = window.tree
    fld = w.field
    reps = tree.neighbor_reps()
    phi1 = [_phi1_cached(w, lab) for lab in range(len(reps))]
    out = {}
    for vi, vec in f.terms.items():
        if not window.is_interior(vi):
            raise WindowError("support touches the window boundary")
        nbrs = window.neighbor_table[vi]
        for lab, rep in enumerate(reps):
            ui = nbrs[lab]
            trans = window.charts[ui].inv() @ window.charts[vi] @ rep
            mat = _matmul(fld, sigma_tilde(w, trans), phi1[lab])
            add = _matvec(fld, mat, list(vec))
            if ui in out:
                add = [fld.add(a, b) for a, b in zip(out[ui], add)]
            out[ui] = tuple(add)
    return InducedElement(w, window, out).clean()


@lru_cache(maxsize=None)
def _phi1_table(p: int, k: int, r: int, a: int, field_key):
    w = WeightSigma(p, k, r, a, FiniteField(*field_key))
    reps = Tree(p).neighbor_reps()
    return tuple(tuple(tuple(row) for row in hecke_phi(w, rep.inv(), 1))
                 for rep in reps)


def _phi1_cached(w: WeightSigma, lab: int):
    table = _phi1_table(w.p, w.k, w.r, w.a, (w.field.p, w.field.d))
    return [list(r) for r in table[lab]]


def t_n_apply_centered(w: WeightSigma, window: Ball, vec, n: int) -> InducedElement:
    """T_n applied to the element supported at the window center."""
    if n == 0:
        return delta_element(w, window, 0, vec)
    if n > window.radius:
        raise WindowError("level exceeds the window radius")
    fld = w.field
    g_c = window.charts[0]
    out = {}
    for ui in range(len(window.vertices)):
        if window.depth[ui] != n:
            continue
        mat = hecke_phi(w, window.charts[ui].inv() @ g_c, n)
        if mat is None:
            continue
        val = _matvec(fld, mat, list(vec))
        if any(val):
            out[ui] = tuple(val)
    return InducedElement(w, window, out).clean()


def t_power_centered(w: WeightSigma, window: Ball, vec, n: int) -> InducedElement:
    f = delta_element(w, window, 0, vec)
    for _ in range(n):
        f = t_apply(f)
    return f


@dataclass(frozen=True)
class HeckeOp:
    """Polynomial in the degree-one operator, by coefficient tuple
    (constant term first)."""

    coefficients: tuple

    @property
    def degree(self) -> int:
        deg = -1
        for i, c in enumerate(self.coefficients):
            if c:
                deg = i
        return deg

    def parity_pure(self):
        """'even'/'odd' when the polynomial preserves/swaps the two parity
        components, None when mixed."""
        evens = any(c for i, c in enumerate(self.coefficients) if i % 2 == 0)
        odds = any(c for i, c in enumerate(self.coefficients) if i % 2 == 1)
        if evens and odds:
            return None
        return "odd" if odds else "even"

    def apply_centered(self, w: WeightSigma, window: Ball, vec) -> InducedElement:
        total = InducedElement(w, window, {})
        for d, c in enumerate(self.coefficients):
            if c:
                total = total.add(t_power_centered(w, window, vec, d).scale(c))
        return total


def convolve(w: WeightSigma, m: int, n: int) -> HeckeOp:
    """Product of the level-m and level-n basis Hecke functions, expanded in
    the level basis: applies the two operators to centered elements and
    solves the expansion exactly on each sphere."""
    radius = m + n + 1
    tree = Tree(w.p)
    window = tree.ball(tree.s1, radius)
    fld = w.field
    # stack (T_m T_n e_b) and all (T_s e_b) as exact vectors
    pos = {}
    for v in range(len(window.vertices)):
        for j in range(w.dim):
            pos[(v, j)] = len(pos)

    def flat(el: InducedElement):
        out = [0] * len(pos)
        for v, vec in el.terms.items():
            for j, x in enumerate(vec):
                out[pos[(v, j)]] = x
        return out

    levels = list(range(m + n + 1))
    columns = []
    target = []
    for b in range(w.dim):
        vec = [1 if j == b else 0 for j in range(w.dim)]
        inner = t_n_apply_centered(w, window, vec, n)
        total = InducedElement(w, window, {})
        for v, value in inner.terms.items():
            shifted = _t_level_from(w, window, v, list(value), m)
            total = total.add(shifted)
        target.extend(flat(total))
        columns.append([flat(t_n_apply_centered(w, window, vec, s))
                        for s in levels])
    rows = []
    rhs = []
    block = len(pos)
    for b in range(w.dim):
        for idx in range(block):
            rows.append([columns[b][s][idx] for s in levels])
            rhs.append(target[b * block + idx])
    coeffs = arith.solve(fld, rows, rhs)
    if coeffs is None:
        raise AssertionError("product is not a combination of level functions")
    # exactness: verify the expansion reproduces the product
    return HeckeOp(tuple(coeffs))


def _t_level_from(w: WeightSigma, window: Ball, vi: int, vec, m: int) -> InducedElement:
    """T_m applied to a single term at any window vertex."""
    if m == 0:
        return delta_element(w, window, vi, vec)
    fld = w.field
    tree = window.tree
    src = window.vertices[vi]
    out = {}
    for ui in range(len(window.vertices)):
        if tree.distance(window.vertices[ui], src) != m:
            continue
        mat = hecke_phi(w, window.charts[ui].inv() @ window.charts[vi], m)
        if mat is None:
            continue
        val = _matvec(fld, mat, vec)
        if any(val):
            out[ui] = tuple(val)
    return InducedElement(w, window, out).clean()


def random_even_element(rng, p: int) -> Mat2:
    """Random even-determinant-valuation element: unimodular, sometimes
    shifted two steps along the standard apartment."""
    while True:
        g = Mat2(*[rng.randrange(p ** 3) for _ in range(4)])
        if g.det() != 0 and g.is_unimodular(p):
            break
    if rng.random() < 0.25:
        g = g @ Mat2(1, 0, 0, p * p)
    return g


def verify_recurrence(p: int, k: int, n_max: int = 4, a: int = 1) -> dict:
    """T_n = T^n - T^(n-2) for the trivial weight and T^n otherwise, checked
    as operators on centered elements."""
    tree = Tree(p)
    window = tree.ball(tree.s1, n_max + 1)
    w = WeightSigma(p, k, 0, a)
    ok = True
    for b in range(w.dim):
        vec = [1 if j == b else 0 for j in range(w.dim)]
        for n in range(2, n_max + 1):
            lhs = t_n_apply_centered(w, window, vec, n)
            rhs = t_power_centered(w, window, vec, n)
            if k == 0:
                rhs = rhs.add(t_power_centered(w, window, vec, n - 2).scale(p - 1))
            if lhs != rhs:
                ok = False
    return {"p": p, "k": k, "n_max": n_max, "recurrence_ok": ok}


def convolve_check(p: int, k: int, a: int = 1) -> dict:
    """phi_1 * phi_1 = phi_2 + [k = 0] phi_0 as operators (the n = 2 case of
    the recurrence)."""
    tree = Tree(p)
    window = tree.ball(tree.s1, 3)
    w = WeightSigma(p, k, 0, a)
    ok = True
    for b in range(w.dim):
        vec = [1 if j == b else 0 for j in range(w.dim)]
        lhs = t_power_centered(w, window, vec, 2)
        rhs = t_n_apply_centered(w, window, vec, 2)
        if k == 0:
            rhs = rhs.add(delta_element(w, window, 0, vec))
        if lhs != rhs:
            ok = False
    return {"p": p, "k": k, "convolution_ok": ok}


# ---------------------------------------------------------------------------
# one-component induced model and the filtration check
# ---------------------------------------------------------------------------


def _norm_column(p: int, vec):
    """P^1(F_p) label and scaling of a nonzero column (x; y)."""
    x, y = vec[0] % p, vec[1] % p
    if y:
        return (x * pow(y, p - 2, p)) % p, y
    return p, x


def induced_action_matrix(p: int, gbar, m: int, n: int):
    """The (p+1)x(p+1) matrix of g on functions on P^1 induced from the
    diagonal character diag(a, d) -> a^m d^n: generalized permutation by the
    inverse column action with the Borel factor as scalar."""
    gi = _inv2_modp(gbar, p)
    det_gi = (gi[0] * gi[3] - gi[1] * gi[2]) % p
    size = p + 1
    out = [[0] * size for _ in range(size)]
    for lab in range(size):
        vec = (lab, 1) if lab < p else (1, 0)
        w = ((gi[0] * vec[0] + gi[1] * vec[1]) % p,
             (gi[2] * vec[0] + gi[3] * vec[1]) % p)
        z, c = _norm_column(p, w)
        d11 = (det_gi * pow(c, p - 2, p)) % p
        out[lab][z] = (pow(c, m, p) * pow(d11, n, p)) % p
    return out


def _gl2_generators(p: int):
    gens = [(0, 1, 1, 0), (1, 1, 0, 1)]
    gens += [(g, 0, 0, 1) for g in range(2, p)]
    gens += [(1, 0, 0, g) for g in range(2, p)]
    return gens


def jordan_holder_check(p: int, k: int, r: int = 0) -> dict:
    """Concrete three-term filtration of the (p+1)-dimensional induced space
    of functions on P^1(F_p): the evaluation image of Sym^k (x) det^r is a
    stable subspace of dimension k+1 and the quotient is equivalent to
    Sym^(p-1-k) (x) det^(r+k) by a unique-up-to-scalar invertible
    intertwiner."""
    if not 0 <= k <= p - 1:
        raise ValueError("k must lie in [0, p-1]")
    field = FiniteField(p)
    gens = _gl2_generators(p)

    def det_of(g):
        return (g[0] * g[3] - g[1] * g[2]) % p

    # base induced action with an overall det^r twist
    ind = {}
    for g in gens:
        dr = pow(det_of(g), r % (p - 1), p)
        ind[g] = [[(dr * x) % p for x in row]
                  for row in induced_action_matrix(p, g, k, 0)]
    ev = eval_matrix(field, k)           # (p+1) x (k+1)
    # columns of ev span the submodule; check stability and extract quotient
    cols = [[ev[y][j] for y in range(p + 1)] for j in range(k + 1)]
    basis, _ = arith.row_reduce(field, cols)
    basis = [b for b in basis if any(b)]
    sub_dim = len(basis)
    # complement through missing pivot coordinates of the rref
    pivots = []
    for b in basis:
        pivots.append(next(i for i, x in enumerate(b) if x))
    comp = [y for y in range(p + 1) if y not in pivots]
    # full change of basis S = [sub basis | complement std vectors]
    S = [[0] * (p + 1) for _ in range(p + 1)]
    for j, b in enumerate(basis):
        for y in range(p + 1):
            S[y][j] = b[y]
    for j, y in enumerate(comp):
        S[y][sub_dim + j] = 1
    S_inv_cols = []
    idm = [[1 if i == j else 0 for j in range(p + 1)] for i in range(p + 1)]
    for j in range(p + 1):
        S_inv_cols.append(arith.solve(field, S, [idm[i][j] for i in range(p + 1)]))
    S_inv = [[S_inv_cols[j][i] for j in range(p + 1)] for i in range(p + 1)]
    stable = True
    quotient = {}
    for g, M in ind.items():
        # action on columns of the model: phi' = M phi
        conj = _matmul(field, _matmul(field, S_inv, [list(r_) for r_ in M]), S)
        for i_ in range(sub_dim, p + 1):
            for j_ in range(sub_dim):
                if conj[i_][j_]:
                    stable = False
        quotient[g] = [[conj[i_][j_] for j_ in range(sub_dim, p + 1)]
                       for i_ in range(sub_dim, p + 1)]
    # solve for an equivariant isomorphism with Sym^(p-1-k) (x) det^(r+k)
    kq = p - 1 - k
    n_ = kq + 1
    found = None
    for e in range(p - 1):
        rows = []
        for g in gens:
            det = (g[0] * g[3] - g[1] * g[2]) % p
            de = pow(det, e, p)
            tgt = [[(de * x) % p for x in row] for row in sym_matrix(p, g, kq)]
            Q = quotient[g]
            # A Q(g) = tgt(g) A
            for i_ in range(n_):
                for j_ in range(n_):
                    row = [0] * (n_ * n_)
                    for l_ in range(n_):
                        row[i_ * n_ + l_] = (row[i_ * n_ + l_] + Q[l_][j_]) % p
                        row[l_ * n_ + j_] = (row[l_ * n_ + j_] - tgt[i_][l_]) % p
                    rows.append(row)
        ker = arith.kernel_basis(field, rows)
        if ker:
            found = (e, ker)
            break
    ok = found is not None and len(found[1]) == 1
    invertible = False
    if ok:
        vec = found[1][0]
        A = [[vec[i_ * n_ + j_] for j_ in range(n_)] for i_ in range(n_)]
        invertible = arith.rank(field, A) == n_
    # in the evaluation realization the quotient twist is det^(r-k); reading
    # the induction through the opposite Borel swaps the character legs and
    # turns this into the det^(r+k) form of the statement
    return {
        "p": p, "k": k, "r": r,
        "sub_dim": sub_dim,
        "sub_stable": stable,
        "dims_match": sub_dim + n_ == p + 1,
        "quotient_det_twist": found[0] if found else None,
        "intertwiner_unique": ok,
        "intertwiner_invertible": invertible,
        "twist_shift_is_weight": bool(found) and found[0] == (r - k) % (p - 1),
    }


# ---------------------------------------------------------------------------
# the evaluation/co-evaluation composite on positive weight -1 bundles
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _dual_edge_action(p: int, gbar, k: int):
    """Action on edge-coordinate functionals at the standard vertex,
    contragredient to the degree-k evaluation transport."""
    M = induced_action_matrix(p, _inv2_modp(gbar, p), k, 0)
    return tuple(tuple(M[j][i] for j in range(p + 1)) for i in range(p + 1))


@lru_cache(maxsize=None)
def _jh_dual_injection(p: int, ki: int):
    """The unique-up-to-scalar equivariant map from Sym^(p-1-ki) into the
    dual edge module annihilating the degree-ki evaluation image; solved
    from the intertwining equations."""
    field = FiniteField(p)
    kc = p - 1 - ki
    gens = _gl2_generators(p)
    rows = []
    for g in gens:
        Eg = _dual_edge_action(p, g, ki)
        Sg = sym_matrix(p, g, kc)
        for y in range(p + 1):
            for j in range(kc + 1):
                row = [0] * ((p + 1) * (kc + 1))
                for z in range(p + 1):
                    row[z * (kc + 1) + j] = (row[z * (kc + 1) + j] + Eg[y][z]) % p
                for l in range(kc + 1):
                    row[y * (kc + 1) + l] = (row[y * (kc + 1) + l] - Sg[l][j]) % p
                rows.append(row)
    ker = arith.kernel_basis(field, rows)
    if len(ker) != 1:
        raise AssertionError(f"dual injection space has dimension {len(ker)}")
    v = ker[0]
    jin = tuple(tuple(v[y * (kc + 1) + j] for j in range(kc + 1))
                for y in range(p + 1))
    # sanity: columns annihilate the evaluation image
    ev = eval_matrix(field, ki)
    for l in range(ki + 1):
        for j in range(kc + 1):
            s = 0
            for y in range(p + 1):
                s = field.add(s, field.mul(ev[y][l], jin[y][j]))
            assert s == 0
    return jin


@lru_cache(maxsize=None)
def _dual_to_sym(p: int, k: int):
    """Inverse transpose of the invariant pairing on Sym^k: identifies
    monomial-dual coordinates with Sym^k coordinates equivariantly up to a
    det power."""
    field = FiniteField(p)
    P = [[0] * (k + 1) for _ in range(k + 1)]
    for i in range(k + 1):
        P[i][k - i] = (pow(-1, i) * pow(math.comb(k, i), p - 2, p)) % p
    PT = [[P[j][i] for j in range(k + 1)] for i in range(k + 1)]
    idm = [[1 if a == b else 0 for b in range(k + 1)] for a in range(k + 1)]
    cols = [arith.solve(field, PT, [idm[r][c] for r in range(k + 1)])
            for c in range(k + 1)]
    return tuple(tuple(cols[j][i] for j in range(k + 1)) for i in range(k + 1))


@dataclass
class PhiTildeResult:
    lam: int
    interior_columns: int
    support_is_neighbors: bool
    weight: WeightSigma


def phi_tilde(bundle: BundleClass, window: Ball, i: int = 0) -> PhiTildeResult:
    """The composite map on a positive weight -1 bundle: include the local
    annihilators of the parity-i evaluations into the edge functionals, then
    project through the parity-(i+1) evaluation transpose.  Compares its
    matrix on interior columns with the Hecke operator for the weight
    (k_{i+1}, det-free, a = (-1)^(k_{i+1})) and returns the single scalar.

    The comparison requires the equivariant gauge, i.e. a canonical-chart
    window (chart_seed 0).
    """
    p = bundle.q
    k = {0: bundle.k0, 1: bundle.k1}
    if bundle.weight() != -1 or min(k.values()) < 0:
        raise ValueError("bundle must be positive of weight -1")
    if window.radius < 3:
        raise WindowError("window radius must be at least 3")
    if window.chart_seed != 0:
        raise WindowError("the matrix comparison needs canonical charts (seed 0)")
    field = FiniteField(p)
    ki, kc = k[i], k[1 - i]
    a_tw = (p - 1) if kc % 2 else 1          # central twist (-1)^kc
    w = WeightSigma(p, kc, 0, a_tw, field)
    jin = _jh_dual_injection(p, ki)
    jout = _dual_to_sym(p, kc)
    ev_c = eval_matrix(field, kc)
    tree = window.tree
    reps = tree.neighbor_reps()
    phi1 = [_phi1_cached(w, lab) for lab in range(len(reps))]
    edge_of = {}
    for eidx, (u_, v_) in enumerate(window.edges):
        edge_of[(u_, v_)] = eidx
        edge_of[(v_, u_)] = eidx
    # interior columns: parity-i vertices whose neighbors are all interior
    interior = [s for s in range(len(window.vertices))
                if window.parity(s) == i % 2
                and window.depth[s] <= window.radius - 2]
    lam = None
    support_ok = True
    for s in interior:
        touched = set()
        for j in range(kc + 1):
            column_nonzero = False
            for lab in range(p + 1):
                ui = window.neighbor_table[s][lab]
                eidx = edge_of[(s, ui)]
                la, lb = window.edge_labels[eidx]
                lab_at_u = lb if window.edges[eidx][1] == ui else la
                ce = jin[lab][j]
                psi = [field.mul(ce, ev_c[lab_at_u][l]) for l in range(kc + 1)]
                vp = _matvec(field, [list(r) for r in jout], psi)
                if any(vp):
                    touched.add(ui)
                    column_nonzero = True
                trans = window.charts[ui].inv() @ window.charts[s] @ reps[lab]
                mat = _matmul(field, sigma_tilde(w, trans), phi1[lab])
                vt = [mat[l][j] for l in range(kc + 1)]
                for l in range(kc + 1):
                    if vt[l]:
                        ratio = field.mul(vp[l], field.inv(vt[l]))
                        if lam is None:
                            lam = ratio
                        elif lam != ratio:
                            raise AssertionError(
                                "no single scalar relates the composite to T")
                    elif vp[l]:
                        raise AssertionError(
                            "no single scalar relates the composite to T")
            if not column_nonzero:
                support_ok = False
        # across the fiber, the image must reach every neighbor and nothing else
        if touched != set(window.neighbor_table[s].values()):
            support_ok = False
    if lam is None or lam == 0:
        raise AssertionError("the composite vanished on all interior columns")
    return PhiTildeResult(lam=lam, interior_columns=len(interior),
                          support_is_neighbors=support_ok, weight=w)


# ---------------------------------------------------------------------------
# supersingular quotients and the parameter bijection
# ---------------------------------------------------------------------------


def supersingular_quotient_dim(p: int, k: int, i: int, radius: int,
                               a: int = 1, r: int = 0) -> int:
    """dim of the parity-i component within the radius, modulo the Hecke
    image of the parity-(i+1) component within radius - 1."""
    if radius < 1:
        raise ValueError("radius must be >= 1")
    tree = Tree(p)
    window = tree.ball(tree.s1, radius)
    w = WeightSigma(p, k, r, a)
    num_vertices = [v for v in range(len(window.vertices))
                    if window.parity(v) == i and window.depth[v] <= radius]
    den_vertices = [v for v in range(len(window.vertices))
                    if window.parity(v) == 1 - i and window.depth[v] <= radius - 1]
    dim_num = len(num_vertices) * w.dim
    if not den_vertices:
        return dim_num
    pos = {v: idx for idx, v in enumerate(num_vertices)}
    rows = []
    for v in den_vertices:
        for b in range(w.dim):
            vec = [1 if j == b else 0 for j in range(w.dim)]
            img = t_apply(delta_element(w, window, v, vec))
            row = [0] * dim_num
            for u, uvec in img.terms.items():
                if u not in pos:
                    raise WindowError("Hecke image escaped the numerator window")
                off = pos[u] * w.dim
                for j, x in enumerate(uvec):
                    row[off + j] = x
            rows.append(row)
    rk = arith.rank_mod_p(rows, p) if w.field.d == 1 else arith.rank(w.field, rows)
    return dim_num - rk


@dataclass(frozen=True)
class SupersingularParams:
    """Parameters (a, r, k, parity) modulo the single defining
    identification flipping the parity and reflecting the weight."""

    a: int
    r: int
    k: int
    parity: int
    p: int

    def normal_form(self):
        r = self.r % (self.p - 1)
        t1 = (self.parity % 2, self.a, self.k, r)
        t2 = ((1 - self.parity) % 2, self.a, self.p - 1 - self.k,
              (r + self.k) % (self.p - 1))
        return min(t1, t2)


def enumerate_and_match(p: int, m: int = 1) -> dict:
    """Positive weight -1 bundle classes versus supersingular parameter
    normal forms over F_{p^m}: counts and the explicit map
    (a, r1, k0, k1) -> parity-1 parameters (a, k1, -r0)."""
    field = FiniteField(p, m)
    units = [x for x in field.elements() if x != 0]
    bundles = []
    for a in units:
        for r1 in range(p - 1):
            for k1 in range(p):
                bundles.append((a, r1, p - 1 - k1, k1))
    images = {}
    for (a, r1, k0, k1) in bundles:
        r0 = (r1 + k1) % (p - 1)
        params = SupersingularParams(a=a, r=(-r0) % (p - 1), k=k1, parity=1, p=p)
        images[(a, r1, k0, k1)] = params.normal_form()
    all_forms = {SupersingularParams(a, r, k, i, p).normal_form()
                 for a in units for r in range(p - 1)
                 for k in range(p) for i in (0, 1)}
    image_set = set(images.values())
    return {
        "p": p,
        "m": m,
        "bundle_count": len(bundles),
        "rep_count": len(all_forms),
        "map_injective": len(image_set) == len(bundles),
        "map_surjective": image_set == all_forms,
        "bijective": len(image_set) == len(bundles) and image_set == all_forms,
    }
