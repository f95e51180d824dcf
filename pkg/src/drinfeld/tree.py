"""The Bruhat-Tits tree of GL2(Q_p): canonical vertex representatives,
adjacency, distance, parity, the matrix action, and truncated balls with
per-vertex charts and marked-point labels on each edge.

A vertex is the homothety class of the lattice spanned by the columns of
[[p^n, b], [0, 1]] with b a rational with p-power denominator, reduced mod
p^n.  The standard vertex s1 (class of Z_p^2) is (n, b) = (0, 0); the other
standard vertex s0 = alpha . s1 (class of Z_p x pZ_p) is (-1, 0).  Vertices
with n even are the s1-orbit (parity 1), n odd the s0-orbit (parity 0).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .arith import Mat2, matrix_alpha, padic_val, smith_valuations


class ResourceLimitError(RuntimeError):
    """A configured size cap would be exceeded."""


MAX_BALL_VERTICES = 60_000


@dataclass(frozen=True)
class Vertex:
    """Canonical lattice-class representative (n, num/p^e mod p^n)."""

    n: int
    num: int
    e: int

    def __str__(self):
        return f"p^{self.n}:{self.num}/p^{self.e}"


class Tree:
    """GL2(Q_p) tree operations for a fixed odd prime p."""

    def __init__(self, p: int):
        if p == 2:
            raise ValueError("p = 2 is not supported")
        self.p = p
        self.q = p
        self.s1 = Vertex(0, 0, 0)
        self.s0 = Vertex(-1, 0, 0)

    # -- canonical form --------------------------------------------------

    def rep(self, v: Vertex) -> Mat2:
        p = self.p
        return Mat2(Fraction(p) ** v.n, Fraction(v.num, p ** v.e), 0, 1)

    def canonical(self, m: Mat2) -> Vertex:
        """Canonical form of the lattice class spanned by the columns of m.

        Column ops over Z_p bring the basis to ((a, 0), (b, d)); dividing the
        lattice by d normalizes the second row to (0, 1), and a unit column
        scaling makes the corner a power of p.  b is then reduced mod p^n Z_p.
        """
        p = self.p
        if m.det() == 0:
            raise ZeroDivisionError("singular matrix")
        a, b, c, d = m.a, m.b, m.c, m.d
        if padic_val(c, p) < padic_val(d, p):
            a, b = b, a
            c, d = d, c
        if c != 0:
            a = a - (c / d) * b
        a = a / d
        b = b / d
        n = padic_val(a, p)
        num, e = _reduce_mod_pn(b, n, p)
        return Vertex(int(n), num, e)

    def act(self, g: Mat2, v: Vertex) -> Vertex:
        return self.canonical(g @ self.rep(v))

    def distance(self, u: Vertex, v: Vertex) -> int:
        a, b = smith_valuations(self.rep(u).inv() @ self.rep(v), self.p)
        return b - a

    def parity(self, v: Vertex) -> int:
        """0 for the s0-orbit, 1 for the s1-orbit."""
        return (v.n + 1) % 2

    # -- adjacency --------------------------------------------------------

    def neighbor_reps(self):
        """Coset representatives g with {g.s1} = neighbors of s1, indexed by
        P^1(F_p): label lam in 0..p-1 gives [[p, lam],[0,1]], label p
        (infinity) gives diag(1, p)."""
        p = self.p
        out = [Mat2(p, lam, 0, 1) for lam in range(p)]
        out.append(matrix_alpha(p))
        return out

    def neighbors(self, v: Vertex, chart: Mat2 | None = None):
        """The q+1 adjacent canonical vertices, indexed by P^1(F_p) through
        the chart (default: the canonical representative of v)."""
        g = chart if chart is not None else self.rep(v)
        return [self.canonical(g @ n) for n in self.neighbor_reps()]

    # -- truncated balls --------------------------------------------------

    def ball_vertex_count(self, radius: int) -> int:
        q = self.q
        return 1 + (q + 1) * (q ** radius - 1) // (q - 1)

    def ball(self, center: Vertex, radius: int, chart_seed: int = 0,
             max_vertices: int = MAX_BALL_VERTICES) -> "Ball":
        if radius < 0:
            raise ValueError("radius must be >= 0")
        if self.ball_vertex_count(radius) > max_vertices:
            raise ResourceLimitError(
                f"ball would have {self.ball_vertex_count(radius)} vertices "
                f"(cap {max_vertices})")
        return Ball(self, center, radius, chart_seed)


def _reduce_mod_pn(b: Fraction, n, p: int):
    """Canonical residue of b mod p^n Z_p as (num, e) meaning num/p^e."""
    if b == 0:
        return 0, 0
    e = max(0, -padic_val(b, p))
    if n + e <= 0:
        return 0, 0
    # b = (x/y)/p^e with y a p-unit
    scaled = b * Fraction(p) ** e
    x, y = scaled.numerator, scaled.denominator
    mod = p ** (int(n) + e)
    num = x * pow(y, -1, mod) % mod
    while e > 0 and num % p == 0:
        num //= p
        e -= 1
        mod //= p
    if num == 0:
        e = 0
    return num, e


def _random_unimodular(rng: random.Random, p: int) -> Mat2:
    """Random element of GL2(Z_p) with small integer entries."""
    bound = p ** 3
    while True:
        a, b, c, d = (rng.randrange(bound) for _ in range(4))
        if (a * d - b * c) % p != 0:
            return Mat2(a, b, c, d)


class Ball:
    """Breadth-first truncation of the tree around a center, with charts
    g_v (g_v . s1 = v) and marked-point labels for each (edge, endpoint).

    Edge labels live in P^1(F_p) encoded as 0..p-1 (affine) or p (infinity).
    """

    def __init__(self, tree: Tree, center: Vertex, radius: int, chart_seed: int):
        self.tree = tree
        self.center = center
        self.radius = radius
        self.chart_seed = chart_seed
        self.vertices: list[Vertex] = []
        self.index: dict[Vertex, int] = {}
        self.depth: list[int] = []
        self.charts: list[Mat2] = []
        self.edges: list[tuple[int, int]] = []       # (parent idx, child idx)
        self.edge_labels: list[tuple[int, int]] = [] # labels at (parent, child)
        self.neighbor_table: list[dict[int, int]] = []  # vertex -> {label: vertex idx}
        self._build()

    def _chart_for(self, v: Vertex) -> Mat2:
        g = self.tree.rep(v)
        if self.chart_seed:
            mix = self.chart_seed
            for part in (v.n, v.num, v.e):
                mix = (mix * 1_000_003 + part) % (2 ** 61 - 1)
            g = g @ _random_unimodular(random.Random(mix), self.tree.p)
        return g

    def _add_vertex(self, v: Vertex, depth: int) -> int:
        idx = len(self.vertices)
        self.vertices.append(v)
        self.index[v] = idx
        self.depth.append(depth)
        self.charts.append(self._chart_for(v))
        self.neighbor_table.append({})
        return idx

    def _build(self):
        tree = self.tree
        self._add_vertex(self.center, 0)
        frontier = [0]
        for d in range(self.radius):
            nxt = []
            for vi in frontier:
                v = self.vertices[vi]
                nbrs = tree.neighbors(v, self.charts[vi])
                for label, u in enumerate(nbrs):
                    if u in self.index:
                        ui = self.index[u]
                        self.neighbor_table[vi][label] = ui
                        continue
                    ui = self._add_vertex(u, d + 1)
                    self.neighbor_table[vi][label] = ui
                    # the child's label for the edge back to its parent
                    back = self._label_of(ui, v)
                    self.neighbor_table[ui][back] = vi
                    self.edges.append((vi, ui))
                    self.edge_labels.append((label, back))
                    nxt.append(ui)
            frontier = nxt
        # labels of boundary vertices' outward edges are not materialized
        if len(self.edges) != len(self.vertices) - 1:
            raise AssertionError("ball is not a subtree")

    def _label_of(self, vi: int, target: Vertex) -> int:
        for label, u in enumerate(self.tree.neighbors(self.vertices[vi], self.charts[vi])):
            if u == target:
                return label
        raise AssertionError("target is not adjacent")

    # -- queries ---------------------------------------------------------

    def parity(self, idx: int) -> int:
        return self.tree.parity(self.vertices[idx])

    def is_interior(self, idx: int) -> bool:
        return self.depth[idx] < self.radius

    def children(self, idx: int):
        return [ui for (vi, ui) in self.edges if vi == idx]

    def to_json(self) -> dict:
        return {
            "p": self.tree.p,
            "center": str(self.center),
            "radius": self.radius,
            "chart_seed": self.chart_seed,
            "vertices": [str(v) for v in self.vertices],
            "parities": [self.parity(i) for i in range(len(self.vertices))],
            "edges": [[a, b] for (a, b) in self.edges],
        }
