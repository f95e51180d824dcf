"""The acceptance suite: one callable per criterion, each returning a result
record with a pass flag, timing, and detail lines.  The CLI selftest and the
test suite both run these."""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field

from . import arith
from .arith import FiniteField, GaloisRing
from .bundles import BundleClass, closed_form_orders, solve_order_systems, trivial_character
from .cartier import CartierPoint, deformation_lie_scalar, vanishing_scan
from .heckerep import (WeightSigma, WindowError, act, convolve_check,
                       delta_element, enumerate_and_match, phi_tilde,
                       random_even_element, t_apply, t_power_centered)
from .specialfiber import (GluingComplex, cohomology, divide_by_divisor,
                           eval_kernel_basis, eval_matrix, predicted_dims,
                           restriction_image_dim)
from .tree import Ball, Tree


@dataclass
class CriterionResult:
    number: int
    name: str
    passed: bool
    seconds: float
    budget: float
    details: list = field(default_factory=list)

    def line(self) -> str:
        status = "PASS" if self.passed else "FAIL"
        return (f"criterion {self.number:2d} [{status}] {self.name} "
                f"({self.seconds:.2f}s / budget {self.budget:.0f}s)")


def _result(number, name, budget, started, ok, details):
    return CriterionResult(number, name, ok, time.time() - started, budget,
                           details)


def _random_bundle(rng, q, span=2):
    k0 = rng.randrange(-(q + 2), q + 3)
    k1 = rng.randrange(-span, span + 1) * (q - 1) - k0
    return BundleClass(q, trivial_character(q), 0, k0, k1)


_BALL_CACHE: dict = {}


def _ball(p: int, radius: int, seed: int = 0, center_parity: int = 1) -> Ball:
    key = (p, radius, seed, center_parity)
    if key not in _BALL_CACHE:
        tree = Tree(p)
        center = tree.s1 if center_parity == 1 else tree.s0
        _BALL_CACHE[key] = tree.ball(center, radius, seed)
    return _BALL_CACHE[key]


def criterion_1_order_tables() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    for p in (3, 5, 7):
        for f in (1, 2):
            q = p ** f
            solved = solve_order_systems(q)
            if solved != closed_form_orders(q):
                ok = False
                details.append(f"q={q}: solved table deviates: {solved}")
    return _result(1, "generator order tables from divisor-degree systems", 1,
                   t0, ok, details)


def criterion_2_cartier_axioms() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    for p in (3, 5):
        ring = GaloisRing(p, 2, 2)
        rng = random.Random(100 + p)
        for _ in range(50):
            y = ring.residue.random_element(rng)
            i = rng.randrange(2)
            cp = CartierPoint(ring, y, i)
            if not (cp.composite_checks() and cp.grading_ok()
                    and cp.ve_elementary_divisors() == (0, 0, 1, 1)):
                ok = False
                details.append(f"p={p} y={y} i={i}: axiom failure")
            lam = ring.teichmuller(ring.residue.random_element(rng))
            vec = tuple(ring.teichmuller(ring.residue.random_element(rng))
                        for _ in range(4))
            lv = tuple(ring.mul(lam, c) for c in vec)
            fr_twist = tuple(ring.mul(ring.frobenius(lam), c)
                             for c in cp.apply_fr(vec))
            ve_twist = tuple(ring.mul(ring.inv_frobenius(lam), c)
                             for c in cp.apply_ve(vec))
            if cp.apply_fr(lv) != fr_twist or cp.apply_ve(lv) != ve_twist:
                ok = False
                details.append(f"p={p} y={y}: semilinearity failure")
    return _result(2, "Cartier point operator axioms (squares, grading, "
                      "semilinearity, truncated injectivity)", 5, t0, ok, details)


def criterion_3_vanishing_loci() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    for q in (3, 5):
        rep = vanishing_scan(q, 4)
        if not (rep["pi_zero_count"] == q and rep["pi_zeros_are_rational"]
                and rep["f_zero_count"] == q * q and rep["f_zeros_are_quadratic"]):
            ok = False
            details.append(f"q={q}: scan {rep}")
        fld = FiniteField(q, 4)
        rationals = [y for y in fld.elements() if fld.pow(y, q) == y]
        for y in rationals:
            for a in fld.elements():
                if a == 0:
                    continue
                pi_eps, f_eps = deformation_lie_scalar(fld, y, a)
                if pi_eps != fld.neg(a) or f_eps != fld.neg(a):
                    ok = False
                    details.append(f"q={q} y={y} a={a}: first-order scalar wrong")
    return _result(3, "tangent-map vanishing loci and first-order "
                      "deformation nonvanishing", 10, t0, ok, details)


def criterion_4_eval_kernels() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    for p, d in ((3, 1), (5, 1), (3, 2)):
        fld = FiniteField(p, d)
        q = fld.order
        for k in range(0, 2 * q + 3):
            mat = eval_matrix(fld, k)
            oracle = arith.kernel_basis(fld, mat)
            structured = eval_kernel_basis(fld, k)
            if len(oracle) != max(0, k - q) or len(structured) != max(0, k - q):
                ok = False
                details.append(f"q={q} k={k}: kernel dimension off")
                continue
            for vec in oracle:
                if divide_by_divisor(fld, vec) is None:
                    ok = False
                    details.append(f"q={q} k={k}: oracle vector not divisible")
            if structured and arith.rank(fld, structured + oracle) != len(oracle):
                ok = False
                details.append(f"q={q} k={k}: spans differ")
    return _result(4, "evaluation kernels: dimension and divisor divisibility",
                   5, t0, ok, details)


def criterion_5_euler_identity() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    rng = random.Random(500)
    for p in (3, 5):
        for _ in range(50):
            bundle = _random_bundle(rng, p)
            for radius in (1, 2, 3, 4):
                cx = GluingComplex(bundle, _ball(p, radius))
                res = cohomology(cx)
                expected = cx.total_cols - cx.n_edges - cx.h1_local()
                if res.euler != expected or res.h0_dim - res.h1_dim != expected:
                    ok = False
                    details.append(f"p={p} {bundle.orders} R={radius}: euler broke")
    return _result(5, "Euler identity for random bundles on truncations", 60,
                   t0, ok, details)


def _case_grid(p):
    """Sample orders per vanishing case with the boundary k = -1 excluded."""
    q = p
    case1, case2, case3 = [], [], []
    for k0 in range(-q - 3, q + 4):
        for s in (-2, -1, 0, 1, 2):
            k1 = s * (q - 1) - k0
            if abs(k1) > q + 3:
                continue
            if k0 <= -2 and k1 <= -2:
                case1.append((k0, k1))
            if k0 >= 0 and k1 >= 0:
                case2.append((k0, k1))
            if (0 <= k0 <= q and k1 <= -2) or (0 <= k1 <= q and k0 <= -2):
                case3.append((k0, k1))
    return case1, case2, case3


def criterion_6_truncated_vanishing() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    for p in (3, 5):
        case1, case2, case3 = _case_grid(p)
        for radius in (1, 2, 3, 4):
            ball = _ball(p, radius)
            for (k0, k1) in case1:
                L = BundleClass(p, trivial_character(p), 0, k0, k1)
                if cohomology(GluingComplex(L, ball)).h0_dim != 0:
                    ok = False
                    details.append(f"p={p} case1 {k0},{k1} R={radius}: h0 != 0")
            for (k0, k1) in case2:
                L = BundleClass(p, trivial_character(p), 0, k0, k1)
                if cohomology(GluingComplex(L, ball)).h1_dim != 0:
                    ok = False
                    details.append(f"p={p} case2 {k0},{k1} R={radius}: h1 != 0")
        for radius in (1, 2, 3):
            big = _ball(p, radius + 1)
            for (k0, k1) in case3:
                L = BundleClass(p, trivial_character(p), 0, k0, k1)
                if restriction_image_dim(L, big, radius) != 0:
                    ok = False
                    details.append(f"p={p} case3 {k0},{k1} R={radius}: "
                                   "restricted sections nonzero")
    return _result(6, "truncated vanishing: negative, positive, mixed cases",
                   60, t0, ok, details)


def criterion_7_half_large_case() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    p = 3
    for k_big in (4, 6):
        # the largest k_small <= -2 with (k_small + k_big) divisible by p-1
        k_small = (-k_big) % (p - 1)
        while k_small > -2:
            k_small -= p - 1
        for (center_parity, radius) in ((1, 1), (0, 2), (1, 3)):
            # chosen so every big-order (parity 1) vertex is interior
            ball = _ball(p, radius, center_parity=center_parity)
            L = BundleClass(p, trivial_character(p), 0, k_small, k_big)
            pred = predicted_dims(L, ball)
            got = cohomology(GluingComplex(L, ball)).h0_dim
            if pred is None or pred.h0 != got:
                ok = False
                details.append(f"k1={k_big} R={radius}: predicted "
                               f"{pred and pred.h0} got {got}")
    return _result(7, "half-large case: point-constrained section count", 30,
                   t0, ok, details)


def criterion_8_hecke_identities() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    rng = random.Random(800)
    for p in (3, 5):
        tree = Tree(p)
        window = _ball(p, 4)
        for k in range(0, p):
            rep = convolve_check(p, k)
            if not rep["convolution_ok"]:
                ok = False
                details.append(f"p={p} k={k}: convolution identity failed")
            w = WeightSigma(p, k, 0, 1)
            # support always inside the neighbors, and the union over the
            # fiber hits every neighbor (single vectors can miss some: for
            # k = 1 the coset kernels are the p+1 lines of the fiber plane)
            nbrs = set(window.neighbor_table[0].values())
            union = set()
            for b in range(w.dim):
                vec = [1 if j == b else 0 for j in range(w.dim)]
                tf = t_apply(delta_element(w, window, 0, vec))
                if not tf.support() <= nbrs:
                    ok = False
                    details.append(f"p={p} k={k}: support escaped the neighbors")
                union |= tf.support()
            if union != nbrs:
                ok = False
                details.append(f"p={p} k={k}: fiber-wide support misses neighbors")
            trials = 0
            while trials < 20:
                g = random_even_element(rng, p)
                vec = [w.field.random_element(rng) for _ in range(w.dim)]
                if not any(vec):
                    continue
                f = delta_element(w, window, 0, vec)
                try:
                    lhs = t_apply(act(g, f))
                    rhs = act(g, t_apply(f))
                except WindowError:
                    continue
                trials += 1
                if lhs != rhs:
                    ok = False
                    details.append(f"p={p} k={k}: equivariance failed at {g}")
            # degree-support for random polynomials of degree <= 3
            for _ in range(5):
                deg = rng.randrange(1, 4)
                coeffs = [w.field.random_element(rng) for _ in range(deg)]
                coeffs.append(w.field.random_nonzero(rng))
                for _ in range(20):
                    vec = [w.field.random_element(rng) for _ in range(w.dim)]
                    if not any(vec):
                        continue
                    total = None
                    for d_, c_ in enumerate(coeffs):
                        if c_ == 0:
                            continue
                        term = t_power_centered(w, window, vec, d_).scale(c_)
                        total = term if total is None else total.add(term)
                    dist = max((window.depth[v] for v in total.support()),
                               default=-1)
                    if dist == deg:
                        break
                else:
                    ok = False
                    details.append(f"p={p} k={k}: degree-support failed")
    return _result(8, "Hecke algebra: convolution, support, equivariance, "
                      "degree-support", 120, t0, ok, details)


def criterion_9_main_mechanism() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    p = 3
    for k1 in range(p):
        k0 = p - 1 - k1
        for r in (0, 1):
            L = BundleClass(p, trivial_character(p), r, k0, k1)
            for i in (0, 1):
                try:
                    res = phi_tilde(L, _ball(p, 3), i)
                except AssertionError as exc:
                    ok = False
                    details.append(f"(k0,k1)=({k0},{k1}) r={r} i={i}: {exc}")
                    continue
                if res.lam == 0 or not res.support_is_neighbors:
                    ok = False
                    details.append(f"(k0,k1)=({k0},{k1}) r={r} i={i}: "
                                   f"lambda={res.lam}")
            for radius in (1, 2, 3):
                cx = GluingComplex(L, _ball(p, radius))
                h0 = cohomology(cx).h0_dim
                rows = cx.rows()
                cols = [[row[j] for row in rows] for j in range(cx.total_cols)]
                dual_dim = cx.total_cols - (arith.rank_mod_p(cols, p) if rows else 0)
                if dual_dim != h0:
                    ok = False
                    details.append(f"(k0,k1)=({k0},{k1}) R={radius}: dual "
                                   f"presentation {dual_dim} != h0 {h0}")
    return _result(9, "weight -1 mechanism: composite equals a nonzero "
                      "multiple of T; dual presentation dimension", 120, t0,
                   ok, details)


def criterion_10_bijection_counts() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    for p, expected in ((3, 12), (5, 80)):
        rep = enumerate_and_match(p, 1)
        if not (rep["bundle_count"] == expected
                and rep["rep_count"] == expected and rep["bijective"]):
            ok = False
            details.append(f"p={p}: {rep}")
    return _result(10, "positive weight -1 classes match supersingular "
                       "parameter normal forms", 5, t0, ok, details)


def criterion_11_gauge_invariance() -> CriterionResult:
    t0 = time.time()
    ok = True
    details = []
    rng = random.Random(1100)
    seeds = list(range(1, 21))
    # criterion 5 dimensions across seeds
    for p in (3, 5):
        bundles = [_random_bundle(rng, p) for _ in range(50)]
        for radius in (1, 2, 3, 4):
            base = [cohomology(GluingComplex(L, _ball(p, radius))) for L in bundles]
            for seed in seeds:
                ball = Tree(p).ball(Tree(p).s1, radius, seed)
                for L, b0 in zip(bundles, base):
                    res = cohomology(GluingComplex(L, ball))
                    if (res.h0_dim, res.h1_dim) != (b0.h0_dim, b0.h1_dim):
                        ok = False
                        details.append(f"p={p} {L.orders} R={radius} "
                                       f"seed={seed}: dims changed")
    # criterion 6 case-3 restriction dims and criterion 7 predictions
    for seed in seeds:
        p = 3
        big = Tree(p).ball(Tree(p).s1, 3, seed)
        L = BundleClass(p, trivial_character(p), 0, 2, -2)
        if restriction_image_dim(L, big, 2) != 0:
            ok = False
            details.append(f"seed={seed}: case-3 restriction changed")
        ball = Tree(p).ball(Tree(p).s1, 1, seed)
        L = BundleClass(p, trivial_character(p), 0, -2, 4)
        pred = predicted_dims(L, ball)
        if pred.h0 != cohomology(GluingComplex(L, ball)).h0_dim:
            ok = False
            details.append(f"seed={seed}: half-large prediction changed")
    # criterion 9 dimension across seeds
    for seed in seeds[:5]:
        p = 3
        ball = Tree(p).ball(Tree(p).s1, 3, seed)
        for k1 in range(p):
            L = BundleClass(p, trivial_character(p), 0, p - 1 - k1, k1)
            cx = GluingComplex(L, ball)
            h0 = cohomology(cx).h0_dim
            h0_base = cohomology(GluingComplex(L, _ball(p, 3))).h0_dim
            if h0 != h0_base:
                ok = False
                details.append(f"seed={seed} k1={k1}: h0 changed")
    return _result(11, "gauge invariance of all dimension computations "
                       "across 20 chart seeds", 120, t0, ok, details)


ALL_CRITERIA = [
    criterion_1_order_tables,
    criterion_2_cartier_axioms,
    criterion_3_vanishing_loci,
    criterion_4_eval_kernels,
    criterion_5_euler_identity,
    criterion_6_truncated_vanishing,
    criterion_7_half_large_case,
    criterion_8_hecke_identities,
    criterion_9_main_mechanism,
    criterion_10_bijection_counts,
    criterion_11_gauge_invariance,
]


def run_all(echo=None) -> list[CriterionResult]:
    results = []
    for fn in ALL_CRITERIA:
        res = fn()
        results.append(res)
        if echo:
            echo(res.line())
            for d in res.details[:10]:
                echo("    " + d)
    return results
