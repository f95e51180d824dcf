import random
from fractions import Fraction

import pytest

from drinfeld.arith import FiniteField, Mat2
from drinfeld.bundles import BundleClass, trivial_character
from drinfeld.heckerep import (SupersingularParams, WeightSigma, WindowError,
                               _matmul, act, convolve_check, delta_element,
                               enumerate_and_match, hecke_phi,
                               hecke_projector, jordan_holder_check,
                               phi_tilde, sigma_tilde,
                               supersingular_quotient_dim, sym_matrix,
                               t_apply, t_n_apply_centered, t_power_centered,
                               verify_recurrence)
from drinfeld.tree import Tree


def rand_unimodular(rng, p, bound=2):
    while True:
        g = Mat2(*[rng.randrange(p ** bound) for _ in range(4)])
        if g.det() != 0 and g.is_unimodular(p):
            return g


def test_sym_matrix_is_action():
    rng = random.Random(0)
    p = 5
    for k in (1, 2, 3):
        for _ in range(20):
            g = rand_unimodular(rng, p, 1).reduce_mod_p(p)
            h = rand_unimodular(rng, p, 1).reduce_mod_p(p)
            gh = ((g[0] * h[0] + g[1] * h[2]) % p, (g[0] * h[1] + g[1] * h[3]) % p,
                  (g[2] * h[0] + g[3] * h[2]) % p, (g[2] * h[1] + g[3] * h[3]) % p)
            F = FiniteField(p)
            assert _matmul(F, sym_matrix(p, g, k), sym_matrix(p, h, k)) == \
                [list(r) for r in sym_matrix(p, gh, k)]


def test_hecke_projector_identities():
    # single weight: idempotent only for the trivial weight
    F = FiniteField(3)
    u0 = hecke_projector((0,))
    assert u0 == ((1,),)
    u2 = [list(r) for r in hecke_projector((2,))]
    assert _matmul(F, u2, u2) == u2            # diagonal matrix unit
    # tuple weights multiply dimensions
    assert len(hecke_projector((1, 2))) == 6


def test_hecke_phi_two_sided_transform():
    rng = random.Random(2)
    p, F = 3, FiniteField(3)
    w = WeightSigma(p, 2, 1, 2)
    for n in (0, 1, 2):
        an = Mat2(1, 0, 0, Fraction(p) ** n)
        for _ in range(15):
            h1, h2 = rand_unimodular(rng, p), rand_unimodular(rng, p)
            g = h1 @ an @ h2
            lhs = hecke_phi(w, g, n)
            rhs = _matmul(F, _matmul(F, sigma_tilde(w, h1),
                                     hecke_phi(w, an, n)), sigma_tilde(w, h2))
            assert lhs == rhs


def test_hecke_phi_coset_support_and_center():
    p = 3
    w = WeightSigma(p, 2, 0, 2)
    g = Mat2(1, 0, 0, p)
    assert hecke_phi(w, g, 1) is not None
    assert hecke_phi(w, g, 0) is None
    assert hecke_phi(w, Mat2.identity(), 1) is None
    # central rescaling multiplies by the central parameter
    m1 = hecke_phi(w, g, 1)
    m2 = hecke_phi(w, g.scale(p), 1)
    F = w.field
    assert m2 == [[F.mul(w.a, x) for x in row] for row in m1]


def test_hecke_phi_value_at_alpha_and_factorizations():
    rng = random.Random(6)
    for p in (3, 5):
        for n in (1, 2):
            an = Mat2(1, 0, 0, Fraction(p) ** n)
            for k in (0, 1, 2):
                w = WeightSigma(p, k, 0, 1)
                assert hecke_phi(w, an, n) == \
                    [list(r) for r in hecke_projector((k,))]
                # alternate factorizations through the coset stabilizer
                for _ in range(20):
                    while True:
                        ents = [rng.randrange(p ** 2) for _ in range(4)]
                        ents[2] = ents[2] * p ** n          # lower-left in p^n
                        m = Mat2(*ents)
                        if m.det() != 0 and m.is_unimodular(p):
                            break
                    g = m @ an
                    assert hecke_phi(w, g, n) == _matmul(
                        w.field, sigma_tilde(w, m), hecke_phi(w, an, n))


def test_trivial_weight_adjacency():
    tree = Tree(3)
    window = tree.ball(tree.s1, 2)
    w = WeightSigma(3, 0, 0, 1)
    tf = t_apply(delta_element(w, window, 0, [1]))
    assert tf.support() == set(window.neighbor_table[0].values())
    assert all(vec == (1,) for vec in tf.terms.values())


def test_t_swaps_parity_and_stays_on_neighbors():
    tree = Tree(3)
    window = tree.ball(tree.s1, 3)
    nbrs = set(window.neighbor_table[0].values())
    for k in (1, 2):
        w = WeightSigma(3, k, 0, 1)
        union = set()
        for b in range(w.dim):
            vec = [1 if j == b else 0 for j in range(w.dim)]
            tf = t_apply(delta_element(w, window, 0, vec))
            assert tf.support() <= nbrs
            assert all(window.parity(v) == 0 for v in tf.support())
            union |= tf.support()
        assert union == nbrs


def test_t_equivariance():
    rng = random.Random(9)
    tree = Tree(3)
    window = tree.ball(tree.s1, 4)
    for k in (0, 1, 2):
        w = WeightSigma(3, k, 1, 2)
        done = 0
        while done < 15:
            g = rand_unimodular(rng, 3, 3)
            if rng.random() < 0.3:
                g = g @ Mat2(1, 0, 0, 9)
            vec = [w.field.random_element(rng) for _ in range(w.dim)]
            if not any(vec):
                continue
            f = delta_element(w, window, 0, vec)
            try:
                lhs = t_apply(act(g, f))
                rhs = act(g, t_apply(f))
            except WindowError:
                continue
            assert lhs == rhs
            done += 1


def test_act_is_homomorphism():
    rng = random.Random(21)
    tree = Tree(3)
    window = tree.ball(tree.s1, 4)
    w = WeightSigma(3, 2, 1, 2)
    for _ in range(20):
        g, h = rand_unimodular(rng, 3, 3), rand_unimodular(rng, 3, 3)
        vec = [w.field.random_element(rng) for _ in range(w.dim)]
        f = delta_element(w, window, 5, vec)
        try:
            assert act(g @ h, f) == act(g, act(h, f))
        except WindowError:
            pass


def test_window_errors():
    tree = Tree(3)
    window = tree.ball(tree.s1, 1)
    w = WeightSigma(3, 0, 0, 1)
    boundary = delta_element(w, window, len(window.vertices) - 1, [1])
    with pytest.raises(WindowError):
        t_apply(boundary)
    with pytest.raises(WindowError):
        act(Mat2(1, 0, 0, Fraction(1, 81)), delta_element(w, window, 0, [1]))


def test_recurrence_and_convolution():
    assert verify_recurrence(3, 0, 4)["recurrence_ok"]
    assert verify_recurrence(3, 1, 3)["recurrence_ok"]
    assert verify_recurrence(5, 0, 3)["recurrence_ok"]
    assert verify_recurrence(5, 4, 3)["recurrence_ok"]
    for p in (3, 5):
        for k in range(p):
            assert convolve_check(p, k)["convolution_ok"]


def test_convolve_expansion():
    from drinfeld.heckerep import HeckeOp, convolve
    for p in (3, 5):
        for k in range(p):
            w = WeightSigma(p, k, 0, 1)
            op = convolve(w, 1, 1)
            assert op.coefficients == ((1, 0, 1) if k == 0 else (0, 0, 1))
            assert op.parity_pure() == "even"
    # the level-0 function is the unit
    w = WeightSigma(3, 2, 0, 1)
    assert convolve(w, 0, 2).coefficients == (0, 0, 1)
    assert convolve(w, 2, 0).coefficients == (0, 0, 1)
    assert HeckeOp((0, 1)).parity_pure() == "odd"
    assert HeckeOp((1, 0, 2)).degree == 2


def test_degree_support():
    rng = random.Random(30)
    tree = Tree(3)
    window = tree.ball(tree.s1, 4)
    for k in (0, 1, 2):
        w = WeightSigma(3, k, 0, 1)
        for deg in (1, 2, 3):
            for _ in range(25):
                coeffs = [w.field.random_element(rng) for _ in range(deg)]
                coeffs.append(w.field.random_nonzero(rng))
                vec = [w.field.random_element(rng) for _ in range(w.dim)]
                if not any(vec):
                    continue
                total = None
                for d, c in enumerate(coeffs):
                    if c == 0:
                        continue
                    term = t_power_centered(w, window, vec, d).scale(c)
                    total = term if total is None else total.add(term)
                dist = max((window.depth[v] for v in total.support()), default=-1)
                assert dist <= deg
                if dist == deg:
                    break
            else:
                raise AssertionError(f"k={k} deg={deg}: no generic vector")


def test_t_n_matches_powers():
    tree = Tree(3)
    window = tree.ball(tree.s1, 4)
    w = WeightSigma(3, 2, 0, 1)
    vec = [1, 2, 1]
    t3 = t_n_apply_centered(w, window, vec, 3)
    assert t3 == t_power_centered(w, window, vec, 3)


def test_jordan_holder():
    for p in (3, 5):
        for k in range(p):
            for r in (0, 1):
                rep = jordan_holder_check(p, k, r)
                assert rep["sub_dim"] == k + 1
                assert rep["sub_stable"] and rep["dims_match"]
                assert rep["intertwiner_unique"] and rep["intertwiner_invertible"]
                assert rep["twist_shift_is_weight"]
    # dimension count: (k+1) + (p-k) = p+1 with k = 0
    rep = jordan_holder_check(3, 0, 0)
    assert rep["sub_dim"] == 1


def test_phi_tilde_scalars():
    for p in (3, 5):
        tree = Tree(p)
        window = tree.ball(tree.s1, 3)
        for k1 in range(p):
            L = BundleClass(p, trivial_character(p), 0, p - 1 - k1, k1)
            for i in (0, 1):
                res = phi_tilde(L, window, i)
                assert res.lam != 0
                assert res.support_is_neighbors
                assert res.lam == 1          # measured normalization


def test_phi_tilde_rejects_bad_input():
    tree = Tree(3)
    L = BundleClass(3, trivial_character(3), 0, 1, 1)
    with pytest.raises(WindowError):
        phi_tilde(L, tree.ball(tree.s1, 2))
    with pytest.raises(WindowError):
        phi_tilde(L, tree.ball(tree.s1, 3, chart_seed=4))
    with pytest.raises(ValueError):
        phi_tilde(BundleClass(3, trivial_character(3), 0, 2, 2),
                  tree.ball(tree.s1, 3))


def test_supersingular_quotient_dims():
    assert supersingular_quotient_dim(3, 1, 1, 1) == 2
    for k in range(3):
        dims = [supersingular_quotient_dim(3, k, 1, R) for R in (1, 2, 3, 4)]
        assert all(b >= a for a, b in zip(dims, dims[1:]))
        assert dims[2] > dims[0] and dims[3] > dims[1]
        assert all(d >= 0 for d in dims)


def test_supersingular_normal_forms():
    s = SupersingularParams(a=2, r=1, k=0, parity=0, p=3)
    t = SupersingularParams(a=2, r=1, k=2, parity=1, p=3)
    assert s.normal_form() == t.normal_form()


def test_bijection_counts():
    rep = enumerate_and_match(3, 1)
    assert rep["bundle_count"] == rep["rep_count"] == 12 and rep["bijective"]
    rep = enumerate_and_match(5, 1)
    assert rep["bundle_count"] == rep["rep_count"] == 80 and rep["bijective"]
    rep = enumerate_and_match(3, 2)
    assert rep["bundle_count"] == rep["rep_count"] == 48 and rep["bijective"]
