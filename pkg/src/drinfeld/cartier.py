"""Explicit rank-4 graded Cartier modules at geometric points of the special
fiber: the operator table at a point y, the induced maps on the tangent
spaces and their vanishing loci, and first-order deformations over F[eps].

Everything here is pinned to K = Q_p (q = p): the coefficient ring is the
unramified Galois ring GR(p^N, m) with residue field F_{p^m}.  Basis order
is (x_{0,0}, x_{1,0}, x_{0,1}, x_{1,1}); the first index is the label inside
a graded piece, the second the Z/2 degree.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arith import ConfigurationError, FiniteField, GaloisRing


def _idx(label: int, degree: int) -> int:
    return (degree % 2) * 2 + (label % 2)


class CartierPoint:
    """The rank-4 module M_y with Pi/F/V matrices over GR(p^N, m).

    Pi is linear; F is sigma-semilinear and V is sigma^{-1}-semilinear, so
    applying them to a coefficient vector twists the coefficients first.
    The parameter i is the critical degree: the graded piece on which the
    three operators agree.
    """

    def __init__(self, ring: GaloisRing, y: int, i: int, f: int = 1):
        if f != 1:
            raise ConfigurationError(
                "Cartier matrices are only implemented for q = p (f = 1)")
        if ring.precision > 4:
            raise ConfigurationError("precision N <= 4 expected")
        self.ring = ring
        self.field = ring.residue
        self.y = y
        self.i = i % 2
        p = ring.p
        ty = ring.teichmuller(y)
        ty_q = ring.teichmuller(self.field.frobenius(y))
        ty_root = ring.teichmuller(self.field.inv_frobenius(y))
        zero, one = ring.zero(), ring.one()
        pe = ring.from_int(p)

        def col(entries):
            out = [zero] * 4
            for pos, val in entries:
                out[pos] = val
            return out

        i0, i1 = self.i, 1 - self.i
        # columns indexed by basis order; shared part of all three operators
        shared = {
            _idx(0, i0): col([(_idx(0, i1), pe), (_idx(1, i1), ring.neg(ty))]),
            _idx(1, i0): col([(_idx(1, i1), one)]),
            _idx(1, i1): col([(_idx(1, i0), pe)]),
        }

        def build(t_top):
            cols = dict(shared)
            cols[_idx(0, i1)] = col([(_idx(0, i0), one), (_idx(1, i0), t_top)])
            return tuple(tuple(cols[c][r] for c in range(4)) for r in range(4))

        self.pi = build(ty)
        self.fr = build(ty_q)
        self.ve = build(ty_root)

    # -- application ------------------------------------------------------

    def apply_pi(self, vec):
        return _mat_vec(self.ring, self.pi, vec)

    def apply_fr(self, vec):
        return _mat_vec(self.ring, self.fr, [self.ring.frobenius(c) for c in vec])

    def apply_ve(self, vec):
        return _mat_vec(self.ring, self.ve, [self.ring.inv_frobenius(c) for c in vec])

    # -- invariants -------------------------------------------------------

    def composite_checks(self) -> bool:
        """Pi^2 = FV = VF = p . id, with the semilinear coefficient twists."""
        ring = self.ring
        p_id = _scalar_mat(ring, ring.from_int(ring.p))
        pi2 = _mat_mul(ring, self.pi, self.pi)
        fv = _mat_mul(ring, self.fr, _mat_map(ring.frobenius, self.ve))
        vf = _mat_mul(ring, self.ve, _mat_map(ring.inv_frobenius, self.fr))
        return pi2 == p_id and fv == p_id and vf == p_id

    def grading_ok(self) -> bool:
        """Operators are homogeneous of degree 1 for the Z/2 grading."""
        for mat in (self.pi, self.fr, self.ve):
            for r in range(4):
                for c in range(4):
                    if (r // 2) == (c // 2) and mat[r][c] != self.ring.zero():
                        return False
        return True

    def ve_elementary_divisors(self):
        """p-valuations of the elementary divisors of the V matrix over the
        local ring; (0, 0, 1, 1) is the truncated injectivity certificate."""
        return _local_smith_valuations(self.ring, [list(r) for r in self.ve])


def _mat_vec(ring, mat, vec):
    return tuple(
        _dot(ring, row, vec) for row in mat
    )


def _dot(ring, row, vec):
    acc = ring.zero()
    for a, b in zip(row, vec):
        acc = ring.add(acc, ring.mul(a, b))
    return acc


def _mat_mul(ring, a, b):
    return tuple(
        tuple(_dot(ring, row, [b[k][c] for k in range(4)]) for c in range(4))
        for row in a
    )


def _mat_map(fn, mat):
    return tuple(tuple(fn(x) for x in row) for row in mat)


def _scalar_mat(ring, s):
    z = ring.zero()
    return tuple(tuple(s if r == c else z for c in range(4)) for r in range(4))


def _local_smith_valuations(ring: GaloisRing, mat):
    """Elementary divisor p-valuations over the local ring GR(p^N, m)."""
    vals = []
    shift = 0
    size = len(mat)
    while mat:
        pivot = None
        for r in range(len(mat)):
            for c in range(len(mat[0])):
                if ring.unit_valuation(mat[r][c]) == 0:
                    pivot = (r, c)
                    break
            if pivot:
                break
        if pivot is None:
            if all(x == ring.zero() for row in mat for x in row):
                vals.extend([ring.precision + shift] * len(mat))
                break
            mat = [[ring.divide_by_p(x) for x in row] for row in mat]
            shift += 1
            continue
        r0, c0 = pivot
        mat[0], mat[r0] = mat[r0], mat[0]
        for row in mat:
            row[0], row[c0] = row[c0], row[0]
        inv = _unit_inverse(ring, mat[0][0])
        for r in range(1, len(mat)):
            f = ring.mul(mat[r][0], inv)
            mat[r] = [ring.sub(x, ring.mul(f, y)) for x, y in zip(mat[r], mat[0])]
        vals.append(shift)
        mat = [row[1:] for row in mat[1:]]
    vals += [shift] * (size - len(vals))
    return tuple(sorted(vals))


def _unit_inverse(ring: GaloisRing, u):
    """Inverse of a unit via lifting the residue inverse (Newton steps)."""
    x = ring.lift(ring.residue.inv(ring.reduce(u)))
    for _ in range(ring.precision):
        # x <- x (2 - u x)
        x = ring.mul(x, ring.sub(ring.from_int(2), ring.mul(u, x)))
    assert ring.mul(u, x) == ring.one()
    return x


# ---------------------------------------------------------------------------
# induced maps on tangent spaces and their vanishing loci
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LieMapScalars:
    """Scalars of the induced degree-raising maps on the tangent line at y."""

    pi_scalar: int
    f_scalar: int


def lie_map_scalars(field: FiniteField, y: int, f: int = 1) -> LieMapScalars:
    """(y - y^{1/q}, y^q - y^{1/q}); zero iff y lies in F_q resp. F_{q^2}."""
    root = field.inv_frobenius(y, f)
    return LieMapScalars(field.sub(y, root), field.sub(field.frobenius(y, f), root))


def lie_scalars_from_matrices(point: CartierPoint) -> LieMapScalars:
    """Recover the tangent-map scalars from the operator matrices: reduce the
    image of x_{0,i+1} mod p and mod the image of V, and read off the
    x_{1,i}-coefficient."""
    ring, field = point.ring, point.field
    i0, i1 = point.i, 1 - point.i
    src = _idx(0, i1)
    out = []
    for mat in (point.pi, point.fr):
        c0 = field_of(ring, mat[_idx(0, i0)][src])
        c1 = field_of(ring, mat[_idx(1, i0)][src])
        # V x_{0,i+1} = x_{0,i} + [y^{1/q}] x_{1,i} spans the V-image mod p
        v1 = field_of(ring, point.ve[_idx(1, i0)][src])
        out.append(field.sub(c1, field.mul(c0, v1)))
    return LieMapScalars(out[0], out[1])


def field_of(ring: GaloisRing, x) -> int:
    return ring.reduce(x)


def vanishing_scan(p: int, m: int, f: int = 1) -> dict:
    """Exhaustive zero sets of the two tangent-map scalars over F_{q^m}."""
    if m > 4:
        raise ConfigurationError("scan degree m <= 4 expected")
    field = FiniteField(p, m * f)
    q = p ** f
    pi_zeros = []
    f_zeros = []
    for y in field.elements():
        s = lie_map_scalars(field, y, f)
        if s.pi_scalar == 0:
            pi_zeros.append(y)
        if s.f_scalar == 0:
            f_zeros.append(y)
    pi_expected = [y for y in field.elements() if field.pow(y, q) == y]
    f_expected = [y for y in field.elements() if field.pow(y, q * q) == y]
    return {
        "p": p,
        "f": f,
        "m": m,
        "pi_zero_count": len(pi_zeros),
        "f_zero_count": len(f_zeros),
        "pi_zeros_are_rational": pi_zeros == pi_expected,
        "f_zeros_are_quadratic": f_zeros == f_expected,
    }


# ---------------------------------------------------------------------------
# first-order deformations over F[eps]/(eps^2)
# ---------------------------------------------------------------------------


class Eps:
    """Dual-number arithmetic a + b eps over a finite field; the Frobenius
    acts on both coordinates."""

    def __init__(self, field: FiniteField):
        self.field = field

    def of(self, a, b=0):
        return (a, b)

    def add(self, x, y):
        return (self.field.add(x[0], y[0]), self.field.add(x[1], y[1]))

    def sub(self, x, y):
        return (self.field.sub(x[0], y[0]), self.field.sub(x[1], y[1]))

    def mul(self, x, y):
        f = self.field
        return (f.mul(x[0], y[0]),
                f.add(f.mul(x[0], y[1]), f.mul(x[1], y[0])))

    def frob(self, x, k=1):
        f = self.field
        return (f.pow(x[0], f.p ** (k % f.d)), f.pow(x[1], f.p ** (k % f.d)))

    def is_unit(self, x):
        return x[0] != 0

    def inv(self, x):
        f = self.field
        a = f.inv(x[0])
        return (a, f.neg(f.mul(f.mul(a, a), x[1])))


@dataclass(frozen=True)
class DeformationPoint:
    """eps-coefficients (a0 on the critical piece, a1 on the other); a1 is
    forced to zero unless y is rational."""

    a0: int
    a1: int
    y_rational: bool


class DeformedModule:
    """M_y (x) F[eps] with the filtration spanned by the two deformed
    generators; provides the operator actions mod p."""

    def __init__(self, point_field: FiniteField, y: int, i: int, f: int = 1):
        self.field = point_field
        self.eps = Eps(point_field)
        self.y = y
        self.i = i % 2
        self.f = f
        q = point_field.p ** f
        self.q = q
        self.y_root = point_field.inv_frobenius(y, f)
        self.y_q = point_field.frobenius(y, f)

    def generators(self, a0: int, a1: int):
        """Filtration generators in coordinates ((x_{0,j}, x_{1,j}) per
        degree): degree-i generator (1, y^{1/q} + eps a0), degree-(i+1)
        generator (eps a1, 1)."""
        e = self.eps
        gen_i = (e.of(1), e.add(e.of(self.y_root), e.of(0, a0)))
        gen_i1 = (e.of(0, a1), e.of(1))
        return gen_i, gen_i1

    def op_images(self, a0: int, a1: int):
        """Images of the two filtration generators under Pi, F, V mod p.

        Returns {op: (image of gen_i in degree-(i+1) coords,
                      image of gen_(i+1) in degree-i coords)}.
        """
        e = self.eps
        f = self.field
        gen_i, gen_i1 = self.generators(a0, a1)
        d = f.d

        def deg_i_image(vec, twist):
            # source degree i: x_{0,i} -> -[y] x_{1,i+1}, x_{1,i} -> x_{1,i+1}
            # (mod p), so image = (0, -y c0 + c1)
            c0, c1 = e.frob(vec[0], twist), e.frob(vec[1], twist)
            val = e.add(e.mul(e.of(f.neg(self.y)), c0), c1)
            return (e.of(0), val)

        def deg_i1_image(vec, twist, top):
            # source degree i+1: x_{0,i+1} -> x_{0,i} + [top] x_{1,i},
            # x_{1,i+1} -> p x_{1,i} == 0 mod p
            c0 = e.frob(vec[0], twist)
            return (c0, e.mul(e.of(top), c0))

        frob_twist = self.f % d
        inv_twist = (d - self.f) % d
        return {
            "pi": (deg_i_image(gen_i, 0), deg_i1_image(gen_i1, 0, self.y)),
            "f": (deg_i_image(gen_i, frob_twist),
                  deg_i1_image(gen_i1, frob_twist, self.y_q)),
            "v": (deg_i_image(gen_i, inv_twist),
                  deg_i1_image(gen_i1, inv_twist, self.y_root)),
        }

    def is_stable(self, a0: int, a1: int) -> bool:
        """Whether the filtration spanned by the generators is preserved by
        all three operator extensions."""
        e = self.eps
        gen_i, gen_i1 = self.generators(a0, a1)
        for img_i, img_i1 in self.op_images(a0, a1).values():
            if not _in_line(e, img_i, gen_i1):
                return False
            if not _in_line(e, img_i1, gen_i):
                return False
        return True


def _in_line(e: Eps, vec, gen):
    """Membership of vec in the F[eps]-line spanned by gen (gen has a unit
    coordinate)."""
    if e.is_unit(gen[0]):
        c = e.mul(vec[0], e.inv(gen[0]))
    elif e.is_unit(gen[1]):
        c = e.mul(vec[1], e.inv(gen[1]))
    else:
        raise ValueError("generator has no unit coordinate")
    return vec == (e.mul(c, gen[0]), e.mul(c, gen[1]))


def deformation_lie_scalar(field: FiniteField, y: int, a: int, f: int = 1):
    """eps-coefficients of the induced tangent maps on the deformation with
    parameters (a, 0): the linear-isogeny branch needs y rational, the
    Frobenius branch y quadratic.  Returns (pi_eps, f_eps) with None for a
    branch whose hypothesis fails; both equal -a where defined."""
    q = field.p ** f
    in_fq = field.pow(y, q) == y
    in_fq2 = field.pow(y, q * q) == y
    if not in_fq2:
        raise ValueError("y must lie in F_{q^2} for a first-order vanishing branch")
    dm = DeformedModule(field, y, 0, f)
    pi_eps = _tangent_eps(dm, "pi", a) if in_fq else None
    f_eps = _tangent_eps(dm, "f", a)
    return pi_eps, f_eps


def _tangent_eps(dm: DeformedModule, op: str, a: int):
    """Coefficient of eps in (op x_{0,i+1} reduced mod the deformed V-image),
    expressed on x_{1,i}; equals -a exactly on the vanishing locus."""
    e, f = dm.eps, dm.field
    top = {"pi": dm.y, "f": dm.y_q}[op]
    # op x_{0,i+1} = x_{0,i} + [top] x_{1,i}; subtract the degree-i generator
    # (1, y^{1/q} + eps a) once to kill the x_{0,i}-coordinate
    coeff = e.sub(e.of(top), e.add(e.of(dm.y_root), e.of(0, a)))
    const, eps_part = coeff
    if const != 0:
        raise ValueError("constant part nonzero: not on the vanishing locus")
    return eps_part


@dataclass(frozen=True)
class DeformationFamily:
    dimension: int
    y_rational: bool
    split: bool
    stability_verified: bool


def classify_deformations(field: FiniteField, y: int, f: int = 1,
                          samples: int = 12, rng=None) -> DeformationFamily:
    """Parameter space of graded first-order deformations at y: a 2-parameter
    family when y is rational (splitting into the two component directions),
    else 1-parameter with the second coordinate forced to zero.  Stability
    under all three operator extensions is checked by direct computation."""
    import random as _random

    rng = rng or _random.Random(0)
    rational = field.in_subfield(y, f)
    dm = DeformedModule(field, y, 0, f)
    ok = True
    for _ in range(samples):
        a0 = field.random_element(rng)
        a1 = field.random_element(rng) if rational else 0
        ok = ok and dm.is_stable(a0, a1)
    violations = True
    if not rational:
        # a nonzero second parameter must break stability
        for _ in range(samples):
            a1 = field.random_nonzero(rng)
            if dm.is_stable(field.random_element(rng), a1):
                violations = False
    return DeformationFamily(2 if rational else 1, rational,
                             rational, ok and violations)
