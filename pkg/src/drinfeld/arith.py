"""Exact arithmetic substrate: finite fields F_{p^d}, truncated Witt (Galois)
rings, exact p-adic 2x2 matrices, and dense linear algebra over finite fields.

Field elements are plain ints: for d=1 the residue 0..p-1, for d>1 the base-p
encoding of the coefficient vector of the representative polynomial.  This
keeps elements hashable and cheap to pass around.
"""

from __future__ import annotations

import math
from fractions import Fraction


class ConfigurationError(ValueError):
    """A (p, f, d, N) configuration a module does not support."""


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    i = 3
    while i * i <= n:
        if n % i == 0:
            return False
        i += 2
    return True


def _poly_mul_mod(a, b, modulus, p):
    """Multiply coefficient tuples mod (modulus, p); modulus monic of degree d."""
    d = len(modulus) - 1
    prod = [0] * (len(a) + len(b) - 1)
    for i, ai in enumerate(a):
        if ai:
            for j, bj in enumerate(b):
                prod[i + j] = (prod[i + j] + ai * bj) % p
    for i in range(len(prod) - 1, d - 1, -1):
        c = prod[i]
        if c:
            prod[i] = 0
            for j in range(d):
                prod[i - d + j] = (prod[i - d + j] - c * modulus[j]) % p
    return tuple(prod[:d])


def _is_irreducible(coeffs, p):
    """Irreducibility of a monic poly over F_p via x^(p^k) gcd tests."""
    d = len(coeffs) - 1
    if d == 1:
        return True

    def mul(a, b):
        return _poly_mul_mod(a, b, coeffs, p)

    def poly_pow_x(exp_p_power):
        # x^(p^e) mod coeffs by repeated Frobenius powering
        r = tuple([0, 1] + [0] * (d - 2)) if d >= 2 else (0,)
        for _ in range(exp_p_power):
            acc = tuple([1] + [0] * (d - 1))
            base = r
            e = p
            while e:
                if e & 1:
                    acc = mul(acc, base)
                base = mul(base, base)
                e >>= 1
            r = acc
        return r

    x = tuple([0, 1] + [0] * (d - 2))
    # x^(p^d) == x required
    if poly_pow_x(d) != x:
        return False
    # for each prime divisor t of d: gcd-degree condition via x^(p^(d/t)) != x
    for t in range(2, d + 1):
        if d % t == 0 and is_prime(t):
            if poly_pow_x(d // t) == x:
                return False
    return True


def irreducible_modulus(p: int, d: int):
    """Deterministic monic irreducible of degree d over F_p: the one whose
    coefficient vector (c_0,...,c_{d-1}) has the smallest base-p encoding."""
    if d == 1:
        return (0, 1)
    for code in range(p ** d):
        coeffs = []
        c = code
        for _ in range(d):
            coeffs.append(c % p)
            c //= p
        coeffs.append(1)
        if _is_irreducible(tuple(coeffs), p):
            return tuple(coeffs)
    raise AssertionError("no irreducible polynomial found")


class FiniteField:
    """F_{p^d} with int-encoded elements and log/exp multiplication tables."""

    def __init__(self, p: int, d: int = 1):
        if not is_prime(p):
            raise ConfigurationError(f"{p} is not prime")
        if d < 1:
            raise ConfigurationError("extension degree must be >= 1")
        self.p = p
        self.d = d
        self.order = p ** d
        self.modulus = irreducible_modulus(p, d)
        self._log = None
        self._exp = None
        if d > 1:
            self._build_tables()

    def __repr__(self):
        return f"FiniteField({self.p}, {self.d})"

    def __eq__(self, other):
        return isinstance(other, FiniteField) and (self.p, self.d) == (other.p, other.d)

    def __hash__(self):
        return hash((self.p, self.d))

    # -- encoding -------------------------------------------------------

    def encode(self, coeffs) -> int:
        v = 0
        for c in reversed(list(coeffs)):
            v = v * self.p + (c % self.p)
        return v

    def decode(self, x: int):
        out = []
        for _ in range(self.d):
            out.append(x % self.p)
            x //= self.p
        return tuple(out)

    def elements(self):
        return range(self.order)

    def _build_tables(self):
        p, d = self.p, self.d
        order = self.order
        # find a multiplicative generator
        factors = []
        n = order - 1
        t = 2
        while t * t <= n:
            if n % t == 0:
                factors.append(t)
                while n % t == 0:
                    n //= t
            t += 1
        if n > 1:
            factors.append(n)
        for g in range(2, order):
            if all(self._pow_raw(g, (order - 1) // f) != 1 for f in factors):
                gen = g
                break
        else:
            raise AssertionError("no generator found")
        exp = [1] * (order - 1)
        log = [0] * order
        acc = 1
        for i in range(order - 1):
            exp[i] = acc
            log[acc] = i
            acc = self._mul_raw(acc, gen)
        self._exp = exp
        self._log = log

    def _mul_raw(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a * b) % self.p
        return self.encode(_poly_mul_mod(self.decode(a), self.decode(b), self.modulus, self.p))

    def _pow_raw(self, a: int, e: int) -> int:
        r = 1
        while e:
            if e & 1:
                r = self._mul_raw(r, a)
            a = self._mul_raw(a, a)
            e >>= 1
        return r

    # -- arithmetic -----------------------------------------------------

    def add(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a + b) % self.p
        ca, cb = self.decode(a), self.decode(b)
        return self.encode((x + y) % self.p for x, y in zip(ca, cb))

    def sub(self, a: int, b: int) -> int:
        return self.add(a, self.neg(b))

    def neg(self, a: int) -> int:
        if self.d == 1:
            return (-a) % self.p
        return self.encode((-x) % self.p for x in self.decode(a))

    def mul(self, a: int, b: int) -> int:
        if self.d == 1:
            return (a * b) % self.p
        if a == 0 or b == 0:
            return 0
        return self._exp[(self._log[a] + self._log[b]) % (self.order - 1)]

    def inv(self, a: int) -> int:
        if a == 0:
            raise ZeroDivisionError("inverse of zero")
        if self.d == 1:
            return pow(a, self.p - 2, self.p)
        return self._exp[(-self._log[a]) % (self.order - 1)]

    def pow(self, a: int, e: int) -> int:
        if a == 0:
            if e < 0:
                raise ZeroDivisionError("inverse of zero")
            return 0 if e else 1
        if self.d == 1:
            return pow(a, e % (self.p - 1) if e else 0, self.p) if e else 1
        return self._exp[(self._log[a] * e) % (self.order - 1)]

    def from_int(self, n: int) -> int:
        """Image of the rational integer n in the prime field."""
        return n % self.p

    def random_element(self, rng) -> int:
        return rng.randrange(self.order)

    def random_nonzero(self, rng) -> int:
        return rng.randrange(1, self.order)

    # -- Frobenius ------------------------------------------------------

    def _check_f(self, f: int):
        if f < 1 or self.d % f != 0:
            raise ConfigurationError(f"f={f} does not divide extension degree d={self.d}")

    def frobenius(self, x: int, f: int = 1) -> int:
        """x -> x^q with q = p^f; f must divide d."""
        self._check_f(f)
        return self.pow(x, self.p ** f)

    def inv_frobenius(self, x: int, f: int = 1) -> int:
        """The unique z with z^q = x, namely x^(q^(d/f - 1))."""
        self._check_f(f)
        q = self.p ** f
        return self.pow(x, q ** (self.d // f - 1))

    def in_subfield(self, x: int, e: int) -> bool:
        """Whether x lies in the subfield F_{p^e} (e | d)."""
        return self.pow(x, self.p ** e) == x


# ---------------------------------------------------------------------------
# dense linear algebra over a FiniteField (small matrices; exact)
# ---------------------------------------------------------------------------


def row_reduce(field: FiniteField, rows):
    """Reduced row echelon form. Returns (rref rows, pivot column list)."""
    mat = [list(r) for r in rows]
    if not mat:
        return [], []
    ncols = len(mat[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = None
        for i in range(r, len(mat)):
            if mat[i][c] != 0:
                pivot = i
                break
        if pivot is None:
            continue
        mat[r], mat[pivot] = mat[pivot], mat[r]
        inv = field.inv(mat[r][c])
        mat[r] = [field.mul(inv, v) for v in mat[r]]
        for i in range(len(mat)):
            if i != r and mat[i][c] != 0:
                factor = mat[i][c]
                mat[i] = [field.sub(v, field.mul(factor, w)) for v, w in zip(mat[i], mat[r])]
        pivots.append(c)
        r += 1
        if r == len(mat):
            break
    return mat, pivots


def rank(field: FiniteField, rows) -> int:
    return len(row_reduce(field, rows)[1])


def kernel_basis(field: FiniteField, rows):
    """Basis of the right null space; rank + len(basis) == #columns."""
    if not rows:
        return []
    ncols = len(rows[0])
    rref, pivots = row_reduce(field, rows)
    pivot_set = set(pivots)
    free = [c for c in range(ncols) if c not in pivot_set]
    basis = []
    for fc in free:
        vec = [0] * ncols
        vec[fc] = 1
        for r, pc in enumerate(pivots):
            vec[pc] = field.neg(rref[r][fc])
        basis.append(vec)
    return basis


def solve(field: FiniteField, rows, rhs):
    """One solution of A x = rhs, or None if inconsistent."""
    if not rows:
        return None if any(v != 0 for v in rhs) else []
    aug = [list(r) + [b] for r, b in zip(rows, rhs)]
    rref, pivots = row_reduce(field, aug)
    ncols = len(rows[0])
    if ncols in pivots:
        return None
    x = [0] * ncols
    for r, pc in enumerate(pivots):
        x[pc] = rref[r][ncols]
    return x


def rank_mod_p(rows, p: int) -> int:
    """Rank over F_p of an integer matrix, vectorized with numpy."""
    import numpy as np

    a = np.array(rows, dtype=np.int64) % p
    if a.size == 0:
        return 0
    nrows, ncols = a.shape
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, nrows):
            if a[i, c]:
                piv = i
                break
        if piv is None:
            continue
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        a[r] = (a[r] * pow(int(a[r, c]), p - 2, p)) % p
        col = a[r + 1:, c]
        nz = col.nonzero()[0]
        if nz.size:
            a[r + 1 + nz] = (a[r + 1 + nz] - np.outer(col[nz], a[r])) % p
        r += 1
        if r == nrows:
            break
    return r


# ---------------------------------------------------------------------------
# truncated Witt / Galois ring GR(p^N, d)
# ---------------------------------------------------------------------------


class GaloisRing:
    """Z/p^N [x] / (lift of the F_{p^d} modulus): the length-N unramified
    Witt ring with residue field F_{p^d}.  Elements are tuples of d ints
    mod p^N."""

    def __init__(self, p: int, d: int, precision: int):
        if precision < 1:
            raise ConfigurationError("precision must be >= 1")
        self.p = p
        self.d = d
        self.precision = precision
        self.pn = p ** precision
        self.residue = FiniteField(p, d)
        self.modulus = self.residue.modulus  # small nonneg ints: canonical lift

    def __repr__(self):
        return f"GaloisRing(p={self.p}, d={self.d}, N={self.precision})"

    def zero(self):
        return (0,) * self.d

    def one(self):
        return (1,) + (0,) * (self.d - 1)

    def from_int(self, n: int):
        return (n % self.pn,) + (0,) * (self.d - 1)

    def add(self, a, b):
        return tuple((x + y) % self.pn for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple((x - y) % self.pn for x, y in zip(a, b))

    def neg(self, a):
        return tuple((-x) % self.pn for x in a)

    def mul(self, a, b):
        d, pn = self.d, self.pn
        prod = [0] * (2 * d - 1)
        for i, ai in enumerate(a):
            if ai:
                for j, bj in enumerate(b):
                    prod[i + j] = (prod[i + j] + ai * bj) % pn
        for i in range(2 * d - 2, d - 1, -1):
            c = prod[i]
            if c:
                prod[i] = 0
                for j in range(d):
                    prod[i - d + j] = (prod[i - d + j] - c * self.modulus[j]) % pn
        return tuple(prod[:d])

    def scalar_mul(self, n: int, a):
        return tuple((n * x) % self.pn for x in a)

    def pow(self, a, e: int):
        r = self.one()
        while e:
            if e & 1:
                r = self.mul(r, a)
            a = self.mul(a, a)
            e >>= 1
        return r

    def reduce(self, a) -> int:
        """Reduction mod p into the residue field (int-encoded)."""
        return self.residue.encode(x % self.p for x in a)

    def lift(self, x: int):
        """Canonical (coefficientwise) lift of a residue field element."""
        return tuple(self.residue.decode(x))

    def teichmuller(self, x: int):
        """The unique lift [x] with [x]^(p^d) = [x]; multiplicative."""
        if x == 0:
            return self.zero()
        z = self.lift(x)
        for _ in range(self.precision + 1):
            z = self.pow(z, self.p ** self.d)
        assert self.pow(z, self.p ** self.d) == z
        return z

    def divide_by_p(self, a):
        if any(x % self.p for x in a):
            raise ValueError("element not divisible by p")
        return tuple(x // self.p for x in a)

    def teichmuller_digits(self, a):
        """Digits (a_0,...,a_{N-1}) in F_{p^d} with a = sum p^j [a_j]."""
        digits = []
        z = a
        for j in range(self.precision):
            r = ring_reduce_at(self, z, j)
            digits.append(r)
            z = self.sub(z, self.scalar_mul(self.p ** j, self.teichmuller(r)))
        assert z == self.zero()
        return digits

    def frobenius(self, a):
        """Ring Frobenius: sum p^j [a_j] -> sum p^j [a_j^p]."""
        return self._twist(a, 1)

    def inv_frobenius(self, a):
        return self._twist(a, self.d - 1)

    def _twist(self, a, k):
        out = self.zero()
        for j, dig in enumerate(self.teichmuller_digits(a)):
            t = self.residue.pow(dig, self.p ** k) if dig else 0
            out = self.add(out, self.scalar_mul(self.p ** j, self.teichmuller(t)))
        return out

    def unit_valuation(self, a) -> int:
        """min p-valuation over coordinates (coordinates generate as module)."""
        v = self.precision
        for x in a:
            if x:
                w = 0
                while x % self.p == 0:
                    x //= self.p
                    w += 1
                v = min(v, w)
        return v


def ring_reduce_at(ring: GaloisRing, z, j: int) -> int:
    """Residue of p^-j z mod p (z assumed divisible by p^j)."""
    for _ in range(j):
        z = ring.divide_by_p(z)
    return ring.reduce(z)


# ---------------------------------------------------------------------------
# exact p-adic rational 2x2 matrices
# ---------------------------------------------------------------------------


def padic_val(x: Fraction, p: int):
    """p-adic valuation of a rational; +inf for 0."""
    if x == 0:
        return math.inf
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = x.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


class Mat2:
    """Exact 2x2 matrix with rational entries (p-power denominators in use)."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a, b, c, d):
        self.a = Fraction(a)
        self.b = Fraction(b)
        self.c = Fraction(c)
        self.d = Fraction(d)

    def __repr__(self):
        return f"Mat2({self.a}, {self.b}, {self.c}, {self.d})"

    def __eq__(self, other):
        return isinstance(other, Mat2) and (self.a, self.b, self.c, self.d) == (
            other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    @staticmethod
    def identity():
        return Mat2(1, 0, 0, 1)

    def __matmul__(self, other):
        return Mat2(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def det(self):
        return self.a * self.d - self.b * self.c

    def inv(self):
        dt = self.det()
        if dt == 0:
            raise ZeroDivisionError("singular matrix")
        return Mat2(self.d / dt, -self.b / dt, -self.c / dt, self.a / dt)

    def scale(self, s):
        s = Fraction(s)
        return Mat2(self.a * s, self.b * s, self.c * s, self.d * s)

    def entries(self):
        return (self.a, self.b, self.c, self.d)

    def is_integral(self, p: int) -> bool:
        return all(padic_val(x, p) >= 0 for x in self.entries())

    def is_unimodular(self, p: int) -> bool:
        return self.is_integral(p) and padic_val(self.det(), p) == 0

    def reduce_mod_p(self, p: int):
        """Entries mod p (entries must be p-integral): 4-tuple of ints."""
        out = []
        for x in self.entries():
            num, den = x.numerator, x.denominator
            if den % p == 0:
                raise ValueError("entry not p-integral")
            out.append(num * pow(den, p - 2, p) % p)
        return tuple(out)


def matrix_w(p: int) -> Mat2:
    """The parity-swapping involution [[0,1],[p,0]]."""
    return Mat2(0, 1, p, 0)


def matrix_alpha(p: int, n: int = 1) -> Mat2:
    """diag(1, p^n)."""
    return Mat2(1, 0, 0, Fraction(p) ** n)


def smith_decompose(m: Mat2, p: int):
    """Exact Smith decomposition over Z_p: m = u . diag(p^a, p^b) . v with
    a <= b and u, v unimodular over Z_p. Returns (u, (a, b), v)."""
    if m.det() == 0:
        raise ZeroDivisionError("singular matrix")
    work = Mat2(m.a, m.b, m.c, m.d)
    u_inv = Mat2.identity()   # accumulates row ops: work = u_inv_ops . m . ...
    v_inv = Mat2.identity()
    # u_ops . m . v_ops = work  =>  m = u_ops^-1 . work . v_ops^-1
    u_ops = Mat2.identity()
    v_ops = Mat2.identity()

    def val(x):
        return padic_val(x, p)

    # pivot: entry of minimal valuation to position (0,0)
    entries = [(val(work.a), 0, 0), (val(work.b), 0, 1),
               (val(work.c), 1, 0), (val(work.d), 1, 1)]
    _, pi, pj = min(entries, key=lambda t: (t[0], t[1], t[2]))
    if pi == 1:
        work = Mat2(work.c, work.d, work.a, work.b)
        u_ops = Mat2(0, 1, 1, 0) @ u_ops
    if pj == 1:
        work = Mat2(work.b, work.a, work.d, work.c)
        v_ops = v_ops @ Mat2(0, 1, 1, 0)
    # clear (1,0) and (0,1)
    f = work.c / work.a
    work = Mat2(work.a, work.b, work.c - f * work.a, work.d - f * work.b)
    u_ops = Mat2(1, 0, -f, 1) @ u_ops
    g = work.b / work.a
    work = Mat2(work.a, work.b - g * work.a, work.c, work.d - g * work.c)
    v_ops = v_ops @ Mat2(1, -g, 0, 1)
    a, b = val(work.a), val(work.d)
    # normalize diagonal units away
    ua = work.a / Fraction(p) ** a
    ub = work.d / Fraction(p) ** b
    u_ops = Mat2(1 / ua, 0, 0, 1 / ub) @ u_ops
    work = Mat2(Fraction(p) ** a, 0, 0, Fraction(p) ** b)
    assert a <= b
    u = u_ops.inv()
    v = v_ops.inv()
    assert u.is_unimodular(p) and v.is_unimodular(p)
    return u, (int(a), int(b)), v


def smith_valuations(m: Mat2, p: int):
    """Elementary-divisor valuations (a, b), a <= b, of an exact 2x2 matrix."""
    _, (a, b), _ = smith_decompose(m, p)
    return a, b
