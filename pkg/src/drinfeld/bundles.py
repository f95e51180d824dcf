"""Classification calculus for the equivariant line bundles on the semistable
model: quadruple data (character, r, k0, k1), weight and type, the generator
order table solved from the divisor-degree systems, positivity classes and
vanishing predictions.

Orders are indexed by the two standard vertices: k0 = ord at the parity-0
vertex, k1 = ord at the parity-1 vertex.  Character twists never change
orders; they are carried as (t mod q-1, a) metadata.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import FiniteField

GENERATOR_NAMES = ("omega0", "omega1", "l0", "l1", "omega_log")


@dataclass(frozen=True)
class Character:
    """Smooth character data: exponent t on units through det, value a on
    squares of the uniformizer.  a is an element of F_{q^m}, int-encoded."""

    t: int
    a: int
    q: int
    field: FiniteField

    def __post_init__(self):
        object.__setattr__(self, "t", self.t % (self.q - 1))
        if self.a == 0:
            raise ValueError("character value a must be nonzero")

    def compose(self, other: "Character") -> "Character":
        assert self.q == other.q and self.field == other.field
        return Character(self.t + other.t, self.field.mul(self.a, other.a),
                         self.q, self.field)

    def power(self, e: int) -> "Character":
        return Character(self.t * e, self.field.pow(self.a, e), self.q, self.field)


def trivial_character(q: int, field: FiniteField | None = None) -> Character:
    field = field or FiniteField(_char_of(q))
    return Character(0, 1, q, field)


def legendre_character(q: int, field: FiniteField | None = None) -> Character:
    """Quadratic character through the residue field; trivial on squares of
    the uniformizer."""
    field = field or FiniteField(_char_of(q))
    return Character((q - 1) // 2, 1, q, field)


def _char_of(q: int) -> int:
    for p in range(2, q + 1):
        n = q
        while n % p == 0:
            n //= p
        if n == 1:
            return p
    raise ValueError(f"q={q} is not a prime power")


def solve_order_systems(q: int) -> dict[str, tuple[int, int]]:
    """Solve the 2x2 integer systems coming from the vanishing-divisor
    degrees (q+1 rational points for the linear isogeny map, q^2+1 quadratic
    points for the Frobenius-twisted one) and the torsion-bundle inversion
    relation; returns orders (k0, k1) for each generator."""
    if q < 3:
        raise ValueError("q must be >= 3")

    def solve2(a11, a12, b1, a21, a22, b2):
        det = a11 * a22 - a12 * a21
        if det == 0:
            raise ArithmeticError("singular order system")
        x = Fraction(b1 * a22 - b2 * a12, det)
        y = Fraction(a11 * b2 - a21 * b1, det)
        assert x.denominator == 1 and y.denominator == 1
        return int(x), int(y)

    # at the parity-0 vertex the degree-0 graded piece is critical:
    #   -ord(omega0) + ord(omega1)   = q + 1
    #   -ord(omega0) + q ord(omega1) = q^2 + 1
    w0_s0, w1_s0 = solve2(-1, 1, q + 1, -1, q, q * q + 1)
    # at the parity-1 vertex the roles of the two pieces swap
    w1_s1, w0_s1 = solve2(-1, 1, q + 1, -1, q, q * q + 1)
    # torsion bundles: ord_{s_j}(l_i) = -ord_{s_j}(l_{i+1}) and
    # ord_{s_i}(l_i) - q ord_{s_i}(l_{i+1}) = q + 1
    l0_s0, l1_s0 = solve2(1, 1, 0, 1, -q, q + 1)
    l1_s1, l0_s1 = solve2(1, 1, 0, 1, -q, q + 1)
    table = {
        "omega0": (w0_s0, w0_s1),
        "omega1": (w1_s0, w1_s1),
        "l0": (l0_s0, l0_s1),
        "l1": (l1_s0, l1_s1),
    }
    table["omega_log"] = (table["omega0"][0] + table["omega1"][0],
                          table["omega0"][1] + table["omega1"][1])
    return table


def closed_form_orders(q: int) -> dict[str, tuple[int, int]]:
    return {
        "omega0": (-1, q),
        "omega1": (q, -1),
        "l0": (1, -1),
        "l1": (-1, 1),
        "omega_log": (q - 1, q - 1),
    }


# r-normalization of the generators: omega0 and l0 are pinned to the trivial
# character; the others inherit theirs through the tensor relations
#   omega1 = omega0 (x) l0^{q+1} (legendre),  l1 = l0^{-1} (legendre),
#   omega_log = omega0 (x) omega1.
def _generator_characters(q: int, field: FiniteField):
    leg = legendre_character(q, field)
    triv = trivial_character(q, field)
    return {
        "omega0": triv,
        "omega1": leg,
        "l0": triv,
        "l1": leg,
        "omega_log": leg,
    }


@dataclass(frozen=True)
class BundleClass:
    """Equivariant line bundle on the special fiber: (chi, r, k0, k1) with
    q-1 dividing k0+k1; k_i is the order at the standard parity-i vertex."""

    q: int
    chi: Character
    r: int
    k0: int
    k1: int

    def __post_init__(self):
        if (self.k0 + self.k1) % (self.q - 1) != 0:
            raise ValueError(
                f"(k0+k1)=({self.k0}+{self.k1}) must be divisible by q-1={self.q - 1}")
        object.__setattr__(self, "r", self.r % (self.q - 1))

    @property
    def orders(self) -> tuple[int, int]:
        return (self.k0, self.k1)

    def weight(self) -> int:
        return -(self.k0 + self.k1) // (self.q - 1)

    def type_of(self, i: int, j: int) -> int:
        """ord at vertex j plus (ord of the i-th cotangent generator at j)
        times the weight."""
        table = closed_form_orders(self.q)
        kj = (self.k0, self.k1)[j]
        wi = table[f"omega{i}"][j]
        return kj + wi * self.weight()

    def decompose(self, i: int, j: int):
        """Unique expression through the generators: returns (e, t, chi) with
        the bundle equal to omega_i^e (x) l_j^t (chi); e = -weight and t is
        the (i, j)-type."""
        e = -self.weight()
        t = self.type_of(i, j)
        word = GeneratorWord(self.q, self.chi.field,
                             exponents=_exps(i, j, e, t),
                             chi=trivial_character(self.q, self.chi.field))
        base = word.evaluate()
        # total det-exponent difference lands in the residual character
        resid_t = (self.r + self.chi.t) - (base.r + base.chi.t)
        resid_a = self.chi.field.mul(self.chi.a, self.chi.field.inv(base.chi.a))
        return e, t, Character(resid_t, resid_a, self.q, self.chi.field)

    def positivity_class(self) -> str:
        if self.k0 >= 0 and self.k1 >= 0:
            return "positive"
        if self.k0 < 0 and self.k1 < 0:
            return "negative"
        return "mixed"

    def predict_vanishing(self) -> str:
        """Vanishing prediction for the cohomology of the formal model.

        The boundary stratum min(k)= -1 <= max(k) is where the blanket
        h1-vanishing statement disagrees with the explicit filtration at
        (-1,-1); it is reported as indeterminate and excluded from exact
        claims.
        """
        k0, k1, q = self.k0, self.k1, self.q
        if min(k0, k1) == -1 and max(k0, k1) >= -1:
            return "indeterminate"
        if k0 < 0 and k1 < 0:
            return "H0_zero"
        if k0 >= 0 and k1 >= 0:
            return "H1_zero"
        if (0 <= k0 <= q and k1 < 0) or (0 <= k1 <= q and k0 < 0):
            return "H0_zero"
        return "none"

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "chi": {"t": self.chi.t, "a": self.chi.a},
            "r": self.r,
            "k0": self.k0,
            "k1": self.k1,
            "weight": self.weight(),
            "types": {f"t{i}{j}": self.type_of(i, j) for i in (0, 1) for j in (0, 1)},
            "positivity": self.positivity_class(),
            "vanishing_prediction": self.predict_vanishing(),
        }


def _exps(i, j, e_omega, e_l):
    exps = {name: 0 for name in GENERATOR_NAMES}
    exps[f"omega{i}"] = e_omega
    exps[f"l{j}"] = e_l
    return exps


@dataclass(frozen=True)
class GeneratorWord:
    """Formal tensor word in the five generator bundles plus a character."""

    q: int
    field: FiniteField
    exponents: dict
    chi: Character

    def evaluate(self) -> BundleClass:
        table = closed_form_orders(self.q)
        chars = _generator_characters(self.q, self.field)
        k0 = sum(self.exponents.get(n, 0) * table[n][0] for n in GENERATOR_NAMES)
        k1 = sum(self.exponents.get(n, 0) * table[n][1] for n in GENERATOR_NAMES)
        chi = self.chi
        for n in GENERATOR_NAMES:
            e = self.exponents.get(n, 0)
            if e:
                chi = chi.compose(chars[n].power(e))
        # the det-exponent slot r and the character exponent t share one
        # Z/(q-1): generator words carry it entirely inside chi
        return BundleClass(self.q, Character(0, chi.a, self.q, self.field),
                           chi.t, k0, k1)

    def orders(self) -> tuple[int, int]:
        b = self.evaluate()
        return (b.k0, b.k1)

    def compose(self, other: "GeneratorWord") -> "GeneratorWord":
        exps = {n: self.exponents.get(n, 0) + other.exponents.get(n, 0)
                for n in GENERATOR_NAMES}
        return GeneratorWord(self.q, self.field, exps, self.chi.compose(other.chi))


def generator_word(q: int, field: FiniteField | None = None,
                   chi: Character | None = None, **exps) -> GeneratorWord:
    field = field or FiniteField(_char_of(q))
    chi = chi or trivial_character(q, field)
    exponents = {name: 0 for name in GENERATOR_NAMES}
    for name, e in exps.items():
        if name not in exponents:
            raise KeyError(f"unknown generator {name}")
        exponents[name] = e
    return GeneratorWord(q, field, exponents, chi)
