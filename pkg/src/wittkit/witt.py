"""Witt algebras with Cartan-valued sparse elements.

W_m is spanned by t^alpha d_i for alpha in Z^m and 1 <= i <= m, with

    [t^alpha d_a, t^beta d_b] = t^(alpha+beta) ((d_a, beta) d_b - (d_b, alpha) d_a)

where d_a = sum_i a_i d_i ranges over the Cartan subalgebra h_m and
(d_a, beta) = sum_i a_i beta_i.  An element here is a sparse map from
exponents alpha to Cartan coefficients d_a, so a single stored term is
t^alpha d_a rather than a pile of t^alpha d_i monomials; the bracket
above then needs one pairing per pair of stored terms.

Supported variants:

  * wn          : all of W_n (m == n),
  * winf        : W_m with a distinguished first block of n < m
                  coordinates (a finite slice of W_infinity),
  * wnplus      : derivations of the polynomial ring C[t_1..t_n], i.e.
                  t^alpha d_i with alpha + eps_i >= 0 (so alpha may have
                  a single -1 entry, in the slot of its direction),
  * wnplusplus  : sum over alpha >= 0 of t^alpha h_n,
  * wnmu        : A_n d_mu, the rank-one module of multiples of
                  d_mu = mu_1 d_1 + ... + mu_n d_n.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .errors import ArityMismatch, BadArity, BadK, LengthMismatch
from .scalars import Scalar, ScalarField, format_polynomial, format_scalar

Exponent = Tuple[int, ...]

# Sentinel direction for basis pairs of the wnmu variant: the Cartan part
# is the d_mu line rather than a coordinate direction.
MU_DIRECTION = -1


class VariantKind(enum.Enum):
    WN = "wn"
    W_INF_TRUNC = "winf"
    WN_PLUS = "wnplus"
    WN_PLUS_PLUS = "wnplusplus"
    WN_MU = "wnmu"


@dataclass(frozen=True)
class AlgebraVariant:
    """Which algebra we are working in: kind plus ranks n <= m."""

    kind: VariantKind
    n: int
    m: int

    def __post_init__(self):
        if self.n < 1:
            raise BadArity(f"need n >= 1, got {self.n}")
        if self.kind is VariantKind.W_INF_TRUNC:
            if not self.n < self.m:
                raise BadArity(f"winf needs n < m, got n={self.n}, m={self.m}")
        elif self.n != self.m:
            raise BadArity(f"{self.kind.value} needs n == m, got n={self.n}, m={self.m}")

    @classmethod
    def wn(cls, n: int) -> "AlgebraVariant":
        return cls(VariantKind.WN, n, n)

    @classmethod
    def winf(cls, n: int, m: int) -> "AlgebraVariant":
        return cls(VariantKind.W_INF_TRUNC, n, m)

    @classmethod
    def wnplus(cls, n: int) -> "AlgebraVariant":
        return cls(VariantKind.WN_PLUS, n, n)

    @classmethod
    def wnplusplus(cls, n: int) -> "AlgebraVariant":
        return cls(VariantKind.WN_PLUS_PLUS, n, n)

    @classmethod
    def wnmu(cls, n: int) -> "AlgebraVariant":
        return cls(VariantKind.WN_MU, n, n)


class CartanElement:
    """Element of the Cartan subalgebra h_m: a coefficient per d_i."""

    __slots__ = ("coeffs", "_hash")

    def __init__(self, coeffs: Sequence[Scalar]):
        self.coeffs = tuple(coeffs)
        self._hash: Optional[int] = None

    @classmethod
    def zero(cls, m: int, arity: int) -> "CartanElement":
        z = Scalar.zero(arity)
        return cls((z,) * m)

    @classmethod
    def unit(cls, m: int, i: int, arity: int) -> "CartanElement":
        """d_i with 0-based index i."""
        z = Scalar.zero(arity)
        o = Scalar.one(arity)
        return cls(tuple(o if j == i else z for j in range(m)))

    @property
    def m(self) -> int:
        return len(self.coeffs)

    @property
    def is_zero(self) -> bool:
        return all(c.is_zero for c in self.coeffs)

    def _check(self, other: "CartanElement") -> None:
        if len(self.coeffs) != len(other.coeffs):
            raise LengthMismatch(f"Cartan lengths {len(self.coeffs)} != {len(other.coeffs)}")

    def __add__(self, other: "CartanElement") -> "CartanElement":
        self._check(other)
        return CartanElement(tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "CartanElement") -> "CartanElement":
        self._check(other)
        return CartanElement(tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __neg__(self) -> "CartanElement":
        return CartanElement(tuple(-a for a in self.coeffs))

    def scale(self, scalar: Scalar) -> "CartanElement":
        if scalar.is_zero:
            return CartanElement.zero(len(self.coeffs), scalar.arity)
        return CartanElement(tuple(scalar * a for a in self.coeffs))

    def pairing(self, beta: Exponent) -> Scalar:
        """(d_a, beta) = sum_i a_i beta_i."""
        if len(beta) != len(self.coeffs):
            raise LengthMismatch(f"exponent length {len(beta)} != Cartan length {len(self.coeffs)}")
        total = None
        for a, b in zip(self.coeffs, beta):
            if b == 0 or a.is_zero:
                continue
            piece = a * b
            total = piece if total is None else total + piece
        if total is None:
            return Scalar.zero(self.coeffs[0].arity)
        return total

    def lift(self, arity: int) -> "CartanElement":
        return CartanElement(tuple(c.lift(arity) for c in self.coeffs))

    def __eq__(self, other) -> bool:
        if not isinstance(other, CartanElement):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(self.coeffs)
        return self._hash

    def __repr__(self) -> str:
        return f"CartanElement({list(self.coeffs)!r})"


class WittElement:
    """Sparse element: exponent alpha -> Cartan coefficient, zero terms pruned."""

    __slots__ = ("m", "support", "_hash")

    def __init__(self, m: int, support: Dict[Exponent, CartanElement]):
        self.m = m
        pruned = {}
        for alpha, cartan in support.items():
            if len(alpha) != m:
                raise LengthMismatch(f"exponent length {len(alpha)} != {m}")
            if not cartan.is_zero:
                pruned[alpha] = cartan
        self.support = pruned
        self._hash: Optional[int] = None

    @classmethod
    def zero(cls, m: int) -> "WittElement":
        return cls(m, {})

    @property
    def is_zero(self) -> bool:
        return not self.support

    def _check(self, other: "WittElement") -> None:
        if self.m != other.m:
            raise LengthMismatch(f"element ranks {self.m} != {other.m}")

    def __add__(self, other: "WittElement") -> "WittElement":
        self._check(other)
        support = dict(self.support)
        for alpha, cartan in other.support.items():
            if alpha in support:
                support[alpha] = support[alpha] + cartan
            else:
                support[alpha] = cartan
        return WittElement(self.m, support)

    def __sub__(self, other: "WittElement") -> "WittElement":
        self._check(other)
        support = dict(self.support)
        for alpha, cartan in other.support.items():
            if alpha in support:
                support[alpha] = support[alpha] - cartan
            else:
                support[alpha] = -cartan
        return WittElement(self.m, support)

    def __neg__(self) -> "WittElement":
        return WittElement(self.m, {a: -c for a, c in self.support.items()})

    def scale(self, scalar: Scalar) -> "WittElement":
        if scalar.is_zero:
            return WittElement.zero(self.m)
        return WittElement(self.m, {a: c.scale(scalar) for a, c in self.support.items()})

    def translate(self, gamma: Exponent) -> "WittElement":
        """Multiply by the monomial t^gamma."""
        if len(gamma) != self.m:
            raise LengthMismatch(f"exponent length {len(gamma)} != {self.m}")
        return WittElement(
            self.m,
            {tuple(a + g for a, g in zip(alpha, gamma)): c for alpha, c in self.support.items()},
        )

    def lift(self, arity: int) -> "WittElement":
        return WittElement(self.m, {a: c.lift(arity) for a, c in self.support.items()})

    def coefficient(self, alpha: Exponent, i: int) -> Scalar:
        """Coefficient of t^alpha d_i (0-based i)."""
        cartan = self.support.get(tuple(alpha))
        if cartan is None:
            return Scalar.zero(self.scalar_arity())
        return cartan.coeffs[i]

    def scalar_arity(self) -> int:
        for cartan in self.support.values():
            return cartan.coeffs[0].arity
        return 0

    def __eq__(self, other) -> bool:
        if not isinstance(other, WittElement):
            return NotImplemented
        return self.m == other.m and self.support == other.support

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.m, frozenset(self.support.items())))
        return self._hash

    def __repr__(self) -> str:
        return f"WittElement({self.m}, {self.support!r})"


def bracket(x: WittElement, y: WittElement) -> WittElement:
    """[x, y] via the Cartan-valued product rule."""
    x._check(y)
    acc: Dict[Exponent, CartanElement] = {}
    for alpha, da in x.support.items():
        for beta, db in y.support.items():
            gamma = tuple(a + b for a, b in zip(alpha, beta))
            term = db.scale(da.pairing(beta)) - da.scale(db.pairing(alpha))
            if gamma in acc:
                acc[gamma] = acc[gamma] + term
            else:
                acc[gamma] = term
    return WittElement(x.m, acc)


def bracket_monomial_rule(x: WittElement, y: WittElement) -> WittElement:
    """Independent oracle for `bracket`, expanding into t^alpha d_i monomials.

    [t^alpha d_i, t^beta d_j] = beta_i t^(alpha+beta) d_j - alpha_j t^(alpha+beta) d_i.
    """
    x._check(y)
    m = x.m
    arity = max(x.scalar_arity(), y.scalar_arity(), 1)
    acc: Dict[Exponent, List[Scalar]] = {}

    def put(gamma: Exponent, j: int, value: Scalar):
        if value.is_zero:
            return
        row = acc.get(gamma)
        if row is None:
            row = [Scalar.zero(arity)] * m
            acc[gamma] = row
        row[j] = row[j] + value

    for alpha, da in x.support.items():
        for i in range(m):
            ca = da.coeffs[i]
            if ca.is_zero:
                continue
            for beta, db in y.support.items():
                gamma = tuple(a + b for a, b in zip(alpha, beta))
                for j in range(m):
                    cb = db.coeffs[j]
                    if cb.is_zero:
                        continue
                    coeff = ca * cb
                    if beta[i]:
                        put(gamma, j, coeff * beta[i])
                    if alpha[j]:
                        put(gamma, i, -(coeff * alpha[j]))
    return WittElement(m, {g: CartanElement(tuple(row)) for g, row in acc.items()})


def ad_apply(z: WittElement, x: WittElement) -> WittElement:
    return bracket(z, x)


def proportional(x: WittElement, y: WittElement) -> Optional[Scalar]:
    """Scalar lam with x == lam * y, if one exists (zero x gives lam = 0)."""
    x._check(y)
    if x.is_zero:
        return Scalar.zero(max(y.scalar_arity(), 1))
    if y.is_zero:
        return None
    alpha, cartan = next(iter(y.support.items()))
    pivot = next(c for c in cartan.coeffs if not c.is_zero)
    i = cartan.coeffs.index(pivot)
    lam = x.coefficient(alpha, i) / pivot
    if x == y.scale(lam):
        return lam
    return None


def widen_element(x: WittElement, m: int) -> WittElement:
    """Reinterpret a rank-n element inside rank m >= n, padding with zeros."""
    if m < x.m:
        raise BadArity(f"cannot widen rank {x.m} into rank {m}")
    if m == x.m:
        return x
    zero = Scalar.zero(max(x.scalar_arity(), 1))
    pad = (0,) * (m - x.m)
    support = {
        alpha + pad: CartanElement(tuple(cartan.coeffs) + (zero,) * (m - x.m))
        for alpha, cartan in x.support.items()
    }
    return WittElement(m, support)


# ----------------------------------------------------------------------
# Variant geometry: which basis pairs (alpha, direction) exist, and which
# of them fall inside the degree box |alpha_j| <= N.


def iter_box_exponents(variant: AlgebraVariant, box: int) -> Iterator[Exponent]:
    if box < 0:
        raise BadArity(f"negative box size {box}")
    m = variant.m
    if variant.kind in (VariantKind.WN, VariantKind.W_INF_TRUNC, VariantKind.WN_MU):
        yield from itertools.product(range(-box, box + 1), repeat=m)
    elif variant.kind is VariantKind.WN_PLUS_PLUS:
        yield from itertools.product(range(0, box + 1), repeat=m)
    elif variant.kind is VariantKind.WN_PLUS:
        # t^alpha d_i with alpha + eps_i >= 0: at most one entry equals -1
        if box >= 1:
            for i in range(m):
                for rest in itertools.product(range(0, box + 1), repeat=m - 1):
                    yield rest[:i] + (-1,) + rest[i:]
        yield from itertools.product(range(0, box + 1), repeat=m)
    else:  # pragma: no cover
        raise BadArity(f"unhandled variant {variant.kind}")


def iter_basis_pairs(variant: AlgebraVariant, box: int) -> Iterator[Tuple[Exponent, int]]:
    """Basis of the truncated variant: (exponent, direction) pairs.

    Direction is a 0-based coordinate index, or MU_DIRECTION for the
    wnmu variant whose Cartan parts all lie on the d_mu line.
    """
    m = variant.m
    for alpha in iter_box_exponents(variant, box):
        if variant.kind is VariantKind.WN_MU:
            yield (alpha, MU_DIRECTION)
        elif variant.kind is VariantKind.WN_PLUS and min(alpha) < 0:
            yield (alpha, alpha.index(-1))
        else:
            for i in range(m):
                yield (alpha, i)


def exponent_in_variant(variant: AlgebraVariant, alpha: Exponent) -> bool:
    if variant.kind in (VariantKind.WN, VariantKind.W_INF_TRUNC, VariantKind.WN_MU):
        return True
    if variant.kind is VariantKind.WN_PLUS_PLUS:
        return min(alpha) >= 0
    if variant.kind is VariantKind.WN_PLUS:
        # polynomial derivations: t^alpha d_i = t^(alpha+eps_i) (d/dt_i),
        # so a single -1 entry is allowed (in the active direction slot)
        return min(alpha) >= 0 or (min(alpha) == -1 and alpha.count(-1) == 1)
    raise BadArity(f"unhandled variant {variant.kind}")  # pragma: no cover


class WittAlgebra:
    """A variant together with its coefficient field."""

    def __init__(self, variant: AlgebraVariant, field: Optional[ScalarField] = None):
        self.variant = variant
        self.m = variant.m
        self.n = variant.n
        self.field = field if field is not None else ScalarField(variant.n)
        if self.field.n_mu < variant.n:
            raise ArityMismatch(
                f"field has {self.field.n_mu} mu parameters, variant needs {variant.n}"
            )

    # -- constructors ---------------------------------------------------

    def zero(self) -> WittElement:
        return WittElement.zero(self.m)

    def d(self, i: int) -> WittElement:
        """d_i, 1-based."""
        if not 1 <= i <= self.m:
            raise BadArity(f"direction {i} outside 1..{self.m}")
        zero = (0,) * self.m
        return WittElement(self.m, {zero: CartanElement.unit(self.m, i - 1, self.field.arity)})

    def monomial(self, alpha: Sequence[int], i: int, coeff: Optional[Scalar] = None) -> WittElement:
        """coeff * t^alpha d_i, 1-based i."""
        if not 1 <= i <= self.m:
            raise BadArity(f"direction {i} outside 1..{self.m}")
        cartan = CartanElement.unit(self.m, i - 1, self.field.arity)
        if coeff is not None:
            cartan = cartan.scale(coeff)
        return WittElement(self.m, {tuple(alpha): cartan})

    def dmu_cartan(self) -> CartanElement:
        coeffs = [self.field.mu(i + 1) if i < self.n else self.field.zero() for i in range(self.m)]
        return CartanElement(coeffs)

    def dmu(self) -> WittElement:
        """d_mu = mu_1 d_1 + ... + mu_n d_n."""
        return WittElement(self.m, {(0,) * self.m: self.dmu_cartan()})

    def power_sum_dmu(self, k: int) -> WittElement:
        """(t_1^k + ... + t_n^k) d_mu."""
        if k == 0:
            raise BadK("power sum needs k != 0")
        cartan = self.dmu_cartan()
        support = {}
        for i in range(self.n):
            alpha = tuple(k if j == i else 0 for j in range(self.m))
            support[alpha] = cartan
        return WittElement(self.m, support)

    def pair_element(self, alpha: Exponent, direction: int) -> WittElement:
        if direction == MU_DIRECTION:
            return WittElement(self.m, {tuple(alpha): self.dmu_cartan()})
        return self.monomial(alpha, direction + 1)

    # -- membership -------------------------------------------------------

    def member(self, x: WittElement) -> bool:
        if x.m != self.m:
            return False
        for alpha, cartan in x.support.items():
            if not exponent_in_variant(self.variant, alpha):
                return False
            if self.variant.kind is VariantKind.WN_PLUS and min(alpha) < 0:
                i = alpha.index(-1)
                if any(not c.is_zero for j, c in enumerate(cartan.coeffs) if j != i):
                    return False
            if self.variant.kind is VariantKind.WN_MU:
                if proportional(WittElement(self.m, {alpha: cartan}),
                                WittElement(self.m, {alpha: self.dmu_cartan()})) is None:
                    return False
        return True

    # -- random sampling ----------------------------------------------

    def random_element(self, rng: random.Random, box: int, max_terms: int = 3) -> WittElement:
        pairs = self._basis_pair_list(box)
        count = rng.randint(1, max_terms)
        chosen = rng.sample(pairs, min(count, len(pairs)))
        total = self.zero()
        for alpha, direction in chosen:
            coeff = Fraction(rng.choice([s for s in range(-9, 10) if s]), rng.randint(1, 4))
            total = total + self.pair_element(alpha, direction).scale(self.field.from_fraction(coeff))
        return total

    def _basis_pair_list(self, box: int) -> List[Tuple[Exponent, int]]:
        cache = getattr(self, "_pair_cache", None)
        if cache is None:
            cache = {}
            self._pair_cache = cache
        pairs = cache.get(box)
        if pairs is None:
            pairs = sorted(iter_basis_pairs(self.variant, box))
            cache[box] = pairs
        return pairs

    # -- formatting -----------------------------------------------------

    def format(self, x: WittElement) -> str:
        return format_element(x, self.field)

    def __repr__(self) -> str:
        return f"WittAlgebra({self.variant!r})"


# ----------------------------------------------------------------------
# Lie algebra laws, used by the fuzz command and the randomized tests.
# Each check returns None on success or a short description of the failure.


def check_antisymmetry(x: WittElement, y: WittElement) -> Optional[str]:
    if not (bracket(x, y) + bracket(y, x)).is_zero:
        return "[x,y] + [y,x] != 0"
    return None


def check_jacobi(x: WittElement, y: WittElement, z: WittElement) -> Optional[str]:
    total = bracket(x, bracket(y, z)) + bracket(y, bracket(z, x)) + bracket(z, bracket(x, y))
    if not total.is_zero:
        return "Jacobi identity fails"
    return None


def check_bilinearity(a: Scalar, b: Scalar, x: WittElement, y: WittElement,
                      z: WittElement) -> Optional[str]:
    lhs = bracket(x.scale(a) + y.scale(b), z)
    rhs = bracket(x, z).scale(a) + bracket(y, z).scale(b)
    if not (lhs - rhs).is_zero:
        return "[a*x + b*y, z] != a*[x,z] + b*[y,z]"
    return None


def check_closure(algebra: WittAlgebra, x: WittElement, y: WittElement) -> Optional[str]:
    if not algebra.member(bracket(x, y)):
        return "[x,y] leaves the variant"
    return None


def check_cartan_commutes(algebra: WittAlgebra, h1: CartanElement, h2: CartanElement) -> Optional[str]:
    zero = (0,) * algebra.m
    x = WittElement(algebra.m, {zero: h1})
    y = WittElement(algebra.m, {zero: h2})
    if not bracket(x, y).is_zero:
        return "[h1, h2] != 0 on the Cartan subalgebra"
    return None


def check_monomial_rule_agreement(x: WittElement, y: WittElement) -> Optional[str]:
    if bracket(x, y) != bracket_monomial_rule(x, y):
        return "Cartan-valued bracket disagrees with the monomial expansion"
    return None


# ----------------------------------------------------------------------
# Canonical text form.  Terms are sorted by (exponent, direction); each
# term is  [scalar*] t1^e1*...*d_i  with zero exponents dropped.  The
# output parses back to an equal element.


def _scalar_prefix(scalar: Scalar, names: Sequence[str]) -> Tuple[bool, str]:
    """(negative, body) where body omits the sign and a bare 1."""
    if scalar.den.is_constant() and len(scalar.num.terms) == 1:
        (_, coeff), = scalar.num.terms.items()
        negative = coeff < 0
        body_poly = scalar.num.scale(-1) if negative else scalar.num
        body = format_polynomial(body_poly, names)
        if body == "1":
            return negative, ""
        return negative, body
    return False, "(" + format_scalar(scalar, names) + ")"


def format_element(x: WittElement, field: ScalarField) -> str:
    if x.is_zero:
        return "0"
    names = field.names
    pieces = []
    for alpha in sorted(x.support):
        cartan = x.support[alpha]
        t_part = "*".join(
            f"t{j + 1}^{e}" if e != 1 else f"t{j + 1}"
            for j, e in enumerate(alpha)
            if e
        )
        for i, coeff in enumerate(cartan.coeffs):
            if coeff.is_zero:
                continue
            negative, prefix = _scalar_prefix(coeff, names)
            body = "*".join(p for p in (prefix, t_part, f"d{i + 1}") if p)
            if not pieces:
                pieces.append(("-" if negative else "") + body)
            else:
                pieces.append(("- " if negative else "+ ") + body)
    return " ".join(pieces)
