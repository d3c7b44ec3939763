"""Inner-derivation solving and the 2-local rigidity pipeline.

A 2-local derivation is only observable at desk scale as a finite probe
table x -> Delta(x).  The pipeline recovers one inner element a from the
two anchor probes d_mu and (t_1+...+t_n)d_mu, then tests every other
table entry against ad(a), allowing a per-probe correction drawn from
the anchors' common centralizer: a 2-local map may pick a different
inner element at every point, and any two valid picks differ by
something commuting with both anchors.  Over W_n that centralizer is
zero and the test degenerates to Delta(x) = [a, x] exactly.

The verify_lemma_* functions check the support arithmetic the rigidity
argument rests on.  Each free coefficient is adjoined to the scalar
field as an unknown, its bracket image is split into allowed-span and
out-of-span rows, and "the coefficient is forced to zero" becomes a
rank statement about the out-of-span linear forms.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .centralizer import TruncatedSpace, VerificationReport, lemma_4_1_families
from .errors import (
    ArityMismatch,
    BadArity,
    BadK,
    LengthMismatch,
    MissingProbe,
    PairOutsideBox,
    WittkitError,
)
from .linalg import ScalarMatrix, rank as matrix_rank, solve as matrix_solve
from .scalars import MuPolynomial, Scalar, ScalarField
from .witt import (
    AlgebraVariant,
    Exponent,
    WittAlgebra,
    WittElement,
    bracket,
    proportional,
)

ConstraintRow = Tuple[int, Exponent, int]


def _support_rows(w: WittElement) -> Iterator[Tuple[Exponent, int, Scalar]]:
    """Nonzero (exponent, 0-based direction, coefficient) triples of w."""
    for gamma, cartan in w.support.items():
        for j, coeff in enumerate(cartan.coeffs):
            if not coeff.is_zero:
                yield gamma, j, coeff


def _monomial_label(gamma: Exponent, j: int) -> str:
    parts = [f"t{i + 1}^{e}" if e != 1 else f"t{i + 1}" for i, e in enumerate(gamma) if e]
    parts.append(f"d{j + 1}")
    return "*".join(parts)


class PointwiseMap:
    """A candidate 2-local derivation, recorded as probe -> value pairs."""

    __slots__ = ("algebra", "pairs", "table")

    def __init__(self, algebra: WittAlgebra, pairs: Sequence[Tuple[WittElement, WittElement]]):
        self.algebra = algebra
        self.pairs: List[Tuple[WittElement, WittElement]] = []
        self.table: Dict[WittElement, WittElement] = {}
        for x, dx in pairs:
            if not algebra.member(x) or not algebra.member(dx):
                raise WittkitError(f"probe pair outside the variant: {algebra.format(x)}")
            previous = self.table.get(x)
            if previous is not None:
                if previous != dx:
                    raise WittkitError(f"probe {algebra.format(x)} listed with two values")
                continue
            self.pairs.append((x, dx))
            self.table[x] = dx

    @classmethod
    def from_inner(cls, algebra: WittAlgebra, a: WittElement,
                   probes: Sequence[WittElement]) -> "PointwiseMap":
        return cls(algebra, [(x, bracket(a, x)) for x in probes])

    def value_at(self, x: WittElement) -> Optional[WittElement]:
        return self.table.get(x)

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self) -> Iterator[Tuple[WittElement, WittElement]]:
        return iter(self.pairs)


class BoxLinearMap:
    """A linear map on a degree box, stored by its values on the basis."""

    __slots__ = ("space", "values")

    def __init__(self, space: TruncatedSpace, values: Sequence[WittElement]):
        if len(values) != len(space):
            raise LengthMismatch(f"{len(values)} values for a basis of {len(space)}")
        self.space = space
        self.values = list(values)

    @classmethod
    def ad(cls, space: TruncatedSpace, a: WittElement) -> "BoxLinearMap":
        return cls(space, [bracket(a, space.element(i)) for i in range(len(space))])

    @classmethod
    def identity(cls, space: TruncatedSpace) -> "BoxLinearMap":
        return cls(space, [space.element(i) for i in range(len(space))])

    def apply(self, x: WittElement) -> WittElement:
        """Evaluate on x; PairOutsideBox when x does not fit the box."""
        coords = self.space.coordinates_of(x)
        total = WittElement.zero(self.space.algebra.m)
        for i in sorted(coords):
            total = total + self.values[i].scale(coords[i])
        return total


@dataclass
class LeibnizReport:
    checked: int
    skipped: int
    failures: List[Tuple[WittElement, WittElement]]

    @property
    def passed(self) -> bool:
        return not self.failures


def leibniz_check(D: BoxLinearMap, pairs: Sequence[Tuple[WittElement, WittElement]]) -> LeibnizReport:
    """Test D([x,y]) = [D(x),y] + [x,D(y)] on each checkable pair.

    A pair is checkable when x, y and [x, y] all sit inside the box; a
    pair that exits the box is skipped, never failed, since the map is
    unknown there.
    """
    checked = 0
    skipped = 0
    failures: List[Tuple[WittElement, WittElement]] = []
    for x, y in pairs:
        try:
            lhs = D.apply(bracket(x, y))
            dx = D.apply(x)
            dy = D.apply(y)
        except PairOutsideBox:
            skipped += 1
            continue
        checked += 1
        if lhs != bracket(dx, y) + bracket(x, dy):
            failures.append((x, y))
    return LeibnizReport(checked, skipped, failures)


@dataclass
class InnerSolveResult:
    """Outcome of the stacked solve [a, x_q] = y_q over a in a box.

    Exactly one of solution and certificate is set.  The homogeneous
    part is the common centralizer of the x_q inside the box, so the
    full solution set is solution + span(homogeneous).  Certificate rows
    are (constraint index, exponent, 0-based direction, weight) and
    witness a row combination that annihilates every column but not the
    right-hand side.
    """

    space: TruncatedSpace
    solution: Optional[WittElement]
    homogeneous: List[WittElement]
    certificate: Optional[List[Tuple[ConstraintRow, Scalar]]]
    rank: int

    @property
    def consistent(self) -> bool:
        return self.solution is not None

    @property
    def solution_dimension(self) -> int:
        return len(self.homogeneous)


def solve_inner(algebra: WittAlgebra, constraints: Sequence[Tuple[WittElement, WittElement]],
                box: int) -> InnerSolveResult:
    """Find a in the box with [a, x_q] = y_q for every constraint pair.

    All constraints go into one stacked linear system; rows are indexed
    by (constraint, exponent, direction) so an inconsistency certificate
    names the offending monomials.  Bracket outputs are never truncated,
    so a solution commutes as required in the full algebra.
    """
    if not constraints:
        raise WittkitError("need at least one constraint")
    space = TruncatedSpace(algebra, box)
    triples: List[Tuple[ConstraintRow, int, Scalar]] = []
    rhs_entries: Dict[ConstraintRow, Scalar] = {}
    keys = set()
    for q, (x, y) in enumerate(constraints):
        if x.m != algebra.m or y.m != algebra.m:
            raise ArityMismatch(f"constraint {q} has rank {x.m}/{y.m}, ambient {algebra.m}")
        for col in range(len(space)):
            w = bracket(space.element(col), x)
            for gamma, j, coeff in _support_rows(w):
                key = (q, gamma, j)
                keys.add(key)
                triples.append((key, col, coeff))
        for gamma, j, coeff in _support_rows(y):
            key = (q, gamma, j)
            keys.add(key)
            rhs_entries[key] = coeff
    ordered = sorted(keys)
    row_of = {key: r for r, key in enumerate(ordered)}
    matrix = ScalarMatrix(len(ordered), len(space), algebra.field.arity)
    for key, col, coeff in triples:
        matrix.add(row_of[key], col, coeff)
    rhs = {row_of[key]: value for key, value in rhs_entries.items()}
    outcome = matrix_solve(matrix, rhs)
    if not outcome.consistent:
        witness = [(ordered[r], u) for r, u in sorted(outcome.certificate.items())]
        return InnerSolveResult(space, None, [], witness, outcome.rank)
    solution = space.element_from_vector(outcome.solution)
    homogeneous = [space.element_from_vector(v) for v in outcome.homogeneous]
    return InnerSolveResult(space, solution, homogeneous, None, outcome.rank)


def realize_in_span(algebra: WittAlgebra, span: Sequence[WittElement], x: WittElement,
                    target: WittElement) -> Optional[WittElement]:
    """An element b of the span with [b, x] = target, if one exists."""
    if target.is_zero:
        return algebra.zero()
    if not span:
        return None
    images = [bracket(b, x) for b in span]
    keys = set()
    for w in images:
        keys.update((gamma, j) for gamma, j, _ in _support_rows(w))
    keys.update((gamma, j) for gamma, j, _ in _support_rows(target))
    ordered = sorted(keys)
    row_of = {key: r for r, key in enumerate(ordered)}
    matrix = ScalarMatrix(len(ordered), len(span), algebra.field.arity)
    for col, w in enumerate(images):
        for gamma, j, coeff in _support_rows(w):
            matrix.add(row_of[(gamma, j)], col, coeff)
    rhs = {row_of[(gamma, j)]: coeff for gamma, j, coeff in _support_rows(target)}
    outcome = matrix_solve(matrix, rhs)
    if not outcome.consistent:
        return None
    b = algebra.zero()
    for col in sorted(outcome.solution):
        b = b + span[col].scale(outcome.solution[col])
    return b


@dataclass
class ResidualRecord:
    """One probe's leftover after subtracting ad(recovered_a)."""

    probe: WittElement
    value: WittElement
    residual: WittElement
    realizer: Optional[WittElement]

    @property
    def passed(self) -> bool:
        return self.realizer is not None


@dataclass
class RigidityReport:
    """Verdict of the pipeline on one probe table.

    verdict is "inner" (every residual is realizable inside the common
    centralizer of the anchors), "obstructed" (some residual is not), or
    "inconsistent" (no single a matches both anchors; certificate set).
    """

    verdict: str
    algebra: WittAlgebra
    box: int
    recovered_a: Optional[WittElement]
    common_centralizer: List[WittElement]
    residuals: List[ResidualRecord]
    certificate: Optional[List[Tuple[ConstraintRow, Scalar]]]

    @property
    def passed(self) -> bool:
        return self.verdict == "inner"

    def to_dict(self) -> Dict[str, object]:
        fmt = self.algebra.format
        out: Dict[str, object] = {
            "verdict": self.verdict,
            "variant": self.algebra.variant.kind.value,
            "box": self.box,
            "recovered_a": None if self.recovered_a is None else fmt(self.recovered_a),
            "common_centralizer": [fmt(e) for e in self.common_centralizer],
            "residuals": [
                {
                    "probe": fmt(rec.probe),
                    "value": fmt(rec.value),
                    "residual": fmt(rec.residual),
                    "realizer": None if rec.realizer is None else fmt(rec.realizer),
                    "pass": rec.passed,
                }
                for rec in self.residuals
            ],
            "certificate": None,
        }
        if self.certificate is not None:
            out["certificate"] = [
                {
                    "constraint": key[0],
                    "monomial": _monomial_label(key[1], key[2]),
                    "weight": self.algebra.field.format(u),
                }
                for key, u in self.certificate
            ]
        return out


def rigidity_pipeline(delta: PointwiseMap, box: int) -> RigidityReport:
    """Decide whether a probe table is consistent with one inner map.

    Stage one solves the stacked system [a, z] = Delta(z) over the two
    anchors z = d_mu and (t_1+...+t_n)d_mu.  Stage two forms the
    residual Delta(x) - [a, x] for every table entry and asks whether it
    is realizable as [b, x] with b in the anchors' common centralizer.
    """
    algebra = delta.algebra
    anchors = [algebra.dmu(), algebra.power_sum_dmu(1)]
    for z in anchors:
        if delta.value_at(z) is None:
            raise MissingProbe(f"probe table lacks a value at {algebra.format(z)}")
    stacked = [(z, delta.value_at(z)) for z in anchors]
    inner = solve_inner(algebra, stacked, box)
    if not inner.consistent:
        return RigidityReport("inconsistent", algebra, box, None, [], [], inner.certificate)
    a = inner.solution
    ambiguity = inner.homogeneous
    residuals: List[ResidualRecord] = []
    clean = True
    for x, dx in delta:
        r = dx - bracket(a, x)
        realizer = realize_in_span(algebra, ambiguity, x, r)
        if realizer is None:
            clean = False
        residuals.append(ResidualRecord(x, dx, r, realizer))
    verdict = "inner" if clean else "obstructed"
    return RigidityReport(verdict, algebra, box, a, ambiguity, residuals, None)


# ----------------------------------------------------------------------
# Symbolic forcing.  The lemma verifiers adjoin unknowns c1..cr to the
# field, bracket the unknown-weighted family against a fixed element,
# and read each resulting coefficient as a linear form in the unknowns.


def _linear_parts(value: Scalar, base_arity: int) -> Dict[int, Scalar]:
    """Split a scalar linear in the trailing unknowns into base parts.

    Returns {slot: coefficient} over the base field, slot counting from
    base_arity; slot -1 holds the unknown-free part.
    """
    for mono in value.den.terms:
        if any(mono[base_arity:]):
            raise WittkitError("denominator mixes in auxiliary unknowns")
    den_base = value.den.restrict(base_arity)
    groups: Dict[int, Dict[Tuple[int, ...], object]] = {}
    for mono, coeff in value.num.terms.items():
        tail = mono[base_arity:]
        if sum(tail) > 1:
            raise WittkitError("coefficient is not linear in the unknowns")
        slot = -1
        for offset, e in enumerate(tail):
            if e:
                slot = base_arity + offset
        groups.setdefault(slot, {})[mono[:base_arity]] = coeff
    return {
        slot: Scalar(MuPolynomial(base_arity, terms), den_base)
        for slot, terms in groups.items()
    }


def _forcing_rank(coefficients: Sequence[Scalar], base_arity: int, unknowns: int) -> int:
    """Rank of the given linear forms in the trailing unknown slots."""
    matrix = ScalarMatrix(len(coefficients), unknowns, base_arity)
    for r, value in enumerate(coefficients):
        parts = _linear_parts(value, base_arity)
        constant = parts.pop(-1, None)
        if constant is not None and not constant.is_zero:
            raise WittkitError("out-of-span coefficient has an unknown-free part")
        for slot, coeff in parts.items():
            matrix.add(r, slot - base_arity, coeff)
    return matrix_rank(matrix)


def _dmu_coefficient(algebra: WittAlgebra, w: WittElement, gamma: Exponent) -> Scalar:
    """The scalar lam with w's part at t^gamma equal to lam * t^gamma d_mu."""
    cartan = w.support.get(gamma)
    if cartan is None:
        return algebra.field.zero()
    lam = proportional(
        WittElement(algebra.m, {gamma: cartan}),
        WittElement(algebra.m, {gamma: algebra.dmu_cartan()}),
    )
    if lam is None:
        raise WittkitError(f"part at {gamma} is not a multiple of d_mu")
    return lam


# ----------------------------------------------------------------------
# Lemma verifiers.


def verify_lemma_3_2(x: WittElement, box: int = 2) -> VerificationReport:
    """Cartan ambiguity maps x into its own support span.

    The solution space of [a, d_mu] = 0 inside the box must be exactly
    the Cartan subalgebra; then [h, x] for symbolic h = h1 d1 + ... +
    hn dn must stay inside sum over alpha in S(x) of C t^alpha d_alpha,
    with eigenvalue (h, alpha) on each support exponent.
    """
    if x.is_zero:
        raise WittkitError("x must be nonzero")
    n = x.m
    algebra = WittAlgebra(AlgebraVariant.wn(n))
    if x.scalar_arity() != algebra.field.arity:
        raise ArityMismatch("x must be written over the plain mu field")
    inner = solve_inner(algebra, [(algebra.dmu(), algebra.zero())], box)
    cartan_basis = [algebra.d(i) for i in range(1, n + 1)]
    solution_is_cartan = (
        inner.consistent
        and inner.solution.is_zero
        and inner.homogeneous == cartan_basis
    )
    ext = algebra.field.extend(*[f"h{i}" for i in range(1, n + 1)])
    ext_algebra = WittAlgebra(AlgebraVariant.wn(n), ext)
    h = ext_algebra.zero()
    for i in range(1, n + 1):
        h = h + ext_algebra.d(i).scale(ext.var(f"h{i}"))
    x_ext = x.lift(ext.arity)
    image = bracket(h, x_ext)
    inside = True
    eigenvalues: Dict[str, str] = {}
    for gamma, cartan in image.support.items():
        part = WittElement(x.m, {gamma: cartan})
        target = WittElement(x.m, {gamma: x_ext.support[gamma]}) if gamma in x_ext.support else None
        lam = None if target is None else proportional(part, target)
        if lam is None:
            inside = False
            break
        expected = ext.zero()
        for i, e in enumerate(gamma):
            if e:
                expected = expected + ext.var(f"h{i + 1}") * e
        if lam != expected:
            inside = False
            break
        label = _monomial_label(gamma, 0).rsplit("*", 1)[0] if any(gamma) else "1"
        eigenvalues[label] = ext.format(lam)
    passed = solution_is_cartan and inside
    data: Dict[str, object] = {
        "solution_dimension": inner.solution_dimension,
        "solution_is_cartan": solution_is_cartan,
        "image_in_support_span": inside,
        "eigenvalues": eigenvalues,
    }
    return VerificationReport(
        "3.2", {"n": n, "x": algebra.format(x), "box": box}, passed, data)


@dataclass
class ObstructionData:
    """Bracket [c*(t_1+...+t_n)d_mu, (t_1^k+...+t_n^k)d_mu] with symbolic c.

    probe_coefficient is read off the single product
    [c t_1 d_mu, t_1^k d_mu] and equals c(k-1)mu_1 for every k; the full
    bracket's coefficient at (k+1)e_1 agrees except at k = -1, where the
    diagonal products of every direction collide at exponent zero.
    """

    algebra: WittAlgebra
    k: int
    exponent: Exponent
    image: WittElement
    probe_coefficient: Scalar
    coefficient: Scalar


def lemma_3_3_obstruction(n: int, k: int) -> ObstructionData:
    if k == 0:
        raise BadK("k must be nonzero")
    ext = ScalarField(n, ("c",))
    algebra = WittAlgebra(AlgebraVariant.wn(n), ext)
    c = ext.var("c")
    a = algebra.power_sum_dmu(1).scale(c)
    z = algebra.power_sum_dmu(k)
    image = bracket(a, z)
    e1 = tuple(1 if i == 0 else 0 for i in range(n))
    ke1 = tuple(k if i == 0 else 0 for i in range(n))
    gamma = tuple(k + 1 if i == 0 else 0 for i in range(n))
    pair = bracket(algebra.dmu().translate(e1).scale(c), algebra.dmu().translate(ke1))
    return ObstructionData(
        algebra,
        k,
        gamma,
        image,
        _dmu_coefficient(algebra, pair, gamma),
        _dmu_coefficient(algebra, image, gamma),
    )


def verify_lemma_3_3(n: int, k: int) -> VerificationReport:
    """The degree-(k+1) obstruction forces the shift coefficient to zero.

    [c(t_1+...+t_n)d_mu, (t_1^k+...+t_n^k)d_mu] carries the coefficient
    c(k-1)mu_1 on t_1^{k+1} d_mu, nonzero for k outside {0, 1}, and its
    support avoids every t_i^k d_mu, so membership in the power-sum span
    pins c = 0.  At k = -1 the full bracket collects the collided value
    c(k-1)(mu_1+...+mu_n) at exponent zero while the defining product
    still shows c(k-1)mu_1.
    """
    if k in (0, 1):
        raise BadK("k must avoid 0 and 1")
    data = lemma_3_3_obstruction(n, k)
    ext = data.algebra.field
    c = ext.var("c")
    expected = c * (k - 1) * ext.mu(1)
    if k == -1:
        full_expected = sum((ext.mu(i) for i in range(2, n + 1)), ext.mu(1)) * c * (k - 1)
    else:
        full_expected = expected
    span = {tuple(k if j == i else 0 for j in range(n)) for i in range(n)}
    support_disjoint = not (set(data.image.support) & span)
    coefficients = [coeff for _, _, coeff in _support_rows(data.image)]
    forcing_rank = _forcing_rank(coefficients, n, 1)
    passed = (
        support_disjoint
        and not data.probe_coefficient.is_zero
        and data.probe_coefficient == expected
        and data.coefficient == full_expected
        and forcing_rank == 1
    )
    report_data: Dict[str, object] = {
        "coefficient": ext.format(data.probe_coefficient),
        "expected": ext.format(expected),
        "full_coefficient": ext.format(data.coefficient),
        "obstruction_exponent": list(data.exponent),
        "support_disjoint": support_disjoint,
        "forcing_rank": forcing_rank,
        "forced_zero": ["c"] if forcing_rank == 1 else [],
    }
    return VerificationReport("3.3", {"n": n, "k": k}, passed, report_data)


def verify_lemma_3_4(x: WittElement, n: int) -> VerificationReport:
    """High power-sum probes push x's image out of every bounded box.

    With n_x = 1 + max exponent magnitude of x and k = 2n_x + 1, every
    term of [c(t_1^k+...+t_n^k)d_mu, x] has some exponent entry of
    magnitude above n_x, hence sits outside the support span of x, and
    the symbolic coefficient c is forced to zero by rank.
    """
    if x.is_zero:
        raise WittkitError("x must be nonzero")
    if x.m != n:
        raise ArityMismatch(f"element rank {x.m} != n = {n}")
    algebra = WittAlgebra(AlgebraVariant.wn(n))
    if x.scalar_arity() != algebra.field.arity:
        raise ArityMismatch("x must be written over the plain mu field")
    n_x = 1 + max(abs(e) for alpha in x.support for e in alpha)
    k = 2 * n_x + 1
    ext = algebra.field.extend("c")
    ext_algebra = WittAlgebra(AlgebraVariant.wn(n), ext)
    a = ext_algebra.power_sum_dmu(k).scale(ext.var("c"))
    image = bracket(a, x.lift(ext.arity))
    violating = None
    for gamma in sorted(image.support):
        if max(abs(e) for e in gamma) <= n_x:
            violating = gamma
            break
    coefficients = [coeff for _, _, coeff in _support_rows(image)]
    forcing_rank = _forcing_rank(coefficients, n, 1)
    disjoint = not (set(image.support) & set(x.support))
    passed = violating is None and disjoint and forcing_rank == 1
    witness = max(image.support, key=lambda g: (max(abs(e) for e in g), g), default=None)
    data: Dict[str, object] = {
        "n_x": n_x,
        "k": k,
        "exponent_bound_holds": violating is None,
        "forcing_rank": forcing_rank,
        "forced_zero": ["c"] if forcing_rank == 1 else [],
    }
    if witness is not None:
        data["witness_exponent"] = list(witness)
    if violating is not None:
        data["violating_exponent"] = list(violating)
    return VerificationReport(
        "3.4", {"n": n, "x": algebra.format(x), "n_x": n_x, "k": k}, passed, data)


def verify_lemma_4_3(n: int, m: int, k: int, box: int = 2) -> VerificationReport:
    """Shift coefficients of the degree-one centralizer die against power k.

    a ranges over the box part of the (t_1+...+t_n)d_mu centralizer:
    shifts c_beta t^beta (t_1+...+t_n)d_mu plus the t^beta h' family.
    The h' family brackets to zero against (t_1^k+...+t_n^k)d_mu; each
    shift contributes the obstruction c_beta(k-1)mu_1 at (k+1)e_1+beta,
    outside the allowed span over t^{k e_i + beta} d_mu, so every c_beta
    is forced to zero.
    """
    if k in (0, 1):
        raise BadK("k must avoid 0 and 1")
    if not n < m:
        raise BadArity(f"need n < m, got n={n}, m={m}")
    if box < 1:
        raise BadArity("box must cover the degree-one shift family")
    base = WittAlgebra(AlgebraVariant.winf(n, m))
    shifts, h_family = lemma_4_1_families(base, 1, box)
    names = [f"c{i}" for i in range(1, len(shifts) + 1)]
    ext = base.field.extend(*names)
    ext_algebra = WittAlgebra(AlgebraVariant.winf(n, m), ext)
    a = ext_algebra.zero()
    for name, (beta, _) in zip(names, shifts):
        a = a + ext_algebra.power_sum_dmu(1).translate(beta).scale(ext.var(name))
    z = ext_algebra.power_sum_dmu(k)
    image = bracket(a, z)

    def allowed(gamma: Exponent) -> bool:
        head = gamma[:n]
        return any(head == tuple(k if j == i else 0 for j in range(n)) for i in range(n))

    support_disjoint = not any(allowed(gamma) for gamma in image.support)
    coefficients = [coeff for _, _, coeff in _support_rows(image)]
    forcing_rank = _forcing_rank(coefficients, n, len(shifts))
    obstructions = []
    coefficients_ok = True
    e1 = tuple(1 if i == 0 else 0 for i in range(m))
    ke1 = tuple(k if i == 0 else 0 for i in range(m))
    mu_sum = sum((ext.mu(i) for i in range(2, n + 1)), ext.mu(1))
    for name, (beta, _) in zip(names, shifts):
        c = ext.var(name)
        gamma = tuple(b + (k + 1 if i == 0 else 0) for i, b in enumerate(beta))
        full = _dmu_coefficient(ext_algebra, image, gamma)
        shifted_e1 = tuple(b + e for b, e in zip(beta, e1))
        pair = bracket(
            ext_algebra.dmu().translate(shifted_e1).scale(c),
            ext_algebra.dmu().translate(ke1),
        )
        probe = _dmu_coefficient(ext_algebra, pair, gamma)
        expected = c * (k - 1) * ext.mu(1)
        full_expected = c * (k - 1) * mu_sum if k == -1 else expected
        if probe != expected or full != full_expected:
            coefficients_ok = False
        obstructions.append({
            "beta": list(beta),
            "coefficient": ext.format(probe),
            "full_coefficient": ext.format(full),
        })
    h_part_zero = all(
        bracket(e, base.power_sum_dmu(k)).is_zero for _, _, e in h_family)
    passed = (
        support_disjoint
        and coefficients_ok
        and h_part_zero
        and forcing_rank == len(shifts)
    )
    data: Dict[str, object] = {
        "shifts": len(shifts),
        "support_disjoint": support_disjoint,
        "forcing_rank": forcing_rank,
        "h_part_zero": h_part_zero,
        "obstructions": obstructions,
        "forced_zero": names if forcing_rank == len(shifts) else [],
    }
    return VerificationReport("4.3", {"n": n, "m": m, "k": k, "box": box}, passed, data)


def verify_lemma_4_4(x: WittElement, n: int, m: int,
                     box: Optional[int] = None) -> VerificationReport:
    """The power-2n_x+1 centralizer maps the first-n slice out of bounds.

    x must live in the first-n slice of the rank-m algebra.  a ranges
    over shifts c_beta t^beta (t_1^k+...+t_n^k)d_mu with k = 2n_x + 1
    plus the t^beta h' family; the h' family kills x outright, and every
    shift term lands at a first-n exponent entry of magnitude above n_x,
    so the allowed span over t^{alpha+beta} d_alpha forces all c_beta to
    zero.  Shift tails beta default to the cube of radius k.
    """
    if x.is_zero:
        raise WittkitError("x must be nonzero")
    if not n < m:
        raise BadArity(f"need n < m, got n={n}, m={m}")
    if x.m != m:
        raise ArityMismatch(f"element rank {x.m} != ambient {m}")
    for alpha, cartan in x.support.items():
        if any(alpha[n:]) or any(not c.is_zero for c in cartan.coeffs[n:]):
            raise BadArity("x must lie in the first-n slice")
    base = WittAlgebra(AlgebraVariant.winf(n, m))
    if x.scalar_arity() != base.field.arity:
        raise ArityMismatch("x must be written over the plain mu field")
    n_x = 1 + max(abs(e) for alpha in x.support for e in alpha[:n])
    k = 2 * n_x + 1
    a_box = k if box is None else box
    shifts, h_family = lemma_4_1_families(base, k, a_box)
    names = [f"c{i}" for i in range(1, len(shifts) + 1)]
    ext = base.field.extend(*names)
    ext_algebra = WittAlgebra(AlgebraVariant.winf(n, m), ext)
    a = ext_algebra.zero()
    for name, (beta, _) in zip(names, shifts):
        a = a + ext_algebra.power_sum_dmu(k).translate(beta).scale(ext.var(name))
    image = bracket(a, x.lift(ext.arity))
    violating = None
    for gamma in sorted(image.support):
        if max(abs(e) for e in gamma[:n]) <= n_x:
            violating = gamma
            break
    coefficients = [coeff for _, _, coeff in _support_rows(image)]
    forcing_rank = _forcing_rank(coefficients, n, len(shifts))
    h_part_zero = all(bracket(e, x).is_zero for _, _, e in h_family)
    passed = violating is None and h_part_zero and forcing_rank == len(shifts)
    data: Dict[str, object] = {
        "n_x": n_x,
        "k": k,
        "shifts": len(shifts),
        "exponent_bound_holds": violating is None,
        "forcing_rank": forcing_rank,
        "h_part_zero": h_part_zero,
        "forced_zero": names if forcing_rank == len(shifts) else [],
    }
    if violating is not None:
        data["violating_exponent"] = list(violating)
    return VerificationReport(
        "4.4", {"n": n, "m": m, "x": base.format(x), "n_x": n_x, "k": k, "box": a_box},
        passed, data)
