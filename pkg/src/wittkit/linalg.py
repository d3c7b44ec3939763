"""Exact sparse linear algebra over the scalar field.

Everything here is exact: kernels, ranks and solutions are computed with
rational-function arithmetic, never floating point.  Two elimination
modes share one pivoting rule (structurally sparsest column first, then
the entry with the fewest polynomial terms, ties broken by smallest
(row, column) position):

  * small connected components are reduced by fraction-field
    Gauss-Jordan elimination on Scalar entries;
  * large components are reduced fraction-free: rows are cleared of
    denominators, updates are cross-multiplications, and every updated
    row is stripped of its rational and polynomial content.

Mode choice cannot affect answers because results are funneled through a
final reduced-row-echelon pass with leftmost pivots, whose output is the
unique RREF of the row space.  Kernel bases read off from the RREF are
therefore canonical: one vector per free column, carrying a unit there,
ordered by free column index.

Inconsistent systems come back with a certificate: a left combination u
of the original rows with u A = 0 but u . b != 0.

Specializing the mu parameters at a rational point can only lower the
rank, so `rank(specialize(A, point))` is a certified lower bound for the
generic rank; callers combine it with explicitly verified kernel members
to pin kernels exactly without symbolic elimination.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import LengthMismatch
from .scalars import MuPolynomial, Scalar, _frac_gcd, poly_gcd

KernelVector = Dict[int, Scalar]

# Components with at most this many columns are eliminated directly over
# the fraction field; larger ones go through the fraction-free path.
FIELD_MODE_MAX_COLS = 12


class ScalarMatrix:
    """Sparse matrix with Scalar entries, stored row-major."""

    __slots__ = ("nrows", "ncols", "arity", "rows")

    def __init__(self, nrows: int, ncols: int, arity: int):
        self.nrows = nrows
        self.ncols = ncols
        self.arity = arity
        self.rows: List[Dict[int, Scalar]] = [{} for _ in range(nrows)]

    def add(self, r: int, c: int, value: Scalar) -> None:
        if not 0 <= r < self.nrows or not 0 <= c < self.ncols:
            raise LengthMismatch(f"entry ({r}, {c}) outside {self.nrows} x {self.ncols}")
        if value.is_zero:
            return
        row = self.rows[r]
        if c in row:
            acc = row[c] + value
            if acc.is_zero:
                del row[c]
            else:
                row[c] = acc
        else:
            row[c] = value

    def entry(self, r: int, c: int) -> Scalar:
        return self.rows[r].get(c, Scalar.zero(self.arity))

    def entry_count(self) -> int:
        return sum(len(row) for row in self.rows)

    def apply(self, vector: Dict[int, Scalar]) -> Dict[int, Scalar]:
        """A @ v for a sparse vector, returning the nonzero rows."""
        out: Dict[int, Scalar] = {}
        for r, row in enumerate(self.rows):
            total = None
            for c, a in row.items():
                v = vector.get(c)
                if v is None or v.is_zero:
                    continue
                piece = a * v
                total = piece if total is None else total + piece
            if total is not None and not total.is_zero:
                out[r] = total
        return out

    def left_apply(self, vector: Dict[int, Scalar]) -> Dict[int, Scalar]:
        """u @ A for a sparse row vector keyed by row index."""
        out: Dict[int, Scalar] = {}
        for r, u in vector.items():
            if u.is_zero:
                continue
            for c, a in self.rows[r].items():
                acc = out.get(c, Scalar.zero(self.arity)) + u * a
                if acc.is_zero:
                    out.pop(c, None)
                else:
                    out[c] = acc
        return out

    def __repr__(self) -> str:
        return f"ScalarMatrix({self.nrows}x{self.ncols}, {self.entry_count()} entries)"


def specialization_points(arity: int, bound: int, tries: int = 3) -> List[Tuple[Fraction, ...]]:
    """Deterministic geometric points mu_i = M^(i-1) with M > 2 * bound.

    No integer linear form with coefficients in [-bound, bound] vanishes
    at such a point (the top digit dominates base M), so entry-level
    degeneracies of matrices built from box-bounded exponents are ruled
    out.  Successive tries bump the base.
    """
    return [
        tuple(Fraction((2 * bound + 2 + t) ** i) for i in range(arity))
        for t in range(tries)
    ]


def specialize(matrix: ScalarMatrix, values: Sequence[Fraction]) -> ScalarMatrix:
    """Evaluate every entry at a rational point; the result has arity 0.

    Raises DenominatorVanishes when an entry's denominator dies at the
    point.  Rank of the result never exceeds the generic rank.
    """
    out = ScalarMatrix(matrix.nrows, matrix.ncols, 0)
    for r, row in enumerate(matrix.rows):
        target = out.rows[r]
        for c, s in row.items():
            v = s.evaluate(values)
            if v:
                target[c] = Scalar.from_fraction(0, v)
    return out


def _modular_rank_block(rows: List[Dict[int, int]], prime: int) -> int:
    """Forward elimination over F_prime, sparsest pivot column first."""
    col_rows: Dict[int, set] = {}
    for r, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    active = set(range(len(rows)))
    count = 0
    while True:
        best = None
        for c, holders in col_rows.items():
            live = holders & active
            if live and (best is None or (len(live), c) < best[0]):
                best = ((len(live), c), c, live)
        if best is None:
            return count
        _, pc, live = best
        pr = min(live, key=lambda r: (len(rows[r]), r))
        pivot_row = rows[pr]
        inv = pow(pivot_row[pc], -1, prime)
        for r in live - {pr}:
            target = rows[r]
            factor = target[pc] * inv % prime
            for c, v in pivot_row.items():
                acc = (target.get(c, 0) - factor * v) % prime
                if acc:
                    if c not in target:
                        col_rows.setdefault(c, set()).add(r)
                    target[c] = acc
                elif c in target:
                    del target[c]
                    col_rows[c].discard(r)
        active.discard(pr)
        count += 1


def modular_rank(matrix: ScalarMatrix, values: Sequence[Fraction],
                 prime: int = (1 << 31) - 1) -> int:
    """Rank of the specialization reduced mod `prime`.

    Specializing mu and reducing mod p are both rank-nonincreasing, so
    the result is a certified lower bound for the rank over Q(mu).
    Raises DenominatorVanishes at a bad point and ValueError when a
    denominator is divisible by the modulus.
    """
    reduced: List[Dict[int, int]] = []
    for row in matrix.rows:
        out: Dict[int, int] = {}
        for c, s in row.items():
            v = Fraction(s.evaluate(values))
            den = v.denominator % prime
            if den == 0:
                raise ValueError("denominator divisible by the modulus")
            num = v.numerator % prime
            if num:
                out[c] = num * pow(den, -1, prime) % prime
        reduced.append(out)
    components, _ = _split_components(matrix)
    total = 0
    for row_idx, _cols in components:
        block = [dict(reduced[r]) for r in row_idx if reduced[r]]
        total += _modular_rank_block(block, prime)
    return total


# ----------------------------------------------------------------------
# Connected components.  Rows tie their columns together; splitting the
# matrix into independent blocks keeps elimination local.


class _UnionFind:
    def __init__(self, size: int):
        self.parent = list(range(size))

    def find(self, i: int) -> int:
        root = i
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[i] != root:
            self.parent[i], i = root, self.parent[i]
        return root

    def union(self, i: int, j: int) -> None:
        ri, rj = self.find(i), self.find(j)
        if ri != rj:
            self.parent[max(ri, rj)] = min(ri, rj)


def _split_components(matrix: ScalarMatrix) -> Tuple[List[Tuple[List[int], List[int]]], List[int]]:
    """(components, zero_columns); a component is (row_indices, col_indices)."""
    uf = _UnionFind(matrix.ncols)
    seen_cols = set()
    for row in matrix.rows:
        cols = list(row)
        seen_cols.update(cols)
        for c in cols[1:]:
            uf.union(cols[0], c)
    groups: Dict[int, List[int]] = {}
    for c in sorted(seen_cols):
        groups.setdefault(uf.find(c), []).append(c)
    comp_of_col = {}
    for root, cols in groups.items():
        for c in cols:
            comp_of_col[c] = root
    rows_by_comp: Dict[int, List[int]] = {root: [] for root in groups}
    for r, row in enumerate(matrix.rows):
        if row:
            rows_by_comp[comp_of_col[next(iter(row))]].append(r)
    components = [(rows_by_comp[root], groups[root]) for root in sorted(groups)]
    zero_cols = [c for c in range(matrix.ncols) if c not in seen_cols]
    return components, zero_cols


# ----------------------------------------------------------------------
# Elimination engines.  Both mutate a private copy of the rows and return
# the independent reduced rows as Scalar dicts.


def _pick_pivot(rows: Sequence[Dict], col_rows: Dict[int, set], active: set,
                term_count) -> Optional[Tuple[int, int]]:
    best_col = None
    best_key = None
    for col, holders in col_rows.items():
        if not (holders & active):
            continue
        key = (len(holders), col)
        if best_key is None or key < best_key:
            best_key = key
            best_col = col
    if best_col is None:
        return None
    best_row = None
    best_row_key = None
    for r in col_rows[best_col] & active:
        key = (term_count(rows[r][best_col]), r)
        if best_row_key is None or key < best_row_key:
            best_row_key = key
            best_row = r
    return best_row, best_col


def _index_columns(rows: Sequence[Dict]) -> Dict[int, set]:
    col_rows: Dict[int, set] = {}
    for r, row in enumerate(rows):
        for c in row:
            col_rows.setdefault(c, set()).add(r)
    return col_rows


def _eliminate_field(rows: List[Dict[int, Scalar]],
                     extras: Optional[List[Dict]] = None) -> List[Tuple[int, int]]:
    """Gauss-Jordan in place; returns (pivot_row, pivot_col) pairs.

    `extras` are parallel per-row payloads (right-hand sides, left
    multipliers) that receive the same row operations.
    """
    col_rows = _index_columns(rows)
    active = set(range(len(rows)))
    pivots: List[Tuple[int, int]] = []
    while True:
        picked = _pick_pivot(rows, col_rows, active, lambda s: s.term_count())
        if picked is None:
            break
        pr, pc = picked
        pivot = rows[pr][pc]
        for r in sorted(col_rows[pc] - {pr}):
            factor = rows[r][pc] / pivot
            target = rows[r]
            for c, value in rows[pr].items():
                acc = target.get(c)
                acc = -(factor * value) if acc is None else acc - factor * value
                if acc.is_zero:
                    if c in target:
                        del target[c]
                        col_rows[c].discard(r)
                else:
                    if c not in target:
                        col_rows.setdefault(c, set()).add(r)
                    target[c] = acc
            if extras is not None:
                for payload in extras:
                    _payload_sub(payload, r, pr, factor)
        active.discard(pr)
        pivots.append((pr, pc))
    return pivots


def _payload_sub(payload: List[Dict[int, Scalar]], r: int, pr: int, factor: Scalar) -> None:
    target = payload[r]
    for k, value in payload[pr].items():
        acc = target.get(k)
        acc = -(factor * value) if acc is None else acc - factor * value
        if acc.is_zero:
            target.pop(k, None)
        else:
            target[k] = acc


def _clear_denominators(row: Dict[int, Scalar], arity: int) -> Dict[int, MuPolynomial]:
    den = MuPolynomial.one(arity)
    for s in row.values():
        if not s.den.is_constant():
            den = den * s.den.exact_div(poly_gcd(den, s.den))
    return {c: s.num * den.exact_div(s.den) for c, s in row.items()}


def _strip_content(row: Dict[int, MuPolynomial]) -> None:
    if not row:
        return
    coeffs = [c for p in row.values() for c in p.terms.values()]
    content = _frac_gcd(coeffs)
    if content != 1:
        for c in list(row):
            row[c] = row[c].scale(1 / content)
    # Any constant entry makes the polynomial content trivial; otherwise
    # fold gcds starting from the smallest entry and stop once constant.
    polys = sorted(row.values(), key=lambda p: (p.total_degree(), len(p.terms)))
    if polys[0].is_constant():
        return
    g = polys[0]
    for p in polys[1:]:
        g = poly_gcd(g, p)
        if g.is_constant():
            return
    for c in list(row):
        row[c] = row[c].exact_div(g)


def _eliminate_fraction_free(rows: List[Dict[int, MuPolynomial]]) -> List[Tuple[int, int]]:
    for r in range(len(rows)):
        _strip_content(rows[r])
    col_rows = _index_columns(rows)
    active = set(range(len(rows)))
    pivots: List[Tuple[int, int]] = []
    while True:
        picked = _pick_pivot(rows, col_rows, active, lambda p: len(p.terms))
        if picked is None:
            break
        pr, pc = picked
        pivot_row = rows[pr]
        pivot = pivot_row[pc]
        for r in sorted(col_rows[pc] - {pr}):
            target = rows[r]
            lead = target[pc]
            new_row: Dict[int, MuPolynomial] = {}
            for c, value in target.items():
                new_row[c] = value * pivot
            for c, value in pivot_row.items():
                acc = new_row.get(c)
                piece = value * lead
                acc = -piece if acc is None else acc - piece
                if acc.is_zero:
                    new_row.pop(c, None)
                else:
                    new_row[c] = acc
            _strip_content(new_row)
            for c in target:
                if c not in new_row:
                    col_rows[c].discard(r)
            for c in new_row:
                if c not in target:
                    col_rows.setdefault(c, set()).add(r)
            rows[r] = new_row
        active.discard(pr)
        pivots.append((pr, pc))
    return pivots


# ----------------------------------------------------------------------
# Canonical form and read-off.


def _canonical_rref(rows: List[Dict[int, Scalar]]) -> List[Tuple[int, Dict[int, Scalar]]]:
    """Unique RREF of the span of `rows`: leftmost pivots, pivot entries 1."""
    work = [dict(row) for row in rows if row]
    result: List[Tuple[int, Dict[int, Scalar]]] = []
    while work:
        pc = min(c for row in work for c in row)
        pr = next(i for i, row in enumerate(work) if pc in row)
        pivot_row = work.pop(pr)
        inv = pivot_row[pc].inverse()
        pivot_row = {c: inv * v for c, v in pivot_row.items()}
        for row in work:
            lead = row.pop(pc, None)
            if lead is None:
                continue
            for c, v in pivot_row.items():
                if c == pc:
                    continue
                acc = row.get(c)
                acc = -(lead * v) if acc is None else acc - lead * v
                if acc.is_zero:
                    row.pop(c, None)
                else:
                    row[c] = acc
        work = [row for row in work if row]
        for pc_prev, row_prev in result:
            lead = row_prev.pop(pc, None)
            if lead is None:
                continue
            for c, v in pivot_row.items():
                if c == pc:
                    continue
                acc = row_prev.get(c)
                acc = -(lead * v) if acc is None else acc - lead * v
                if acc.is_zero:
                    row_prev.pop(c, None)
                else:
                    row_prev[c] = acc
        result.append((pc, pivot_row))
    result.sort(key=lambda item: item[0])
    return result


def _kernel_from_rref(rref: List[Tuple[int, Dict[int, Scalar]]], cols: Sequence[int],
                      arity: int) -> List[Tuple[int, KernelVector]]:
    """(free column, vector) pairs; each vector has a unit at its free column."""
    pivot_cols = {pc for pc, _ in rref}
    one = Scalar.one(arity)
    vectors = []
    for f in cols:
        if f in pivot_cols:
            continue
        v: KernelVector = {f: one}
        for pc, row in rref:
            coeff = row.get(f)
            if coeff is not None and not coeff.is_zero:
                v[pc] = -coeff
        vectors.append((f, v))
    return vectors


def _reduce_component(matrix: ScalarMatrix, row_idx: List[int],
                      cols: List[int]) -> List[Tuple[int, Dict[int, Scalar]]]:
    # Rational entries never grow, so field mode is safe at any size.
    if matrix.arity == 0 or len(cols) <= FIELD_MODE_MAX_COLS:
        rows = [dict(matrix.rows[r]) for r in row_idx]
        pivots = _eliminate_field(rows)
        reduced = [rows[pr] for pr, _ in pivots]
    else:
        rows = [_clear_denominators(matrix.rows[r], matrix.arity) for r in row_idx]
        pivots = _eliminate_fraction_free(rows)
        reduced = [{c: Scalar(p) for c, p in rows[pr].items()} for pr, _ in pivots]
    return _canonical_rref(reduced)


def kernel(matrix: ScalarMatrix) -> List[KernelVector]:
    """Canonical kernel basis: one vector per free column, unit there."""
    components, zero_cols = _split_components(matrix)
    one = Scalar.one(matrix.arity)
    tagged: List[Tuple[int, KernelVector]] = [(c, {c: one}) for c in zero_cols]
    for row_idx, cols in components:
        rref = _reduce_component(matrix, row_idx, cols)
        tagged.extend(_kernel_from_rref(rref, cols, matrix.arity))
    tagged.sort(key=lambda item: item[0])
    return [v for _, v in tagged]


def rank(matrix: ScalarMatrix) -> int:
    components, _ = _split_components(matrix)
    total = 0
    for row_idx, cols in components:
        total += len(_reduce_component(matrix, row_idx, cols))
    return total


@dataclass
class SolveResult:
    """Outcome of an exact linear solve A x = b.

    Exactly one of `solution` and `certificate` is set.  The certificate
    is a left row combination u with u A = 0 and u . b != 0, indexed by
    original row number.  `homogeneous` is the canonical kernel basis of
    A, so the full solution set is solution + span(homogeneous).
    """

    solution: Optional[Dict[int, Scalar]]
    certificate: Optional[Dict[int, Scalar]]
    homogeneous: List[KernelVector]
    rank: int

    @property
    def consistent(self) -> bool:
        return self.solution is not None


def solve(matrix: ScalarMatrix, rhs: Dict[int, Scalar]) -> SolveResult:
    """Solve A x = b exactly, with a certificate when inconsistent.

    The returned solution is canonical: free variables of the unique
    RREF are set to zero.
    """
    one = Scalar.one(matrix.arity)
    rows = [dict(row) for row in matrix.rows]
    bvec: List[Dict[int, Scalar]] = [{} for _ in range(len(rows))]
    for r, value in rhs.items():
        if not value.is_zero:
            bvec[r][0] = value
    combos: List[Dict[int, Scalar]] = [{r: one} for r in range(len(rows))]
    pivots = _eliminate_field(rows, extras=[bvec, combos])
    pivot_rows = {pr for pr, _ in pivots}
    for r in range(len(rows)):
        if r not in pivot_rows and not rows[r] and bvec[r]:
            return SolveResult(None, combos[r], [], len(pivots))

    # Consistent: renormalize through the unique RREF, carrying b along
    # as a virtual column that can never be chosen as a pivot.
    B = matrix.ncols
    augmented = []
    for pr, _ in pivots:
        row = dict(rows[pr])
        if bvec[pr]:
            row[B] = bvec[pr][0]
        augmented.append(row)
    rref_aug = []
    work = [row for row in augmented if row]
    while work:
        candidates = [c for row in work for c in row if c != B]
        if not candidates:
            break
        pc = min(candidates)
        pr = next(i for i, row in enumerate(work) if pc in row)
        pivot_row = work.pop(pr)
        inv = pivot_row[pc].inverse()
        pivot_row = {c: inv * v for c, v in pivot_row.items()}
        for row in work + [r for _, r in rref_aug]:
            lead = row.pop(pc, None)
            if lead is None:
                continue
            for c, v in pivot_row.items():
                if c == pc:
                    continue
                acc = row.get(c)
                acc = -(lead * v) if acc is None else acc - lead * v
                if acc.is_zero:
                    row.pop(c, None)
                else:
                    row[c] = acc
        work = [row for row in work if row]
        rref_aug.append((pc, pivot_row))
    rref_aug.sort(key=lambda item: item[0])

    solution = {}
    for pc, row in rref_aug:
        value = row.get(B)
        if value is not None and not value.is_zero:
            solution[pc] = value
    rref_plain = [(pc, {c: v for c, v in row.items() if c != B}) for pc, row in rref_aug]
    homogeneous = [v for _, v in _kernel_from_rref(rref_plain, range(matrix.ncols), matrix.arity)]
    return SolveResult(solution, None, homogeneous, len(pivots))
