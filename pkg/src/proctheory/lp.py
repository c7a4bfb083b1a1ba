"""Exact linear programming over rationals.

Two-phase dense simplex with Bland's anti-cycling rule. Feasibility and
optimality verdicts are exact: no floating point enters any decision.
All variables are nonnegative; problems are stated as equality rows plus
<= and >= rows over those variables, with a maximization objective.

Internally the tableau is held as integers scaled by the current basis
determinant (fraction-free pivoting). Every tableau entry is then a
minor of the integer input data, so pivot updates divide exactly and
entry growth stays polynomial without per-operation gcd reduction.
Optimal solutions are converted back to `fractions.Fraction` and
re-verified against the original constraints before being returned.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import gcd

from .errors import DimensionMismatch, InvariantViolation
from .stochastic import StochChannel

Row = tuple[tuple[Fraction, ...], Fraction]


class LPStatus(Enum):
    OPTIMAL = "optimal"
    INFEASIBLE = "infeasible"
    UNBOUNDED = "unbounded"


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


def _row(coeffs, rhs, num_vars) -> Row:
    coeffs = tuple(_frac(c) for c in coeffs)
    if len(coeffs) != num_vars:
        raise DimensionMismatch(f"row has {len(coeffs)} coefficients, expected {num_vars}")
    return coeffs, _frac(rhs)


@dataclass(frozen=True)
class LinearProgram:
    """maximize objective . x subject to eq/le/ge rows and x >= 0."""

    num_vars: int
    objective: tuple[Fraction, ...]
    eq: tuple[Row, ...] = ()
    le: tuple[Row, ...] = ()
    ge: tuple[Row, ...] = ()

    def __post_init__(self):
        if self.num_vars < 0:
            raise DimensionMismatch("negative variable count")
        if len(self.objective) != self.num_vars:
            raise DimensionMismatch("objective length does not match variable count")
        for rows in (self.eq, self.le, self.ge):
            for coeffs, _ in rows:
                if len(coeffs) != self.num_vars:
                    raise DimensionMismatch("constraint row length does not match variable count")

    @classmethod
    def build(cls, num_vars, objective, eq=(), le=(), ge=()) -> LinearProgram:
        objective = tuple(_frac(c) for c in objective)
        if len(objective) != num_vars:
            raise DimensionMismatch("objective length does not match variable count")
        return cls(
            num_vars,
            objective,
            tuple(_row(c, b, num_vars) for c, b in eq),
            tuple(_row(c, b, num_vars) for c, b in le),
            tuple(_row(c, b, num_vars) for c, b in ge),
        )


@dataclass(frozen=True)
class LPResult:
    status: LPStatus
    x: tuple[Fraction, ...] | None = None
    value: Fraction | None = None
    phase1_residual: Fraction | None = None


def _scaled_int_row(coeffs, rhs):
    """Clear denominators of one constraint row, returning integer data."""
    scale = 1
    for c in coeffs:
        scale = scale * c.denominator // gcd(scale, c.denominator)
    scale = scale * rhs.denominator // gcd(scale, rhs.denominator)
    ints = [int(c * scale) for c in coeffs]
    return ints, int(rhs * scale)


class _Simplex:
    """Fraction-free tableau. Entry (i, j) holds det * (rational tableau value)."""

    def __init__(self, rows: list[list[int]], basis: list[int], num_cols: int):
        self.rows = rows              # each row: num_cols coefficients then rhs
        self.basis = basis            # basic variable index per row
        self.num_cols = num_cols
        self.det = 1                  # signed; rational entry = int entry / det
        self.obj: list[int] = []      # det * reduced costs, length num_cols + 1

    # -- rational sign helpers -------------------------------------------
    def _pos(self, v: int) -> bool:
        return v > 0 if self.det > 0 else v < 0

    def _neg(self, v: int) -> bool:
        return v < 0 if self.det > 0 else v > 0

    def rational(self, v: int) -> Fraction:
        return Fraction(v, self.det)

    # -- pivoting ---------------------------------------------------------
    def pivot(self, r: int, c: int) -> None:
        piv_row = self.rows[r]
        piv = piv_row[c]
        if piv == 0:
            raise InvariantViolation("pivot on a zero entry")
        d = self.det
        for row in self.rows:
            if row is piv_row:
                continue
            f = row[c]
            if f:
                row[:] = [(piv * a - f * b) // d for a, b in zip(row, piv_row)]
            elif piv != d:
                row[:] = [piv * a // d for a in row]
        o = self.obj
        f = o[c]
        if f:
            o[:] = [(piv * a - f * b) // d for a, b in zip(o, piv_row)]
        elif piv != d:
            o[:] = [piv * a // d for a in o]
        self.det = piv
        self.basis[r] = c

    def set_costs(self, costs: list[int]) -> None:
        """Install det * reduced costs for integer per-variable costs (minimize)."""
        det = self.det
        obj = [det * c for c in costs] + [0]
        for i, row in enumerate(self.rows):
            cb = costs[self.basis[i]]
            if cb:
                obj = [o - cb * a for o, a in zip(obj, row)]
        self.obj = obj

    # -- core loop ---------------------------------------------------------
    def minimize(self, allowed) -> str:
        """Bland's rule until optimal or unbounded; `allowed` marks columns
        permitted to enter."""
        while True:
            enter = -1
            for j in range(self.num_cols):
                if allowed[j] and self._neg(self.obj[j]):
                    enter = j
                    break
            if enter < 0:
                return "optimal"
            sgn = 1 if self.det > 0 else -1
            best = -1
            best_num = best_den = 0
            for i, row in enumerate(self.rows):
                a = sgn * row[enter]
                if a <= 0:
                    continue
                b = sgn * row[-1]
                if best < 0 or b * best_den < best_num * a or (
                    b * best_den == best_num * a and self.basis[i] < self.basis[best]
                ):
                    best, best_num, best_den = i, b, a
            if best < 0:
                return "unbounded"
            self.pivot(best, enter)


def solve(lp: LinearProgram) -> LPResult:
    """Exact two-phase simplex.

    Optimal solutions satisfy every constraint exactly (checked by
    substitution before returning). Infeasibility is decided by the exact
    phase-1 optimum; its positive residual is reported.
    """
    n = lp.num_vars
    # standard form: structural vars, then one slack per inequality row
    all_rows: list[tuple[list[int], int, str]] = []
    for coeffs, rhs in lp.eq:
        ints, b = _scaled_int_row(coeffs, rhs)
        all_rows.append((ints, b, "eq"))
    for coeffs, rhs in lp.le:
        ints, b = _scaled_int_row(coeffs, rhs)
        all_rows.append((ints, b, "le"))
    for coeffs, rhs in lp.ge:
        ints, b = _scaled_int_row(coeffs, rhs)
        all_rows.append((ints, b, "ge"))

    m = len(all_rows)
    num_slack = len(lp.le) + len(lp.ge)
    if m == 0:
        x = tuple(Fraction(0) for _ in range(n))
        if any(c > 0 for c in lp.objective):
            return LPResult(LPStatus.UNBOUNDED)
        return LPResult(LPStatus.OPTIMAL, x=x, value=Fraction(0))

    num_cols = n + num_slack + m          # artificials appended last
    rows: list[list[int]] = []
    basis: list[int] = [0] * m
    slack_at = 0
    for i, (ints, b, kind) in enumerate(all_rows):
        row = ints + [0] * (num_slack + m) + [b]
        if kind == "le":
            row[n + slack_at] = 1
            slack_at += 1
        elif kind == "ge":
            row[n + slack_at] = -1
            slack_at += 1
        if b < 0:
            row = [-v for v in row]
        if kind == "le" and row[n + slack_at - 1] == 1:
            basis[i] = n + slack_at - 1   # nonnegative rhs: the slack starts basic
        else:
            art = n + num_slack + i
            row[art] = 1
            basis[i] = art
        rows.append(row)

    is_artificial = [False] * num_cols
    for c in range(n + num_slack, num_cols):
        is_artificial[c] = True

    tab = _Simplex(rows, basis, num_cols)

    # phase 1: minimize the sum of artificials
    phase1_costs = [1 if is_artificial[c] else 0 for c in range(num_cols)]
    tab.set_costs(phase1_costs)
    allowed = [True] * num_cols
    status = tab.minimize(allowed)
    if status == "unbounded":
        raise InvariantViolation("phase 1 cannot be unbounded")
    residual = Fraction(0)
    for i, b in enumerate(tab.basis):
        if is_artificial[b]:
            residual += tab.rational(tab.rows[i][-1])
    if residual > 0:
        return LPResult(LPStatus.INFEASIBLE, phase1_residual=residual)

    # drive artificials out of the basis where possible; rows whose
    # structural part vanished are redundant and stay inert
    for i in range(m):
        if not is_artificial[tab.basis[i]]:
            continue
        for c in range(n + num_slack):
            if tab.rows[i][c] != 0:
                tab.pivot(i, c)
                break

    # phase 2: maximize the caller's objective (minimize its negation)
    obj_scale = 1
    for c in lp.objective:
        obj_scale = obj_scale * c.denominator // gcd(obj_scale, c.denominator)
    phase2_costs = [0] * num_cols
    for j, c in enumerate(lp.objective):
        phase2_costs[j] = -int(c * obj_scale)
    if any(phase2_costs):
        for c in range(num_cols):
            if is_artificial[c]:
                allowed[c] = False
        tab.set_costs(phase2_costs)
        status = tab.minimize(allowed)
        if status == "unbounded":
            return LPResult(LPStatus.UNBOUNDED)

    x = [Fraction(0)] * n
    for i, b in enumerate(tab.basis):
        if b < n:
            x[b] = tab.rational(tab.rows[i][-1])
    value = sum(c * v for c, v in zip(lp.objective, x))
    _verify(lp, x)
    return LPResult(LPStatus.OPTIMAL, x=tuple(x), value=value)


def _verify(lp: LinearProgram, x) -> None:
    if any(v < 0 for v in x):
        raise InvariantViolation("simplex returned a negative variable")
    for coeffs, rhs in lp.eq:
        if sum(c * v for c, v in zip(coeffs, x)) != rhs:
            raise InvariantViolation("simplex solution violates an equality row")
    for coeffs, rhs in lp.le:
        if sum(c * v for c, v in zip(coeffs, x)) > rhs:
            raise InvariantViolation("simplex solution violates a <= row")
    for coeffs, rhs in lp.ge:
        if sum(c * v for c, v in zip(coeffs, x)) < rhs:
            raise InvariantViolation("simplex solution violates a >= row")


# -- channel polytopes ------------------------------------------------------


def maps_condition(input_vec, output_vec) -> list[tuple[dict, Fraction]]:
    """Affine conditions pinning a channel's action on one state.

    Variables are channel entries indexed (row, col). The condition
    "channel sends input_vec to output_vec" is one equation per output
    row: sum_j input[j] * C[i, j] = output[i].
    """
    input_vec = [_frac(v) for v in input_vec]
    output_vec = [_frac(v) for v in output_vec]
    conds = []
    for i, target in enumerate(output_vec):
        coeffs = {(i, j): v for j, v in enumerate(input_vec) if v}
        conds.append((coeffs, target))
    return conds


def channel_feasibility(
    in_dim: int, out_dim: int, conditions
) -> tuple[LPResult, StochChannel | None]:
    """Exact feasibility of a column-stochastic channel under affine conditions.

    `conditions` is an iterable of (coeffs, rhs) pairs where coeffs maps
    (row, col) entry positions to rational coefficients. The feasibility
    verdict is exact: an OPTIMAL result carries a valid channel satisfying
    every condition exactly, and INFEASIBLE means no such channel exists.
    """
    nv = in_dim * out_dim

    def var(i, j):
        return i * in_dim + j

    eq = []
    for j in range(in_dim):
        coeffs = [Fraction(0)] * nv
        for i in range(out_dim):
            coeffs[var(i, j)] = Fraction(1)
        eq.append((tuple(coeffs), Fraction(1)))
    for coeffs_map, rhs in conditions:
        coeffs = [Fraction(0)] * nv
        for (i, j), c in coeffs_map.items():
            if i < 0 or i >= out_dim or j < 0 or j >= in_dim:
                raise DimensionMismatch(f"condition touches entry {(i, j)} outside the channel")
            coeffs[var(i, j)] += _frac(c)
        eq.append((tuple(coeffs), _frac(rhs)))

    lp = LinearProgram(nv, tuple(Fraction(0) for _ in range(nv)), eq=tuple(eq))
    result = solve(lp)
    if result.status is not LPStatus.OPTIMAL:
        return result, None
    rows = tuple(
        tuple(result.x[var(i, j)] for j in range(in_dim)) for i in range(out_dim)
    )
    return result, StochChannel(rows)
