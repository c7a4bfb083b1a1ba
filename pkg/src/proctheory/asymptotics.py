"""Many-copy discrimination: tensor powers, decoders, and the defect program.

The stochastic backend gets a constructive decoder: the maximum-
likelihood flag channel on n-fold product outcomes, whose worst-case
misidentification probability is computed exactly. For two-state
families a grid-evaluated Chernoff coefficient gives an exponential
upper bound on that error; the grid minimum is a sufficient bound only,
never a ground-truth infimum. Pure quantum pairs get the closed-form
two-state minimum error.

The defect program turns approximate programmability into an exact
linear program: the smallest uniform deviation of any one machine from
a target gate family is attained on the (compact) channel polytope, and
it vanishes exactly when the program states are distinguishable.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import lp, quantum, stochastic, tasks
from .errors import (
    DimensionOverflow,
    DuplicateStates,
    InvariantViolation,
    MixedBackends,
    NotPure,
)
from .quantum import QState
from .stochastic import StochChannel
from .tasks import Decision, GateFamily, StateFamily

DEFAULT_DIM_CAP = 4096

CHERNOFF_GRID = tuple(Fraction(j, 16) for j in range(17))


@dataclass(frozen=True)
class IIDFamily:
    """A base family together with its n-fold product states."""

    base: StateFamily
    copies: int
    family: StateFamily


def iid_power(family: StateFamily, n: int, dim_cap: int | None = DEFAULT_DIM_CAP) -> IIDFamily:
    """Exact n-fold tensor powers of every member."""
    if n < 1:
        raise DimensionOverflow("copy count must be at least 1")
    total = family.dim ** n
    if dim_cap is not None and total > dim_cap:
        raise DimensionOverflow(
            f"tensor power dimension {total} exceeds the cap {dim_cap}"
        )
    if family.backend == tasks.FINSTOCH:
        powered = []
        for state in family.states:
            acc = state
            for _ in range(n - 1):
                acc = acc.tensor(state)
            powered.append(acc)
    else:
        powered = []
        for state in family.states:
            acc = state.mat
            for _ in range(n - 1):
                acc = np.kron(acc, state.mat)
            powered.append(QState(acc))
    return IIDFamily(family, n, StateFamily(family.labels, tuple(powered)))


@dataclass(frozen=True)
class ErrorCurve:
    """Worst-case decoder error per copy count, with the bound used."""

    entries: tuple[tuple[int, Fraction], ...]
    chernoff_base: float | None = None

    def to_csv(self) -> str:
        lines = ["n,error,bound"]
        for n, eps in self.entries:
            bound = "" if self.chernoff_base is None else repr(self.chernoff_base ** n)
            lines.append(f"{n},{eps},{bound}")
        return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class MLDiscriminator:
    """A deterministic decoder on product outcomes and its exact error."""

    channel: StochChannel
    error: Fraction
    copies: int
    chernoff_base: float | None = None


def chernoff_base_grid(p: StochChannel, q: StochChannel) -> float:
    """min over the s-grid of sum_i p_i^s q_i^(1-s), evaluated in floats.

    Every grid point gives a valid upper-bound base for the worst-case
    maximum-likelihood error, so the minimum over the grid does too; it
    upper-bounds the true coefficient only up to grid resolution.
    """
    pv = [float(x) for x in p.as_vector()]
    qv = [float(x) for x in q.as_vector()]
    best = None
    for s in CHERNOFF_GRID:
        s = float(s)
        total = 0.0
        for a, b in zip(pv, qv):
            if a == 0.0 and b == 0.0:
                continue
            total += (a ** s) * (b ** (1.0 - s))
        if best is None or total < best:
            best = total
    return best


def build_ml_discriminator(
    family: StateFamily, n: int, dim_cap: int | None = DEFAULT_DIM_CAP
) -> MLDiscriminator:
    """Maximum-likelihood flag channel on n-fold outcomes, with exact error.

    Each product outcome decodes to the label whose product state gives
    it the largest mass, ties to the first label in index order. The
    reported error is the largest misidentification probability over the
    family. Identical states admit no decoder and are rejected.
    """
    if family.backend != tasks.FINSTOCH:
        raise MixedBackends("the maximum-likelihood decoder is stochastic-backend only")
    k = len(family)
    for i in range(k):
        for j in range(i + 1, k):
            if family.states[i] == family.states[j]:
                raise DuplicateStates(
                    f"{family.labels[i]} and {family.labels[j]} are identical"
                )
    powered = iid_power(family, n, dim_cap).family
    vectors = [s.as_vector() for s in powered.states]
    outcomes = len(vectors[0])
    decode = [
        max(range(k), key=lambda x: vectors[x][o]) for o in range(outcomes)
    ]
    worst = Fraction(0)
    for x in range(k):
        err = sum(
            (vectors[x][o] for o in range(outcomes) if decode[o] != x),
            Fraction(0),
        )
        worst = max(worst, err)
    rows = [[stochastic.ZERO] * outcomes for _ in range(k)]
    for o, x in enumerate(decode):
        rows[x][o] = stochastic.ONE
    flag = StochChannel(tuple(tuple(r) for r in rows))
    base = chernoff_base_grid(family.states[0], family.states[1]) if k == 2 else None
    return MLDiscriminator(channel=flag, error=worst, copies=n, chernoff_base=base)


def error_curve(
    family: StateFamily, n_max: int, dim_cap: int | None = DEFAULT_DIM_CAP
) -> ErrorCurve:
    """Exact decoder errors for n = 1 .. n_max."""
    entries = []
    base = None
    for n in range(1, n_max + 1):
        ml = build_ml_discriminator(family, n, dim_cap)
        entries.append((n, ml.error))
        base = ml.chernoff_base
    return ErrorCurve(tuple(entries), chernoff_base=base)


def helstrom_error(alpha0: QState, alpha1: QState, n: int = 1) -> float:
    """Equal-prior minimum discrimination error for two pure states.

    With overlap c the n-copy error is (1 - sqrt(1 - c^(2n))) / 2.
    """
    if not quantum.is_pure_state(alpha0) or not quantum.is_pure_state(alpha1):
        raise NotPure("closed-form minimum error needs pure states")
    c2 = float(np.real(np.trace(alpha0.mat @ alpha1.mat)))
    c2 = min(max(c2, 0.0), 1.0)
    return (1.0 - math.sqrt(max(0.0, 1.0 - c2 ** n))) / 2.0


def helstrom_error_trace_norm(alpha0: QState, alpha1: QState, n: int = 1) -> float:
    """Independent route to the same error through the trace norm.

    Builds both n-fold products and evaluates (1 - ||r0 - r1||_1 / 2) / 2
    by eigendecomposition. Intended as a cross-check at small n.
    """
    r0, r1 = alpha0.mat, alpha1.mat
    for _ in range(n - 1):
        r0 = np.kron(r0, alpha0.mat)
        r1 = np.kron(r1, alpha1.mat)
    diff = r0 - r1
    eigs = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    return (1.0 - float(np.abs(eigs).sum()) / 2.0) / 2.0


def flag_gate_family(family: StateFamily) -> GateFamily:
    """The separating targets: prepare label x on a size-k flag system."""
    k = len(family)
    if family.backend != tasks.FINSTOCH:
        raise MixedBackends("flag targets are stochastic-backend only")
    return GateFamily(
        family.labels,
        tuple(StochChannel.point_mass(k, x) for x in range(k)),
    )


@dataclass(frozen=True)
class MinDefectResult:
    programmer: StochChannel
    defect: Fraction


def _is_flag_targets(gates: GateFamily) -> bool:
    if gates.in_dim != 1 or gates.out_dim != len(gates):
        return False
    return all(
        g == StochChannel.point_mass(len(gates), x) for x, g in enumerate(gates.gates)
    )


def min_defect_programmer(family: StateFamily, gates: GateFamily) -> MinDefectResult:
    """Smallest uniform programming deviation, attained exactly.

    Minimizes t over stochastic machines W subject to the entrywise
    bound |W(rho_x (x) id) - G_x| <= t for every x. The optimum is
    attained on the channel polytope and reported as an exact rational
    with an optimal machine. With the separating flag targets the
    defect vanishes exactly when the family is distinguishable, and
    that agreement is asserted.
    """
    if family.backend != tasks.FINSTOCH or gates.backend != tasks.FINSTOCH:
        raise MixedBackends("the defect program is stochastic-backend only")
    if family.labels != gates.labels:
        raise InvariantViolation("families must share the index set")
    d = family.dim
    d_b, d_out = gates.in_dim, gates.out_dim
    in_dim = d * d_b
    nw = d_out * in_dim
    nv = nw + 1                              # trailing variable is the defect t

    def var(i, col):
        return i * in_dim + col

    zero = Fraction(0)
    one = Fraction(1)
    eq = []
    for col in range(in_dim):
        coeffs = [zero] * nv
        for i in range(d_out):
            coeffs[var(i, col)] = one
        eq.append((tuple(coeffs), one))
    le, ge = [], []
    for x, state in enumerate(family.states):
        vec = state.as_vector()
        target = gates.gates[x]
        for i in range(d_out):
            for b in range(d_b):
                coeffs = [zero] * nv
                for a, weight in enumerate(vec):
                    if weight:
                        coeffs[var(i, a * d_b + b)] = weight
                rhs = target.entries[i][b]
                up = list(coeffs)
                up[nw] = -one
                le.append((tuple(up), rhs))
                down = list(coeffs)
                down[nw] = one
                ge.append((tuple(down), rhs))
    objective = [zero] * nv
    objective[nw] = -one                     # maximize -t
    program = lp.LinearProgram(nv, tuple(objective), eq=tuple(eq), le=tuple(le), ge=tuple(ge))
    result = lp.solve(program)
    if result.status is not lp.LPStatus.OPTIMAL:
        raise InvariantViolation("the defect program is always feasible and bounded")
    defect = result.x[nw]
    rows = tuple(
        tuple(result.x[var(i, col)] for col in range(in_dim)) for i in range(d_out)
    )
    machine = StochChannel(rows)
    if _is_flag_targets(gates):
        dec = tasks.decide_distinguishable(family)
        if (defect == 0) != dec.verdict:
            raise InvariantViolation(
                "zero defect with flag targets must match distinguishability"
            )
    return MinDefectResult(programmer=machine, defect=defect)


@dataclass(frozen=True)
class ConsistencyReport:
    """Decoder convergence data next to the exact-decision cross-references."""

    curve: ErrorCurve
    threshold_first_n: tuple[tuple[Fraction, int | None], ...]
    duplicates: bool
    copiable: Decision | None
    distinguishable: Decision | None
    exact_distinguishability_inferred: bool


def asymptotic_consistency_check(
    family: StateFamily,
    n_max: int,
    thresholds=(Fraction(1, 2), Fraction(1, 4), Fraction(1, 10)),
    dim_cap: int | None = DEFAULT_DIM_CAP,
) -> ConsistencyReport:
    """Decoder error trend, with the discipline on what it does not prove.

    Reports when the exact decoder error first drops below each
    threshold over the tested range. Exact distinguishability is never
    inferred from the trend alone: it is cross-referenced to copiability
    (the existence of an exact map onto the product states), and the two
    exact verdicts agree by the equivalence theorem. Duplicated states
    are flagged instead of decoded: no decoder separates them.
    """
    if family.backend != tasks.FINSTOCH:
        raise MixedBackends("the consistency check is stochastic-backend only")
    has_dup = any(
        family.states[i] == family.states[j]
        for i in range(len(family))
        for j in range(i + 1, len(family))
    )
    if has_dup:
        return ConsistencyReport(
            curve=ErrorCurve(()),
            threshold_first_n=tuple((Fraction(t), None) for t in thresholds),
            duplicates=True,
            copiable=None,
            distinguishable=None,
            exact_distinguishability_inferred=False,
        )
    curve = error_curve(family, n_max, dim_cap)
    hits = []
    for t in thresholds:
        t = Fraction(t)
        first = next((n for n, eps in curve.entries if eps <= t), None)
        hits.append((t, first))
    copiable = tasks.decide_copiable(family)
    distinguishable = tasks.decide_distinguishable(family)
    return ConsistencyReport(
        curve=curve,
        threshold_first_n=tuple(hits),
        duplicates=False,
        copiable=copiable,
        distinguishable=distinguishable,
        exact_distinguishability_inferred=copiable.verdict,
    )
