"""Operational decision tasks with machine-checkable certificates.

Every YES verdict carries a synthesized channel (flag channel,
programmer, cloner, or side-information channel) that is re-verified by
substitution into the defining equation before it is returned: exactly
for the stochastic backend, within a tolerance for the quantum one.
Every NO verdict carries a diagnostic identifying why no such channel
exists.

Distinguishability is decided by the flag-channel criterion: a family
is distinguishable exactly when some channel sends each member to a
distinct label state. The flag channel followed by a classically
controlled gate programs any finite gate family, and conversely a
programmer for the label preparations is itself a flag channel, so the
criterion coincides with the ability to program every gate family; the
property suite exercises that equivalence with randomized gate
families.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from . import lp, quantum, stochastic
from .errors import (
    DimensionMismatch,
    FactorizationFailure,
    IndexMismatch,
    InvariantViolation,
    MappingMismatch,
    MixedBackends,
    NotCausal,
    NotDistinguishable,
    NotPure,
)
from .quantum import QChannel, QState
from .stochastic import StochChannel

DEFAULT_TOL = 1e-9

FINSTOCH = "finstoch"
QUANTUM = "quantum"


def _backend_of(obj) -> str:
    if isinstance(obj, StochChannel):
        return FINSTOCH
    if isinstance(obj, (QState, QChannel)):
        return QUANTUM
    raise MixedBackends(f"not a backend object: {obj!r}")


@dataclass(frozen=True)
class StateFamily:
    """An indexed set of states of one system, in one backend."""

    labels: tuple[str, ...]
    states: tuple[Any, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.states) or not self.labels:
            raise IndexMismatch("labels and states must align and be nonempty")
        if len(set(self.labels)) != len(self.labels):
            raise IndexMismatch("labels must be unique")
        kinds = {_backend_of(s) for s in self.states}
        if len(kinds) != 1:
            raise MixedBackends("states come from different backends")
        if self.backend == FINSTOCH:
            dims = {s.out_dim for s in self.states}
            if any(not s.is_state for s in self.states):
                raise DimensionMismatch("stochastic states must be single-column")
            if any(not stochastic.check_causal(s) for s in self.states):
                raise NotCausal("a state is not a normalized probability vector")
        else:
            dims = {s.dim for s in self.states}
        if len(dims) != 1:
            raise DimensionMismatch("states live on different systems")

    @property
    def backend(self) -> str:
        return _backend_of(self.states[0])

    @property
    def dim(self) -> int:
        s = self.states[0]
        return s.out_dim if isinstance(s, StochChannel) else s.dim

    def __len__(self):
        return len(self.labels)

    def items(self):
        return zip(self.labels, self.states)


def state_family(labels, states) -> StateFamily:
    return StateFamily(tuple(labels), tuple(states))


@dataclass(frozen=True)
class GateFamily:
    """An indexed set of gates of one type, in one backend."""

    labels: tuple[str, ...]
    gates: tuple[Any, ...]

    def __post_init__(self):
        if len(self.labels) != len(self.gates) or not self.labels:
            raise IndexMismatch("labels and gates must align and be nonempty")
        kinds = {_backend_of(g) for g in self.gates}
        if len(kinds) != 1:
            raise MixedBackends("gates come from different backends")
        if self.backend == FINSTOCH:
            if any(not stochastic.check_causal(g) for g in self.gates):
                raise NotCausal("a gate is not column-stochastic")
        dims = {(g.in_dim, g.out_dim) for g in self.gates}
        if len(dims) != 1:
            raise DimensionMismatch("gates have different types")

    @property
    def backend(self) -> str:
        return _backend_of(self.gates[0])

    @property
    def in_dim(self) -> int:
        return self.gates[0].in_dim

    @property
    def out_dim(self) -> int:
        return self.gates[0].out_dim

    def __len__(self):
        return len(self.labels)


def gate_family(labels, gates) -> GateFamily:
    return GateFamily(tuple(labels), tuple(gates))


# -- verdicts and diagnostics -------------------------------------------------


@dataclass(frozen=True)
class DuplicatePair:
    x: str
    y: str


@dataclass(frozen=True)
class SharedOutcome:
    x: str
    y: str
    outcome: int


@dataclass(frozen=True)
class SupportOverlap:
    x: str
    y: str
    overlap: float


@dataclass(frozen=True)
class InfeasibleConditions:
    """Exact infeasibility of the defining affine conditions."""

    residual: Fraction


@dataclass(frozen=True)
class NotApplicable:
    reason: str


@dataclass(frozen=True)
class Decision:
    verdict: bool
    certificate: Any = None
    diagnostic: Any = None

    def __bool__(self):
        return self.verdict


# -- pairwise tests -----------------------------------------------------------


def _find_duplicates(family: StateFamily, tol: float) -> DuplicatePair | None:
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            a, b = family.states[i], family.states[j]
            if family.backend == FINSTOCH:
                same = a == b
            else:
                same = quantum.trace_distance(a, b) <= tol
            if same:
                return DuplicatePair(family.labels[i], family.labels[j])
    return None


def _shared_outcome(family: StateFamily) -> SharedOutcome | None:
    supports = [stochastic.support(s) for s in family.states]
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            common = supports[i] & supports[j]
            if common:
                return SharedOutcome(family.labels[i], family.labels[j], min(common))
    return None


def _max_overlap(family: StateFamily) -> SupportOverlap | None:
    projs = [quantum.support_projector(s) for s in family.states]
    worst = None
    for i in range(len(family)):
        for j in range(i + 1, len(family)):
            sv = np.linalg.svd(projs[i] @ projs[j], compute_uv=False)
            overlap = float(sv[0] ** 2) if sv.size else 0.0
            if worst is None or overlap > worst.overlap:
                worst = SupportOverlap(family.labels[i], family.labels[j], overlap)
    return worst


def pair_distinguishable(a, b, tol: float = DEFAULT_TOL) -> bool:
    """Distinguishability of a two-state family, without building certificates."""
    if _backend_of(a) != _backend_of(b):
        raise MixedBackends("states come from different backends")
    if isinstance(a, StochChannel):
        if a == b:
            return False
        return not (stochastic.support(a) & stochastic.support(b))
    if quantum.trace_distance(a, b) <= tol:
        return False
    pa = quantum.support_projector(a)
    pb = quantum.support_projector(b)
    sv = np.linalg.svd(pa @ pb, compute_uv=False)
    return float(sv[0] ** 2) <= tol if sv.size else True


# -- flag channels ------------------------------------------------------------


def _flag_channel_stoch(family: StateFamily) -> StochChannel:
    """Map each support outcome to its owner's label; strays go to label 0."""
    k, d = len(family), family.dim
    owner = {}
    for x, state in enumerate(family.states):
        for i in stochastic.support(state):
            owner[i] = x
    rows = [[stochastic.ZERO] * d for _ in range(k)]
    for i in range(d):
        rows[owner.get(i, 0)][i] = stochastic.ONE
    return StochChannel(tuple(tuple(r) for r in rows))


def _flag_channel_quantum(family: StateFamily) -> QChannel:
    """Measure the family's support projectors and prepare label states."""
    k, d = len(family), family.dim
    projs = [quantum.support_projector(s) for s in family.states]
    rest = np.eye(d) - sum(projs)
    povm = list(projs)
    povm[0] = povm[0] + rest      # strays count as the first label
    flags = [QState.from_ket(np.eye(k)[x]) for x in range(k)]
    return QChannel.measure_and_prepare(povm, flags)


def _stoch_flag_target(k: int, x: int) -> StochChannel:
    return StochChannel.point_mass(k, x)


def _verify_flag(family: StateFamily, flag, tol: float) -> None:
    k = len(family)
    for x, (label, state) in enumerate(family.items()):
        if family.backend == FINSTOCH:
            got = flag.apply(state)
            if got != _stoch_flag_target(k, x):
                raise InvariantViolation(f"flag channel fails on {label}")
        else:
            got = flag.apply(state)
            want = QState.from_ket(np.eye(k)[x])
            if quantum.trace_distance(got, want) > tol:
                raise InvariantViolation(f"flag channel fails on {label}")


def decide_distinguishable(family: StateFamily, tol: float = DEFAULT_TOL) -> Decision:
    """Perfect distinguishability, certified by a flag channel.

    YES exactly when some channel sends each member to a distinct label
    state. Stochastic families qualify when supports are pairwise
    disjoint; quantum families when support projectors are pairwise
    orthogonal under the spectral threshold. Duplicated states always
    give NO, with the pair named.
    """
    dup = _find_duplicates(family, tol)
    if dup is not None:
        return Decision(False, diagnostic=dup)
    if family.backend == FINSTOCH:
        clash = _shared_outcome(family)
        if clash is not None:
            return Decision(False, diagnostic=clash)
        flag = _flag_channel_stoch(family)
    else:
        worst = _max_overlap(family)
        if worst is not None and worst.overlap > tol:
            return Decision(False, diagnostic=worst)
        flag = _flag_channel_quantum(family)
    _verify_flag(family, flag, tol)
    return Decision(True, certificate=flag)


# -- programming --------------------------------------------------------------


def _controlled_stoch(gates: GateFamily) -> StochChannel:
    """Apply gate x when the first (control) factor reads x."""
    k = len(gates)
    d_b, d_out = gates.in_dim, gates.out_dim
    rows = [[stochastic.ZERO] * (k * d_b) for _ in range(d_out)]
    for x, g in enumerate(gates.gates):
        for i in range(d_out):
            for b in range(d_b):
                rows[i][x * d_b + b] = g.entries[i][b]
    return StochChannel(tuple(tuple(r) for r in rows))


def build_programmer(
    family: StateFamily, gates: GateFamily, tol: float = DEFAULT_TOL
) -> Any:
    """One machine that performs gate x when fed program state x.

    Returns W with W(rho_x (x) beta) = G_x(beta) for every x: the flag
    channel on the program wire followed by the classically controlled
    gate family. Exact in the stochastic backend, within `tol` on Choi
    entries in the quantum one.
    """
    if family.labels != gates.labels:
        raise IndexMismatch("state and gate families must share the index set")
    if family.backend != gates.backend:
        raise MixedBackends("state and gate families come from different backends")
    dec = decide_distinguishable(family, tol)
    if not dec:
        raise NotDistinguishable(f"family is not distinguishable: {dec.diagnostic}")
    flag = dec.certificate
    if family.backend == FINSTOCH:
        w = flag.tensor(StochChannel.identity(gates.in_dim)).then(_controlled_stoch(gates))
        for x, (label, state) in enumerate(family.items()):
            programmed = state.tensor(StochChannel.identity(gates.in_dim)).then(w)
            if programmed != gates.gates[x]:
                raise InvariantViolation(f"programmer fails on {label}")
        return w
    w = flag.tensor(QChannel.identity(gates.in_dim)).then(
        QChannel.classically_controlled(gates.gates)
    )
    for x, (label, state) in enumerate(family.items()):
        programmed = QChannel.prepare(state).tensor(QChannel.identity(gates.in_dim)).then(w)
        if quantum.channel_distance(programmed, gates.gates[x]) > tol:
            raise InvariantViolation(f"programmer fails on {label}")
    return w


def pullback_distinguishability(
    family: StateFamily, channel, image: StateFamily, tol: float = DEFAULT_TOL
) -> Decision:
    """Distinguishability of preimages under a verified mapping.

    Checks that `channel` sends each family member onto the matching
    image member, then composes the image family's flag channel behind
    `channel`. A YES certificate is that composite, which flags the
    preimages directly. When the image family is not distinguishable
    this route cannot certify anything and the image diagnostic is
    passed through.
    """
    if family.labels != image.labels:
        raise IndexMismatch("families must share the index set")
    if family.backend != image.backend:
        raise MixedBackends("families come from different backends")
    for label, state, target in zip(family.labels, family.states, image.states):
        if family.backend == FINSTOCH:
            ok = channel.apply(state) == target
        else:
            ok = quantum.trace_distance(channel.apply(state), target) <= tol
        if not ok:
            raise MappingMismatch(f"channel does not map {label} onto its image")
    image_dec = decide_distinguishable(image, tol)
    if not image_dec:
        return Decision(False, diagnostic=image_dec.diagnostic)
    composed = channel.then(image_dec.certificate)
    _verify_flag(family, composed, tol)
    return Decision(True, certificate=composed)


# -- copying ------------------------------------------------------------------


def decide_copiable(family: StateFamily, tol: float = DEFAULT_TOL) -> Decision:
    """Existence of one channel sending every member rho to rho (x) rho.

    Stochastic families are decided by exact feasibility of the copying
    conditions over the channel polytope; quantum families through the
    equivalence with distinguishability, certified by a measure-and-
    reprepare cloner. Families are read as sets: a duplicated pair gives
    NO with the pair named. The verdict is asserted to agree with
    decide_distinguishable.
    """
    dup = _find_duplicates(family, tol)
    if dup is not None:
        return Decision(False, diagnostic=dup)
    if family.backend == FINSTOCH:
        d = family.dim
        conditions = []
        for state in family.states:
            vec = state.as_vector()
            target = state.tensor(state).as_vector()
            conditions.extend(lp.maps_condition(vec, target))
        result, cloner = lp.channel_feasibility(d, d * d, conditions)
        if result.status is lp.LPStatus.OPTIMAL:
            for label, state in family.items():
                if cloner.apply(state) != state.tensor(state):
                    raise InvariantViolation(f"cloner fails on {label}")
            decision = Decision(True, certificate=cloner)
        else:
            decision = Decision(
                False, diagnostic=InfeasibleConditions(result.phase1_residual)
            )
        if decision.verdict != decide_distinguishable(family, tol).verdict:
            raise InvariantViolation(
                "copiability and distinguishability disagree on a stochastic family"
            )
        return decision
    dec = decide_distinguishable(family, tol)
    if not dec:
        return Decision(False, diagnostic=dec.diagnostic)
    projs = [quantum.support_projector(s) for s in family.states]
    rest = np.eye(family.dim) - sum(projs)
    povm = list(projs)
    povm[0] = povm[0] + rest
    doubles = [QState(np.kron(s.mat, s.mat)) for s in family.states]
    cloner = QChannel.measure_and_prepare(povm, doubles)
    for label, state in family.items():
        got = cloner.apply(state)
        want = QState(np.kron(state.mat, state.mat))
        if quantum.trace_distance(got, want) > tol:
            raise InvariantViolation(f"cloner fails on {label}")
    return Decision(True, certificate=cloner)


# -- side information ---------------------------------------------------------


@dataclass(frozen=True)
class SideInfoReport:
    """Environment states produced next to each preserved input."""

    labels: tuple[str, ...]
    etas: tuple[Any, ...]
    generated: bool
    faithful: bool
    env_dim: int

    def eta(self, label: str):
        return self.etas[self.labels.index(label)]


def _split_env_dim(channel, dim: int) -> int:
    out = channel.out_dim
    if channel.in_dim != dim or out % dim != 0:
        raise DimensionMismatch(
            f"channel {channel.out_dim}x{channel.in_dim} is not of the form A -> A*E "
            f"for a {dim}-dimensional A"
        )
    return out // dim


def _states_differ(a, b, backend: str, tol: float) -> bool:
    if backend == FINSTOCH:
        return a != b
    return quantum.trace_distance(a, b) > tol


def check_side_info(channel, family: StateFamily, tol: float = DEFAULT_TOL) -> SideInfoReport:
    """Verify the side-information equation and report the environment states.

    For each member the channel's joint output must leave the input
    marginal intact and factorize as rho_x (x) eta_x; any member that
    fails raises FactorizationFailure. The report says whether side
    information is generated at all (two environment states differ) and
    whether it is faithful (all differ).
    """
    d = family.dim
    e = _split_env_dim(channel, d)
    if family.backend == FINSTOCH:
        if not stochastic.check_causal(channel):
            raise NotCausal("channel is not column-stochastic")
        etas = []
        for label, state in family.items():
            joint = channel.apply(state)
            kept = stochastic.marginal(joint, (d, e), 0)
            if kept != state:
                raise FactorizationFailure(
                    f"channel disturbs {label}: input marginal is not preserved"
                )
            eta = stochastic.marginal(joint, (d, e), 1)
            if joint != state.tensor(eta):
                raise FactorizationFailure(
                    f"joint output on {label} is correlated, not a product"
                )
            etas.append(eta)
    else:
        if not quantum.check_cptp(channel):
            raise NotCausal("channel is not CPTP")
        etas = []
        for label, state in family.items():
            joint = channel.apply(state)
            kept = quantum.marginal(joint, (d, e), 0)
            if quantum.trace_distance(kept, state) > tol:
                raise FactorizationFailure(
                    f"channel disturbs {label}: input marginal is not preserved"
                )
            eta = quantum.marginal(joint, (d, e), 1)
            if float(np.abs(joint.mat - np.kron(state.mat, eta.mat)).max()) > tol:
                raise FactorizationFailure(
                    f"joint output on {label} is correlated, not a product"
                )
            etas.append(eta)
    backend = family.backend
    pairs = [
        (i, j) for i in range(len(etas)) for j in range(i + 1, len(etas))
    ]
    generated = any(_states_differ(etas[i], etas[j], backend, tol) for i, j in pairs)
    faithful = bool(pairs) and all(
        _states_differ(etas[i], etas[j], backend, tol) for i, j in pairs
    )
    return SideInfoReport(
        labels=family.labels,
        etas=tuple(etas),
        generated=generated,
        faithful=faithful,
        env_dim=e,
    )


def find_faithful_side_info(family: StateFamily, tol: float = DEFAULT_TOL) -> Decision:
    """Existence of a channel generating faithful side information.

    The stochastic backend searches, by exact feasibility, for a channel
    that preserves each member and emits its label state on the side;
    the quantum backend answers through the equivalence with
    distinguishability and certifies with a nondestructive support
    measurement. Families with fewer than two members are reported as
    not applicable (faithfulness needs two distinct environment states).
    """
    k = len(family)
    if k < 2:
        return Decision(
            False, diagnostic=NotApplicable("faithful side information needs two states")
        )
    d = family.dim
    distinct: list = []
    for s in family.states:
        if all(_states_differ(s, t, family.backend, tol) for t in distinct):
            distinct.append(s)
    distinct_count = len(distinct)
    if family.backend == FINSTOCH:
        conditions = []
        for x, state in enumerate(family.states):
            vec = state.as_vector()
            target = state.tensor(_stoch_flag_target(k, x)).as_vector()
            conditions.extend(lp.maps_condition(vec, target))
        result, channel = lp.channel_feasibility(d, d * k, conditions)
        if result.status is lp.LPStatus.OPTIMAL:
            report = check_side_info(channel, family, tol)
            if not report.faithful:
                raise InvariantViolation("synthesized side-info channel is not faithful")
            decision = Decision(True, certificate=channel)
        else:
            decision = Decision(
                False, diagnostic=InfeasibleConditions(result.phase1_residual)
            )
    else:
        dec = decide_distinguishable(family, tol)
        if not dec:
            decision = Decision(False, diagnostic=dec.diagnostic)
        else:
            projs = [quantum.support_projector(s) for s in family.states]
            rest = np.eye(d, dtype=complex) - sum(projs)
            eigs, vecs = np.linalg.eigh((rest + rest.conj().T) / 2)
            root = (vecs * np.sqrt(np.clip(eigs, 0, None))) @ vecs.conj().T
            kraus = [np.kron(p, np.eye(k)[:, [x]]) for x, p in enumerate(projs)]
            kraus.append(np.kron(root, np.eye(k)[:, [0]]))
            channel = QChannel.from_kraus(kraus, d, d * k)
            report = check_side_info(channel, family, tol)
            if not report.faithful:
                raise InvariantViolation("synthesized side-info channel is not faithful")
            decision = Decision(True, certificate=channel)
    if distinct_count >= 2:
        if decision.verdict != decide_distinguishable(family, tol).verdict:
            raise InvariantViolation(
                "faithful side information and distinguishability disagree"
            )
    return decision


def iterate_side_info(channel, family: StateFamily, n: int, tol: float = DEFAULT_TOL):
    """Apply a side-information channel n times along the preserved wire.

    Returns the n-fold channel, checked to send each member rho_x to
    rho_x (x) eta_x^(x n).
    """
    if n < 1:
        raise DimensionMismatch("n must be at least 1")
    report = check_side_info(channel, family, tol)
    d = family.dim
    e = report.env_dim
    if family.backend == FINSTOCH:
        iterated = channel
        for m in range(1, n):
            iterated = iterated.then(channel.tensor(StochChannel.identity(e ** m)))
        for x, (label, state) in enumerate(family.items()):
            expected = state
            for _ in range(n):
                expected = expected.tensor(report.etas[x])
            if iterated.apply(state) != expected:
                raise InvariantViolation(f"iterated side info fails on {label}")
        return iterated
    iterated = channel
    for m in range(1, n):
        iterated = iterated.then(channel.tensor(QChannel.identity(e ** m)))
    for x, (label, state) in enumerate(family.items()):
        expected = state.mat
        for _ in range(n):
            expected = np.kron(expected, report.etas[x].mat)
        got = iterated.apply(state)
        if float(np.abs(got.mat - expected).max()) > tol:
            raise InvariantViolation(f"iterated side info fails on {label}")
    return iterated


# -- confusability ------------------------------------------------------------


@dataclass(frozen=True)
class ConfusabilityGraph:
    """Vertices are labels; edges join pairs that are not distinguishable."""

    labels: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    components: tuple[tuple[str, ...], ...]

    def component_of(self, label: str) -> int:
        for k, comp in enumerate(self.components):
            if label in comp:
                return k
        raise KeyError(label)

    def to_dot(self) -> str:
        lines = ["graph confusability {"]
        for label in self.labels:
            lines.append(f'  "{label}";')
        for x, y in self.edges:
            lines.append(f'  "{x}" -- "{y}";')
        lines.append("}")
        return "\n".join(lines) + "\n"


def confusability(family: StateFamily, tol: float = DEFAULT_TOL) -> ConfusabilityGraph:
    """Pairwise distinguishability graph with its connected components."""
    k = len(family)
    edges = []
    adjacency = {i: set() for i in range(k)}
    for i in range(k):
        for j in range(i + 1, k):
            if not pair_distinguishable(family.states[i], family.states[j], tol):
                edges.append((family.labels[i], family.labels[j]))
                adjacency[i].add(j)
                adjacency[j].add(i)
    seen = set()
    components = []
    for i in range(k):
        if i in seen:
            continue
        queue, comp = [i], []
        seen.add(i)
        while queue:
            v = queue.pop(0)
            comp.append(v)
            for w in sorted(adjacency[v]):
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        components.append(tuple(family.labels[v] for v in sorted(comp)))
    return ConfusabilityGraph(family.labels, tuple(edges), tuple(components))


@dataclass(frozen=True)
class ConstancyReport:
    """Whether the environment state is constant on every component."""

    ok: bool
    components: tuple[tuple[str, ...], ...]
    component_etas: tuple[Any, ...] | None = None
    violating_pair: tuple[str, str] | None = None

    def __bool__(self):
        return self.ok


def constancy_from_etas(
    components, labels, etas, backend: str, tol: float = DEFAULT_TOL
) -> ConstancyReport:
    """Core comparison: one environment state per connected component."""
    index = {label: i for i, label in enumerate(labels)}
    per_component = []
    for comp in components:
        first = comp[0]
        for other in comp[1:]:
            if _states_differ(etas[index[first]], etas[index[other]], backend, tol):
                return ConstancyReport(
                    False, tuple(components), violating_pair=(first, other)
                )
        per_component.append(etas[index[first]])
    return ConstancyReport(True, tuple(components), component_etas=tuple(per_component))


def check_component_constancy(
    channel, family: StateFamily, tol: float = DEFAULT_TOL
) -> ConstancyReport:
    """Environment states of a side-information channel, keyed by component.

    A False report on a channel that passes check_side_info would
    falsify the component-constancy proposition; the report names the
    violating pair so the suite can fail loudly.
    """
    report = check_side_info(channel, family, tol)
    graph = confusability(family, tol)
    return constancy_from_etas(
        graph.components, family.labels, report.etas, family.backend, tol
    )


# -- information versus disturbance -------------------------------------------


@dataclass(frozen=True)
class NoInfoReport:
    disturbance: tuple[Any, Any]     # distance of the preserved marginal per input
    info: Any                        # distance between the two environment marginals
    etas: tuple[Any, Any]
    nodisturb: bool
    distinguishable: bool
    factorized: tuple[bool, bool]
    consistent: bool


def verify_no_info(channel, alpha0, alpha1, tol: float = DEFAULT_TOL) -> NoInfoReport:
    """Check one eavesdropping channel against two pure inputs.

    Reports the disturbance of each input (distance between the
    preserved marginal and the input), the information leaked (distance
    between the two environment marginals), and whether the joint output
    factorizes whenever the input is undisturbed. If the channel is
    exactly nondisturbing on a non-distinguishable pure pair, leaked
    information must vanish; a violation raises, since it would falsify
    the no-information-without-disturbance proposition.
    """
    backend = _backend_of(alpha0)
    if backend != _backend_of(alpha1):
        raise MixedBackends("states come from different backends")
    if backend == FINSTOCH:
        if not stochastic.is_pure_state(alpha0) or not stochastic.is_pure_state(alpha1):
            raise NotPure("both inputs must be pure")
        if not stochastic.check_causal(channel):
            raise NotCausal("channel is not column-stochastic")
        d = alpha0.out_dim
        e = _split_env_dim(channel, d)
        kept, etas, dist, factor = [], [], [], []
        for alpha in (alpha0, alpha1):
            joint = channel.apply(alpha)
            a_marg = stochastic.marginal(joint, (d, e), 0)
            eta = stochastic.marginal(joint, (d, e), 1)
            dist.append(stochastic.total_variation(a_marg, alpha))
            etas.append(eta)
            factor.append(joint == alpha.tensor(eta))
        info = stochastic.total_variation(etas[0], etas[1])
        nodisturb = dist[0] == 0 and dist[1] == 0
    else:
        if not quantum.is_pure_state(alpha0) or not quantum.is_pure_state(alpha1):
            raise NotPure("both inputs must be pure")
        if not quantum.check_cptp(channel):
            raise NotCausal("channel is not CPTP")
        d = alpha0.dim
        e = _split_env_dim(channel, d)
        etas, dist, factor = [], [], []
        for alpha in (alpha0, alpha1):
            joint = channel.apply(alpha)
            a_marg = quantum.marginal(joint, (d, e), 0)
            eta = quantum.marginal(joint, (d, e), 1)
            dist.append(quantum.trace_distance(a_marg, alpha))
            etas.append(eta)
            factor.append(
                float(np.abs(joint.mat - np.kron(alpha.mat, eta.mat)).max()) <= tol
            )
        info = quantum.trace_distance(etas[0], etas[1])
        nodisturb = dist[0] <= tol and dist[1] <= tol
    distinguishable = pair_distinguishable(alpha0, alpha1, tol)
    consistent = True
    if nodisturb and not distinguishable and info > tol:
        raise InvariantViolation(
            "information extracted without disturbance from a non-distinguishable pair"
        )
    return NoInfoReport(
        disturbance=(dist[0], dist[1]),
        info=info,
        etas=(etas[0], etas[1]),
        nodisturb=nodisturb,
        distinguishable=distinguishable,
        factorized=(factor[0], factor[1]),
        consistent=consistent,
    )
