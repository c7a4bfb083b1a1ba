"""Seeded generators for states, channels, families, and fixtures.

Everything here is deterministic given its seed or generator argument.
The stochastic generators use the standard library RNG and produce
exact rationals with bounded denominators; the quantum generators use
numpy and produce valid states and channels up to double precision.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np

from .quantum import QChannel, QState
from .stochastic import StochChannel
from .tasks import StateFamily

CORPUS_SEED = 74
CORPUS_SIZE = 200


def rational_state(rng: random.Random, dim: int, max_den: int = 8, support=None):
    """A probability vector with entry denominators at most max_den."""
    if support is None:
        size = rng.randint(1, dim)
        support = sorted(rng.sample(range(dim), size))
    den = rng.randint(1, max_den)
    cuts = sorted(rng.randint(0, den) for _ in range(len(support) - 1))
    parts = []
    prev = 0
    for c in list(cuts) + [den]:
        parts.append(c - prev)
        prev = c
    vec = [Fraction(0)] * dim
    for pos, part in zip(support, parts):
        vec[pos] = Fraction(part, den)
    return StochChannel.state(vec)


def random_causal_channel(rng: random.Random, in_dim: int, out_dim: int, max_den: int = 8):
    """A column-stochastic matrix with random rational columns."""
    cols = [rational_state(rng, out_dim, max_den).as_vector() for _ in range(in_dim)]
    rows = tuple(tuple(col[i] for col in cols) for i in range(out_dim))
    return StochChannel(rows)


def _partition(rng: random.Random, items: list, parts: int) -> list[list]:
    """Split items into `parts` nonempty groups, preserving order."""
    if parts > len(items):
        raise ValueError("more parts than items")
    cuts = sorted(rng.sample(range(1, len(items)), parts - 1)) if parts > 1 else []
    groups = []
    prev = 0
    for c in list(cuts) + [len(items)]:
        groups.append(items[prev:c])
        prev = c
    return groups


def finstoch_family(rng: random.Random, dim: int, count: int, max_den: int = 8) -> StateFamily:
    """A random family; roughly half are built distinguishable by blocks."""
    labels = tuple(f"s{i}" for i in range(count))
    roll = rng.random()
    if roll < 0.45 and count <= dim:
        blocks = _partition(rng, list(range(dim)), count)
        states = [rational_state(rng, dim, max_den, support=b) for b in blocks]
    elif roll < 0.9:
        states = [rational_state(rng, dim, max_den) for _ in range(count)]
    else:
        states = [rational_state(rng, dim, max_den) for _ in range(count - 1)]
        states.append(states[rng.randrange(count - 1)])
    return StateFamily(labels, tuple(states))


def finstoch_family_corpus(seed: int = CORPUS_SEED, size: int = CORPUS_SIZE):
    """The fixed pseudo-random family corpus used by the acceptance suite."""
    rng = random.Random(seed)
    out = []
    for _ in range(size):
        dim = rng.randint(2, 5)
        count = rng.randint(2, 4)
        out.append(finstoch_family(rng, dim, count))
    return out


# -- fixture builders ---------------------------------------------------------


def component_sideinfo_fixture(rng: random.Random, max_den: int = 8):
    """A family with known confusability components and a valid side channel.

    Outcomes are partitioned into blocks, one per component. Inside a
    block the states form an overlap chain (consecutive states share an
    outcome), so the component is connected; across blocks supports are
    disjoint. The channel copies the outcome and classifies it to a
    per-block environment state, so it generates side information with
    one environment state per component.
    """
    n_comp = rng.randint(2, 3)
    counts = [rng.randint(1, 3) for _ in range(n_comp)]
    block_sizes = [max(2, c + 1) for c in counts]
    dim = sum(block_sizes)
    blocks = []
    start = 0
    for size in block_sizes:
        blocks.append(list(range(start, start + size)))
        start += size

    labels = []
    states = []
    comp_of_outcome = {}
    expected_components = []
    for k, (block, count) in enumerate(zip(blocks, counts)):
        for o in block:
            comp_of_outcome[o] = k
        members = []
        for j in range(count):
            label = f"c{k}s{j}"
            labels.append(label)
            members.append(label)
            if count == 1:
                support = block
            else:
                support = [block[j], block[j + 1]]
            vec = [Fraction(0)] * dim
            # force mass on both chain outcomes so consecutive states overlap
            den = rng.randint(2, max_den)
            first = rng.randint(1, den - 1) if len(support) > 1 else den
            vec[support[0]] = Fraction(first, den)
            if len(support) > 1:
                vec[support[1]] = Fraction(den - first, den)
            states.append(StochChannel.state(vec))
        expected_components.append(tuple(sorted(members)))

    env_dim = n_comp
    rows = [[Fraction(0)] * dim for _ in range(dim * env_dim)]
    for a in range(dim):
        rows[a * env_dim + comp_of_outcome[a]][a] = Fraction(1)
    channel = StochChannel(tuple(tuple(r) for r in rows))
    family = StateFamily(tuple(labels), tuple(states))
    return family, channel, tuple(expected_components)


def pullback_fixture(rng: random.Random, max_den: int = 8):
    """Preimage states, a mapping channel, and the distinguishable images.

    Input outcomes are grouped per label and each group is mapped into
    its own disjoint output block, so the image family is
    distinguishable by construction and the mapping holds exactly.
    """
    count = rng.randint(2, 4)
    in_dim = rng.randint(count, 6)
    out_dim = rng.randint(count, 6)
    groups = _partition(rng, list(range(in_dim)), count)
    blocks = _partition(rng, list(range(out_dim)), count)
    cols = [None] * in_dim
    for g, b in zip(groups, blocks):
        for a in g:
            cols[a] = rational_state(rng, out_dim, max_den, support=b).as_vector()
    mapping = StochChannel(
        tuple(tuple(col[i] for col in cols) for i in range(out_dim))
    )
    labels = tuple(f"s{i}" for i in range(count))
    pre = [rational_state(rng, in_dim, max_den, support=g) for g in groups]
    family = StateFamily(labels, tuple(pre))
    image = StateFamily(labels, tuple(mapping.apply(s) for s in pre))
    return family, mapping, image


# -- quantum generators -------------------------------------------------------


def random_ket(rng: np.random.Generator, dim: int) -> np.ndarray:
    v = rng.normal(size=dim) + 1j * rng.normal(size=dim)
    return v / np.linalg.norm(v)


def random_pure(rng: np.random.Generator, dim: int) -> QState:
    return QState.from_ket(random_ket(rng, dim))


def random_density(rng: np.random.Generator, dim: int, rank: int | None = None) -> QState:
    rank = rank or dim
    a = rng.normal(size=(dim, rank)) + 1j * rng.normal(size=(dim, rank))
    m = a @ a.conj().T
    return QState(m / m.trace())


def random_unitary(rng: np.random.Generator, dim: int) -> np.ndarray:
    a = rng.normal(size=(dim, dim)) + 1j * rng.normal(size=(dim, dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_isometry(rng: np.random.Generator, in_dim: int, out_dim: int) -> np.ndarray:
    if out_dim < in_dim:
        raise ValueError("an isometry needs out_dim >= in_dim")
    a = rng.normal(size=(out_dim, in_dim)) + 1j * rng.normal(size=(out_dim, in_dim))
    q, r = np.linalg.qr(a)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_cptp(rng: np.random.Generator, in_dim: int, out_dim: int, env_dim: int = 2) -> QChannel:
    """A channel from a random Stinespring isometry, environment discarded."""
    v = random_isometry(rng, in_dim, out_dim * env_dim)
    v3 = v.reshape(out_dim, env_dim, in_dim)
    kraus = [v3[:, e, :] for e in range(env_dim)]
    return QChannel.from_kraus(kraus, in_dim, out_dim)


def pure_pair_with_overlap(rng: np.random.Generator, overlap: float, dim: int = 2):
    """Two pure states with |<a0|a1>| equal to `overlap`, in a random basis."""
    u = random_unitary(rng, dim)
    k0 = u[:, 0]
    k1 = overlap * u[:, 0] + np.sqrt(max(0.0, 1 - overlap ** 2)) * u[:, 1]
    phase = np.exp(2j * np.pi * rng.random())
    return QState.from_ket(k0), QState.from_ket(phase * k1)


def nondisturbing_channel(
    rng: np.random.Generator,
    alpha0: QState,
    alpha1: QState,
    env_dim: int = 2,
    mixture: int = 1,
) -> QChannel:
    """An exactly nondisturbing eavesdropper for a pure pair.

    Each branch acts as psi -> psi (x) phi on the span of the two
    inputs; when the inputs are not orthogonal, linearity forces a
    single environment state per branch, so the construction cannot
    leak. Off the span each branch acts with an independent isometry
    into the orthogonal complement of the span's image. A `mixture` of
    several branches gives a mixed environment marginal.
    """
    d = alpha0.dim
    eigs0, vecs0 = np.linalg.eigh(alpha0.mat)
    eigs1, vecs1 = np.linalg.eigh(alpha1.mat)
    a0 = vecs0[:, -1]
    a1 = vecs1[:, -1]
    basis = [a0]
    residual = a1 - (a0.conj() @ a1) * a0
    span_dim = 1
    if np.linalg.norm(residual) > 1e-12:
        basis.append(residual / np.linalg.norm(residual))
        span_dim = 2
    span = np.stack(basis, axis=1)
    # orthonormal completion of the span inside the input space
    full = span
    for i in range(d):
        cand = np.eye(d)[:, i].astype(complex)
        cand = cand - full @ (full.conj().T @ cand)
        norm = np.linalg.norm(cand)
        if norm > 1e-9:
            full = np.concatenate([full, (cand / norm)[:, None]], axis=1)
    comp = full[:, span_dim:]

    kraus = []
    weights = rng.dirichlet(np.ones(mixture)) if mixture > 1 else np.array([1.0])
    for w in weights:
        phi = random_ket(rng, env_dim)
        v = np.zeros((d * env_dim, d), dtype=complex)
        for col in range(span_dim):
            v[:, :] += np.outer(np.kron(span[:, col], phi), span[:, col].conj())
        for j in range(comp.shape[1]):
            phi_j = random_ket(rng, env_dim)
            v += np.outer(np.kron(comp[:, j], phi_j), comp[:, j].conj())
        kraus.append(np.sqrt(w) * v)
    return QChannel.from_kraus(kraus, d, d * env_dim)


def measure_resend_channel(dim: int = 2) -> QChannel:
    """Measure in the computational basis, resend the outcome, keep a flag."""
    kraus = []
    for z in range(dim):
        ket = np.eye(dim)[:, z].astype(complex)
        k = np.outer(np.kron(ket, ket), ket.conj())
        kraus.append(k)
    return QChannel.from_kraus(kraus, dim, dim * dim)
