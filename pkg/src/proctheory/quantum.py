"""Finite-dimensional quantum semantics: density matrices and Choi matrices.

States are density matrices. A channel from dimension ``d_in`` to
``d_out`` is stored as its Choi matrix

    J = sum_ij E_ij (x) G(E_ij)

over the matrix units E_ij of the input space, so the input factor
comes first and J has side ``d_in * d_out``. Complete positivity is
positivity of J; trace preservation is that the partial trace of J over
the output factor equals the identity on the input.

All arithmetic is double precision. Spectral decisions (support, rank)
use a relative threshold of RANK_REL times the largest eigenvalue with
an absolute floor of RANK_ABS.
"""

from __future__ import annotations

from dataclasses import InitVar, dataclass

import numpy as np

from . import circuit
from .errors import (
    CPTPViolation,
    DimensionMismatch,
    NotAProductType,
    UnboundGenerator,
)

HERM_ATOL = 1e-12        # hermiticity of states
TRACE_ATOL = 1e-12       # unit trace of states
EIG_FLOOR = -1e-10       # smallest tolerated eigenvalue of states and Choi matrices
TP_ATOL = 1e-10          # trace preservation of channels
RANK_REL = 1e-9          # relative eigenvalue threshold for rank decisions
RANK_ABS = 1e-12         # absolute floor for rank decisions


def _as_matrix(mat) -> np.ndarray:
    out = np.array(mat, dtype=complex)
    if out.ndim != 2 or out.shape[0] != out.shape[1]:
        raise DimensionMismatch(f"expected a square matrix, got shape {out.shape}")
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class QState:
    """A density matrix."""

    mat: np.ndarray
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        object.__setattr__(self, "mat", _as_matrix(self.mat))
        if validate:
            m = self.mat
            if np.abs(m - m.conj().T).max() > HERM_ATOL:
                raise CPTPViolation("state is not Hermitian")
            if abs(m.trace() - 1) > TRACE_ATOL:
                raise CPTPViolation(f"state trace is {m.trace():.6g}, not 1")
            if np.linalg.eigvalsh(m).min() < EIG_FLOOR:
                raise CPTPViolation("state has a negative eigenvalue")

    @classmethod
    def from_ket(cls, amplitudes) -> QState:
        v = np.array(amplitudes, dtype=complex).reshape(-1)
        norm = np.linalg.norm(v)
        if norm == 0:
            raise DimensionMismatch("zero ket")
        v = v / norm
        return cls(np.outer(v, v.conj()))

    @property
    def dim(self) -> int:
        return self.mat.shape[0]

    def eigenvalues(self) -> np.ndarray:
        return np.linalg.eigvalsh((self.mat + self.mat.conj().T) / 2)

    def __eq__(self, other):
        return isinstance(other, QState) and self.mat.shape == other.mat.shape and bool(
            np.array_equal(self.mat, other.mat)
        )

    def __hash__(self):
        return hash(self.mat.tobytes())


def check_state(rho: QState) -> bool:
    """All three state invariants: Hermitian, positive, unit trace."""
    m = rho.mat
    if np.abs(m - m.conj().T).max() > HERM_ATOL:
        return False
    if abs(m.trace() - 1) > TRACE_ATOL:
        return False
    return bool(np.linalg.eigvalsh((m + m.conj().T) / 2).min() >= EIG_FLOOR)


def rank_threshold(eigs: np.ndarray) -> float:
    top = float(np.abs(eigs).max()) if eigs.size else 0.0
    return max(RANK_REL * top, RANK_ABS)


def numerical_rank(m: np.ndarray) -> int:
    eigs = np.linalg.eigvalsh((m + m.conj().T) / 2)
    return int(np.sum(eigs > rank_threshold(eigs)))


def support_projector(rho: QState) -> np.ndarray:
    """Projector onto the eigenspaces above the spectral threshold."""
    eigs, vecs = np.linalg.eigh((rho.mat + rho.mat.conj().T) / 2)
    cut = rank_threshold(eigs)
    cols = vecs[:, eigs > cut]
    return cols @ cols.conj().T


def is_pure_state(rho: QState) -> bool:
    """Purity as numerical rank one.

    A rank-one state forces every joint state with that marginal to
    factorize, while any mixed state has a correlated purification, so
    rank one is exactly the no-nontrivial-extensions condition.
    """
    return numerical_rank(rho.mat) == 1


def trace_distance(a: QState, b: QState) -> float:
    diff = a.mat - b.mat
    eigs = np.linalg.eigvalsh((diff + diff.conj().T) / 2)
    return float(np.abs(eigs).sum() / 2)


def partial_trace(mat: np.ndarray, dims, keep) -> np.ndarray:
    """Trace out all factors except `keep` (an index or sorted index list)."""
    dims = tuple(dims)
    total = int(np.prod(dims))
    if mat.shape != (total, total):
        raise NotAProductType(f"matrix of side {mat.shape[0]} is not a product of {dims}")
    keep_idx = (keep,) if isinstance(keep, int) else tuple(keep)
    n = len(dims)
    if any(k < 0 or k >= n for k in keep_idx) or len(set(keep_idx)) != len(keep_idx):
        raise NotAProductType(f"bad factor selection {keep_idx} for {n} factors")
    t = mat.reshape(dims + dims)
    # contract discarded row/col axis pairs, rightmost first to keep axes stable
    for k in sorted(set(range(n)) - set(keep_idx), reverse=True):
        t = np.trace(t, axis1=k, axis2=k + (t.ndim // 2))
    side = int(np.prod([dims[k] for k in keep_idx])) if keep_idx else 1
    return t.reshape(side, side)


def marginal(rho: QState, dims, keep) -> QState:
    return QState(partial_trace(rho.mat, dims, keep))


@dataclass(frozen=True)
class QChannel:
    """A completely positive trace-preserving map stored as a Choi matrix."""

    in_dim: int
    out_dim: int
    choi: np.ndarray
    validate: InitVar[bool] = True

    def __post_init__(self, validate):
        j = np.array(self.choi, dtype=complex)
        side = self.in_dim * self.out_dim
        if j.shape != (side, side):
            raise DimensionMismatch(
                f"Choi matrix has shape {j.shape}, expected {(side, side)}"
            )
        j.setflags(write=False)
        object.__setattr__(self, "choi", j)
        if validate and not check_cptp(self):
            raise CPTPViolation(
                f"matrix is not a valid {self.out_dim}x{self.in_dim} channel"
            )

    # -- constructors ------------------------------------------------------
    @classmethod
    def from_kraus(cls, kraus, in_dim: int, out_dim: int) -> QChannel:
        j4 = np.zeros((in_dim, out_dim, in_dim, out_dim), dtype=complex)
        for k in kraus:
            k = np.asarray(k, dtype=complex)
            if k.shape != (out_dim, in_dim):
                raise DimensionMismatch(
                    f"Kraus operator has shape {k.shape}, expected {(out_dim, in_dim)}"
                )
            j4 += np.einsum("mi,nj->imjn", k, k.conj())
        return cls(in_dim, out_dim, j4.reshape(in_dim * out_dim, in_dim * out_dim))

    @classmethod
    def from_unitary(cls, u) -> QChannel:
        u = np.asarray(u, dtype=complex)
        return cls.from_kraus([u], u.shape[1], u.shape[0])

    @classmethod
    def from_isometry(cls, v) -> QChannel:
        v = np.asarray(v, dtype=complex)
        return cls.from_kraus([v], v.shape[1], v.shape[0])

    @classmethod
    def identity(cls, dim: int) -> QChannel:
        return cls.from_kraus([np.eye(dim)], dim, dim)

    @classmethod
    def discard(cls, dim: int) -> QChannel:
        return cls(dim, 1, np.eye(dim, dtype=complex))

    @classmethod
    def prepare(cls, rho: QState) -> QChannel:
        return cls(1, rho.dim, rho.mat)

    @classmethod
    def swap(cls, dim_left: int, dim_right: int) -> QChannel:
        n = dim_left * dim_right
        u = np.zeros((n, n), dtype=complex)
        for a in range(dim_left):
            for b in range(dim_right):
                u[b * dim_left + a, a * dim_right + b] = 1
        return cls.from_unitary(u)

    @classmethod
    def classically_controlled(cls, gates) -> QChannel:
        """Measure a control factor in its basis and apply the matching gate.

        The control is the first tensor factor of the input; `gates` lists
        one channel per control value, all with equal in/out dimensions.
        """
        gates = list(gates)
        k = len(gates)
        d_b = gates[0].in_dim
        d_out = gates[0].out_dim
        if any(g.in_dim != d_b or g.out_dim != d_out for g in gates):
            raise DimensionMismatch("controlled gates must share in/out dimensions")
        d_in = k * d_b
        j4 = np.zeros((d_in, d_out, d_in, d_out), dtype=complex)
        for x, g in enumerate(gates):
            g4 = g.choi.reshape(d_b, d_out, d_b, d_out)
            j4[x * d_b:(x + 1) * d_b, :, x * d_b:(x + 1) * d_b, :] = g4
        return cls(d_in, d_out, j4.reshape(d_in * d_out, d_in * d_out))

    @classmethod
    def measure_and_prepare(cls, povm, outputs) -> QChannel:
        """sum_x Tr(P_x rho) sigma_x for a complete POVM and output states."""
        povm = [np.asarray(p, dtype=complex) for p in povm]
        if len(povm) != len(outputs):
            raise DimensionMismatch("one output state per POVM element")
        d_in = povm[0].shape[0]
        d_out = outputs[0].dim
        j4 = np.zeros((d_in, d_out, d_in, d_out), dtype=complex)
        for p, sigma in zip(povm, outputs):
            # Tr(P E_ij) = P[j, i]
            j4 += np.einsum("ji,mn->imjn", p, sigma.mat)
        return cls(d_in, d_out, j4.reshape(d_in * d_out, d_in * d_out))

    # -- actions -----------------------------------------------------------
    def _j4(self) -> np.ndarray:
        return self.choi.reshape(self.in_dim, self.out_dim, self.in_dim, self.out_dim)

    def apply_matrix(self, mat: np.ndarray) -> np.ndarray:
        if mat.shape != (self.in_dim, self.in_dim):
            raise DimensionMismatch(
                f"state of dimension {mat.shape[0]} fed to a {self.in_dim}-input channel"
            )
        return np.einsum("ij,imjn->mn", mat, self._j4())

    def apply(self, rho: QState) -> QState:
        return QState(self.apply_matrix(rho.mat))

    def then(self, other: QChannel) -> QChannel:
        """Sequential composition, self first (the Choi link product)."""
        if other.in_dim != self.out_dim:
            raise DimensionMismatch(
                f"cannot compose {self.out_dim} outputs into {other.in_dim} inputs"
            )
        j4 = np.einsum("imjn,mpnq->ipjq", self._j4(), other._j4())
        side = self.in_dim * other.out_dim
        return QChannel(self.in_dim, other.out_dim, j4.reshape(side, side), validate=False)

    def tensor(self, other: QChannel) -> QChannel:
        """Parallel composition, reshuffled to canonical wire order."""
        j8 = np.einsum("imjn,IMJN->iImMjJnN", self._j4(), other._j4())
        d_in = self.in_dim * other.in_dim
        d_out = self.out_dim * other.out_dim
        return QChannel(
            d_in, d_out, j8.reshape(d_in * d_out, d_in * d_out), validate=False
        )

    def __eq__(self, other):
        return (
            isinstance(other, QChannel)
            and self.in_dim == other.in_dim
            and self.out_dim == other.out_dim
            and bool(np.array_equal(self.choi, other.choi))
        )

    def __hash__(self):
        return hash((self.in_dim, self.out_dim, self.choi.tobytes()))


def check_cptp(ch: QChannel) -> bool:
    """Both channel invariants: Choi positivity and trace preservation."""
    j = ch.choi
    if np.abs(j - j.conj().T).max() > TP_ATOL:
        return False
    if np.linalg.eigvalsh((j + j.conj().T) / 2).min() < EIG_FLOOR:
        return False
    tr_out = np.einsum("imjm->ij", ch._j4())
    return bool(np.abs(tr_out - np.eye(ch.in_dim)).max() <= TP_ATOL)


def is_pure_gate(ch: QChannel) -> bool:
    """Purity as Choi rank one, i.e. the channel is an isometry."""
    return numerical_rank(ch.choi) == 1


def channel_distance(a: QChannel, b: QChannel) -> float:
    """Largest entrywise Choi difference; zero iff the channels are equal."""
    if (a.in_dim, a.out_dim) != (b.in_dim, b.out_dim):
        raise DimensionMismatch("channels have different types")
    return float(np.abs(a.choi - b.choi).max())


def evaluate(d: circuit.Diagram, env: dict[str, QChannel]) -> QChannel:
    """Evaluate a diagram against generator bindings.

    Generator payloads are revalidated against the channel invariants;
    a bad payload raises CPTPViolation.
    """
    if isinstance(d, circuit.Gen):
        if d.name not in env:
            raise UnboundGenerator(f"generator {d.name!r} is not bound")
        ch = env[d.name]
        if ch.in_dim != d.in_type.dim or ch.out_dim != d.out_type.dim:
            raise DimensionMismatch(
                f"generator {d.name!r} is {ch.out_dim}x{ch.in_dim}, "
                f"declared {d.out_type.dim}x{d.in_type.dim}"
            )
        if not check_cptp(ch):
            raise CPTPViolation(f"generator {d.name!r} payload is not CPTP")
        return ch
    if isinstance(d, circuit.Identity):
        return QChannel.identity(d.sys.dim)
    if isinstance(d, circuit.Discard):
        return QChannel.discard(d.sys.dim)
    if isinstance(d, circuit.Swap):
        return QChannel.swap(d.left.dim, d.right.dim)
    if isinstance(d, circuit.Seq):
        return evaluate(d.first, env).then(evaluate(d.second, env))
    if isinstance(d, circuit.Par):
        return evaluate(d.left, env).tensor(evaluate(d.right, env))
    raise TypeError(f"not a diagram node: {d!r}")


def state_of(ch: QChannel) -> QState:
    """Read a channel from the unit system as the state it prepares."""
    if ch.in_dim != 1:
        raise DimensionMismatch("not a state preparation")
    return QState(ch.choi)
