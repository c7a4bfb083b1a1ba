"""Finite stochastic semantics over exact rationals.

A gate is a column-stochastic matrix of `fractions.Fraction` entries:
column index is the input symbol, row index is the output symbol, and
causality is exactly the condition that every column is a probability
vector. States are single-column matrices, the discard effect is the
all-ones row, and parallel composition is the Kronecker product with
the left factor as the most significant index.

No floating point enters this module; equality of channels is exact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import circuit
from .errors import (
    DimensionMismatch,
    NotAProductType,
    NotCausal,
    UnboundGenerator,
)

ZERO = Fraction(0)
ONE = Fraction(1)


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class StochChannel:
    """A rational matrix read as a channel from columns to rows."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        if not self.entries or not self.entries[0]:
            raise DimensionMismatch("channels need at least one row and one column")
        width = len(self.entries[0])
        if any(len(row) != width for row in self.entries):
            raise DimensionMismatch("ragged matrix")

    @classmethod
    def from_rows(cls, rows) -> StochChannel:
        """Build from any nested iterable of ints, strings, or Fractions."""
        return cls(tuple(tuple(_frac(x) for x in row) for row in rows))

    @classmethod
    def state(cls, vec) -> StochChannel:
        """A probability vector as a single-column channel."""
        return cls(tuple((_frac(x),) for x in vec))

    @classmethod
    def point_mass(cls, dim: int, index: int) -> StochChannel:
        return cls.state(ONE if i == index else ZERO for i in range(dim))

    @classmethod
    def identity(cls, dim: int) -> StochChannel:
        return cls(tuple(tuple(ONE if i == j else ZERO for j in range(dim)) for i in range(dim)))

    @classmethod
    def discard(cls, dim: int) -> StochChannel:
        return cls((tuple(ONE for _ in range(dim)),))

    @classmethod
    def swap(cls, dim_left: int, dim_right: int) -> StochChannel:
        n = dim_left * dim_right
        rows = [[ZERO] * n for _ in range(n)]
        for a in range(dim_left):
            for b in range(dim_right):
                rows[b * dim_left + a][a * dim_right + b] = ONE
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def copy_map(cls, dim: int) -> StochChannel:
        """The classical copier: symbol a goes to the pair (a, a)."""
        rows = [[ZERO] * dim for _ in range(dim * dim)]
        for a in range(dim):
            rows[a * dim + a][a] = ONE
        return cls(tuple(tuple(r) for r in rows))

    @property
    def out_dim(self) -> int:
        return len(self.entries)

    @property
    def in_dim(self) -> int:
        return len(self.entries[0])

    @property
    def is_state(self) -> bool:
        return self.in_dim == 1

    def column(self, j: int) -> tuple[Fraction, ...]:
        return tuple(row[j] for row in self.entries)

    def as_vector(self) -> tuple[Fraction, ...]:
        if not self.is_state:
            raise DimensionMismatch("not a state (input dimension is not 1)")
        return tuple(row[0] for row in self.entries)

    def then(self, other: StochChannel) -> StochChannel:
        """Sequential composition, self first: the matrix product other . self."""
        if other.in_dim != self.out_dim:
            raise DimensionMismatch(
                f"cannot compose {self.out_dim} outputs into {other.in_dim} inputs"
            )
        rows = []
        for orow in other.entries:
            out = [ZERO] * self.in_dim
            for k, coeff in enumerate(orow):
                if coeff:
                    srow = self.entries[k]
                    for j, v in enumerate(srow):
                        if v:
                            out[j] += coeff * v
            rows.append(tuple(out))
        return StochChannel(tuple(rows))

    def tensor(self, other: StochChannel) -> StochChannel:
        """Kronecker product; the left factor is the most significant index."""
        rows = []
        for srow in self.entries:
            for orow in other.entries:
                rows.append(tuple(a * b for a in srow for b in orow))
        return StochChannel(tuple(rows))

    def apply(self, state: StochChannel) -> StochChannel:
        if not state.is_state:
            raise DimensionMismatch("apply expects a state")
        return state.then(self)

    def __repr__(self):
        body = "; ".join(
            " ".join(str(x) for x in row) for row in self.entries
        )
        return f"StochChannel({self.out_dim}x{self.in_dim}: {body})"


def check_causal(m: StochChannel) -> bool:
    """True iff all entries are nonnegative and every column sums to one."""
    for row in m.entries:
        for x in row:
            if x < 0:
                return False
    for j in range(m.in_dim):
        if sum(row[j] for row in m.entries) != 1:
            return False
    return True


def evaluate(d: circuit.Diagram, env: dict[str, StochChannel]) -> StochChannel:
    """Evaluate a diagram against generator bindings.

    Sequential nodes multiply matrices, parallel nodes take Kronecker
    products, discards are all-ones rows, identities are identity
    matrices. Generator payloads must match the declared types'
    dimensions.
    """
    if isinstance(d, circuit.Gen):
        if d.name not in env:
            raise UnboundGenerator(f"generator {d.name!r} is not bound")
        m = env[d.name]
        if m.in_dim != d.in_type.dim or m.out_dim != d.out_type.dim:
            raise DimensionMismatch(
                f"generator {d.name!r} is {m.out_dim}x{m.in_dim}, "
                f"declared {d.out_type.dim}x{d.in_type.dim}"
            )
        return m
    if isinstance(d, circuit.Identity):
        return StochChannel.identity(d.sys.dim)
    if isinstance(d, circuit.Discard):
        return StochChannel.discard(d.sys.dim)
    if isinstance(d, circuit.Swap):
        return StochChannel.swap(d.left.dim, d.right.dim)
    if isinstance(d, circuit.Seq):
        return evaluate(d.first, env).then(evaluate(d.second, env))
    if isinstance(d, circuit.Par):
        return evaluate(d.left, env).tensor(evaluate(d.right, env))
    raise TypeError(f"not a diagram node: {d!r}")


def marginal(state: StochChannel, dims: tuple[int, ...], keep) -> StochChannel:
    """Sum a product-system state over the discarded factors.

    `dims` gives the factor dimensions in tensor order (left factor most
    significant); `keep` is a factor index or a sorted collection of
    factor indices to retain.
    """
    if not state.is_state:
        raise NotAProductType("marginal expects a state")
    if math.prod(dims) != state.out_dim:
        raise NotAProductType(
            f"state of dimension {state.out_dim} is not a product of {dims}"
        )
    keep_idx = (keep,) if isinstance(keep, int) else tuple(keep)
    if any(k < 0 or k >= len(dims) for k in keep_idx) or len(set(keep_idx)) != len(keep_idx):
        raise NotAProductType(f"bad factor selection {keep_idx} for {len(dims)} factors")
    vec = state.as_vector()
    out_dim = math.prod(dims[k] for k in keep_idx)
    out = [ZERO] * max(out_dim, 1)
    for flat, p in enumerate(vec):
        if not p:
            continue
        digits = []
        rest = flat
        for dsize in reversed(dims):
            digits.append(rest % dsize)
            rest //= dsize
        digits.reverse()
        pos = 0
        for k in keep_idx:
            pos = pos * dims[k] + digits[k]
        out[pos] += p
    return StochChannel.state(out)


def total_variation(p: StochChannel, q: StochChannel) -> Fraction:
    """Exact total-variation distance between two states."""
    pv, qv = p.as_vector(), q.as_vector()
    if len(pv) != len(qv):
        raise DimensionMismatch("states live on different systems")
    return sum(abs(a - b) for a, b in zip(pv, qv)) / 2


def support(state: StochChannel) -> frozenset[int]:
    return frozenset(i for i, x in enumerate(state.as_vector()) if x)


@dataclass(frozen=True)
class PurityReport:
    """Purity verdict for a state, with a correlated extension as witness
    when the state is impure."""

    pure: bool
    witness: StochChannel | None = None

    def __bool__(self):
        return self.pure


def is_pure_state(rho: StochChannel) -> PurityReport:
    """A state is pure exactly when it is a point mass.

    A point mass admits only product extensions: any joint state whose
    marginal is deterministic vanishes off the matching slice, so it
    factorizes. A non-point mass admits the diagonal correlated joint
    (mass rho_i on the pair (i, i)), whose second marginal is maximally
    correlated with the first; that joint is returned as the witness.
    """
    vec = rho.as_vector()
    if any(x < 0 for x in vec) or sum(vec) != 1:
        raise NotCausal("not a normalized state")
    if any(x == 1 for x in vec):
        return PurityReport(True)
    d = len(vec)
    joint = [ZERO] * (d * d)
    for i, p in enumerate(vec):
        joint[i * d + i] = p
    return PurityReport(False, witness=StochChannel.state(joint))


def is_pure_gate(m: StochChannel) -> bool:
    """True iff every column is a point mass, i.e. the gate is a function.

    This is the per-column reading of purity: the gate's output on each
    definite input symbol is a pure state, so no extension can correlate
    an environment with the output. A gate with any strictly mixed
    column admits the diagonal correlated extension on that column.
    """
    if not check_causal(m):
        raise NotCausal("gate is not column-stochastic")
    for j in range(m.in_dim):
        if not any(x == 1 for x in m.column(j)):
            return False
    return True
