"""Typed circuit terms: system types, generator boxes, and composition.

A diagram is an immutable tree. Leaves are generator references,
identities, discards, and wire swaps; internal nodes compose two
children either in sequence ("first then second") or in parallel
(tensor). Every node exposes an input and an output type, and a tree
typechecks when every sequential boundary matches.

Types are flat lists of named atomic systems. The tensor unit is the
empty list; tensoring concatenates atom lists and multiplies
dimensions. Construction through :func:`seq_compose` validates
boundaries eagerly, while direct node construction is unchecked so that
:func:`typecheck` can report the first offending node of an arbitrary
tree.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import TypeMismatch


@dataclass(frozen=True)
class System:
    """A named atomic wire with a backend dimension."""

    label: str
    dim: int

    def __post_init__(self):
        if self.dim < 1:
            raise ValueError(f"system {self.label!r} must have dimension >= 1")

    def __repr__(self):
        return f"{self.label}[{self.dim}]"


@dataclass(frozen=True)
class SystemType:
    """A tensor of atomic systems; the empty tensor is the unit type."""

    atoms: tuple[System, ...] = ()

    @property
    def dim(self) -> int:
        return math.prod(a.dim for a in self.atoms)

    @property
    def is_unit(self) -> bool:
        return not self.atoms

    def tensor(self, other: SystemType) -> SystemType:
        return SystemType(self.atoms + other.atoms)

    def __mul__(self, other: SystemType) -> SystemType:
        return self.tensor(other)

    def __repr__(self):
        if not self.atoms:
            return "UNIT"
        return " * ".join(a.label for a in self.atoms)


UNIT = SystemType(())


def system(label: str, dim: int) -> SystemType:
    """A single-atom type."""
    return SystemType((System(label, dim),))


class Diagram:
    """Base class for circuit terms. Use the subclasses below."""

    @property
    def in_type(self) -> SystemType:
        raise NotImplementedError

    @property
    def out_type(self) -> SystemType:
        raise NotImplementedError

    def then(self, other: Diagram) -> Diagram:
        return seq_compose(self, other)

    def par(self, other: Diagram) -> Diagram:
        return par_compose(self, other)


@dataclass(frozen=True)
class Gen(Diagram):
    """A reference to a named generator box."""

    name: str
    gen_in: SystemType
    gen_out: SystemType

    @property
    def in_type(self):
        return self.gen_in

    @property
    def out_type(self):
        return self.gen_out


@dataclass(frozen=True)
class Identity(Diagram):
    sys: SystemType

    @property
    def in_type(self):
        return self.sys

    @property
    def out_type(self):
        return self.sys


@dataclass(frozen=True)
class Discard(Diagram):
    """The unique effect on a system; on the unit type it is the scalar 1."""

    sys: SystemType

    @property
    def in_type(self):
        return self.sys

    @property
    def out_type(self):
        return UNIT


@dataclass(frozen=True)
class Swap(Diagram):
    """Wire crossing: left * right -> right * left."""

    left: SystemType
    right: SystemType

    @property
    def in_type(self):
        return self.left.tensor(self.right)

    @property
    def out_type(self):
        return self.right.tensor(self.left)


@dataclass(frozen=True)
class Seq(Diagram):
    first: Diagram
    second: Diagram

    @property
    def in_type(self):
        return self.first.in_type

    @property
    def out_type(self):
        return self.second.out_type


@dataclass(frozen=True)
class Par(Diagram):
    left: Diagram
    right: Diagram

    @property
    def in_type(self):
        return self.left.in_type.tensor(self.right.in_type)

    @property
    def out_type(self):
        return self.left.out_type.tensor(self.right.out_type)


def identity(sys: SystemType) -> Identity:
    return Identity(sys)


def discard(sys: SystemType) -> Discard:
    return Discard(sys)


def swap(left: SystemType, right: SystemType) -> Swap:
    return Swap(left, right)


def seq_compose(g: Diagram, h: Diagram) -> Seq:
    """Compose g then h; the output type of g must equal the input type of h."""
    if g.out_type != h.in_type:
        raise TypeMismatch(
            f"cannot compose: left output {g.out_type!r} != right input {h.in_type!r}"
        )
    return Seq(g, h)


def par_compose(g: Diagram, h: Diagram) -> Par:
    """Place g and h side by side."""
    return Par(g, h)


@dataclass(frozen=True)
class TypeReport:
    """Outcome of typechecking: either both boundary types, or the first offense."""

    ok: bool
    in_type: SystemType | None = None
    out_type: SystemType | None = None
    path: tuple[str, ...] = ()
    expected: SystemType | None = None
    actual: SystemType | None = None
    message: str = ""

    def __bool__(self):
        return self.ok


def typecheck(d: Diagram) -> TypeReport:
    """Check every sequential boundary bottom-up.

    Returns an OK report carrying the diagram's input and output types,
    or a report locating the first node whose boundary fails, with the
    expected and actual types at that point.
    """
    bad = _first_offense(d, ())
    if bad is not None:
        return bad
    return TypeReport(True, in_type=d.in_type, out_type=d.out_type)


def _first_offense(d: Diagram, path: tuple[str, ...]) -> TypeReport | None:
    if isinstance(d, Seq):
        left = _first_offense(d.first, path + ("seq.first",))
        if left is not None:
            return left
        right = _first_offense(d.second, path + ("seq.second",))
        if right is not None:
            return right
        if d.first.out_type != d.second.in_type:
            return TypeReport(
                False,
                path=path,
                expected=d.first.out_type,
                actual=d.second.in_type,
                message="sequential boundary mismatch",
            )
        return None
    if isinstance(d, Par):
        left = _first_offense(d.left, path + ("par.left",))
        if left is not None:
            return left
        return _first_offense(d.right, path + ("par.right",))
    return None


def normalize(d: Diagram) -> Diagram:
    """Apply identity and unit laws and right-nest parallel composition.

    Rewrites, applied bottom-up until stable on each node:

    * ``discard(UNIT)`` becomes ``identity(UNIT)`` (both denote the scalar 1)
    * ``seq(identity, g)`` and ``seq(g, identity)`` become ``g``
    * ``par(identity(UNIT), g)`` and ``par(g, identity(UNIT))`` become ``g``
    * nested ``par`` trees are rotated into right-nested canonical form

    Normalization is an explicit pass so parsing and printing can round-trip
    the user's tree exactly.
    """
    if isinstance(d, Discard) and d.sys.is_unit:
        return Identity(UNIT)
    if isinstance(d, Seq):
        first = normalize(d.first)
        second = normalize(d.second)
        if isinstance(first, Identity):
            return second
        if isinstance(second, Identity):
            return first
        return Seq(first, second)
    if isinstance(d, Par):
        left = normalize(d.left)
        right = normalize(d.right)
        if _is_unit_identity(left):
            return right
        if _is_unit_identity(right):
            return left
        return _right_nest(left, right)
    return d


def _is_unit_identity(d: Diagram) -> bool:
    return isinstance(d, Identity) and d.sys.is_unit


def _right_nest(left: Diagram, right: Diagram) -> Diagram:
    if isinstance(left, Par):
        return _right_nest(left.left, _right_nest(left.right, right))
    return Par(left, right)
