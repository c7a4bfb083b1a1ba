"""Textual model files: parser, canonical printer, certificates.

A model file is line-oriented. Declarations continue across physical
lines while square brackets stay open. Comments run from ``#`` to the
end of the physical line.

    backend finstoch
    system A dim 3
    state rho0 : A = [1/2, 1/2, 0]
    gate G : A -> B = [[1, 0, 1/2], [0, 1, 1/2]]
    family S = {rho0, rho1}
    gates Gs : B -> B' = {g0, g1}
    circuit c = (rho0 * id(B)) ; W
    claim dist S D

Stochastic entries are exact rationals ``p/q``. Quantum files take
complex entries ``a+bi`` with decimal components (plain rationals are
accepted and read as real numbers); states may be given as density
matrices or as ``ket [ ... ]``, which is normalized and turned into the
outer product. Gate payloads in quantum files are Choi matrices,
row-major with the input factor first. ``;`` is sequential composition,
``*`` parallel (binding tighter), and ``id``, ``discard``, ``swap`` are
built in. The canonical printer sorts declarations by kind and name and
reduces every number, so printing, reparsing, and printing again is
byte-identical.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import circuit as circ
from .errors import (
    DimensionError,
    ModelSyntaxError,
    ResolutionError,
)
from .quantum import QChannel, QState
from .stochastic import StochChannel
from .tasks import GateFamily, StateFamily

FINSTOCH = "finstoch"
QUANTUM = "quantum"

KEYWORDS = {
    "backend", "system", "dim", "state", "gate", "family", "gates",
    "circuit", "claim", "ket", "id", "discard", "swap", "UNIT",
}

CLAIM_KINDS = ("dist", "clone", "sideinfo", "programmer")

_TOKEN_RE = re.compile(
    r"""
    (?P<NUMBER>(\d+\.\d*|\.\d+|\d+)([eE][+-]?\d+)?i?)
  | (?P<IDENT>[A-Za-z_][A-Za-z0-9_]*'*)
  | (?P<ARROW>->)
  | (?P<PUNCT>[:=\{\}\[\]\(\),;*+/-])
  | (?P<SPACE>\s+)
    """,
    re.VERBOSE,
)


@dataclass(frozen=True)
class Token:
    kind: str        # NUMBER, IDENT, ARROW, or the punctuation character itself
    text: str
    line: int
    col: int


def _tokenize_line(text: str, line_no: int) -> list[Token]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN_RE.match(text, pos)
        if m is None:
            raise ModelSyntaxError(
                f"unexpected character {text[pos]!r}", line=line_no, col=pos + 1
            )
        kind = m.lastgroup
        if kind != "SPACE":
            tok_text = m.group()
            if kind == "PUNCT":
                kind = tok_text
            out.append(Token(kind, tok_text, line_no, pos + 1))
        pos = m.end()
    return out


def _logical_units(text: str) -> list[list[Token]]:
    """Group tokens into declarations, joining lines while brackets stay open."""
    units: list[list[Token]] = []
    current: list[Token] = []
    depth = 0
    first_open: Token | None = None
    for line_no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0]
        for tok in _tokenize_line(body, line_no):
            if tok.kind == "[":
                if depth == 0:
                    first_open = tok
                depth += 1
            elif tok.kind == "]":
                depth -= 1
                if depth < 0:
                    raise ModelSyntaxError(
                        "unmatched closing bracket", line=tok.line, col=tok.col
                    )
            current.append(tok)
        if depth == 0 and current:
            units.append(current)
            current = []
    if depth > 0:
        raise ModelSyntaxError(
            "unterminated matrix bracket",
            line=first_open.line,
            col=first_open.col,
        )
    if current:
        units.append(current)
    return units


# -- declarations -------------------------------------------------------------


@dataclass(frozen=True)
class SystemDecl:
    name: str
    dim: int


@dataclass(frozen=True)
class StateDecl:
    name: str
    type: circ.SystemType
    payload: object          # StochChannel column or QState


@dataclass(frozen=True)
class GateDecl:
    name: str
    in_type: circ.SystemType
    out_type: circ.SystemType
    payload: object          # StochChannel or QChannel


@dataclass(frozen=True)
class FamilyDecl:
    name: str
    members: tuple[str, ...]


@dataclass(frozen=True)
class GateFamilyDecl:
    name: str
    in_type: circ.SystemType
    out_type: circ.SystemType
    members: tuple[str, ...]


@dataclass(frozen=True)
class CircuitDecl:
    name: str
    diagram: circ.Diagram


@dataclass(frozen=True)
class ClaimDecl:
    kind: str
    family: str
    gate: str
    gates: str | None = None


@dataclass(frozen=True)
class ModelFile:
    backend: str
    systems: tuple[SystemDecl, ...] = ()
    states: tuple[StateDecl, ...] = ()
    gates: tuple[GateDecl, ...] = ()
    families: tuple[FamilyDecl, ...] = ()
    gate_families: tuple[GateFamilyDecl, ...] = ()
    circuits: tuple[CircuitDecl, ...] = ()
    claims: tuple[ClaimDecl, ...] = ()

    def system(self, name: str) -> SystemDecl:
        for s in self.systems:
            if s.name == name:
                return s
        raise ResolutionError(f"unknown system {name!r}")

    def state(self, name: str) -> StateDecl:
        for s in self.states:
            if s.name == name:
                return s
        raise ResolutionError(f"unknown state {name!r}")

    def gate(self, name: str) -> GateDecl:
        for g in self.gates:
            if g.name == name:
                return g
        raise ResolutionError(f"unknown gate {name!r}")

    def family(self, name: str) -> FamilyDecl:
        for f in self.families:
            if f.name == name:
                return f
        raise ResolutionError(f"unknown family {name!r}")

    def gate_family_decl(self, name: str) -> GateFamilyDecl:
        for f in self.gate_families:
            if f.name == name:
                return f
        raise ResolutionError(f"unknown gate family {name!r}")

    def circuit(self, name: str) -> CircuitDecl:
        for c in self.circuits:
            if c.name == name:
                return c
        raise ResolutionError(f"unknown circuit {name!r}")

    def state_family(self, name: str) -> StateFamily:
        decl = self.family(name)
        members = [self.state(m) for m in decl.members]
        return StateFamily(
            tuple(m.name for m in members), tuple(m.payload for m in members)
        )

    def gate_family(self, name: str) -> GateFamily:
        decl = self.gate_family_decl(name)
        members = [self.gate(m) for m in decl.members]
        return GateFamily(
            tuple(m.name for m in members), tuple(m.payload for m in members)
        )

    def environment(self) -> dict:
        """Generator bindings for evaluation: states prepare, gates act."""
        env = {}
        for s in self.states:
            if self.backend == FINSTOCH:
                env[s.name] = s.payload
            else:
                env[s.name] = QChannel.prepare(s.payload)
        for g in self.gates:
            env[g.name] = g.payload
        return env


# -- parsing ------------------------------------------------------------------


class _Cursor:
    def __init__(self, tokens: list[Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> Token | None:
        return self.tokens[self.pos] if self.pos < len(self.tokens) else None

    def next(self, *expected: str) -> Token:
        tok = self.peek()
        if tok is None:
            last = self.tokens[-1]
            raise ModelSyntaxError(
                "unexpected end of declaration",
                line=last.line,
                col=last.col + len(last.text),
                expected=expected,
            )
        if expected and tok.kind not in expected:
            raise ModelSyntaxError(
                f"unexpected token {tok.text!r}",
                line=tok.line,
                col=tok.col,
                expected=expected,
            )
        self.pos += 1
        return tok

    def at(self, kind: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == kind

    def at_word(self, word: str) -> bool:
        tok = self.peek()
        return tok is not None and tok.kind == "IDENT" and tok.text == word

    def done(self) -> bool:
        return self.pos >= len(self.tokens)

    def expect_end(self):
        tok = self.peek()
        if tok is not None:
            raise ModelSyntaxError(
                f"unexpected trailing token {tok.text!r}",
                line=tok.line,
                col=tok.col,
                expected=("end of declaration",),
            )


class _Parser:
    def __init__(self):
        self.backend: str | None = None
        self.systems: dict[str, SystemDecl] = {}
        self.states: dict[str, StateDecl] = {}
        self.gates: dict[str, GateDecl] = {}
        self.families: dict[str, FamilyDecl] = {}
        self.gate_families: dict[str, GateFamilyDecl] = {}
        self.circuits: dict[str, CircuitDecl] = {}
        self.claims: list[ClaimDecl] = []

    # -- names ---------------------------------------------------------------
    def _fresh_name(self, tok: Token) -> str:
        name = tok.text
        if name in KEYWORDS:
            raise ModelSyntaxError(
                f"{name!r} is a keyword", line=tok.line, col=tok.col
            )
        for table in (self.systems, self.states, self.gates, self.families,
                      self.gate_families, self.circuits):
            if name in table:
                raise ResolutionError(
                    f"name {name!r} is already declared", line=tok.line, col=tok.col
                )
        return name

    # -- types ---------------------------------------------------------------
    def _type_expr(self, cur: _Cursor) -> circ.SystemType:
        t = self._type_factor(cur)
        while cur.at("*"):
            cur.next("*")
            t = t.tensor(self._type_factor(cur))
        return t

    def _type_factor(self, cur: _Cursor) -> circ.SystemType:
        if cur.at("("):
            cur.next("(")
            t = self._type_expr(cur)
            cur.next(")")
            return t
        tok = cur.next("IDENT")
        if tok.text == "UNIT":
            return circ.UNIT
        decl = self.systems.get(tok.text)
        if decl is None:
            raise ResolutionError(
                f"unknown system {tok.text!r}", line=tok.line, col=tok.col
            )
        return circ.system(decl.name, decl.dim)

    # -- numbers ---------------------------------------------------------------
    def _signed_number(self, cur: _Cursor):
        """One signed magnitude: (value, is_imaginary, is_exact_rational, token)."""
        sign = 1
        tok = cur.peek()
        while cur.at("-") or cur.at("+"):
            t = cur.next(cur.peek().kind)
            if t.kind == "-":
                sign = -sign
        tok = cur.next("NUMBER")
        text = tok.text
        imag = text.endswith("i")
        if imag:
            text = text[:-1]
        if re.fullmatch(r"\d+", text) and cur.at("/"):
            cur.next("/")
            den_tok = cur.next("NUMBER")
            if not re.fullmatch(r"\d+", den_tok.text) or int(den_tok.text) == 0:
                raise ModelSyntaxError(
                    "denominator must be a positive integer",
                    line=den_tok.line, col=den_tok.col,
                )
            return sign * Fraction(int(text), int(den_tok.text)), imag, True, tok
        if re.fullmatch(r"\d+", text):
            return sign * Fraction(int(text)), imag, True, tok
        return sign * float(text), imag, False, tok

    def _rational_entry(self, cur: _Cursor) -> Fraction:
        value, imag, exact, tok = self._signed_number(cur)
        if imag or not exact:
            raise ModelSyntaxError(
                "the stochastic backend takes exact rationals only",
                line=tok.line, col=tok.col,
            )
        return value

    def _complex_entry(self, cur: _Cursor) -> complex:
        value, imag, _, _ = self._signed_number(cur)
        z = complex(0, float(value)) if imag else complex(float(value), 0)
        if cur.at("+") or cur.at("-"):
            value2, imag2, _, tok2 = self._signed_number(cur)
            if imag2 == imag:
                raise ModelSyntaxError(
                    "a complex literal has one real and one imaginary part",
                    line=tok2.line, col=tok2.col,
                )
            z += complex(0, float(value2)) if imag2 else complex(float(value2), 0)
        return z

    def _vector(self, cur: _Cursor, entry) -> list:
        cur.next("[")
        out = [entry(cur)]
        while cur.at(","):
            cur.next(",")
            out.append(entry(cur))
        cur.next("]")
        return out

    def _matrix(self, cur: _Cursor, entry) -> list[list]:
        open_tok = cur.next("[")
        rows = [self._vector(cur, entry)]
        while cur.at(","):
            cur.next(",")
            rows.append(self._vector(cur, entry))
        cur.next("]")
        if any(len(r) != len(rows[0]) for r in rows):
            raise DimensionError(
                "ragged matrix", line=open_tok.line, col=open_tok.col
            )
        return rows

    # -- circuit expressions ----------------------------------------------------
    def _circuit_expr(self, cur: _Cursor) -> circ.Diagram:
        left = self._parallel_expr(cur)
        while cur.at(";"):
            semi = cur.next(";")
            right = self._parallel_expr(cur)
            if left.out_type != right.in_type:
                raise DimensionError(
                    f"sequential boundary mismatch: {left.out_type!r} "
                    f"then {right.in_type!r}",
                    line=semi.line, col=semi.col,
                )
            left = circ.Seq(left, right)
        return left

    def _parallel_expr(self, cur: _Cursor) -> circ.Diagram:
        left = self._atom_expr(cur)
        while cur.at("*"):
            cur.next("*")
            left = circ.Par(left, self._atom_expr(cur))
        return left

    def _atom_expr(self, cur: _Cursor) -> circ.Diagram:
        if cur.at("("):
            cur.next("(")
            inner = self._circuit_expr(cur)
            cur.next(")")
            return inner
        tok = cur.next("IDENT")
        if tok.text == "id":
            cur.next("(")
            t = self._type_expr(cur)
            cur.next(")")
            return circ.Identity(t)
        if tok.text == "discard":
            cur.next("(")
            t = self._type_expr(cur)
            cur.next(")")
            return circ.Discard(t)
        if tok.text == "swap":
            cur.next("(")
            a = self._type_expr(cur)
            cur.next(",")
            b = self._type_expr(cur)
            cur.next(")")
            return circ.Swap(a, b)
        if tok.text in self.states:
            decl = self.states[tok.text]
            return circ.Gen(decl.name, circ.UNIT, decl.type)
        if tok.text in self.gates:
            decl = self.gates[tok.text]
            return circ.Gen(decl.name, decl.in_type, decl.out_type)
        if tok.text in self.circuits:
            return self.circuits[tok.text].diagram
        raise ResolutionError(
            f"unknown generator {tok.text!r}", line=tok.line, col=tok.col
        )

    # -- declarations ------------------------------------------------------------
    def declaration(self, tokens: list[Token]):
        cur = _Cursor(tokens)
        head = cur.next("IDENT")
        if self.backend is None and head.text != "backend":
            raise ModelSyntaxError(
                "the first declaration must name the backend",
                line=head.line, col=head.col, expected=("backend",),
            )
        handler = {
            "backend": self._decl_backend,
            "system": self._decl_system,
            "state": self._decl_state,
            "gate": self._decl_gate,
            "family": self._decl_family,
            "gates": self._decl_gates,
            "circuit": self._decl_circuit,
            "claim": self._decl_claim,
        }.get(head.text)
        if handler is None:
            raise ModelSyntaxError(
                f"unknown declaration {head.text!r}",
                line=head.line, col=head.col,
                expected=("backend", "system", "state", "gate", "family",
                          "gates", "circuit", "claim"),
            )
        handler(cur)
        cur.expect_end()

    def _decl_backend(self, cur: _Cursor):
        tok = cur.next("IDENT")
        if tok.text not in (FINSTOCH, QUANTUM):
            raise ModelSyntaxError(
                f"unknown backend {tok.text!r}",
                line=tok.line, col=tok.col, expected=(FINSTOCH, QUANTUM),
            )
        if self.backend is not None:
            raise ModelSyntaxError(
                "backend is already declared", line=tok.line, col=tok.col
            )
        self.backend = tok.text

    def _decl_system(self, cur: _Cursor):
        name_tok = cur.next("IDENT")
        name = self._fresh_name(name_tok)
        dim_kw = cur.next("IDENT")
        if dim_kw.text != "dim":
            raise ModelSyntaxError(
                f"expected 'dim', got {dim_kw.text!r}",
                line=dim_kw.line, col=dim_kw.col, expected=("dim",),
            )
        dim_tok = cur.next("NUMBER")
        if not re.fullmatch(r"\d+", dim_tok.text) or int(dim_tok.text) < 1:
            raise ModelSyntaxError(
                "dimension must be a positive integer",
                line=dim_tok.line, col=dim_tok.col,
            )
        self.systems[name] = SystemDecl(name, int(dim_tok.text))

    def _decl_state(self, cur: _Cursor):
        name_tok = cur.next("IDENT")
        name = self._fresh_name(name_tok)
        cur.next(":")
        t = self._type_expr(cur)
        eq = cur.next("=")
        if self.backend == FINSTOCH:
            vec = self._vector(cur, self._rational_entry)
            if len(vec) != t.dim:
                raise DimensionError(
                    f"state {name!r} has {len(vec)} entries for a "
                    f"{t.dim}-dimensional type",
                    line=eq.line, col=eq.col,
                )
            payload = StochChannel.state(vec)
        else:
            if cur.at_word("ket"):
                cur.next("IDENT")
                amps = self._vector(cur, self._complex_entry)
                if len(amps) != t.dim:
                    raise DimensionError(
                        f"ket for {name!r} has {len(amps)} amplitudes for a "
                        f"{t.dim}-dimensional type",
                        line=eq.line, col=eq.col,
                    )
                payload = QState.from_ket(amps)
            else:
                rows = self._matrix(cur, self._complex_entry)
                if len(rows) != t.dim or len(rows[0]) != t.dim:
                    raise DimensionError(
                        f"density matrix for {name!r} is "
                        f"{len(rows)}x{len(rows[0])}, expected {t.dim}x{t.dim}",
                        line=eq.line, col=eq.col,
                    )
                payload = QState(np.array(rows, dtype=complex), validate=False)
        self.states[name] = StateDecl(name, t, payload)

    def _decl_gate(self, cur: _Cursor):
        name_tok = cur.next("IDENT")
        name = self._fresh_name(name_tok)
        cur.next(":")
        t_in = self._type_expr(cur)
        cur.next("ARROW")
        t_out = self._type_expr(cur)
        eq = cur.next("=")
        if self.backend == FINSTOCH:
            rows = self._matrix(cur, self._rational_entry)
            if len(rows) != t_out.dim or len(rows[0]) != t_in.dim:
                raise DimensionError(
                    f"gate {name!r} is {len(rows)}x{len(rows[0])}, expected "
                    f"{t_out.dim}x{t_in.dim}",
                    line=eq.line, col=eq.col,
                )
            payload = StochChannel.from_rows(rows)
        else:
            rows = self._matrix(cur, self._complex_entry)
            side = t_in.dim * t_out.dim
            if len(rows) != side or len(rows[0]) != side:
                raise DimensionError(
                    f"Choi matrix for {name!r} is {len(rows)}x{len(rows[0])}, "
                    f"expected {side}x{side}",
                    line=eq.line, col=eq.col,
                )
            payload = QChannel(
                t_in.dim, t_out.dim, np.array(rows, dtype=complex), validate=False
            )
        self.gates[name] = GateDecl(name, t_in, t_out, payload)

    def _member_list(self, cur: _Cursor) -> tuple[list[Token], tuple[str, ...]]:
        cur.next("{")
        toks = [cur.next("IDENT")]
        while cur.at(","):
            cur.next(",")
            toks.append(cur.next("IDENT"))
        cur.next("}")
        return toks, tuple(t.text for t in toks)

    def _decl_family(self, cur: _Cursor):
        name_tok = cur.next("IDENT")
        name = self._fresh_name(name_tok)
        cur.next("=")
        member_toks, members = self._member_list(cur)
        for tok in member_toks:
            if tok.text not in self.states:
                raise ResolutionError(
                    f"unknown state {tok.text!r}", line=tok.line, col=tok.col
                )
        types = {self.states[m].type for m in members}
        if len(types) != 1:
            raise DimensionError(
                f"family {name!r} mixes state types",
                line=name_tok.line, col=name_tok.col,
            )
        self.families[name] = FamilyDecl(name, members)

    def _decl_gates(self, cur: _Cursor):
        name_tok = cur.next("IDENT")
        name = self._fresh_name(name_tok)
        cur.next(":")
        t_in = self._type_expr(cur)
        cur.next("ARROW")
        t_out = self._type_expr(cur)
        cur.next("=")
        member_toks, members = self._member_list(cur)
        for tok in member_toks:
            decl = self.gates.get(tok.text)
            if decl is None:
                raise ResolutionError(
                    f"unknown gate {tok.text!r}", line=tok.line, col=tok.col
                )
            if decl.in_type != t_in or decl.out_type != t_out:
                raise DimensionError(
                    f"gate {tok.text!r} does not have type "
                    f"{t_in!r} -> {t_out!r}",
                    line=tok.line, col=tok.col,
                )
        self.gate_families[name] = GateFamilyDecl(name, t_in, t_out, members)

    def _decl_circuit(self, cur: _Cursor):
        name_tok = cur.next("IDENT")
        name = self._fresh_name(name_tok)
        cur.next("=")
        diagram = self._circuit_expr(cur)
        self.circuits[name] = CircuitDecl(name, diagram)

    def _decl_claim(self, cur: _Cursor):
        kind_tok = cur.next("IDENT")
        if kind_tok.text not in CLAIM_KINDS:
            raise ModelSyntaxError(
                f"unknown claim kind {kind_tok.text!r}",
                line=kind_tok.line, col=kind_tok.col, expected=CLAIM_KINDS,
            )
        fam_tok = cur.next("IDENT")
        if fam_tok.text not in self.families:
            raise ResolutionError(
                f"unknown family {fam_tok.text!r}",
                line=fam_tok.line, col=fam_tok.col,
            )
        gates_name = None
        if kind_tok.text == "programmer":
            gates_tok = cur.next("IDENT")
            if gates_tok.text not in self.gate_families:
                raise ResolutionError(
                    f"unknown gate family {gates_tok.text!r}",
                    line=gates_tok.line, col=gates_tok.col,
                )
            gates_name = gates_tok.text
        gate_tok = cur.next("IDENT")
        if gate_tok.text not in self.gates:
            raise ResolutionError(
                f"unknown gate {gate_tok.text!r}",
                line=gate_tok.line, col=gate_tok.col,
            )
        self.claims.append(
            ClaimDecl(kind_tok.text, fam_tok.text, gate_tok.text, gates_name)
        )

    def finish(self) -> ModelFile:
        if self.backend is None:
            raise ModelSyntaxError("empty model: missing backend declaration", line=1, col=1)
        return ModelFile(
            backend=self.backend,
            systems=tuple(self.systems.values()),
            states=tuple(self.states.values()),
            gates=tuple(self.gates.values()),
            families=tuple(self.families.values()),
            gate_families=tuple(self.gate_families.values()),
            circuits=tuple(self.circuits.values()),
            claims=tuple(self.claims),
        )


def parse(text: str) -> ModelFile:
    """Parse model text, or raise a located model error."""
    parser = _Parser()
    for unit in _logical_units(text):
        parser.declaration(unit)
    return parser.finish()


def load(path) -> ModelFile:
    with open(path, "r", encoding="utf-8") as fh:
        return parse(fh.read())


# -- canonical printing --------------------------------------------------------


def _fmt_fraction(x: Fraction) -> str:
    return str(x)


def _fmt_complex(z: complex) -> str:
    re_part = f"{z.real:.17g}"
    im_part = f"{z.imag:+.17g}"
    return f"{re_part}{im_part}i"


def _fmt_vector(entries, fmt) -> str:
    return "[" + ", ".join(fmt(e) for e in entries) + "]"


def _fmt_matrix(rows, fmt) -> str:
    return "[" + ", ".join(_fmt_vector(r, fmt) for r in rows) + "]"


def _fmt_type(t: circ.SystemType) -> str:
    if t.is_unit:
        return "UNIT"
    return " * ".join(a.label for a in t.atoms)


def _fmt_expr(d: circ.Diagram, level: int = 0) -> str:
    """level 0 allows bare ';' chains; level 1 is inside a '*' chain."""
    if isinstance(d, circ.Seq):
        parts = []
        node = d
        while isinstance(node, circ.Seq):
            parts.append(node.second)
            node = node.first
        parts.append(node)
        text = " ; ".join(_fmt_expr(p, 1) for p in reversed(parts))
        return f"({text})" if level >= 1 else text
    if isinstance(d, circ.Par):
        parts = []
        node = d
        while isinstance(node, circ.Par):
            parts.append(node.right)
            node = node.left
        parts.append(node)
        return " * ".join(_fmt_expr(p, 2) for p in reversed(parts))
    if isinstance(d, circ.Gen):
        return d.name
    if isinstance(d, circ.Identity):
        return f"id({_fmt_type(d.sys)})"
    if isinstance(d, circ.Discard):
        return f"discard({_fmt_type(d.sys)})"
    if isinstance(d, circ.Swap):
        return f"swap({_fmt_type(d.left)}, {_fmt_type(d.right)})"
    raise TypeError(f"not a diagram node: {d!r}")


def format_model(m: ModelFile) -> str:
    """Canonical text: sorted declarations, reduced numbers, row-major matrices."""
    lines = [f"backend {m.backend}"]
    if m.backend == QUANTUM:
        lines.append("# choi matrices are row-major, input factor first")
    for s in sorted(m.systems, key=lambda s: s.name):
        lines.append(f"system {s.name} dim {s.dim}")
    for s in sorted(m.states, key=lambda s: s.name):
        if m.backend == FINSTOCH:
            body = _fmt_vector(s.payload.as_vector(), _fmt_fraction)
        else:
            body = _fmt_matrix(s.payload.mat.tolist(), _fmt_complex)
        lines.append(f"state {s.name} : {_fmt_type(s.type)} = {body}")
    for g in sorted(m.gates, key=lambda g: g.name):
        if m.backend == FINSTOCH:
            body = _fmt_matrix(g.payload.entries, _fmt_fraction)
        else:
            body = _fmt_matrix(g.payload.choi.tolist(), _fmt_complex)
        lines.append(
            f"gate {g.name} : {_fmt_type(g.in_type)} -> {_fmt_type(g.out_type)} = {body}"
        )
    for f in sorted(m.families, key=lambda f: f.name):
        lines.append(f"family {f.name} = {{{', '.join(f.members)}}}")
    for f in sorted(m.gate_families, key=lambda f: f.name):
        lines.append(
            f"gates {f.name} : {_fmt_type(f.in_type)} -> {_fmt_type(f.out_type)} = "
            f"{{{', '.join(f.members)}}}"
        )
    for c in sorted(m.circuits, key=lambda c: c.name):
        lines.append(f"circuit {c.name} = {_fmt_expr(c.diagram)}")
    for c in sorted(m.claims, key=lambda c: (c.kind, c.family, c.gate)):
        if c.kind == "programmer":
            lines.append(f"claim programmer {c.family} {c.gates} {c.gate}")
        else:
            lines.append(f"claim {c.kind} {c.family} {c.gate}")
    return "\n".join(lines) + "\n"


# -- certificates ---------------------------------------------------------------


def _fresh_system_name(base: str, taken) -> str:
    name = base
    counter = 2
    while name in taken:
        name = f"{base}{counter}"
        counter += 1
    return name


def certificate_model(
    m: ModelFile, kind: str, family_name: str, channel, gates_name: str | None = None
) -> ModelFile:
    """A self-contained model carrying a certificate channel and its claim.

    The output embeds the family (and gate family, for programmer
    claims) from the source model, declares the certificate under the
    name ``certificate``, and records the claim so a later run can
    re-verify the verdict from the file alone.
    """
    if kind not in CLAIM_KINDS:
        raise ResolutionError(f"unknown claim kind {kind!r}")
    fam = m.family(family_name)
    member_decls = [m.state(name) for name in fam.members]
    fam_type = member_decls[0].type
    systems = {a.label: SystemDecl(a.label, a.dim) for a in fam_type.atoms}

    gate_decls: list[GateDecl] = []
    gate_family_decls: list[GateFamilyDecl] = []
    if kind == "dist":
        k = len(fam.members)
        flag = _fresh_system_name("Flag", set(systems))
        systems[flag] = SystemDecl(flag, k)
        in_type, out_type = fam_type, circ.system(flag, k)
    elif kind == "clone":
        in_type, out_type = fam_type, fam_type.tensor(fam_type)
    elif kind == "sideinfo":
        k = len(fam.members)
        flag = _fresh_system_name("Flag", set(systems))
        systems[flag] = SystemDecl(flag, k)
        in_type, out_type = fam_type, fam_type.tensor(circ.system(flag, k))
    else:
        gf = m.gate_family_decl(gates_name)
        for name in gf.members:
            gate_decls.append(m.gate(name))
        for t in (gf.in_type, gf.out_type):
            for a in t.atoms:
                systems.setdefault(a.label, SystemDecl(a.label, a.dim))
        gate_family_decls.append(gf)
        in_type = fam_type.tensor(gf.in_type)
        out_type = gf.out_type
    cert = GateDecl("certificate", in_type, out_type, channel)
    claim = ClaimDecl(kind, family_name, "certificate", gates_name)
    return ModelFile(
        backend=m.backend,
        systems=tuple(systems.values()),
        states=tuple(member_decls),
        gates=tuple(gate_decls) + (cert,),
        families=(fam,),
        gate_families=tuple(gate_family_decls),
        claims=(claim,),
    )
