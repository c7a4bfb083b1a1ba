"""Command-line surface over model files.

Exit codes: 0 for YES verdicts and passed checks, 1 for NO verdicts and
failed verifications, 2 for input errors, 3 for internal invariant
violations (a falsified proposition; should never occur).
"""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction

import numpy as np

from . import asymptotics, circuit, model, quantum, stochastic, tasks
from .errors import (
    InvariantViolation,
    ModelError,
    NotDistinguishable,
    ProcTheoryError,
)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="proctheory",
        description="decision procedures with certificates over circuit model files",
    )
    parser.add_argument("--tol", type=float, default=tasks.DEFAULT_TOL,
                        help="quantum verdict tolerance (default 1e-9)")
    parser.add_argument("--seed", type=int, default=0,
                        help="seed for generated instances")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="typecheck circuits, check causality, report purity")
    p.add_argument("file")

    p = sub.add_parser("eval", help="evaluate a circuit to its channel")
    p.add_argument("file")
    p.add_argument("circuit")

    p = sub.add_parser("decide", help="run a decision task on a family")
    p.add_argument("task", choices=["dist", "clone", "sideinfo"])
    p.add_argument("file")
    p.add_argument("family")

    p = sub.add_parser("synth", help="synthesize a certified channel")
    p.add_argument("what", choices=["programmer"])
    p.add_argument("file")
    p.add_argument("family")
    p.add_argument("gates")
    p.add_argument("-o", "--output", default=None, help="certificate file to write")

    p = sub.add_parser("graph", help="emit a graph for a family")
    p.add_argument("kind", choices=["confusability"])
    p.add_argument("file")
    p.add_argument("family")

    p = sub.add_parser("iid", help="decoder error curve for tensor powers (CSV)")
    p.add_argument("file")
    p.add_argument("family")
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--dim-cap", type=int, default=asymptotics.DEFAULT_DIM_CAP)

    p = sub.add_parser("verify", help="verify a channel or a certificate file")
    vsub = p.add_subparsers(dest="what", required=True)
    pn = vsub.add_parser("noinfo", help="information versus disturbance report")
    pn.add_argument("file")
    pn.add_argument("channel")
    pn.add_argument("state0")
    pn.add_argument("state1")
    pc = vsub.add_parser("cert", help="re-verify a certificate against a model")
    pc.add_argument("file")
    pc.add_argument("cert")
    return parser


def _print_channel(m: model.ModelFile, channel) -> None:
    if m.backend == model.FINSTOCH:
        print(model._fmt_matrix(channel.entries, model._fmt_fraction))
    else:
        print(model._fmt_matrix(channel.choi.tolist(), model._fmt_complex))


def _cmd_check(args) -> int:
    m = model.load(args.file)
    failures = 0
    for s in m.states:
        if m.backend == model.FINSTOCH:
            valid = stochastic.check_causal(s.payload)
            pure = valid and stochastic.is_pure_state(s.payload).pure
        else:
            valid = quantum.check_state(s.payload)
            pure = valid and quantum.is_pure_state(s.payload)
        status = "ok" if valid else "INVALID"
        purity = "pure" if pure else "impure"
        print(f"state {s.name}: {status}, {purity}")
        failures += 0 if valid else 1
    for g in m.gates:
        if m.backend == model.FINSTOCH:
            valid = stochastic.check_causal(g.payload)
            pure = valid and stochastic.is_pure_gate(g.payload)
        else:
            valid = quantum.check_cptp(g.payload)
            pure = valid and quantum.is_pure_gate(g.payload)
        status = "causal" if valid else "NOT CAUSAL"
        purity = "pure" if pure else "impure"
        print(f"gate {g.name}: {status}, {purity}")
        failures += 0 if valid else 1
    for c in m.circuits:
        report = circuit.typecheck(c.diagram)
        if report.ok:
            print(f"circuit {c.name}: ok, {report.in_type!r} -> {report.out_type!r}")
        else:
            print(f"circuit {c.name}: ILL-TYPED at {'.'.join(report.path)}")
            failures += 1
    return 0 if failures == 0 else 1


def _cmd_eval(args) -> int:
    m = model.load(args.file)
    decl = m.circuit(args.circuit)
    env = m.environment()
    if m.backend == model.FINSTOCH:
        result = stochastic.evaluate(decl.diagram, env)
    else:
        result = quantum.evaluate(decl.diagram, env)
    print(f"type: {decl.diagram.in_type!r} -> {decl.diagram.out_type!r}")
    _print_channel(m, result)
    return 0


def _cmd_decide(args, tol: float) -> int:
    m = model.load(args.file)
    family = m.state_family(args.family)
    if args.task == "dist":
        decision = tasks.decide_distinguishable(family, tol)
        kind = "dist"
    elif args.task == "clone":
        decision = tasks.decide_copiable(family, tol)
        kind = "clone"
    else:
        decision = tasks.find_faithful_side_info(family, tol)
        kind = "sideinfo"
    if decision.verdict:
        print("verdict: YES")
        cert = model.certificate_model(m, kind, args.family, decision.certificate)
        print(model.format_model(cert), end="")
        return 0
    print(f"verdict: NO ({decision.diagnostic})")
    return 1


def _cmd_synth(args, tol: float) -> int:
    m = model.load(args.file)
    family = m.state_family(args.family)
    gates = m.gate_family(args.gates)
    programmer = tasks.build_programmer(family, gates, tol)
    cert = model.certificate_model(
        m, "programmer", args.family, programmer, gates_name=args.gates
    )
    text = model.format_model(cert)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {args.output}")
    else:
        print(text, end="")
    return 0


def _cmd_graph(args, tol: float) -> int:
    m = model.load(args.file)
    family = m.state_family(args.family)
    graph = tasks.confusability(family, tol)
    print(graph.to_dot(), end="")
    return 0


def _cmd_iid(args) -> int:
    m = model.load(args.file)
    family = m.state_family(args.family)
    curve = asymptotics.error_curve(family, args.n_max, dim_cap=args.dim_cap)
    print(curve.to_csv(), end="")
    return 0


def _cmd_verify_noinfo(args, tol: float) -> int:
    m = model.load(args.file)
    channel = m.gate(args.channel).payload
    alpha0 = m.state(args.state0).payload
    alpha1 = m.state(args.state1).payload
    report = tasks.verify_no_info(channel, alpha0, alpha1, tol)
    print(f"disturbance {args.state0}: {report.disturbance[0]}")
    print(f"disturbance {args.state1}: {report.disturbance[1]}")
    print(f"info: {report.info}")
    print(f"nodisturb: {report.nodisturb}")
    print(f"distinguishable: {report.distinguishable}")
    print(f"consistent: {report.consistent}")
    return 0


def _verify_claim(m: model.ModelFile, cert: model.ModelFile, tol: float) -> bool:
    claim = cert.claims[0]
    family = m.state_family(claim.family)
    embedded = cert.state_family(claim.family)
    if family.labels != embedded.labels:
        raise ModelError(
            f"certificate family {claim.family!r} does not match the model"
        )
    for a, b in zip(family.states, embedded.states):
        if m.backend == model.FINSTOCH:
            same = a == b
        else:
            same = quantum.trace_distance(a, b) <= tol
        if not same:
            raise ModelError(
                f"certificate family {claim.family!r} does not match the model"
            )
    channel = cert.gate(claim.gate).payload
    k = len(family)
    if claim.kind == "programmer":
        gates = m.gate_family(claim.gates)
        for x, state in enumerate(family.states):
            if m.backend == model.FINSTOCH:
                got = state.tensor(stochastic.StochChannel.identity(gates.in_dim)).then(channel)
                if got != gates.gates[x]:
                    return False
            else:
                got = quantum.QChannel.prepare(state).tensor(
                    quantum.QChannel.identity(gates.in_dim)
                ).then(channel)
                if quantum.channel_distance(got, gates.gates[x]) > tol:
                    return False
        return True
    for x, state in enumerate(family.states):
        if claim.kind == "dist":
            if m.backend == model.FINSTOCH:
                want = stochastic.StochChannel.point_mass(k, x)
            else:
                want = quantum.QState.from_ket(np.eye(k)[x])
        elif claim.kind == "clone":
            if m.backend == model.FINSTOCH:
                want = state.tensor(state)
            else:
                want = quantum.QState(np.kron(state.mat, state.mat))
        else:
            if m.backend == model.FINSTOCH:
                want = state.tensor(stochastic.StochChannel.point_mass(k, x))
            else:
                want = quantum.QState(np.kron(state.mat, np.eye(k)[[x]].T @ np.eye(k)[[x]]))
        got = channel.apply(state)
        if m.backend == model.FINSTOCH:
            if got != want:
                return False
        else:
            if quantum.trace_distance(got, want) > tol:
                return False
    return True


def _cmd_verify_cert(args, tol: float) -> int:
    m = model.load(args.file)
    cert = model.load(args.cert)
    if not cert.claims:
        raise ModelError("certificate file carries no claim")
    if cert.backend != m.backend:
        raise ModelError("certificate and model use different backends")
    if _verify_claim(m, cert, tol):
        print("certificate: verified")
        return 0
    print("certificate: FAILED")
    return 1


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    tol = args.tol
    try:
        if args.command == "check":
            return _cmd_check(args)
        if args.command == "eval":
            return _cmd_eval(args)
        if args.command == "decide":
            return _cmd_decide(args, tol)
        if args.command == "synth":
            return _cmd_synth(args, tol)
        if args.command == "graph":
            return _cmd_graph(args, tol)
        if args.command == "iid":
            return _cmd_iid(args)
        if args.command == "verify":
            if args.what == "noinfo":
                return _cmd_verify_noinfo(args, tol)
            return _cmd_verify_cert(args, tol)
        raise AssertionError("unreachable")
    except NotDistinguishable as exc:
        print(f"verdict: NO ({exc})", file=sys.stderr)
        return 1
    except InvariantViolation as exc:
        print(f"invariant violation: {exc}", file=sys.stderr)
        return 3
    except (ModelError, ProcTheoryError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
