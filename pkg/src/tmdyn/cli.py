"""Command-line front end.

Exit codes: 0 success, 2 validation failure, 3 budget ran out before a
verdict, 4 I/O or parse error.  Reports are JSON on stdout.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from datetime import datetime, timezone
from pathlib import Path

from .errors import FormatError, MachineError, TmdynError
from .formats import Artifact, dump_artifact, load_artifact, machine_digest
from .gshift import is_bijective_on_encoding
from .cantor import audit_block_map, decode_point
from .ns_budget import NSParams, min_amplitude, step_budget, tau_curve
from .orbit import (
    NotYet,
    Reached,
    ReachQuery,
    check_reachability,
    classify_orbit,
    explicit_point,
    in_cylinders,
    orbit_census,
    periodic_system,
    reach_via_block_map,
    target_cylinder,
)
from .outcomes import Halted, Unresolved, verdict_dict
from .pipeline import (
    audit,
    blockmap_from_gshift,
    compile_machine,
    conjugacy_selftest,
    random_configurations,
    tiling_samples,
)
from .tm_core import Configuration, Tape, is_reversible, run
from .tm_transform import check_initial_unreachable, extend_halt_loop, restartify

SCHEMA = "tmdyn.report/1"
EXIT_OK, EXIT_INVALID, EXIT_UNRESOLVED, EXIT_IO = 0, 2, 3, 4


class CliFailure(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _emit(args, command: str, body: dict, out=None):
    report = {"schema": SCHEMA, "command": command, **body}
    if not args.no_timestamp:
        report["timestamp"] = datetime.now(timezone.utc).isoformat()
    text = json.dumps(report, indent=2, sort_keys=True) + "\n"
    (out or sys.stdout).write(text)
    if getattr(args, "report", None):
        Path(args.report).write_text(text, encoding="utf-8")


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise CliFailure(EXIT_IO, f"cannot read {path}: {exc}") from exc


def _load(path: str) -> Artifact:
    try:
        return load_artifact(_read(path), Path(path).stem)
    except (FormatError, MachineError, ValueError) as exc:
        raise CliFailure(EXIT_IO, f"{path}: {exc}") from exc


def _write(path, text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    try:
        Path(path).write_text(text, encoding="utf-8")
    except OSError as exc:
        raise CliFailure(EXIT_IO, f"cannot write {path}: {exc}") from exc


def _witness(pair) -> list:
    return [str(c) for c in pair]


def cmd_validate(args) -> int:
    text = _read(args.file)
    try:
        art = load_artifact(text, Path(args.file).stem)
    except MachineError as exc:
        _emit(args, "validate", {"file": args.file, "status": "invalid", "error": str(exc)})
        return EXIT_INVALID
    except (FormatError, ValueError) as exc:
        raise CliFailure(EXIT_IO, f"{args.file}: {exc}") from exc
    body = {
        "file": args.file,
        "kind": art.kind,
        "digest": art.digest,
        "provenance": art.provenance.as_list(),
        "status": "ok",
    }
    status = EXIT_OK
    if art.kind == "machine":
        m = art.payload
        body.update(states=len(m.states), alphabet=len(m.alphabet), looping=m.looping,
                    initial_unreachable=check_initial_unreachable(m))
        if args.require_reversible:
            rep = is_reversible(m, args.radius)
            body["reversible"] = rep.reversible
            body["radius"] = rep.radius
            if not rep:
                body["status"] = "invalid"
                body["collision"] = _witness(rep.witness)
                status = EXIT_INVALID
    elif art.kind == "gshift":
        gs = art.payload
        body.update(alphabet=len(gs.alphabet), df=[gs.df_start, gs.df_len], dg=[gs.dg_start, gs.dg_len])
        if art.encoding is not None:
            rep = is_bijective_on_encoding(gs, art.encoding, args.radius)
            body["injective_on_encoding"] = rep.injective
            if args.require_reversible and not rep:
                body["status"] = "invalid"
                body["collision"] = _witness(rep.witness)
                status = EXIT_INVALID
    else:
        bm = art.payload
        samples = None
        if art.encoding is not None and art.code is not None and art.encoding.looping:
            samples = tiling_samples(art.encoding, art.code, 2)
        au = audit_block_map(bm, samples)
        body["audit"] = au.as_dict()
        body["bijective"] = bm.bijective
        if not au.partition or not au.measure_preserved or (bm.bijective and not au.ok):
            body["status"] = "invalid"
            status = EXIT_INVALID
    _emit(args, "validate", body)
    return status


def cmd_compile(args) -> int:
    art = _load(args.file)
    if art.kind == "gshift" and args.to == "blockmap":
        bm, code = blockmap_from_gshift(art.payload, art.encoding)
        prov = art.provenance.extended("to_block_map", art.digest)
        out = Artifact("blockmap", bm, "", prov, art.encoding, code)
        au = audit_block_map(bm)
        _write(args.output, dump_artifact(out))
        _emit(args, "compile", {"to": "blockmap", "source": art.digest, "audit": au.as_dict()},
              out=sys.stderr if args.output in (None, "-") else None)
        return EXIT_OK if au.ok or not bm.bijective else EXIT_INVALID
    if art.kind != "machine":
        raise CliFailure(EXIT_INVALID, f"cannot compile a {art.kind} to {args.to}")
    machine, prov, src = art.payload, art.provenance, art.digest
    body = {"to": args.to, "source": src}
    try:
        if args.to == "restart":
            machine = restartify(machine)
            prov = prov.extended("restartify", src)
        if args.loop:
            prov = prov.extended("extend_halt_loop", machine_digest(machine))
            machine = extend_halt_loop(machine)
    except TmdynError as exc:
        body["error"] = str(exc)
        _emit(args, "compile", body, out=sys.stderr)
        return EXIT_INVALID
    if args.to == "restart":
        out = Artifact("machine", machine, machine_digest(machine), prov)
    else:
        comp = compile_machine(machine, blockmap=True)
        configs = random_configurations(machine, args.samples, args.seed)
        result = conjugacy_selftest(comp, configs, args.steps)
        body["selftest"] = {"seed": args.seed, "samples": args.samples, "steps": args.steps,
                            "checked": result.checked, "passed": bool(result)}
        if args.to == "gshift":
            prov = prov.extended("compile_tm", machine_digest(machine))
            out = Artifact("gshift", comp.gshift, "", prov, comp.encoding)
        else:
            prov = prov.extended("compile_tm+binarize+to_block_map", machine_digest(machine))
            au = audit(comp)
            body["audit"] = au.as_dict()
            body["bijective"] = comp.blockmap.bijective
            out = Artifact("blockmap", comp.blockmap, "", prov, comp.encoding, comp.code)
        if not result:
            body["mismatch"] = [str(x) for x in result.mismatch]
    text = dump_artifact(out)
    body["digest"] = load_artifact(text).digest
    _write(args.output, text)
    _emit(args, "compile", body, out=sys.stderr if args.output in (None, "-") else None)
    failed = ("selftest" in body and not body["selftest"]["passed"]) or (
        "audit" in body and body.get("bijective") and not all(
            body["audit"][k] is not False for k in ("partition", "measure_preserved", "image_disjoint", "tiling"))
    )
    return EXIT_INVALID if failed else EXIT_OK


def _parse_query(text: str):
    if text in ("periodic", "halt"):
        return text, None
    if text.startswith("reach:"):
        return "reach", ReachQuery.parse(text[len("reach:"):])
    raise CliFailure(EXIT_IO, f"unknown query {text!r}")


def _orbit_machine(m, tape, kind, query, budget):
    if kind == "reach":
        if m.looping:
            raise CliFailure(EXIT_INVALID, "reachability needs a halting machine")
        return check_reachability(m, tape, query, budget)
    if kind == "halt":
        return run(m, tape, budget)
    system = m if m.looping else extend_halt_loop(m)
    return classify_orbit(system, system.start(tape), budget)


def _orbit_gshift(art, tape, kind, query, budget):
    gs, enc = art.payload, art.encoding
    if enc is None:
        raise CliFailure(EXIT_INVALID, "shift file carries no configuration encoding")
    start = enc.encode(Configuration(enc.initial, tape))
    halted = None if enc.looping else enc.is_halting
    v = classify_orbit(gs, start, budget, halted=halted)
    if kind == "periodic" or kind == "halt":
        if isinstance(v, Halted):
            return Halted(enc.decode(v.output).tape, v.steps)
        return v
    if isinstance(v, Halted):
        out = enc.decode(v.output).tape
        if out.window(-query.k, query.k) == query.target:
            return Reached(v.steps)
        return NotYet(budget, halted=True)
    return NotYet(budget)


def _orbit_blockmap(art, tape, kind, query, budget):
    bm, enc, code = art.payload, art.encoding, art.code
    if enc is None or code is None:
        raise CliFailure(EXIT_INVALID, "block map file carries no encoding/code")
    p = explicit_point(enc, code, tape)
    if kind == "reach":
        return reach_via_block_map(bm, p, target_cylinder(enc, code, query), budget)
    halting = None
    if not enc.looping:
        cyl = target_cylinder(enc, code)
        halting = lambda pt: in_cylinders(pt, cyl)  # noqa: E731
    v = classify_orbit(bm, p, budget, halted=halting)
    if isinstance(v, Halted):
        return Halted(enc.decode(code.decode(decode_point(v.output))).tape, v.steps)
    return v


def cmd_orbit(args) -> int:
    art = _load(args.file)
    kind, query = _parse_query(args.query)
    blank = art.payload.blank if art.kind == "machine" else art.encoding.blank if art.encoding else "0"
    tape = Tape.parse(args.input, blank)
    if art.kind == "machine":
        v = _orbit_machine(art.payload, tape, kind, query, args.budget)
    elif art.kind == "gshift":
        v = _orbit_gshift(art, tape, kind, query, args.budget)
    else:
        v = _orbit_blockmap(art, tape, kind, query, args.budget)
    if isinstance(v, Reached):
        verdict = {"kind": "reached", "steps": v.steps}
    elif isinstance(v, NotYet):
        verdict = {"kind": "not_yet", "budget": v.budget, "halted_elsewhere": v.halted}
    else:
        verdict = verdict_dict(v)
    body = {"file": args.file, "artifact": art.kind, "digest": art.digest, "input": args.input,
            "query": args.query, "budget": args.budget, "verdict": verdict}
    _emit(args, "orbit", body)
    if isinstance(v, Unresolved) or (isinstance(v, NotYet) and not v.halted):
        return EXIT_UNRESOLVED
    return EXIT_OK


def cmd_census(args) -> int:
    art = _load(args.file)
    if art.kind != "machine":
        raise CliFailure(EXIT_INVALID, "census runs on machine files")
    m = art.payload
    if not m.looping and not args.as_is:
        m = periodic_system(m)
    raw = args.inputs.split(",") if args.inputs else []
    if args.inputs_file:
        raw += [ln.strip() for ln in _read(args.inputs_file).splitlines() if ln.strip()]
    tapes = [Tape.parse(s, m.blank) for s in raw]
    rep = orbit_census(m, tapes, args.budget, jobs=args.jobs)
    _emit(args, "census", {"file": args.file, "digest": art.digest, "summary": rep.summary(), **rep.as_dict()})
    return EXIT_UNRESOLVED if rep.counts["unresolved"] else EXIT_OK


def cmd_budget(args) -> int:
    try:
        params = NSParams(args.nu, args.m)
        n = step_budget(params, args.tau_step)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliFailure(EXIT_INVALID, str(exc)) from exc
    bound = min_amplitude(args.nu, args.tau_step, n + 1)
    body = {"nu": args.nu, "m": args.m, "tau_step": args.tau_step,
            "tau_sup": str(params.tau_sup), "steps": n,
            "min_amplitude_for_next_step": {"m": str(bound.m), "attained": bound.attained}}
    if args.csv:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["t", "tau"])
        for t, v in tau_curve(params, args.t_max, args.csv):
            w.writerow([repr(t), repr(v)])
        _write(args.csv_out, buf.getvalue())
    _emit(args, "budget", body, out=sys.stderr if args.csv and args.csv_out in (None, "-") else None)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--no-timestamp", action="store_true", help="omit the report timestamp")
    common.add_argument("--report", help="also write the JSON report to this file")

    p = argparse.ArgumentParser(prog="tmdyn", description="Turing machines as dynamical systems")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", parents=[common], help="parse and check a machine/shift/blockmap file")
    v.add_argument("file")
    v.add_argument("--require-reversible", action="store_true")
    v.add_argument("--radius", type=int, default=2)
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("compile", parents=[common], help="restartify / compile to shift / block map")
    c.add_argument("file")
    c.add_argument("--to", choices=["restart", "gshift", "blockmap"], required=True)
    c.add_argument("--loop", action="store_true", help="add the halt loop before compiling")
    c.add_argument("-o", "--output")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--samples", type=int, default=20)
    c.add_argument("--steps", type=int, default=20)
    c.set_defaults(func=cmd_compile)

    o = sub.add_parser("orbit", parents=[common], help="classify the orbit of an input")
    o.add_argument("file")
    o.add_argument("--input", default="", help="tape such as '11' or '10.01' ('.' marks the origin)")
    o.add_argument("--budget", type=int, default=10_000)
    o.add_argument("--query", default="periodic", help="periodic | halt | reach:<k>:<window>")
    o.set_defaults(func=cmd_orbit)

    n = sub.add_parser("census", parents=[common], help="orbit census over a family of inputs")
    n.add_argument("file")
    n.add_argument("--inputs", default="", help="comma separated tapes")
    n.add_argument("--inputs-file")
    n.add_argument("--budget", type=int, default=10_000)
    n.add_argument("--jobs", type=int, default=1)
    n.add_argument("--as-is", action="store_true", help="do not restartify and loop the machine first")
    n.set_defaults(func=cmd_census)

    b = sub.add_parser("budget", parents=[common], help="Navier-Stokes step budget")
    b.add_argument("--nu", required=True)
    b.add_argument("--m", required=True)
    b.add_argument("--tau-step", required=True)
    b.add_argument("--csv", type=int, default=0, metavar="N", help="emit N samples of tau(t) as CSV")
    b.add_argument("--t-max", type=float, default=10.0)
    b.add_argument("--csv-out")
    b.set_defaults(func=cmd_budget)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliFailure as exc:
        print(f"tmdyn: {exc}", file=sys.stderr)
        return exc.code
    except TmdynError as exc:
        print(f"tmdyn: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
