"""Command line: ``ominal [script.osl] <command ...> [--json out.json] [--seed N]``.

Commands::

    cohomology NAME [--minus NAME] [--coeff Z|Z/m]
    decompose NAME
    cover NAME --t RAT
    typespace NAME
    stabilize FAMILY
    verify SUITE

Without a command, the command records inside the script are run in order.
Reports are JSON on standard output; the exit code is 1 if any command
failed or any verification check did not pass.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path

from .cells import decompose, verify_partition
from .dsl import COMMANDS, ParseError, Script, parse
from .homology import (
    CoefficientGroup,
    cech_cover_cohomology,
    euler_characteristic,
    good_cover_cohomology,
    trim,
)
from .oracle import oracle_cohomology
from .shrink import acyclicity_certificate, cube_face_cover, shrink_family, stabilization_t0
from .suites import SUITES, run_suite
from .typespace import enumerate_named_types, specializes


class CommandError(ValueError):
    pass


def groups_json(groups) -> list:
    """Groups up to the last nonzero degree as ``{degree, rank, torsion}``."""
    return [g.as_dict(p) for p, g in enumerate(trim(groups))]


def _set(script: Script | None, name: str):
    if script is None or name not in script.sets:
        raise CommandError(f"no set named {name!r}")
    return script.sets[name]


def cmd_cohomology(script, name: str, minus: str | None, coeff: str) -> dict:
    g = CoefficientGroup.parse(coeff)
    x = _set(script, name)
    notes = []
    if minus is not None:
        q = _set(script, minus) & x
        groups = oracle_cohomology(x, q, g)
    elif x.is_closed():
        groups = oracle_cohomology(x, None, g)
    else:
        cl = x.closure()
        rest = (cl - x).reduced()
        if not rest.is_closed():
            raise CommandError(f"{name} is not locally closed; use --minus with a compact space")
        notes.append("computed as the closure minus its frontier")
        groups = oracle_cohomology(cl, rest, g)
    return {"command": "cohomology", "target": name, "minus": minus, "coefficients": str(g),
            "groups": groups_json(groups), "euler_characteristic": euler_characteristic(groups),
            "notes": notes}


def cmd_decompose(script, name: str) -> dict:
    x = _set(script, name)
    d = decompose(x)
    rep = verify_partition(d)
    return {"command": "decompose", "target": name,
            "cells": [c.describe() for c in d.cells],
            "counts": {str(k): v for k, v in sorted(d.counts().items())},
            "euler_characteristic": d.euler_characteristic(),
            "partition_verified": rep.ok,
            "notes": [str(p) for p in rep.problems]}


def _single_cell(x):
    cells = decompose(x).cells
    if len(cells) != 1:
        raise CommandError(f"set is not a single cell ({len(cells)} cells in its decomposition)")
    return cells[0]


def cmd_cover(script, name: str, t: str) -> dict:
    if t is None:
        raise CommandError("cover needs --t")
    tval = Fraction(t)
    c = _single_cell(_set(script, name))
    fam = shrink_family(c)
    cov = cube_face_cover(c, tval, fam)
    nerve = cov.nerve()
    certs = {}
    for s in nerve.simplices:
        key = tuple(sorted(s, key=cov.index_key))
        certs[key] = acyclicity_certificate(cov, key)
    missing = [k for k, v in certs.items() if not v]
    notes = [f"{len(certs) - len(missing)} of {len(certs)} intersections certified acyclic"]
    good = good_cover_cohomology(cov, certs) if not missing else None
    cech = cech_cover_cohomology(cov)
    return {"command": "cover", "target": name, "t": str(tval),
            "cell": c.describe(),
            "members": [str(i) for i in cov.index_order()],
            "nerve": {"f_vector": list(nerve.f_vector())},
            "good_cover": groups_json(good) if good is not None else None,
            "cech": groups_json(cech),
            "notes": notes}


def cmd_typespace(script, name: str) -> dict:
    x = _set(script, name)
    space = enumerate_named_types(x)
    types = list(space)
    order = [[str(p), str(q)] for p in types for q in types
             if p != q and specializes(p, q, x)]
    return {"command": "typespace", "target": name,
            "types": [str(p) for p in types],
            "closed_points": [str(p) for p in space.closed_points()],
            "specializations": order, "notes": []}


def cmd_stabilize(script, name: str) -> dict:
    if script is None or name not in script.families:
        raise CommandError(f"no family named {name!r}")
    res = stabilization_t0(script.families[name])
    return {"command": "stabilize", "target": name, "t0": str(res.t0),
            "minimum_values": [str(v) for v in res.minimum_values],
            "certified": res.certified, "notes": []}


def cmd_verify(suite: str, seed: int) -> dict:
    if suite not in SUITES:
        raise CommandError(f"unknown suite {suite!r}; choose from {', '.join(SUITES)}")
    out = run_suite(suite, seed).as_dict()
    out["command"] = "verify"
    return out


def _command_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ominal", add_help=False)
    p.add_argument("command", choices=COMMANDS)
    p.add_argument("target")
    p.add_argument("--minus")
    p.add_argument("--coeff", default="Z")
    p.add_argument("--t")
    return p


def run_command(script: Script | None, words: list, seed: int = 0) -> dict:
    try:
        args = _command_parser().parse_args(words)
    except SystemExit:
        raise CommandError(f"bad command: {' '.join(words)}") from None
    if args.command == "cohomology":
        return cmd_cohomology(script, args.target, args.minus, args.coeff)
    if args.command == "decompose":
        return cmd_decompose(script, args.target)
    if args.command == "cover":
        return cmd_cover(script, args.target, args.t)
    if args.command == "typespace":
        return cmd_typespace(script, args.target)
    if args.command == "stabilize":
        return cmd_stabilize(script, args.target)
    return cmd_verify(args.target, seed)


def _ok(result: dict) -> bool:
    if "error" in result:
        return False
    if result.get("command") == "verify":
        return result["passed"]
    return True


def _error(exc: Exception, words=None) -> dict:
    out = {"error": {"type": type(exc).__name__, "message": str(exc)}}
    if words:
        out["command"] = " ".join(words)
    if isinstance(exc, ParseError):
        out["error"].update(line=exc.line, column=exc.col)
    return out


def main(argv: list | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    top = argparse.ArgumentParser(
        prog="ominal", description="Exact cohomology of semilinear sets.",
        usage="ominal [script.osl] <command ...> [--json OUT] [--seed N]", allow_abbrev=False)
    top.add_argument("--json", dest="json_out", metavar="OUT")
    top.add_argument("--seed", type=int, default=0)
    opts, rest = top.parse_known_args(argv)

    script = None
    results = []
    if rest and rest[0] not in COMMANDS:
        path = Path(rest[0])
        rest = rest[1:]
        try:
            script = parse(path.read_text())
        except (OSError, ParseError) as exc:
            results.append(_error(exc))
    if not results:
        jobs = [rest] if rest else [c.words for c in (script.commands if script else [])]
        if not jobs:
            top.print_usage(sys.stderr)
            return 1
        for words in jobs:
            try:
                results.append(run_command(script, words, opts.seed))
            except Exception as exc:  # reported as a structured error object
                results.append(_error(exc, words))

    report = results[0] if len(results) == 1 else {"results": results}
    text = json.dumps(report, indent=2, sort_keys=True)
    print(text)
    if opts.json_out:
        Path(opts.json_out).write_text(text + "\n")
    return 0 if all(_ok(r) for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
