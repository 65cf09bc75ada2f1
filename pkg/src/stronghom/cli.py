"""Command-line interface.

    stronghom homology --input complex.json
    stronghom cone --input map.json --degree 1
    stronghom strong --input tower.json --degree 1
    stronghom les --input tower.json
    stronghom milnor --input tower.json --degree 0
    stronghom verify --suite ses --seed 7 --count 100
    stronghom generate --kind solenoid --p 2 --length 3 --output tower.json

Reports are JSON with sorted keys on stdout (or ``--output``); a short summary
goes to stderr.  Exit status: 0 success, 1 a certificate failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys

from . import __version__
from .algebra import FgAbGroup
from .chain import ChainComplex, ChainMap, MappingCone
from .errors import ParseError, StrongHomError, ValidationError
from .generators import random_map_tower, rng_for
from .limits import GroupTower, inverse_limit, lim1_verdict, milnor_report
from .serialize import digest, dumps, load, matrix_to_json, parse, to_document
from .simplicial import (SimplicialComplex, SimplicialMap, axiom1_crosscheck, circle, crosscheck_passes,
                         reduced_homology, solenoid_map_tower, solenoid_tower, wrap_map)
from .suites import SUITES, run_suite
from .tower import MapTower, Tower, long_exact_sequence, sigma_partial_ses, strong_homology, \
    tower_strong_homology

CONVENTIONS = {
    "version": "1",
    "cone": "C_n = L_{n-1} + M_n (source block first), d(l, m) = (dl, -dm + f l)",
    "coherent_morphism": "phi12 is a homotopy from phi2 f to g phi1: d phi12 + phi12 d = g phi1 - phi2 f",
    "truncation": "shift difference (c_i) -> (p(c_{i+1}) - c_i) from levels 1..N to 1..N-1, no wrap-around",
    "strong_homology": "Hbar_n(f) = H_{n+1} of the cone of the pair shift difference",
}


def _degrees(args, lo: int, hi: int) -> list[int]:
    if getattr(args, "degree", None) is not None:
        return [args.degree]
    return list(range(lo, hi + 1))


def _groups(G) -> dict:
    return G.to_dict()


def _require(obj, kinds, command):
    if not isinstance(obj, kinds):
        names = ", ".join(k.__name__ for k in kinds)
        raise ParseError(f"{command} expects a document describing one of: {names}")


def cmd_homology(args, obj) -> dict:
    _require(obj, (ChainComplex, SimplicialComplex, ChainMap), "homology")
    if isinstance(obj, ChainMap):
        lo, hi = min(obj.source.lo, obj.target.lo), max(obj.source.hi, obj.target.hi)
        out = {}
        for n in _degrees(args, lo, hi):
            h = obj.induced_on_homology(n)
            out[str(n)] = {"source": _groups(h.source), "target": _groups(h.target),
                           "induced": matrix_to_json(h.matrix)}
        return {"degrees": out}
    if isinstance(obj, SimplicialComplex):
        C = obj.chains()
        return {"degrees": {str(n): {"homology": _groups(C.homology(n)),
                                     "reduced": _groups(reduced_homology(obj, n))}
                            for n in _degrees(args, C.lo, C.hi)}}
    return {"degrees": {str(n): _groups(obj.homology(n)) for n in _degrees(args, obj.lo, obj.hi)}}


def cmd_cone(args, obj) -> dict:
    _require(obj, (ChainMap, SimplicialMap), "cone")
    if isinstance(obj, SimplicialMap):
        g = obj.chain_map()
        cone = MappingCone(g)
        degrees = _degrees(args, cone.lo, cone.hi)
        checks = {str(n): axiom1_crosscheck(obj, n) for n in degrees}
        return {"degrees": {str(n): _groups(cone.homology(n)) for n in degrees},
                "cone_space_crosscheck": checks,
                "passed": all(crosscheck_passes(c) for c in checks.values())}
    cone = MappingCone(obj)
    return {"degrees": {str(n): _groups(cone.homology(n)) for n in _degrees(args, cone.lo, cone.hi)},
            "ranks": {str(n): cone.rank(n) for n in cone.degrees}}


def _tower_degrees(F) -> tuple[int, int]:
    levels = list(F.levels) if isinstance(F, Tower) else list(F.domain.levels) + list(F.codomain.levels)
    los = [C.lo for C in levels if not C.is_zero()]
    his = [C.hi for C in levels if not C.is_zero()]
    return (min(los) - 1, max(his) + 1) if los else (0, 0)


def cmd_strong(args, obj) -> dict:
    _require(obj, (MapTower, Tower), "strong")
    lo, hi = _tower_degrees(obj)
    out, checks = {}, {}
    for n in _degrees(args, lo, hi):
        if isinstance(obj, Tower):
            G = tower_strong_homology(obj, n)
            oracle = obj.levels[-1].homology(n)
        else:
            G = strong_homology(obj, n)
            oracle = MappingCone(obj.maps[-1]).homology(n)
        out[str(n)] = _groups(G)
        checks[str(n)] = G.isomorphic(oracle)
    return {"strong_homology": out, "matches_last_level": checks, "passed": all(checks.values())}


def cmd_les(args, obj) -> dict:
    _require(obj, (MapTower,), "les")
    ses = sigma_partial_ses(obj)
    les = long_exact_sequence(obj, args.top, args.bottom)
    cert = {str(n): c for n, c in sorted(ses.certificate.items())}
    return {"short_exact_sequence": cert, "long_exact_sequence": les.to_dict(),
            "passed": ses.passes() and les.is_exact()}


def cmd_milnor(args, obj) -> dict:
    _require(obj, (MapTower, GroupTower), "milnor")
    if isinstance(obj, GroupTower):
        v = lim1_verdict(obj)
        return {"mode": obj.mode, "lim": _groups(inverse_limit(obj)), "lim1": v.to_dict(), "passed": True}
    lo, hi = _tower_degrees(obj)
    reports = {str(n): milnor_report(obj, n) for n in _degrees(args, lo, hi)}
    return {"degrees": {n: r.to_dict() for n, r in reports.items()},
            "passed": all(r.passes() for r in reports.values())}


def cmd_verify(args) -> dict:
    names = sorted(SUITES) if args.suite == "all" else [args.suite]
    suites = {name: run_suite(name, args.seed, args.count, args.jobs) for name in names}
    return {"suites": suites, "passed": all(not s["failed"] for s in suites.values())}


def cmd_generate(args):
    kind = args.kind
    if kind == "map_tower":
        return random_map_tower(rng_for(args.seed, "map_tower", args.index), args.length)
    if kind == "solenoid":
        return solenoid_tower(args.p, args.length or 3)
    if kind == "solenoid_pair":
        return solenoid_map_tower(args.p, args.q, args.length or 3)
    if kind == "circle_map":
        return wrap_map(3 * args.q, 3)
    if kind == "circle":
        return circle(3)
    if kind == "scalar_tower":
        return GroupTower.scalar(FgAbGroup.from_invariants((), 1), args.p)
    raise ParseError(f"unknown kind {kind}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stronghom", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, needs_input=True, degree=True):
        p = sub.add_parser(name, help=help_text)
        if needs_input:
            p.add_argument("--input", "-i", required=True, help="input document (JSON), '-' for stdin")
        if degree:
            p.add_argument("--degree", "-n", type=int, help="a single degree (default: every relevant degree)")
        p.add_argument("--output", "-o", help="write the report here instead of stdout")
        return p

    add("homology", "homology of a complex or simplicial complex, or induced maps of a chain map")
    add("cone", "homology of the mapping cone of a chain map or simplicial map")
    add("strong", "strong homology of a map tower (or a tower)")
    p = add("les", "short and long exact sequences of a map tower", degree=False)
    p.add_argument("--top", type=int, help="highest degree n of the sequence")
    p.add_argument("--bottom", type=int, help="lowest degree n of the sequence")
    add("milnor", "Milnor sequence of a map tower, or lim / lim^1 of a group tower")
    p = add("verify", "run a seeded verification suite", needs_input=False, degree=False)
    p.add_argument("--suite", required=True, choices=sorted(SUITES) + ["all"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--jobs", type=int, default=1, help="worker processes (the report does not depend on it)")
    p = add("generate", "write an example input document", needs_input=False, degree=False)
    p.add_argument("--kind", required=True,
                   choices=["map_tower", "solenoid", "solenoid_pair", "circle_map", "circle", "scalar_tower"])
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--index", type=int, default=0)
    p.add_argument("--length", type=int, help="tower length")
    p.add_argument("--p", type=int, default=2, help="bond degree / multiplier")
    p.add_argument("--q", type=int, default=2, help="levelwise map degree")
    return parser


def _read_input(path: str):
    if path == "-":
        data = sys.stdin.buffer.read()
        return parse(data), digest(data)
    return load(path)


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


COMMANDS = {"homology": cmd_homology, "cone": cmd_cone, "strong": cmd_strong, "les": cmd_les,
            "milnor": cmd_milnor}


def run(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "generate":
            _emit(dumps(to_document(cmd_generate(args))), args.output)
            print(f"generated {args.kind}", file=sys.stderr)
            return 0
        if args.command == "verify":
            job = {"suite": args.suite, "seed": args.seed, "count": args.count}
            sha = hashlib.sha256(json.dumps(job, sort_keys=True).encode()).hexdigest()
            result = cmd_verify(args)
            job_info = {"job": job, "job_sha256": sha}
        else:
            obj, sha = _read_input(args.input)
            result = COMMANDS[args.command](args, obj)
            job_info = {"input_sha256": sha}
    except (ParseError, ValidationError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 2
    except StrongHomError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1
    passed = result.pop("passed", True)
    report = {"command": args.command, "conventions": CONVENTIONS, "passed": passed,
              "result": result, "tool_version": __version__, **job_info}
    _emit(dumps(report), args.output)
    _summarise(args.command, result, passed)
    return 0 if passed else 1


def _summarise(command: str, result: dict, passed: bool) -> None:
    if command == "verify":
        for name, s in result["suites"].items():
            status = "ok" if not s["failed"] else f"FAILED {s['failed']}"
            print(f"{name}: {s['passed']}/{s['count']} {status}", file=sys.stderr)
    else:
        print(f"{command}: {'all certificates pass' if passed else 'CERTIFICATE FAILURE'}", file=sys.stderr)


def main(argv=None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
