"""Command line front end.

    canext validate FILE
    canext extend FILE [--method ploscica|ah|polarity] [--out DIR]
    canext lift HOMFILE [--out DIR]
    canext check [--suite lemmas|oracle|functor|all] [--max-size N] [--seed S] [--out DIR]

Exit codes: 0 success, 1 usage error, 2 validation failure, 3 a property
check found a counterexample.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Sequence

from . import io
from .ah import build_Dbar, canonical_extension_ah, lift_hom
from .checks import SUITES, run_suite
from .errors import CanextError, NotAHomomorphism
from .lattice import Lattice, LatticeHom
from .mpe import check_compactness, check_density
from .oracle import gh_extension, iso_fixing_L
from .partial import all_partial_homs
from .ploscica import build_D, canonical_extension_ploscica, enumerate_mph
from .report import Report

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_COUNTEREXAMPLE = 0, 1, 2, 3

METHODS = {
    "ploscica": canonical_extension_ploscica,
    "ah": canonical_extension_ah,
    "polarity": gh_extension,
}


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="canext", description="Canonical extensions of finite bounded lattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("validate", help="check a lattice or homomorphism file")
    v.add_argument("path")
    v.add_argument("--out", help="directory for report.txt/report.json")

    e = sub.add_parser("extend", help="compute the canonical extension of a lattice")
    e.add_argument("path")
    e.add_argument("--method", choices=sorted(METHODS), default="ploscica")
    e.add_argument("--seed", type=int, default=0)
    e.add_argument("--out", default="out")

    li = sub.add_parser("lift", help="lift a homomorphism to the canonical extensions")
    li.add_argument("path")
    li.add_argument("--seed", type=int, default=0)
    li.add_argument("--out", default="out")

    c = sub.add_parser("check", help="run property batteries over the corpus")
    c.add_argument("--suite", choices=[*SUITES, "all"], default="all")
    c.add_argument("--max-size", type=int, default=6)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--out", help="directory for report.txt/report.json")
    return p


def _emit(reports: list[Report], header: list[str], out: str | None) -> None:
    lines = header + [r.line() for r in reports]
    text = "\n".join(lines) + "\n"
    sys.stdout.write(text)
    if out:
        folder = Path(out)
        folder.mkdir(parents=True, exist_ok=True)
        (folder / "report.txt").write_text(text, encoding="utf-8")
        (folder / "report.json").write_text(
            io.dumps({"header": header, "reports": [r.to_json() for r in reports]}), encoding="utf-8"
        )


def _stem(L: Lattice, path: str) -> str:
    return Path(path).stem or L.name or "lattice"


def cmd_validate(args: argparse.Namespace) -> int:
    obj = io.read_any(args.path)
    rep = Report("validate")
    rep.tick()
    if isinstance(obj, LatticeHom):
        header = [
            f"homomorphism {obj.src.name} -> {obj.dst.name}: valid",
            "map: " + ", ".join(f"{k}->{v}" for k, v in obj.describe().items()),
        ]
    else:
        header = [f"lattice {obj.name}: valid, {obj.n} elements"]
    _emit([rep], header, args.out)
    return EXIT_OK


def cmd_extend(args: argparse.Namespace) -> int:
    L = io.read_lattice(args.path)
    C = METHODS[args.method](L)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = f"{_stem(L, args.path)}.{args.method}"
    (out / f"{stem}.json").write_text(io.dumps(io.completion_to_json(C)), encoding="utf-8")
    (out / f"{stem}.dot").write_text(io.completion_dot(C), encoding="utf-8")
    if args.method == "ploscica":
        (out / f"{stem}.graph.dot").write_text(io.graph_dot(build_D(L), subbasis=True), encoding="utf-8")
    elif args.method == "ah":
        (out / f"{stem}.graph.dot").write_text(
            io.graph_dot(build_Dbar(L), orders=True, subbasis=True), encoding="utf-8"
        )
    reports = [check_density(C), check_compactness(C, seed=args.seed)]
    header = [f"{args.method} completion of {L.name}: {C.size} elements"]
    if args.method != "ploscica":
        iso = Report(f"iso-vs-ploscica[{args.method}]")
        iso.tick()
        h = iso_fixing_L(canonical_extension_ploscica(L), C)
        if h is None:
            iso.fail("no-iso-fixing-L")
        else:
            iso.data["map"] = list(h)
        reports.append(iso)
    _emit(reports, header, str(out))
    return EXIT_OK if all(r.ok for r in reports) else EXIT_COUNTEREXAMPLE


def mph_composition_report(u: LatticeHom) -> Report:
    """How many MPHs of the codomain stay maximal after composing with ``u``."""
    rep = Report("mph-composition")
    L, K = u.src, u.dst
    homs = all_partial_homs(L)
    for f in enumerate_mph(K):
        rep.tick()
        g = f.compose(u)
        if any(h != g and h.extends(g) for h in homs):
            rep.notes.append(f"{f.label(K)}∘u = {g.label(L)} is not maximal")
    rep.data["non_maximal"] = len(rep.notes)
    return rep


def cmd_lift(args: argparse.Namespace) -> int:
    u = io.read_hom(args.path)
    h = lift_hom(u, seed=args.seed)
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    stem = Path(args.path).stem
    src_file, dst_file = f"{stem}.src.json", f"{stem}.dst.json"
    (out / src_file).write_text(io.dumps(io.completion_to_json(h.src)), encoding="utf-8")
    (out / dst_file).write_text(io.dumps(io.completion_to_json(h.dst)), encoding="utf-8")
    (out / f"{stem}.lift.json").write_text(
        io.dumps(io.complete_hom_to_json(h, src_file, dst_file)), encoding="utf-8"
    )
    side = mph_composition_report(u)
    header = [
        f"lift of {u.src.name} -> {u.dst.name}: {h.src.size} -> {h.dst.size} elements",
        "map: " + " ".join(str(i) for i in h.map),
    ] + side.notes
    _emit([h.report, side], header, str(out))
    return EXIT_OK if h.report.ok else EXIT_COUNTEREXAMPLE


def cmd_check(args: argparse.Namespace) -> int:
    reports = run_suite(args.suite, max_size=args.max_size, seed=args.seed)
    header = [f"suite {args.suite}, max size {args.max_size}, seed {args.seed}"]
    failed = [r for r in reports if not r.ok]
    if failed:
        header.append("first counterexample: " + io.dumps(failed[0].failures[0]).strip().replace("\n", " "))
    _emit(reports, header, args.out)
    return EXIT_COUNTEREXAMPLE if failed else EXIT_OK


COMMANDS = {
    "validate": cmd_validate,
    "extend": cmd_extend,
    "lift": cmd_lift,
    "check": cmd_check,
}


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return COMMANDS[args.command](args)
    except NotAHomomorphism as exc:
        witness = f" witness={list(exc.witness)}" if exc.witness else ""
        print(f"{type(exc).__name__}: {exc}{witness}", file=sys.stderr)
        return EXIT_INVALID
    except CanextError as exc:
        print(f"{type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
