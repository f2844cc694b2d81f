"""Command-line driver.

Verbs:
  build      parse a scenario and print the resulting configuration
  verify     run the pipeline; exit 0 only if every verdict passes
  report     run the pipeline and print the full report
  enumerate  standalone fundamental-group tools

Exit codes: 0 all requested verdicts hold, 1 a verdict fails,
2 input error, 3 inconclusive (enumeration or search exhausted).
"""

from __future__ import annotations

import argparse
import sys

from . import fpgroup, report as report_mod
from .scenario import (
    BUILTINS,
    ParseError,
    Scenario,
    SeifertRequest,
    SPIN_TARGETS,
    parse_scenario,
)

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_INCONCLUSIVE = 0, 1, 2, 3


def _add_scenario_args(sub):
    sub.add_argument("scenario", nargs="?",
                     help="scenario file (omit to use --builtin)")
    sub.add_argument("--builtin", choices=BUILTINS,
                     help="use a named builtin instead of a scenario file")
    sub.add_argument("--prime", type=int, default=3,
                     help="isotropy prime p for glued_Z (default 3)")
    sub.add_argument("--spin-target", choices=SPIN_TARGETS, default="any",
                     help="require the searched background class to give "
                          "a spin / non-spin total space")
    sub.add_argument("--coset-bound", type=int, default=10000)
    sub.add_argument("--search-bound", type=int, default=4,
                     help="coordinate bound for the background-class search")
    sub.add_argument("--max-l1", type=int, default=2,
                     help="L1-norm bound for the background-class search")
    sub.add_argument("--max-power", type=int, default=8,
                     help="highest isotropy exponent given a torsion relator")
    sub.add_argument("--format", choices=("human", "structured"),
                     default="human")


def _load_scenario(args) -> Scenario:
    if args.scenario and args.builtin:
        raise ParseError(0, "give a scenario file or --builtin, not both")
    if args.scenario:
        with open(args.scenario, encoding="utf-8") as fh:
            return parse_scenario(fh.read())
    name = args.builtin or "glued_Z"
    scn = Scenario(builtin=(name, args.prime if name == "glued_Z" else None))
    if name == "glued_Z" and args.spin_target != "any":
        scn = Scenario(builtin=scn.builtin,
                       seifert=SeifertRequest(spin_target=args.spin_target))
    return scn


def _run(args):
    scn = _load_scenario(args)
    return report_mod.run_pipeline(
        scn, coset_bound=args.coset_bound, search_bound=args.search_bound,
        max_l1=args.max_l1, max_power=args.max_power)


def _cmd_build(args) -> int:
    rep = _run(args)
    cfg = rep.config
    print(f"euler = {cfg.euler}")
    print(f"b1 = {cfg.b1}")
    print(f"b2 = {cfg.b2}")
    print(f"points = {len(cfg.points)}")
    for s in cfg.surfaces:
        print(f"surface {s.id}: genus {s.genus} mult {s.multiplicity} "
              f"j {s.local_j} self {s.self_intersection}")
    return EXIT_OK if not rep.violations else EXIT_FAIL


def _cmd_verify(args) -> int:
    rep = _run(args)
    for name, status in rep.verdicts:
        print(f"{name}: {status}")
    return rep.exit_code()


def _cmd_report(args) -> int:
    rep = _run(args)
    sys.stdout.write(report_mod.emit_report(rep, format=args.format))
    return rep.exit_code()


def _cmd_enumerate(args) -> int:
    pres = fpgroup.build_pi1_orb_presentation(args.prime,
                                              max_power=args.max_power)
    print(f"generators: {' '.join(pres.generators)}")
    print(f"relators: {len(pres.relators)}")
    print(f"abelianization: {fpgroup.abelianize(pres)}")
    result = fpgroup.coset_enumerate(pres, max_cosets=args.coset_bound)
    print(f"coset enumeration: {result.status}")
    if args.dump_table and result.is_complete():
        for i, row in enumerate(result.table):
            print(f"  coset {i}: {row}")
    return EXIT_OK if result.is_complete() else EXIT_INCONCLUSIVE


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="orbkit",
        description="Exact invariants of cyclic 4-orbifolds and their "
                    "Seifert circle bundles.")
    subs = parser.add_subparsers(dest="command", required=True)
    for name, fn in (("build", _cmd_build), ("verify", _cmd_verify),
                     ("report", _cmd_report)):
        sub = subs.add_parser(name)
        _add_scenario_args(sub)
        sub.set_defaults(fn=fn)
    enum = subs.add_parser("enumerate")
    enum.add_argument("--prime", type=int, default=3)
    enum.add_argument("--coset-bound", type=int, default=10000)
    enum.add_argument("--max-power", type=int, default=8)
    enum.add_argument("--dump-table", action="store_true")
    enum.set_defaults(fn=_cmd_enumerate)

    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ParseError, FileNotFoundError, OSError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except report_mod.PipelineError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
