"""
Main
----
The ``tiltkit`` command line. Every subcommand runs one scenario kind; parameters come from an
optional YAML scenario file, overridden by the subcommand's flags and then by trailing dot-list items.
The report is written to ``--report`` or printed.

Exit codes: 0 when the scenario is verified, 2 on a negative verdict, 1 on an input error.

Examples
********

.. code:: bash

        tiltkit check --algebra a2.quiver --module T.mod --degree 1 --report out.json
        tiltkit truncate --algebra a2.quiver --tilting T.mod --complex X.cx
        tiltkit roundtrip --count 100 --seed 7
        tiltkit matlis --s 2 --precision 8 --report out.json
        tiltkit adelic --primes 2,3 --precision 4
        tiltkit fuzz-monad proring.kind=discrete proring.modulus=6
        tiltkit gorenstein --algebra dual-numbers --degree 1
        tiltkit matlis --scenario matlis.yaml s=6

"""

import argparse
import logging
import sys
from typing import Dict, List, Optional

from pydantic import ValidationError

from tiltkit.algebra.parser import FormatError
from .cli import EXIT_INPUT_ERROR, run
from .scenario import load_scenario

logger = logging.getLogger(__name__)

COMMANDS: Dict[str, str] = {
    "check": "tilting-check",
    "truncate": "truncate",
    "roundtrip": "roundtrip",
    "matlis": "matlis",
    "adelic": "adelic",
    "fuzz-monad": "monad-fuzz",
    "gorenstein": "gorenstein",
}

FLAGS = ("algebra", "module", "tilting", "complex", "degree", "count", "direction", "s", "instances", "good")


def _parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--scenario", help="YAML scenario file.")
    common.add_argument("--precision", type=int, help="Number of levels evaluated.")
    common.add_argument("--seed", type=int, help="Seed; falls back to TILTKIT_SEED, then 0.")
    common.add_argument("--report", help="Write the JSON report here instead of printing it.")
    verbosity = common.add_mutually_exclusive_group()
    verbosity.add_argument("-q", "--quiet", action="store_true", help="Log warnings only.")
    verbosity.add_argument("-v", "--verbose", action="store_true", help="Log debug messages.")
    common.add_argument("overrides", nargs="*", help="Dot-list overrides such as `precision=4`.")

    parser = argparse.ArgumentParser(prog="tiltkit", description="Exact checks of tilting theory at desk scale.")
    commands = parser.add_subparsers(dest="command", required=True)

    check = commands.add_parser("check", parents=[common], help="Decide whether a module is tilting.")
    check.add_argument("--algebra", help="Quiver file or fixture name.")
    check.add_argument("--module", help="Module file or fixture name.")
    check.add_argument("--degree", type=int)
    check.add_argument("--good", action="store_const", const=True, help="Also run the good tilting check.")

    for name, description in (
        ("truncate", "Split complexes along the tilting t-structure."),
        ("roundtrip", "Certify that the derived functors are mutually inverse."),
    ):
        command = commands.add_parser(name, parents=[common], help=description)
        command.add_argument("--algebra", help="Quiver file or fixture name.")
        command.add_argument("--tilting", help="Tilting module file or fixture name.")
        command.add_argument("--complex", help="Complex file; random complexes are drawn when omitted.")
        command.add_argument("--degree", type=int)
        command.add_argument("--count", type=int, help="Number of random complexes.")
        if name == "roundtrip":
            command.add_argument("--direction", choices=["A", "B"], help="Side the round trip starts from.")

    matlis = commands.add_parser("matlis", parents=[common], help="Run the torsion module Z[1/s]/Z scenario.")
    matlis.add_argument("--s", type=int)

    adelic = commands.add_parser("adelic", parents=[common], help="Run the scenario for a finite set of primes.")
    adelic.add_argument("--primes", help="Comma-separated primes.")

    fuzz = commands.add_parser("fuzz-monad", parents=[common], help="Check the monad laws on random instances.")
    fuzz.add_argument("--instances", type=int)

    gorenstein = commands.add_parser("gorenstein", parents=[common], help="Decide the Gorenstein condition.")
    gorenstein.add_argument("--algebra", help="Quiver file or fixture name.")
    gorenstein.add_argument("--degree", type=int)
    return parser


def _overrides(parsed_args: argparse.Namespace) -> List[str]:
    items = []
    for key in ("precision", "seed") + FLAGS:
        value = getattr(parsed_args, key, None)
        if value is not None:
            items.append(f"{key}={value}")
    primes = getattr(parsed_args, "primes", None)
    if primes is not None:
        items.append(f"primes=[{primes}]")
    return items + list(parsed_args.overrides)


def main(parsed_args: Optional[argparse.Namespace] = None) -> int:
    """
    Run one subcommand and return its exit code.

    :param parsed_args: Parsed command line. If passed, overrides the command line contents.
        See the module docs for reference.
    """
    if parsed_args is None:
        parsed_args = _parser().parse_args(sys.argv[1:])
    level = logging.WARNING if parsed_args.quiet else logging.DEBUG if parsed_args.verbose else logging.INFO
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s")

    try:
        scenario = load_scenario(parsed_args.scenario, _overrides(parsed_args), COMMANDS[parsed_args.command])
        report, code = run(scenario)
    except (FormatError, ValidationError, FileNotFoundError, ValueError) as error:
        logger.error(f"{error}")
        return EXIT_INPUT_ERROR

    if parsed_args.report is not None:
        report.write(parsed_args.report)
    else:
        print(report.dumps())
    return code


if __name__ == "__main__":
    sys.exit(main())
