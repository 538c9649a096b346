"""Command-line front end.

Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 verification/solve failure, 2 input or parse error, 3 data integrity
error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, linsys
from .algebra import Expression
from .errors import DataIntegrityError, GwisError, InvalidTermError, ParseError, SolveError
from .parsing import parse_expression
from .printing import FORMATS, fraction_str, json_payload, render, term_to_latex, term_to_plain

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_INPUT = 2
EXIT_DATA = 3


def _build_parser() -> argparse.ArgumentParser:
    top = argparse.ArgumentParser(prog="gwis", description=__doc__)
    sub = top.add_subparsers(dest="command", required=True)

    def add(name, help_text, takes_text):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("--format", choices=FORMATS, default="plain")
        p.add_argument("--data-dir", default=None, help="override the bundled data files")
        if takes_text:
            p.add_argument("text", nargs="?", default=None, help="inline expression")
            p.add_argument("--input", default=None, help="path to a file, or an inline string")
        return p

    add("canon", "canonical form of an expression", True)
    add("parse", "parse an expression and emit its JSON form", True)
    add("solve", "solve the constraint system (c1 = -1)", False)
    add("rank", "rank and kernel dimension of the constraint system", False)
    add("verify", "full verification report; exit 0 only on pass", False)
    add("emit", "the solved relation <x^3>_3 = ... with sign-flip annotations", False)
    return top


def _read_input(args) -> str:
    if args.text is not None and args.input is not None:
        raise ParseError("both positional text and --input given", 0)
    source = args.text if args.text is not None else args.input
    if source is None:
        raise ParseError("no input expression given", 0)
    if args.text is None:
        path = Path(source)
        if path.is_file():
            return path.read_text(encoding="utf-8").strip()
    return source


def _cmd_canon(args) -> int:
    expr = parse_expression(_read_input(args))
    print(render(expr, args.format))
    return EXIT_OK


def _cmd_parse(args) -> int:
    expr = parse_expression(_read_input(args))
    print(json.dumps(json_payload(expr), indent=2))
    return EXIT_OK


def _solved(args):
    eqs = linsys.equations(args.data_dir)
    return linsys.solve_normalized(linsys.assemble_matrix(eqs))


def _cmd_solve(args) -> int:
    solution = _solved(args)
    if args.format == "json":
        print(json.dumps({f"c{k}": fraction_str(v) for k, v in sorted(solution.items())}, indent=2))
    elif args.format == "latex":
        print("\\begin{aligned}")
        for k, v in sorted(solution.items()):
            sep = " \\\\" if k < len(solution) else ""
            print(f"c_{{{k}}} &= {fraction_str(v)}{sep}")
        print("\\end{aligned}")
    else:
        for k, v in sorted(solution.items()):
            print(f"c{k} = {fraction_str(v)}")
    return EXIT_OK


def _cmd_rank(args) -> int:
    matrix = linsys.assemble_matrix(linsys.equations(args.data_dir))
    rank_g, kernel_g = linsys.rank_and_kernel(matrix)
    rank_b, kernel_b = linsys.bareiss_rank_and_kernel(matrix)
    agree = rank_g == rank_b and kernel_g == kernel_b
    if args.format == "json":
        print(json.dumps({
            "rank": rank_g,
            "kernel_dimension": matrix.ncols - rank_g,
            "paths_agree": agree,
        }, indent=2))
    else:
        print(f"rank: {rank_g}")
        print(f"kernel dimension: {matrix.ncols - rank_g}")
        print(f"elimination paths agree: {'yes' if agree else 'NO'}")
    return EXIT_OK if agree else EXIT_VERIFY


def _cmd_verify(args) -> int:
    report = linsys.verify(args.data_dir)
    if args.format == "json":
        print(json.dumps(report.to_json_dict(), indent=2))
    else:
        print(report.to_text())
    return EXIT_OK if report.passed else EXIT_VERIFY


def _cmd_emit(args) -> int:
    solution = _solved(args)
    strata = catalog.load_basis(args.data_dir)
    rhs = Expression((strata[k], solution[k]) for k in strata if k != 1)
    report = linsys.verify(args.data_dir)
    flips = " ".join(f"c{k}" for k in sorted(report.theorem_sign_flips))
    if args.format == "json":
        print(json.dumps({
            "lhs": term_to_plain(strata[1]),
            "rhs": json_payload(rhs),
            "sign_flips": sorted(report.theorem_sign_flips),
        }, indent=2))
    elif args.format == "latex":
        print(f"{term_to_latex(strata[1])} = {render(rhs, 'latex')}")
        print(f"% sign flips against the displayed coefficients: {flips}")
    else:
        print(f"{term_to_plain(strata[1])} = {render(rhs, 'plain')}")
        print(f"sign flips against the displayed coefficients: {flips}")
    return EXIT_OK


_COMMANDS = {
    "canon": _cmd_canon,
    "parse": _cmd_parse,
    "solve": _cmd_solve,
    "rank": _cmd_rank,
    "verify": _cmd_verify,
    "emit": _cmd_emit,
}


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except (ParseError, InvalidTermError) as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT
    except DataIntegrityError as err:
        print(f"data error: {err}", file=sys.stderr)
        return EXIT_DATA
    except SolveError as err:
        print(f"solve error: {err}", file=sys.stderr)
        return EXIT_VERIFY
    except GwisError as err:
        print(f"error: {err}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
