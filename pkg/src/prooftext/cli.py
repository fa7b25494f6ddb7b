"""Command-line entry point: ``prooftext prove FILE``."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Sequence

from .errors import (
    AnnotationError,
    DiscourseStateError,
    LexiconError,
    ParseError,
    PCAError,
    PlanningError,
    ProofTextError,
    RealizationError,
    SalienceError,
    ValidationError,
)
from .formula import RenderMode, default_lexicon, load_lexicon
from .microplanner import default_salience, load_salience
from .pca import to_sexpr
from .pipeline import generate
from .planner import PlannerConfig
from .proof_model import load_proof

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_NO_FILE = 3
EXIT_INPUT = 4
EXIT_RESOURCE = 5
EXIT_PLANNING = 6
EXIT_GENERATION = 7

EXIT_CODES = f"""exit codes:
  {EXIT_OK}  success
  {EXIT_USAGE}  usage error
  {EXIT_NO_FILE}  input, lexicon or salience file not found
  {EXIT_INPUT}  proof parse or validation error
  {EXIT_RESOURCE}  lexicon or salience table error
  {EXIT_PLANNING}  planning failed (no operator applies, or no progress)
  {EXIT_GENERATION}  annotation or realization error
"""

_ERROR_EXIT = (
    ((ParseError, ValidationError), EXIT_INPUT),
    ((LexiconError, SalienceError), EXIT_RESOURCE),
    ((PlanningError, DiscourseStateError, PCAError), EXIT_PLANNING),
    ((AnnotationError, RealizationError), EXIT_GENERATION),
)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prooftext",
        description="Verbalize a natural-deduction proof as English text.",
        epilog=EXIT_CODES,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)
    prove = sub.add_parser("prove", help="generate text for a proof file",
                           epilog=EXIT_CODES,
                           formatter_class=argparse.RawDescriptionHelpFormatter)
    prove.add_argument("file", help="proof file")
    prove.add_argument("--style", choices=("implicit", "explicit"), default="implicit",
                       help="case-analysis style (default: implicit)")
    prove.add_argument("--abstraction", choices=("detailed", "abstract"), default="abstract",
                       help="'detailed' disables subproof abstraction (default: abstract)")
    prove.add_argument("--emit", choices=("text", "pcas", "trace-only"), default="text",
                       help="what to print on stdout (default: text)")
    prove.add_argument("--render", choices=[m.value for m in RenderMode], default="auto",
                       help="formula rendering (default: auto)")
    prove.add_argument("--lexicon", help="lexicon file (default: bundled)")
    prove.add_argument("--salience", help="method salience table (default: bundled)")
    prove.add_argument("--trace", metavar="PATH",
                       help="write planner decisions and discourse events to PATH")
    prove.add_argument("--trace-format", choices=("text", "jsonl"), default="text")
    return parser


def _trace_lines(gen, fmt: str) -> list[str]:
    records = [r.as_dict() for r in gen.trace] + gen.dm.events
    if fmt == "jsonl":
        return [json.dumps(r, ensure_ascii=False) for r in records]
    lines = [r.line() for r in gen.trace]
    lines += [f"event={e['event']} unit={e['unit']} node={e['node']}" for e in gen.dm.events]
    return lines


def run(args: argparse.Namespace) -> int:
    tree = load_proof(args.file)
    lexicon = load_lexicon(args.lexicon) if args.lexicon else default_lexicon()
    salience = load_salience(args.salience) if args.salience else default_salience()
    config = PlannerConfig(style=args.style, abstraction=args.abstraction)
    gen = generate(tree, lexicon, salience, config, args.render)

    trace = _trace_lines(gen, args.trace_format)
    if args.trace:
        with open(args.trace, "w", encoding="utf-8") as fh:
            fh.write("\n".join(trace) + "\n")
    if args.emit == "text":
        sys.stdout.write(gen.text)
    elif args.emit == "pcas":
        for p in gen.annotated:
            print(to_sexpr(p))
    else:
        print("\n".join(trace))
    return EXIT_OK


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return run(args)
    except FileNotFoundError as exc:
        print(f"prooftext: file not found: {exc.filename}", file=sys.stderr)
        return EXIT_NO_FILE
    except ProofTextError as exc:
        print(f"prooftext: {type(exc).__name__}: {exc}", file=sys.stderr)
        for types, code in _ERROR_EXIT:
            if isinstance(exc, types):
                return code
        return EXIT_GENERATION


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
