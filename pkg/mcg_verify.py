#!/usr/bin/env python3
"""
Mapping class group verifier for non-orientable surfaces
Prints presentations, checks words and relators on mod-2 homology,
replays derivation scripts, and runs coset enumeration / abelianization
"""

import json
import sys

from pydantic import ValidationError

from functions.commands import COMMANDS, EXIT_USAGE, CommandRequest, run
from functions.group_calc import DEFAULT_MAX_COSETS


def build_parser():
    import argparse
    parser = argparse.ArgumentParser(description="Mapping class group verifier for N_{g,n}")
    parser.add_argument("command", choices=COMMANDS, help="Command to run")
    parser.add_argument("--genus", type=int, required=True, help="Number of crosscaps g")
    parser.add_argument("--boundary", type=int, default=0, help="Number of boundary components (0 or 1)")
    parser.add_argument("--format", choices=["text", "structured"], default="text", help="Output format")
    parser.add_argument("--output", help="Write output to this file instead of stdout")
    parser.add_argument("--verbose", action="store_true", help="Progress lines on stderr")
    parser.add_argument("--word", help="Word for check-word, e.g. 'a1 y^-1 t[g:1,2,3,4]'")
    parser.add_argument("--family", help="Relator family for oracle, e.g. A5 or C3")
    parser.add_argument("--script", help="Builtin script for replay (C1, C2, C3-odd, C3-even, C4, Y-square, all)")
    parser.add_argument("--script-file", help="JSON script document to replay")
    parser.add_argument("--subgroup", action="append", default=[], help="Subgroup generator word (repeatable)")
    parser.add_argument("--max-cosets", type=int, default=None,
                        help=f"Coset limit for enumerate (default {DEFAULT_MAX_COSETS})")
    parser.add_argument("--enumeration", action="store_true", help="Also emit the flat enumeration format")
    return parser


def _log(verbose: bool, message: str):
    if verbose:
        print(message, file=sys.stderr)


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else 0

    try:
        fields = dict(
            command=args.command,
            genus=args.genus,
            boundary=args.boundary,
            format=args.format,
            word=args.word,
            family=args.family,
            script=args.script,
            subgroup=args.subgroup,
            enumeration=args.enumeration,
        )
        if args.max_cosets is not None:
            fields["max_cosets"] = args.max_cosets
        if args.script_file:
            with open(args.script_file, "r", encoding="utf-8") as f:
                fields["script_document"] = json.load(f)
        request = CommandRequest(**fields)
        _log(args.verbose, f"🔍 {request.command} on N_{{{request.genus},{request.boundary}}}")
        result = run(request)
    except ValidationError as e:
        first = e.errors()[0]
        where = ".".join(str(part) for part in first["loc"]) or "request"
        print(f"❌ Invalid arguments: {where}: {first['msg']}", file=sys.stderr)
        return EXIT_USAGE
    except FileNotFoundError:
        print(f"❌ Error: File '{args.script_file}' not found", file=sys.stderr)
        return EXIT_USAGE
    except json.JSONDecodeError as e:
        print(f"❌ Error: Invalid JSON in '{args.script_file}': {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_USAGE

    text = result.render(request.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as f:
            f.write(text + "\n")
        _log(args.verbose, f"📂 Output written to {args.output}")
    else:
        print(text)
    _log(args.verbose, "✅ done" if result.exit_code == 0 else f"❌ exit {result.exit_code}")
    return result.exit_code


if __name__ == "__main__":
    sys.exit(main())
