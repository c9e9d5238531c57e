#!/usr/bin/env python3
"""
Generate golden outputs for the small surfaces.
Writes the structured documents of `present` and `abelianize` to golden/
so regressions in relator lists or invariants show up as file diffs.
"""

import argparse
import json
import os

from functions.commands import CommandRequest, run

SURFACES = [(g, n) for g in range(2, 7) for n in (0, 1)]
COMMANDS = ["present", "abelianize"]


def golden_path(directory: str, command: str, genus: int, boundary: int) -> str:
    return os.path.join(directory, f"{command}_{genus}_{boundary}.json")


def main():
    parser = argparse.ArgumentParser(description="Generate golden structured outputs")
    parser.add_argument("--output-dir", default="golden", help="Directory for the golden files")
    args = parser.parse_args()

    os.makedirs(args.output_dir, exist_ok=True)
    written = 0
    for genus, boundary in SURFACES:
        for command in COMMANDS:
            result = run(CommandRequest(command=command, genus=genus, boundary=boundary, format="structured"))
            path = golden_path(args.output_dir, command, genus, boundary)
            with open(path, "w", encoding="utf-8") as f:
                json.dump(result.document, f, indent=2, sort_keys=True, ensure_ascii=False)
                f.write("\n")
            print(f"📂 {path}")
            written += 1
    print(f"✅ Generated {written} golden files in {args.output_dir}!")


if __name__ == '__main__':
    main()
