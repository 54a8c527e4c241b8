#!/usr/bin/env python3
"""Convert published NL-to-LTL datasets into the JSON-lines schema read by
`nl2ltl eval`.

Supported inputs (best effort):
  pairs  two line-aligned files, one instruction / one formula per line
  csv    a table with an instruction column and a formula column
  json   a list of objects, or JSON lines, with the same two fields

Formulas are copied verbatim; run `nl2ltl eval --stats --dataset OUT` to
validate them.
"""

import argparse
import csv
import json
import sys

INSTRUCTION_KEYS = ("instruction", "utterance", "sentence", "nl", "english", "input", "src")
FORMULA_KEYS = ("gold", "ltl", "formula", "ltl_formula", "output", "tar", "target")


def pick(row, keys, what, where):
    lowered = {k.lower().strip(): v for k, v in row.items() if k is not None}
    for k in keys:
        if k in lowered and lowered[k] not in (None, ""):
            return str(lowered[k]).strip()
    raise ValueError(f"{where}: no {what} field (tried {', '.join(keys)})")


def read_pairs(src, tgt):
    with open(src, encoding="utf-8") as f:
        instructions = [line.rstrip("\n") for line in f]
    with open(tgt, encoding="utf-8") as f:
        formulas = [line.rstrip("\n") for line in f]
    if len(instructions) != len(formulas):
        raise ValueError(f"{src} has {len(instructions)} lines but {tgt} has {len(formulas)}")
    for i, (nl, ltl) in enumerate(zip(instructions, formulas), 1):
        if nl.strip() and ltl.strip():
            yield nl.strip(), ltl.strip(), f"line {i}"


def read_csv(path, delimiter):
    with open(path, encoding="utf-8", newline="") as f:
        for i, row in enumerate(csv.DictReader(f, delimiter=delimiter), 2):
            where = f"{path} row {i}"
            yield pick(row, INSTRUCTION_KEYS, "instruction", where), pick(row, FORMULA_KEYS, "formula", where), where


def read_json(path):
    with open(path, encoding="utf-8") as f:
        text = f.read()
    stripped = text.lstrip()
    if stripped.startswith("["):
        rows = json.loads(text)
    else:
        rows = [json.loads(line) for line in text.splitlines() if line.strip()]
    for i, row in enumerate(rows, 1):
        where = f"{path} record {i}"
        yield pick(row, INSTRUCTION_KEYS, "instruction", where), pick(row, FORMULA_KEYS, "formula", where), where


def parse_grounding(items):
    grounding = {}
    for item in items:
        phrase, sep, ap = item.partition("=")
        if not sep or not phrase.strip() or not ap.strip():
            raise ValueError(f"grounding '{item}' is not of the form phrase=AP")
        grounding[phrase.strip()] = ap.strip()
    return grounding


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--format", choices=("pairs", "csv", "tsv", "json"), required=True)
    parser.add_argument("--input", help="csv/tsv/json input file")
    parser.add_argument("--src", help="instruction lines (pairs format)")
    parser.add_argument("--tgt", help="formula lines (pairs format)")
    parser.add_argument("--syntax", choices=("infix", "prefix", "auto"), default="auto",
                        help="notation of the formulas (default: auto)")
    parser.add_argument("--ground", action="append", default=[], metavar="PHRASE=AP",
                        help="grounding pair added to every record; repeatable")
    parser.add_argument("--aps", nargs="*", default=[], help="declared atomic propositions")
    parser.add_argument("--dedupe", action="store_true", help="drop repeated (instruction, formula) pairs")
    parser.add_argument("-o", "--output", default="-", help="output file (default: stdout)")
    args = parser.parse_args(argv)

    try:
        if args.format == "pairs":
            if not args.src or not args.tgt:
                parser.error("--format pairs needs --src and --tgt")
            rows = read_pairs(args.src, args.tgt)
        elif not args.input:
            parser.error(f"--format {args.format} needs --input")
        elif args.format == "json":
            rows = read_json(args.input)
        else:
            rows = read_csv(args.input, "\t" if args.format == "tsv" else ",")
        grounding = parse_grounding(args.ground)

        records = []
        seen = set()
        for instruction, formula, _ in rows:
            if args.dedupe:
                if (instruction, formula) in seen:
                    continue
                seen.add((instruction, formula))
            record = {"instruction": instruction, "gold": formula, "syntax": args.syntax}
            if grounding:
                record["grounding"] = grounding
            if args.aps:
                record["aps"] = args.aps
            records.append(json.dumps(record, ensure_ascii=False))
        text = "".join(r + "\n" for r in records)
        if args.output == "-":
            sys.stdout.write(text)
        else:
            with open(args.output, "w", encoding="utf-8") as f:
                f.write(text)
        written = len(records)
    except (OSError, ValueError) as e:
        print(f"import_dataset: {e}", file=sys.stderr)
        return 1
    print(f"import_dataset: wrote {written} records", file=sys.stderr)
    return 0


if __name__ == "__main__":
    sys.exit(main())
