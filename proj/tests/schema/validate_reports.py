"""Runs the chainlab binary and validates every JSON report against the schema."""
import json
import subprocess
import sys

import jsonschema

COMMANDS = [
    ["chain", "--family", "riccati", "--order", "3"],
    ["reduce", "--family", "abel", "--order", "4"],
    ["symmetry", "--family", "riccati", "--order", "2", "--c", "x^2 + 1"],
    ["solve", "--family", "abel", "--order", "3", "--constants", "1,2,0", "--eval", "1"],
    ["solve", "--family", "riccati", "--order", "2", "--constants", "0,0", "--eval", "0"],
    ["numcheck", "--family", "riccati", "--order", "2", "--constants", "1,0", "--interval", "0.5,2"],
    ["numcheck", "--family", "riccati", "--order", "2", "--constants", "0,0", "--interval", "-1,1"],
    ["verify", "--suite", "all", "--max-order", "3"],
    ["report", "--max-order", "2"],
]


def main() -> int:
    binary, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in COMMANDS:
        proc = subprocess.run([binary, *args, "--format", "json"], capture_output=True, text=True, check=False)
        if proc.returncode not in (0, 1):
            print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        report = json.loads(proc.stdout)
        errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
        for error in errors:
            print(f"FAIL {' '.join(args)}: {'/'.join(map(str, error.path))}: {error.message}")
        failures += bool(errors)
        if not errors:
            print(f"ok   {' '.join(args)} ({len(report['entries'])} entries, {report['status']})")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
