"""Runs the CLI on a few inputs and validates each JSON report against the schema."""

import json
import subprocess
import sys

import jsonschema

CASES = [
    ["verify", "--A", "z^3+z+1", "--B", "z^2-2z+7", "--l", "2", "--k", "3", "--n", "21"],
    ["verify", "--A", "z^3+z+1", "--B", "z^2-2z+7", "--l", "2", "--k", "3", "--n", "1"],
    ["verify", "--A", "z^3+z+1", "--B", "z^2-2z+7", "--l", "2", "--k", "3", "--n", "21", "--mode", "float"],
    ["verify", "--A", "3z^2-z+4", "--B", "-2z+5", "--l", "1", "--k", "3", "--n", "40"],
    ["verify", "--A", "z", "--B", "z^2+1", "--l", "2", "--k", "5", "--n", "33"],
    ["verify", "--A", "0", "--B", "z-1", "--l", "1", "--k", "2", "--n", "6"],
]


def main() -> int:
    exe, schema_path = sys.argv[1], sys.argv[2]
    with open(schema_path, encoding="utf-8") as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)
    failures = 0
    for args in CASES:
        proc = subprocess.run([exe, *args], capture_output=True, text=True, check=False)
        if proc.returncode not in (0, 1):
            print(f"FAIL exit {proc.returncode}: {' '.join(args)}\n{proc.stderr}")
            failures += 1
            continue
        report = json.loads(proc.stdout)
        errors = list(validator.iter_errors(report))
        for e in errors:
            print(f"FAIL schema: {' '.join(args)}: {e.message} at {list(e.absolute_path)}")
        s = report["summary"]
        if s["total"] != s["on_curve_count"] + s["excluded_count"] + s["failed_count"]:
            print(f"FAIL summary arithmetic: {' '.join(args)}")
            failures += 1
        if json.loads(json.dumps(report)) != report:
            print(f"FAIL round trip: {' '.join(args)}")
            failures += 1
        failures += len(errors)
        if not errors:
            print(f"ok {' '.join(args)}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
