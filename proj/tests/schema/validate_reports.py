"""Runs the openbook CLI over a set of requests and validates every JSON report."""

import json
import subprocess
import sys

import jsonschema


def main() -> int:
    binary, schema_path, germ_dir = sys.argv[1:4]
    with open(schema_path) as f:
        schema = json.load(f)
    jsonschema.Draft202012Validator.check_schema(schema)
    validator = jsonschema.Draft202012Validator(schema)

    requests = [
        ["analyze", "acampo"],
        ["analyze", "seade-ex-2", "--with-link", "--with-pages", "--samples", "512"],
        ["analyze", f"{germ_dir}/brieskorn-2-3.germ", "--samples", "512"],
        ["weights", "linear"],
        ["weights", "milnor-ex-1"],
        ["submersion", "milnor-ex-1", "--samples", "512"],
        ["submersion", "acampo", "--route", "rank", "--samples", "512"],
        ["link", "linear", "--epsilon", "1"],
        ["pages", "seade-ex-2", "--sweep", "--sweep-steps", "90", "--samples", "512"],
        ["pages", "linear", "--direction", "0,1", "--epsilon", "1"],
        ["examples", "--only", "seade-ex-2", "acampo", "--samples", "512"],
        ["examples", "--empty"],
    ]
    failures = 0
    for args in requests:
        for normalize in (False, True):
            cmd = [binary, *args] + (["--normalize"] if normalize else [])
            proc = subprocess.run(cmd, capture_output=True, text=True)
            if proc.returncode != 0:
                print(f"FAIL {' '.join(args)}: exit {proc.returncode}: {proc.stderr.strip()}")
                failures += 1
                continue
            report = json.loads(proc.stdout)
            errors = sorted(validator.iter_errors(report), key=lambda e: list(e.path))
            if errors:
                failures += 1
                for e in errors[:5]:
                    print(f"FAIL {' '.join(args)}: {list(e.path)}: {e.message}")
            elif normalize and "generated_at" in report:
                failures += 1
                print(f"FAIL {' '.join(args)}: --normalize kept generated_at")
            else:
                print(f"ok   {' '.join(cmd[1:])}")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
