"""Validate `coarsesep classify` JSON for every graph under data/graphs."""
import json
import pathlib
import subprocess
import sys
import tempfile

import jsonschema


def main() -> int:
    tool, root = sys.argv[1], pathlib.Path(sys.argv[2])
    schema = json.loads((root / "schemas" / "classify_report.schema.json").read_text())
    validator = jsonschema.Draft202012Validator(schema)
    graphs = sorted((root / "data" / "graphs").glob("*.json"))
    with tempfile.TemporaryDirectory() as tmp:
        extra = pathlib.Path(tmp) / "undecided.json"
        extra.write_text(json.dumps({"vertices": [
            {"id": 0, "group": {"abstract": {"order": "infinite"}}},
            {"id": 1, "group": {"cyclic": 2}}]}))
        failures = 0
        for g in graphs + [extra]:
            run = subprocess.run([tool, "classify", "--graph", str(g)], capture_output=True, text=True)
            if run.returncode not in (0, 2):
                print(f"{g.name}: exit {run.returncode}: {run.stderr.strip()}")
                failures += 1
                continue
            report = json.loads(run.stdout)
            errors = list(validator.iter_errors(report))
            for e in errors:
                print(f"{g.name}: {e.json_path}: {e.message}")
            failures += bool(errors)
            undecided = any(v == "undecided" for k, v in report.items() if k != "details" and isinstance(v, str))
            if run.returncode != (2 if undecided else 0):
                print(f"{g.name}: exit {run.returncode} does not match verdicts")
                failures += 1
        print(f"{len(graphs) + 1} reports checked, {failures} failures")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
