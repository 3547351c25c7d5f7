"""Run each CLI command with JSON output and validate it against the shipped schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema
from referencing import Registry, Resource

RUNS = {
    "spectrum": ["spectrum", "--parity", "even", "--n", "15", "--a", "12", "--tier", "extended"],
    "wavefunction": ["wavefunction", "--parity", "odd", "--n", "2", "--a", "1", "--eta", "25.25",
                     "--points", "16", "--format", "json", "--with-prefactor"],
    "physics": ["physics", "--photon-ev", "1.563", "--plasma-ev", "1", "--intensity-wcm2", "1e8"],
    "scan": ["scan", "--parity", "even", "--n-min", "1", "--n-max", "3", "--a", "0.5,12", "--format", "json"],
    "verify": ["verify", "--parity", "odd", "--n", "2", "--a", "1"],
}


def main() -> int:
    exe, schema_dir = sys.argv[1], pathlib.Path(sys.argv[2])
    schemas = {p.name: json.loads(p.read_text()) for p in schema_dir.glob("*.schema.json")}
    registry = Registry().with_resources(
        (name, Resource.from_contents(body)) for name, body in schemas.items())
    failures = 0
    for name, args in RUNS.items():
        proc = subprocess.run([exe, *args], capture_output=True, text=True, check=False)
        if proc.returncode != 0:
            print(f"{name}: exit {proc.returncode}: {proc.stderr.strip()}")
            failures += 1
            continue
        doc = json.loads(proc.stdout)
        validator = jsonschema.Draft202012Validator(schemas[f"{name}.schema.json"], registry=registry)
        errors = list(validator.iter_errors(doc))
        for err in errors:
            print(f"{name}: {err.json_path}: {err.message}")
        failures += bool(errors)
        if not errors:
            print(f"{name}: valid")
    return 1 if failures else 0


if __name__ == "__main__":
    sys.exit(main())
