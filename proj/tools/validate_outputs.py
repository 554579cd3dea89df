"""Run the CLI on a small configuration and validate its JSON outputs against the schemas."""

import json
import pathlib
import subprocess
import sys

import jsonschema


def main() -> int:
    exe, schema_dir, out = sys.argv[1], pathlib.Path(sys.argv[2]), pathlib.Path(sys.argv[3])
    out.mkdir(parents=True, exist_ok=True)
    common = ["--out", str(out), "--n-max", "8", "--quad-order", "64"]
    for cmd in ("periods", "eigs", "oracle", "compare"):
        code = subprocess.run([exe, cmd, *common], capture_output=True, text=True).returncode
        if code != 0:
            print(f"{cmd} exited with {code}")
            return 1
    for doc, schema in (("periods.json", "periods.schema.json"), ("report.json", "report.schema.json")):
        jsonschema.validate(json.loads((out / doc).read_text()), json.loads((schema_dir / schema).read_text()))
        print(f"{doc} valid")
    return 0


if __name__ == "__main__":
    sys.exit(main())
