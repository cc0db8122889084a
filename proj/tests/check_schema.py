"""Validate CLI JSON reports against schema/report.schema.json."""
import json
import subprocess
import sys

import jsonschema

cli, schema_path, *files = sys.argv[1:]
validator = jsonschema.Draft202012Validator(json.load(open(schema_path)))
commands = [
    ["validate"], ["deadbeat", "--cross-check"], ["boundedness"], ["irreducible-node", "--node", "0"],
    ["lift", "--irreducibility"], ["cjsr-bounds"], ["cjsr-bounds", "--cap", "10"],
    ["escape-length", "--node", "0", "--basis", "[[1,0]]"], ["deadbeat", "--field", "float"],
]
failures = 0
for f in files + ["does-not-exist.json"]:
    for c in commands:
        out = subprocess.run([cli, *c, "--format", "json", f], capture_output=True, text=True).stdout
        errors = list(validator.iter_errors(json.loads(out)))
        if errors:
            failures += 1
            print(f"{' '.join(c)} {f}: {errors[0].message[:200]}")
print(f"{failures} schema violations")
sys.exit(1 if failures else 0)
