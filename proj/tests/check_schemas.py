"""Validate scenario files and freshly written certificates against docs/*.schema.json."""
import json
import pathlib
import subprocess
import sys
import tempfile

from jsonschema import Draft202012Validator
from referencing import Registry, Resource

cli, root = pathlib.Path(sys.argv[1]), pathlib.Path(sys.argv[2])
docs = root / "docs"


def load(p):
    return json.loads(pathlib.Path(p).read_text())


schemas = {name: load(docs / f"{name}.schema.json") for name in ("scenario", "certificate")}
registry = Registry().with_resources([(s["$id"], Resource.from_contents(s)) for s in schemas.values()])
validators = {name: Draft202012Validator(s, registry=registry) for name, s in schemas.items()}
failures = 0


def check(kind, doc, label, expect_valid=True):
    global failures
    errors = list(validators[kind].iter_errors(doc))
    if bool(errors) == expect_valid:
        failures += 1
        print(f"FAIL {label}: " + (errors[0].message if errors else "accepted an invalid document"))
    else:
        print(f"ok   {label}")


for path in sorted((root / "scenarios").rglob("*.json")):
    check("scenario", load(path), path.name)

bad = load(root / "scenarios" / "scenario_w.json")
bad["colour"] = "blue"
check("scenario", bad, "unknown key rejected", expect_valid=False)
bad = load(root / "scenarios" / "scenario_w.json")
bad["a1"] = 2
check("scenario", bad, "numeric rational rejected", expect_valid=False)

with tempfile.TemporaryDirectory() as tmp:
    for name, trunc in (("scenario_w.json", "2"), ("scenario_w_seeded.json", "2"), ("fp_101.json", "1")):
        out = pathlib.Path(tmp) / (name + ".cert.json")
        subprocess.run([str(cli), "lift", str(root / "scenarios" / name), "--trunc", trunc, "--out", str(out)],
                       check=True, stdout=subprocess.DEVNULL)
        check("certificate", load(out), out.name)

sys.exit(1 if failures else 0)
