"""Runs the acsv binary end to end: exit codes, text output and JSON schema."""

import json
import subprocess
import sys

from jsonschema import Draft202012Validator

BINARY, SCHEMA = sys.argv[1], sys.argv[2]
failures = []


def run(*args):
    return subprocess.run([BINARY, *args], capture_output=True, text=True, timeout=300)


def expect(name, cond, detail=""):
    print(("PASS " if cond else "FAIL ") + name + (f": {detail}" if detail and not cond else ""))
    if not cond:
        failures.append(name)


with open(SCHEMA) as f:
    validator = Draft202012Validator(json.load(f))


def check_schema(name, proc):
    try:
        doc = json.loads(proc.stdout)
    except json.JSONDecodeError as e:
        expect(name + " json", False, str(e))
        return None
    errors = sorted(validator.iter_errors(doc), key=str)
    expect(name + " schema", not errors, "; ".join(e.message for e in errors[:3]))
    return doc


p = run("solve", "--den", "1-x-y", "--comb", "--direction", "1,1", "--format", "json")
expect("comb exit code", p.returncode == 0, p.stderr)
doc = check_schema("comb", p)
if doc:
    expect("comb formatted", doc["asymptotics"]["formatted"] == "(0.25)^(-n)n^(-1/2)(0.56)")

p = run("solve", "--den", "1+x+y", "--comb", "--format", "json")
expect("failure exit code", p.returncode == 2, str(p.returncode))
doc = check_schema("failure", p)
if doc:
    expect("failure status", doc["status"] == "fail_no_candidate")

p = run("solve", "--den", "1-x-y", "--mode", "approx-crit", "--format", "json")
expect("approx-crit exit code", p.returncode == 0, p.stderr)
doc = check_schema("approx-crit", p)
if doc:
    expect("approx-crit heuristic flag", doc["heuristic"] is True)

p = run("solve", "--den", "1-x-y", "--comb")
expect("text output", p.returncode == 0 and "asymptotics: (0.25)^(-n)n^(-1/2)(0.56)" in p.stdout, p.stdout)

p = run("solve", "--den", "1-x-(y")
expect("parse error exits 1", p.returncode == 1 and p.stderr.startswith("acsv:"), p.stderr)

p = run("solve", "--den", "1-x-y", "--start-system", "polyhedral")
expect("polyhedral exits 1", p.returncode == 1, str(p.returncode))

p = run("solve", "--den", "1-x-y", "--mode", "fast")
expect("bad mode exits 1", p.returncode == 1, str(p.returncode))

p = run("solve", "--den", "1-x-y", "--direction", "1,0")
expect("bad direction exits 1", p.returncode == 1, str(p.returncode))

p = run("solve")
expect("missing denominator exits 1", p.returncode == 1, str(p.returncode))

p = run("--help")
expect("help exits 0", p.returncode == 0, str(p.returncode))

p = run("oracle", "--den", "1-x-y", "--terms", "6")
expect("oracle sequence", p.returncode == 0 and p.stdout.splitlines()[0] == "1 2 6 20 70 252", p.stdout)

p = run("oracle", "--den", "1-x-y", "--terms", "4", "--format", "json")
expect("oracle json", p.returncode == 0 and json.loads(p.stdout)["diagonal"] == ["1", "2", "6", "20"], p.stdout)

p = run("critical", "--den", "1-x-y")
expect("critical", p.returncode == 0 and "critical\t1\t1\tmixed_volume\tyes" in p.stdout, p.stdout)

print(f"{len(failures)} failure(s)")
sys.exit(1 if failures else 0)
