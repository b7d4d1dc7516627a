"""End-to-end checks of the wallkit command line tool.

usage: cli_test.py WALLKIT_BINARY SCHEMA_JSON
"""
import json
import os
import re
import subprocess
import sys
import tempfile

import jsonschema

try:
    import pydot
except ImportError:
    pydot = None

BIN, SCHEMA_PATH = sys.argv[1], sys.argv[2]
with open(SCHEMA_PATH) as f:
    SCHEMA = json.load(f)
jsonschema.Draft202012Validator.check_schema(SCHEMA)

failures = []


def run(*args, env=None):
    return subprocess.run([BIN, *args], capture_output=True, text=True, env=env, timeout=240)


def check(name, cond, detail=""):
    print(("ok   " if cond else "FAIL ") + name + ("" if cond else ": " + detail))
    if not cond:
        failures.append(name)


def validate(name, doc, definition):
    schema = dict(SCHEMA)
    schema.pop("anyOf")
    schema["$ref"] = "#/$defs/" + definition
    try:
        jsonschema.validate(doc, schema, cls=jsonschema.Draft202012Validator)
        check(name + " matches schema", True)
    except jsonschema.ValidationError as e:
        check(name + " matches schema", False, e.message)


def json_of(name, definition, *args):
    r = run(*args, "--json", "-")
    check(name + " exits 0", r.returncode == 0, r.stderr)
    try:
        doc = json.loads(r.stdout)
    except json.JSONDecodeError as e:
        check(name + " is JSON", False, str(e))
        return None
    validate(name, doc, definition)
    return doc


A2 = ["--family", "a2even", "--ell", "2"]
D2 = ["--family", "d2", "--ell", "2"]

# Reference outputs.
r = run("walls", *A2, "--blocks", "5")
walls = [line.split()[0] for line in r.stdout.splitlines()]
check("walls of 5 blocks", r.returncode == 0 and walls == ["(5)", "(4,1)", "(3,2)"], r.stdout)

r = run("tableaux", *A2, "--wall", "5,1")
check("ST((5,1)) has 4 tableaux", r.returncode == 0 and len(r.stdout.splitlines()) == 4, r.stdout)

r = run("dim", *A2, "--beta", "0:1")
check("dim of alpha_0 is 1", r.returncode == 0 and r.stdout.strip() == "1", r.stdout)

r = run("dim", *A2, "--beta", "0:2,1:2,2:1", "--q1")
check("dim of delta", r.stdout.splitlines() == ["5 + 5*q^2 + 5*q^4", "q=1: 15"], r.stdout)

r = run("dim", *D2, "--beta", "0:2,1:1,2:2", "--q1")
check("dim in type D", r.stdout.splitlines() == ["9*q^-2 + 18 + 9*q^2", "q=1: 36"], r.stdout)

# JSON documents.
doc = json_of("walls", "wall_list", "walls", *A2, "--blocks", "5")
check("walls JSON parts", doc is not None and [w["parts"] for w in doc] == [[5], [4, 1], [3, 2]])
doc = json_of("tableaux", "tableaux", "tableaux", *A2, "--wall", "5,1")
check("tableaux JSON count", doc is not None and len(doc["tableaux"]) == 4)
doc = json_of("poset", "poset", "poset", *A2, "--wall", "5,1")
check("poset is a chain", doc is not None and len(doc["nodes"]) == 4 and len(doc["covers"]) == 3)
json_of("fock", "fock_vector", "fock", "apply", *A2, "--word", "f1,f0")
doc = json_of("dim total", "dim_report", "dim", *D2, "--beta", "0:2,1:1,2:2", "--q1")
check("dim total JSON", doc is not None and doc["total"] == {"-2": 9, "0": 18, "2": 9} and doc["dim_q1"] == 36)
for method in ("tableau", "tableau-factored", "fock"):
    doc = json_of("dim pair " + method, "dim_pair", "dim", *A2, "--beta", "0:2,1:1,2:1", "--nu", "0,1,2,0",
                  "--nu-prime", "0,1,2,0", "--method", method)
doc = json_of("axioms", "axioms", "fock", "axioms", *A2, "--max-blocks", "5")
check("axioms hold by default", doc is not None and doc["ok"])
json_of("verify", "calibration", "verify", *A2, "--max-blocks", "5")

# DOT output.
r = run("poset", *A2, "--wall", "5,1", "--dot", "-")
check("poset --dot exits 0", r.returncode == 0, r.stderr)
if pydot is not None:
    graphs = pydot.graph_from_dot_data(r.stdout)
    ok = graphs is not None and len(graphs) == 1
    check("DOT parses", ok, r.stdout)
    if ok:
        g = graphs[0]
        check("DOT nodes", len([n for n in g.get_nodes() if re.fullmatch(r"n\d+", n.get_name())]) == 4)
        check("DOT edges", [e.get_label() for e in g.get_edges()] == ['"s5"', '"s4"', '"s3"'])
else:
    check("DOT grammar", r.stdout.startswith("digraph ") and r.stdout.rstrip().endswith("}")
          and len(re.findall(r"^\s*n\d+ -> n\d+ \[label=\"s\d+\"\];$", r.stdout, re.M)) == 3, r.stdout)
with tempfile.TemporaryDirectory() as d:
    path = os.path.join(d, "p.dot")
    r = run("poset", *A2, "--wall", "5,1", "--dot", path)
    check("poset --dot FILE", r.returncode == 0 and open(path).read().startswith("digraph"), r.stderr)

# Exit codes.
check("no subcommand exits 1", run().returncode == 1)
check("unknown flag exits 1", run("walls", *A2, "--blocks", "3", "--bogus").returncode == 1)
check("unknown family exits 1", run("walls", "--family", "E8", "--ell", "2", "--blocks", "3").returncode == 1)
check("ell below 2 exits 1", run("walls", "--family", "a2even", "--ell", "1", "--blocks", "3").returncode == 1)
check("non-wall exits 1", run("tableaux", *A2, "--wall", "1,5").returncode == 1)
check("bad beta exits 1", run("dim", *A2, "--beta", "7:1").returncode == 1)
check("lone --nu exits 1", run("dim", *A2, "--beta", "0:1", "--nu", "0").returncode == 1)
check("printed axioms exit 2",
      run("fock", "axioms", *A2, "--max-blocks", "4", "--convention", "printed").returncode == 2)
check("cap exceeded exits 3", run("walls", *A2, "--blocks", "50", "--cap", "10").returncode == 3)
r = run("verify", *A2, "--max-blocks", "5")
check("verify exits 0", r.returncode == 0, r.stdout + r.stderr)
check("--dot - with --json - exits 1",
      run("poset", *A2, "--wall", "5,1", "--dot", "-", "--json", "-").returncode == 1)

# Output does not depend on the thread count.
for args in (["dim", *A2, "--beta", "0:3,1:3,2:2", "--q1"], ["verify", *D2, "--max-blocks", "5"]):
    one = run(*args, "--threads", "1")
    four = run(*args, "--threads", "4")
    check("threads 1 vs 4: " + args[0], one.stdout == four.stdout and one.returncode == four.returncode)

# Result cache round trip.
with tempfile.TemporaryDirectory() as d:
    env = dict(os.environ, WALLKIT_CACHE=d)
    args = ["dim", *D2, "--beta", "0:2,1:1,2:2", "--json", "-"]
    cold = run(*args, env=env)
    entries = os.listdir(d)
    warm = run(*args, env=env)
    check("cache writes an entry", cold.returncode == 0 and len(entries) >= 1, str(entries))
    check("cache hit is identical", warm.returncode == 0 and warm.stdout == cold.stdout)
    for name in entries:
        with open(os.path.join(d, name), "w") as f:
            f.write("{corrupt")
    again = run(*args, env=env)
    check("corrupt cache entry is recomputed", again.returncode == 0 and again.stdout == cold.stdout, again.stderr)

print("%d failure(s)" % len(failures))
sys.exit(1 if failures else 0)
