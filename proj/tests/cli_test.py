"""End-to-end checks of the command-line tool: payloads, exit codes, caching and byte stability."""
import json
import os
import subprocess
import sys
import tempfile

BIN = sys.argv[1]
CORPORA = sys.argv[2]
failures = []


def run(*args, env=None):
    p = subprocess.run([BIN, *args], capture_output=True, text=True, env=env)
    return p.returncode, p.stdout, p.stderr


def check(cond, what):
    print(("ok   " if cond else "FAIL ") + what)
    if not cond:
        failures.append(what)


with tempfile.TemporaryDirectory() as tmp:
    cache = os.path.join(tmp, "cache")
    base = ["--cache-dir", cache]
    a2 = os.path.join(CORPORA, "a2")

    code, out, _ = run(*base, "window", "build", "--corpus", a2)
    r = json.loads(out)
    dims = r["payload"]["hom_dims"]
    names = [o["name"] for o in r["payload"]["objects"]]
    idx = {n: i for i, n in enumerate(names)}
    nonzero = sum(1 for row in dims for v in row if v)
    check(code == 0 and nonzero == 5, "window build A2: five nonzero Hom dimensions")
    check(all(dims[i][i] == 1 for i in range(3)), "window build A2: diagonal entries 1")
    check(dims[idx["S2"]][idx["P1"]] == 1 and dims[idx["P1"]][idx["S1"]] == 1, "window build A2: Hom(S2,P1) and Hom(P1,S1)")
    h = r["payload"]["window"]
    check(os.path.exists(os.path.join(cache, h + ".json")), "window build caches by content hash")

    code, out, _ = run(*base, "pair", "--window", h, "--closure", "gen", "--objects", "S2")
    check(code == 0 and json.loads(out)["payload"]["t_dims"] == {"P1": 1, "S1": 0, "S2": 1}, "pair gen S2 on A2")
    code, out, _ = run(*base, "pair", "--window", h, "--subfunctor", "zero")
    check(code == 0 and set(json.loads(out)["payload"]["t_dims"].values()) == {0}, "pair zero subfunctor")
    code, _, err = run(*base, "pair", "--window", h, "--closure", "gen", "--objects", "Q7")
    check(code == 3 and "unknown object" in err, "unknown object exits 3")

    code, out, _ = run(*base, "rank", "--window", h, "--module", "S1")
    p = json.loads(out)["payload"]
    check(code == 0 and p["tag"] == "Finite(1)" and p["chain_dims"] == [1, 1, 0], "rank S1 on A2")

    code, out, _ = run(*base, "lattice", "--window", h, "--enumerate")
    check(code == 0 and json.loads(out)["payload"]["count"] == 8, "lattice enumerate A2 gives 8")

    s1 = os.path.join(a2, "modules", "S1.json")
    code, _, err = run(*base, "window", "build", "--algebra", os.path.join(a2, "algebra.json"), "--modules", s1, s1, "--complete")
    check(code == 2 and "duplicate isomorphism class" in err, "duplicate module file exits 2")

    code, out, _ = run(*base, "window", "build", "--corpus", os.path.join(CORPORA, "kronecker"))
    r = json.loads(out)
    check(code == 0 and len(r["payload"]["hom_dims"]) == 20 and r["exactness"] == "window_relative", "Kronecker window matrix")

    code, out, _ = run(*base, "pair", "--corpus", os.path.join(CORPORA, "kronecker"), "--closure", "gen", "--objects", "R1_0")
    vecs = json.loads(out)["payload"]["t_dimension_vectors"]
    check(code == 0 and all(vecs[f"R{j}_0"] == [1, 1] for j in range(1, 5)), "pair gen R1_0 on Kronecker")

    env = dict(os.environ, TORSIDL_CACHE=os.path.join(tmp, "envcache"))
    code, out, _ = run("window", "build", "--corpus", a2, env=env)
    check(code == 0 and os.path.exists(os.path.join(tmp, "envcache", h + ".json")), "TORSIDL_CACHE selects the cache")

    o1, o2 = os.path.join(tmp, "r1.json"), os.path.join(tmp, "r2.json")
    c1, _, _ = run(*base, "--out", o1, "verify", "--suite", "kronecker-6.9")
    c2, _, _ = run(*base, "verify", "--suite", "kronecker-tubes", "--out", o2)
    check(c1 == 0 and c2 == 0, "verify kronecker tubes passes")
    r1, r2 = json.load(open(o1)), json.load(open(o2))
    r1["inputs"] = r2["inputs"] = None
    check(r1 == r2, "suite alias gives the same payload")
    run(*base, "--out", o1, "lattice", "--window", h, "--enumerate", "--certify")
    run(*base, "--out", o2, "lattice", "--window", h, "--enumerate", "--certify")
    check(open(o1, "rb").read() == open(o2, "rb").read(), "reports are byte-identical across runs")

    code, _, _ = run(*base, "verify", "--suite", "nope")
    check(code == 3, "unknown suite exits 3")
    code, _, _ = run(*base, "frobnicate")
    check(code == 3, "bad arguments exit 3")

print(f"{len(failures)} failures")
sys.exit(1 if failures else 0)
