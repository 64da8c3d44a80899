"""Writes the bundled window corpora under corpora/."""
import json
import pathlib

ROOT = pathlib.Path(__file__).resolve().parent.parent / "corpora"


def zeros(r, c):
    return [["0"] * c for _ in range(r)]


def write(name, algebra, modules, complete, preprojective):
    d = ROOT / name
    (d / "modules").mkdir(parents=True, exist_ok=True)
    (d / "algebra.json").write_text(json.dumps(algebra, indent=2) + "\n")
    files = []
    for m in modules:
        f = f"modules/{m['name']}.json"
        (d / f).write_text(json.dumps(m, indent=2) + "\n")
        files.append(f)
    manifest = {"algebra": "algebra.json", "modules": files, "complete": complete, "preprojective": preprojective}
    (d / "manifest.json").write_text(json.dumps(manifest, indent=2) + "\n")


def a2():
    alg = {"field": {"Fp": 2}, "vertices": ["1", "2"], "arrows": [{"src": "1", "dst": "2", "label": "a"}], "relations": []}
    mods = [
        {"name": "S1", "dims": {"1": 1, "2": 0}, "maps": {"a": zeros(0, 1)}},
        {"name": "S2", "dims": {"1": 0, "2": 1}, "maps": {"a": zeros(1, 0)}},
        {"name": "P1", "dims": {"1": 1, "2": 1}, "maps": {"a": [["1"]]}},
    ]
    write("a2", alg, mods, True, ["S1", "S2", "P1"])


def a3():
    alg = {"field": {"Fp": 2}, "vertices": ["1", "2", "3"],
           "arrows": [{"src": "1", "dst": "2", "label": "a"}, {"src": "2", "dst": "3", "label": "b"}], "relations": []}
    mods = []
    for i in range(3):
        for j in range(i, 3):
            dims = [1 if i <= k <= j else 0 for k in range(3)]
            maps = {}
            for k, lab in enumerate("ab"):
                m = zeros(dims[k + 1], dims[k])
                if dims[k] and dims[k + 1]:
                    m[0][0] = "1"
                maps[lab] = m
            mods.append({"name": f"M{i + 1}{j + 1}", "dims": {str(k + 1): dims[k] for k in range(3)}, "maps": maps})
    write("a3", alg, mods, True, [m["name"] for m in mods])


def dual_numbers():
    alg = {"field": {"Fp": 2}, "vertices": ["1"], "arrows": [{"src": "1", "dst": "1", "label": "x"}],
           "relations": [[{"coeff": "1", "path": ["x", "x"]}]]}
    mods = [
        {"name": "k", "dims": {"1": 1}, "maps": {"x": [["0"]]}},
        {"name": "A", "dims": {"1": 2}, "maps": {"x": [["0", "0"], ["1", "0"]]}},
    ]
    write("dualnumbers", alg, mods, True, ["k", "A"])


def kronecker():
    alg = {"field": {"Fp": 2}, "vertices": ["1", "2"],
           "arrows": [{"src": "1", "dst": "2", "label": "a"}, {"src": "1", "dst": "2", "label": "b"}], "relations": []}
    mods = []
    for n in range(1, 5):
        a, b = zeros(n, n - 1), zeros(n, n - 1)
        for i in range(n - 1):
            a[i][i] = "1"
            b[i + 1][i] = "1"
        mods.append({"name": f"P{n}", "dims": {"1": n - 1, "2": n}, "maps": {"a": a, "b": b}})
    for n in range(1, 5):
        for lam in ("0", "1", "inf"):
            ident, j = zeros(n, n), zeros(n, n)
            for i in range(n):
                ident[i][i] = "1"
                if lam != "inf":
                    j[i][i] = lam
                if i + 1 < n:
                    j[i][i + 1] = "1"
            maps = {"a": j, "b": ident} if lam == "inf" else {"a": ident, "b": j}
            mods.append({"name": f"R{n}_{lam}", "dims": {"1": n, "2": n}, "maps": maps})
    for n in range(1, 5):
        a, b = zeros(n - 1, n), zeros(n - 1, n)
        for i in range(n - 1):
            a[i][i] = "1"
            b[i][i + 1] = "1"
        mods.append({"name": f"I{n}", "dims": {"1": n, "2": n - 1}, "maps": {"a": a, "b": b}})
    write("kronecker", alg, mods, False, [f"P{n}" for n in range(1, 5)])


if __name__ == "__main__":
    a2()
    a3()
    dual_numbers()
    kronecker()
