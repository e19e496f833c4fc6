#!/usr/bin/env python3
"""Regenerates every fixture in this directory. Output is deterministic:
sorted keys, two-space indent, one trailing newline."""
import json
import pathlib

HERE = pathlib.Path(__file__).resolve().parent


def dump(name, obj):
    (HERE / name).write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")


def rn_fixture(n, mod):
    """Matrix pair model: the full equivalence relation on n points with the
    column-minus-row grading and the trivial twist over Z/mod."""
    pts = range(1, n + 1)
    lab = lambda i, j: f"({i},{j})"
    arrows = [lab(i, j) for i in pts for j in pts]
    src = {lab(i, j): lab(j, j) for i in pts for j in pts}
    rng = {lab(i, j): lab(i, i) for i in pts for j in pts}
    compose = [[lab(i, j), lab(j, k), lab(i, k)] for i in pts for j in pts for k in pts]
    grading = {lab(i, j): str(j - i) for i in pts for j in pts if i != j}
    return {
        "schema": 1,
        "ring": {"mod": mod},
        "gamma": {"int_bound": n - 1},
        "kind": "twist",
        "groupoid": {"arrows": arrows, "src": src, "rng": rng, "compose": compose},
        "grading": grading,
    }


Z2_GROUPOID = {
    "arrows": ["e", "x"],
    "src": {"e": "e", "x": "e"},
    "rng": {"e": "e", "x": "e"},
    "compose": [["e", "e", "e"], ["e", "x", "x"], ["x", "e", "x"], ["x", "x", "e"]],
}
GAMMA_Z2 = {"labels": ["0", "1"], "mul": [[0, 1], [1, 0]], "identity": "0"}


def grouping_fixture(graded, omega=None):
    """Group ring of Z/2 over F_5, graded by itself or trivially, with an
    optional 2-cocycle."""
    f = {
        "schema": 1,
        "ring": {"mod": 5},
        "gamma": GAMMA_Z2 if graded else {"trivial": True},
        "kind": "twist",
        "groupoid": Z2_GROUPOID,
    }
    if graded:
        f["grading"] = {"x": "1"}
    if omega:
        f["twist"] = {"omega": omega}
    return f


def s3_fixture():
    """Symmetric group on three letters as a would-be extension of Z/2 by the
    unit group of F_4. The alternating subgroup is not central, so this file
    must be rejected."""
    perms = {
        "id": (1, 2, 3),
        "r123": (2, 3, 1),
        "r132": (3, 1, 2),
        "t12": (2, 1, 3),
        "t13": (3, 2, 1),
        "t23": (1, 3, 2),
    }
    names = list(perms)

    def compose(a, b):
        pa, pb = perms[a], perms[b]
        image = tuple(pa[pb[x - 1] - 1] for x in (1, 2, 3))
        return next(n for n, p in perms.items() if p == image)

    sigma = {
        "arrows": names,
        "src": {n: "id" for n in names},
        "rng": {n: "id" for n in names},
        "compose": [[a, b, compose(a, b)] for a in names for b in names],
    }
    # GF(4) with elements 0, 1, a, b where b = a + 1 = a^2.
    f4 = {
        "elements": ["0", "1", "a", "b"],
        "add": [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]],
        "mul": [[0, 0, 0, 0], [0, 1, 2, 3], [0, 2, 3, 1], [0, 3, 1, 2]],
    }
    return {
        "schema": 1,
        "ring": {"table": f4},
        "gamma": {"trivial": True},
        "kind": "twist",
        "groupoid": Z2_GROUPOID,
        "twist": {
            "sigma": sigma,
            "q": {"id": "e", "r123": "e", "r132": "e", "t12": "x", "t13": "x", "t23": "x"},
            "i": [["e", 1, "id"], ["e", 2, "r123"], ["e", 3, "r132"]],
        },
    }


def z6_fixture():
    """Z/6 acting on itself: C is everything and P the identity, but the
    scalar 2 kills the idempotent 3u, so the pair axioms must reject it."""
    return {
        "schema": 1,
        "ring": {"mod": 6},
        "gamma": {"trivial": True},
        "kind": "algebra",
        "algebra": {
            "basis": ["u"],
            "deg": ["e"],
            "mul": [["u", "u", {"u": 1}]],
            "C": [{"u": 1}],
            "P": [["u", {"u": 1}]],
        },
    }


dump("m2_f2.json", rn_fixture(2, 2))
dump("m2_f3.json", rn_fixture(2, 3))
dump("m3_f2.json", rn_fixture(3, 2))
dump("m3_f3.json", rn_fixture(3, 3))
dump("r2_z4.json", rn_fixture(2, 4))
dump("grouping_f5_z2_graded.json", grouping_fixture(graded=True))
dump("grouping_f5_z2_trivial.json", grouping_fixture(graded=False))
dump("z2_cocycle_f5.json", grouping_fixture(graded=True, omega=[["x", "x", 4]]))
dump("s3_dt3_fail.json", s3_fixture())
dump("z6_wt_fail.json", z6_fixture())
