#!/usr/bin/env python3
"""Writes the regression corpus: family files, formulas with expected verdicts, WDI instances.

Expected verdicts come from a plain Python enumeration, independent of the C++ code.
Usage: make_corpus.py <out-dir>
"""
import itertools
import random
import sys
from pathlib import Path


def table(arity, pred):
    return "".join("1" if pred(m) else "0" for m in range(1 << arity))


FAMILIES = {
    "impl": [("IMPL", 2, "1011")],
    "nand2": [("NAND2", 2, "1110")],
    "nand3": [("NAND3", 3, "11111110")],
    "or2": [("OR2", 2, "0111")],
    "eq2": [("EQ2", 2, "1001")],
    "dualhorn": [("DH", 3, table(3, lambda m: m != 1))],
    "implfp": [("IMPL", 2, "1011"), ("FP", 3, table(3, lambda m: m in (0, 3, 5)))],
    "nand2impl": [("NAND2", 2, "1110"), ("IMPL", 2, "1011")],
    "threesat": [("C%d" % b, 3, table(3, lambda m, b=b: m != b)) for b in range(8)],
}


def evaluate(fam, constraints, ones):
    funs = {name: (r, t) for name, r, t in fam}
    for name, args in constraints:
        r, t = funs[name]
        row = 0
        for i, a in enumerate(args):
            bit = a == "T" or (a not in ("T", "F") and a in ones)
            row |= int(bit) << i
        if t[row] != "1":
            return False
    return True


def first_solution(fam, n, constraints, k):
    for combo in itertools.combinations(range(1, n + 1), k):
        if evaluate(fam, constraints, set(combo)):
            return list(combo)
    return None


def write_formula(out, stem, fam_name, n, constraints, k):
    lines = ["p ewsat %d %d %d" % (n, len(constraints), k), "use " + fam_name]
    lines += ["c %s %s" % (name, " ".join(str(a) for a in args)) for name, args in constraints]
    (out / (stem + ".ews")).write_text("\n".join(lines) + "\n")
    sol = first_solution(FAMILIES[fam_name], n, constraints, k)
    (out / (stem + ".wit")).write_text(("YES " + " ".join(map(str, sol)) if sol is not None else "NO") + "\n")


def write_wdi(out, stem, n, weights, arcs, k):
    lines = ["p wdi %d %d %d" % (n, len(arcs), k)]
    lines += ["w %d %d" % (v, w) for v, w in sorted(weights.items()) if w != 1]
    lines += ["a %d %d" % a for a in arcs]
    (out / (stem + ".wdi")).write_text("\n".join(lines) + "\n")


def clique_wdi(n, edges, k):
    big = k * (k - 1) // 2 + 1
    weights = {v: big for v in range(1, n + 1)}
    arcs = []
    for i, (u, v) in enumerate(sorted(edges)):
        node = n + 1 + i
        weights[node] = 1
        arcs += [(node, u), (node, v)]
    return n + len(edges), weights, arcs, k * big + k * (k - 1) // 2


def main():
    out = Path(sys.argv[1])
    out.mkdir(parents=True, exist_ok=True)
    for name, funs in FAMILIES.items():
        (out / (name + ".fam")).write_text("".join("fun %s %d %s\n" % f for f in funs))

    write_formula(out, "chain", "impl", 3, [("IMPL", [1, 2]), ("IMPL", [2, 3])], 2)
    k4 = [("NAND2", [u, v]) for u, v in itertools.combinations(range(1, 5), 2)]
    write_formula(out, "k4", "nand2", 4, k4, 2)
    c5 = [("NAND2", [v, v % 5 + 1]) for v in range(1, 6)]
    write_formula(out, "c5", "nand2", 5, c5, 2)
    write_formula(out, "nand3-full", "nand3", 3, [("NAND3", [1, 2, 3])], 3)
    write_formula(out, "nand3-pair", "nand3", 3, [("NAND3", [1, 2, 3])], 2)
    write_formula(out, "or2-const", "or2", 3, [("OR2", [1, "F"]), ("OR2", [2, 3])], 2)

    rng = random.Random(2024)
    for name, funs in FAMILIES.items():
        for i in range(3):
            n = rng.randint(5, 12)
            m = rng.randint(n // 2, 2 * n)
            constraints = []
            for _ in range(m):
                fname, r, _ = rng.choice(funs)
                constraints.append((fname, [rng.randint(1, n) for _ in range(r)]))
            write_formula(out, "%s-%d" % (name, i), name, n, constraints, rng.randint(1, min(n, 5)))

    write_wdi(out, "k3-clique", *clique_wdi(3, [(1, 2), (1, 3), (2, 3)], 3))
    write_wdi(out, "c4-clique", *clique_wdi(4, [(1, 2), (2, 3), (3, 4), (1, 4)], 3))
    write_wdi(out, "weighted", 5, {1: 2, 2: 3, 4: 2}, [(1, 2), (3, 2), (5, 4)], 6)
    write_wdi(out, "cyclic", 4, {}, [(1, 2), (2, 1), (3, 4)], 3)
    for i in range(3):
        n = rng.randint(8, 18)
        weights = {v: rng.randint(1, 3) for v in range(1, n + 1)}
        arcs = [(u, v) for u in range(1, n + 1) for v in range(u + 1, n + 1) if rng.random() < 0.15]
        write_wdi(out, "dag-%d" % i, n, weights, arcs, rng.randint(1, 12))


if __name__ == "__main__":
    main()
