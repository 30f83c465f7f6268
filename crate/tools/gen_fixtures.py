#!/usr/bin/env python3
"""Regenerate the newform fixtures under fixtures/newforms using PARI/GP.

Needs the `cypari` wheel (it bundles libpari):  pip install cypari

Each job is (level, weight, conductor cover, n_coeffs): the output file holds
every Galois orbit of newforms of that level and weight whose nebentypus has
conductor dividing `cover`, with the first n_coeffs coefficients.
"""
import json
from math import gcd
import os
import sys

from cypari import pari

HERE = os.path.dirname(os.path.abspath(__file__))
OUT = os.path.join(HERE, "..", "fixtures", "newforms")

# Spaces S_k(Gamma_0(N) cap Gamma_1(m)) the test-suite and examples compute on,
# as (N, k, m).  Every newform level M | N gets a fixture covering the
# characters of conductor dividing gcd(m, M).
SPACES = [
    (11, 2, 1), (13, 2, 13), (22, 2, 1), (23, 2, 1), (7, 3, 7), (5, 4, 1),
    (16, 2, 16), (12, 3, 12), (21, 2, 21), (20, 2, 20), (9, 6, 3), (16, 3, 4),
    (16, 4, 4), (25, 3, 5), (36, 2, 6), (49, 2, 7), (169, 2, 13), (64, 2, 8), (81, 2, 9),
    (33, 2, 1),
]

MIN_COEFFS = 1000


def gamma1_index(n):
    idx = n * n
    p = 2
    m = n
    while m > 1:
        if m % p == 0:
            idx = idx * (p * p - 1) // (p * p)
            while m % p == 0:
                m //= p
        p += 1
    return idx


def sturm(k, n):
    return k * gamma1_index(n) // 12


def jobs():
    need = {}
    for (n, k, m) in SPACES:
        for lvl in range(1, n + 1):
            if n % lvl:
                continue
            cover, nmax = need.get((lvl, k), (1, MIN_COEFFS))
            g = gcd(m, lvl)
            cover = cover * g // gcd(cover, g)
            nmax = max(nmax, sturm(k, n) + 1)
            need[(lvl, k)] = (cover, nmax)
    return sorted((lvl, k, c, nm) for (lvl, k), (c, nm) in need.items())


def rat(x):
    return str(x)


def export(level, weight, cover, nmax):
    reps = pari("charreps(%d, %d, %d)" % (level, weight, cover))
    records = []
    for c0 in reps:
        data = pari("eigendata(%d, %d, %d, %d)" % (level, weight, int(c0), nmax))
        for i, (poly, an, chars) in enumerate(data):
            records.append({
                "level": level,
                "weight": weight,
                "label": "%d.%d.%d.%d" % (level, weight, int(c0), i + 1),
                "field_poly": [int(c) for c in poly],
                "an": [[rat(c) for c in v] for v in an],
                "char": {
                    "modulus": level,
                    "values": [[d + 1, [rat(c) for c in v]]
                               for d, v in enumerate(chars) if v != 0 or level == 1],
                },
                "n_coeffs": nmax,
            })
    return {
        "level": level,
        "weight": weight,
        "conductor_cover": cover,
        "n_coeffs": nmax,
        "newforms": records,
    }


def main(argv):
    pari.allocatemem(4 * 10**9)
    pari('read("%s")' % os.path.join(HERE, "newforms.gp"))
    os.makedirs(OUT, exist_ok=True)
    only = {int(a) for a in argv}
    spaces = []
    for (n, k, m) in SPACES:
        d = int(pari("spacedim(%d, %d, %d)" % (n, k, m)))
        spaces.append({"level": n, "weight": k, "h_modulus": m, "dim": d,
                       "sturm": sturm(k, n)})
    with open(os.path.join(OUT, "spaces.json"), "w") as fh:
        json.dump({"spaces": spaces}, fh, indent=1)
        fh.write("\n")
    for (level, weight, cover, nmax) in jobs():
        if only and level not in only:
            continue
        doc = export(level, weight, cover, nmax)
        fname = os.path.join(OUT, "nf_%d_%d.json" % (level, weight))
        with open(fname, "w") as fh:
            json.dump(doc, fh, separators=(",", ":"))
            fh.write("\n")
        print("level %d weight %d: %d orbits" % (level, weight, len(doc["newforms"])))


if __name__ == "__main__":
    main(sys.argv[1:])
