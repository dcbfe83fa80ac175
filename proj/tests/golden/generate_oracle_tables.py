"""Regenerates oracle_tables.json from closed multinomial sums.

Independent of the C++ code: each arm's photons are split over
(lost, transmitted, reflected) in one multinomial step instead of being
walked photon by photon.
"""
import itertools
import json
import math
from collections import defaultdict

CUTOFF = 4


def bose_einstein(nbar, n):
    return nbar**n / (1 + nbar) ** (n + 1)


def weights(kind, nbar=None, s=None, v2=None, drop_vacuum=False):
    if kind == "uncorrelated":
        return {(a, b): bose_einstein(nbar, a) * bose_einstein(nbar, b)
                for a in range(CUTOFF + 1) for b in range(CUTOFF + 1 - a)}
    if kind == "split":
        return {(a, b): bose_einstein(2 * nbar, a + b) * math.comb(a + b, a) / 2 ** (a + b)
                for a in range(CUTOFF + 1) for b in range(CUTOFF + 1 - a)}
    s2 = s * s
    if kind == "correlated":
        raw = {(0, 0): 1.0, (1, 1): s2}
    else:
        raw = {(0, 0): 1.0, (2, 0): s2 * v2 / 2, (0, 2): s2 * v2 / 2, (1, 1): s2 * (1 - v2)}
    if drop_vacuum:
        del raw[(0, 0)]
    z = sum(raw.values())
    return {k: w / z for k, w in raw.items()}


def arm_fates(n, r2, eps2):
    for lost in range(n + 1):
        for trans in range(n + 1 - lost):
            refl = n - lost - trans
            p = (math.factorial(n) / (math.factorial(lost) * math.factorial(trans) * math.factorial(refl))
                 * (1 - eps2) ** lost * (eps2 * (1 - r2)) ** trans * (eps2 * r2) ** refl)
            yield lost, trans, refl, p


def cross(kind, dem_a, dem_b):
    # Canonical policy: swap on a lone click at the demon detector that
    # reveals the brighter arm.
    if kind == "correlated":
        return dem_a > 0 and dem_b == 0
    return dem_a == 0 and dem_b > 0


def table(kind, r2, eps2, **source):
    out = defaultdict(float)
    for (na, nb), w in weights(kind, **source).items():
        for (la, ta, da, pa), (lb, tb, db, pb) in itertools.product(arm_fates(na, r2, eps2), arm_fates(nb, r2, eps2)):
            sig = (tb, ta) if cross(kind, da, db) else (ta, tb)
            out[(*sig, da, db, la, lb)] += w * pa * pb
    return {k: p for k, p in out.items() if p != 0.0}


CASES = {
    "uncorrelated": ("uncorrelated", 0.3, 0.5, {"nbar": 0.05}),
    "split": ("split", 0.2, 0.14, {"nbar": 0.05}),
    "correlated": ("correlated", 0.5, 1.0, {"s": 0.1, "drop_vacuum": True}),
    "anticorrelated": ("anticorrelated", 0.2, 0.14, {"s": 0.1, "v2": 0.87}),
}

result = {}
for name, (kind, r2, eps2, source) in CASES.items():
    t = table(kind, r2, eps2, **source)
    p_a = sum(p for k, p in t.items() if k[0] > 0)
    p_b = sum(p for k, p in t.items() if k[1] > 0)
    result[name] = {
        "r2": r2,
        "eps2": eps2,
        "source": source,
        "delta": p_a - p_b,
        "table": [{"occupation": list(k), "p": p} for k, p in sorted(t.items())],
    }

with open(__file__.replace("generate_oracle_tables.py", "oracle_tables.json"), "w") as f:
    json.dump(result, f, indent=1)
    f.write("\n")
