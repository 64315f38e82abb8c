"""Independent reference implementations used to check the package."""
from __future__ import annotations

import math
from itertools import combinations


def all_matchings(points):
    """Every perfect matching of ``points`` (no planarity filter)."""
    points = list(points)
    if not points:
        yield ()
        return
    first, rest = points[0], points[1:]
    for k, other in enumerate(rest):
        for tail in all_matchings(rest[:k] + rest[k + 1:]):
            yield ((first, other),) + tail


def crosses(p, q):
    (a, b), (c, d) = sorted([tuple(sorted(p)), tuple(sorted(q))])
    return a < c < b < d


def brute_noncrossing(J):
    out = []
    for m in all_matchings(range(1, 2 * J + 1)):
        if not any(crosses(p, q) for p, q in combinations(m, 2)):
            out.append(tuple(sorted(m)))
    return sorted(out)


def brute_symmetric(J):
    n = 2 * J + 1
    return [m for m in brute_noncrossing(J) if tuple(sorted(tuple(sorted((n - a, n - b))) for a, b in m)) == m]


def catalan(J):
    return math.comb(2 * J, J) // (J + 1)
