#!/usr/bin/env python3
"""Brute-force reference values for the frozen constants in the C++ tests.

Enumerates every joint edge state, checks reachability with BFS, and sums
the state weights. Shares no code with the C++ library.
"""
import itertools
from collections import deque

import numpy as np


def connectivity(n, edges):
    q = np.eye(n)
    for bits in itertools.product((0, 1), repeat=len(edges)):
        w = 1.0
        adj = [[] for _ in range(n)]
        for b, (i, j, p) in zip(bits, edges):
            w *= p if b else 1.0 - p
            if b:
                adj[i].append(j)
                adj[j].append(i)
        for s in range(n):
            seen = {s}
            todo = deque([s])
            while todo:
                u = todo.popleft()
                for v in adj[u]:
                    if v not in seen:
                        seen.add(v)
                        todo.append(v)
            for t in seen:
                if t != s:
                    q[s, t] += w
    return q


def bounds(a, q, i, j):
    n = len(q)
    prods = [q[i, k] * q[k, j] for k in range(n) if k not in (i, j)]
    return max(prods, default=0.0), 1.0 - (1.0 - a) * np.prod([1.0 - x for x in prods])


def show(name, n, edges):
    q = connectivity(n, edges)
    ev = np.linalg.eigvalsh(q)[::-1]
    print(f"{name}: q=\n{np.array2string(q, precision=17)}")
    print(f"  eigenvalues={[repr(x) for x in ev]}")
    return q


if __name__ == "__main__":
    tri = [(0, 1, 0.5), (0, 2, 0.5), (1, 2, 0.5)]
    q = show("triangle", 3, tri)
    print("  lower01, upper01 =", bounds(0.5, q, 0, 1))

    bowtie = [(0, 1, .5), (0, 2, .5), (1, 2, .5), (2, 3, .5), (2, 4, .5), (3, 4, .5)]
    q = show("bowtie", 5, bowtie)
    print("  q03 vs q02*q23:", q[0, 3], q[0, 2] * q[2, 3])

    # Two-walk 0-2-1 in the triangle: both edges {02, 21} present.
    print("triangle two-walk (0,1):", sum(
        (0.5 if a else 0.5) * (0.5 if b else 0.5) for a in (0, 1) for b in (0, 1) if a and b))

    path4 = [(0, 1, .9), (1, 2, .9), (2, 3, .9)]
    qa = show("chain", 4, path4)
    qb = show("chain + shortcut (1,3)", 4, path4 + [(1, 3, .9)])
    qc = show("chain + shortcut + relays", 6,
              path4 + [(1, 3, .9), (0, 4, .9), (4, 2, .9), (1, 5, .9), (5, 3, .9)])
