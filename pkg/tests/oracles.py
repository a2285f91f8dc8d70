"""Brute-force reference implementations, deliberately independent of hstab internals."""

from __future__ import annotations

import itertools
from math import gcd


def det(A):
    n = len(A)
    if n == 0:
        return 1
    if n == 1:
        return A[0][0]
    return sum((-1) ** j * A[0][j] * det([row[:j] + row[j + 1:] for row in A[1:]]) for j in range(n))


def minor_gcd_diagonal(A, cols):
    """Smith diagonal via d_k = gcd(k-minors) / gcd((k-1)-minors)."""
    rows = len(A)
    out, prev = [], 1
    for k in range(1, min(rows, cols) + 1):
        g = 0
        for r in itertools.combinations(range(rows), k):
            for c in itertools.combinations(range(cols), k):
                g = gcd(g, det([[A[i][j] for j in c] for i in r]))
        if g == 0:
            break
        out.append(g // prev)
        prev = g
    return out


def alpha_generic(gram, alpha_basis, x):
    """alpha(sum x_i b_i) = sum x_i^2 alpha(b_i) + sum_{i<j} x_i x_j lam(b_i, b_j)."""
    n = len(x)
    return sum(x[i] * x[i] * alpha_basis[i] for i in range(n)) + sum(
        x[i] * x[j] * gram[i][j] for i in range(n) for j in range(i + 1, n))


def hyperbolic_gram(g, eps=-1):
    G = [[0] * (2 * g) for _ in range(2 * g)]
    for i in range(g):
        G[2 * i][2 * i + 1] = 1
        G[2 * i + 1][2 * i] = eps
    return G


def lam(G, x, y):
    return sum(x[i] * G[i][j] * y[j] for i in range(len(x)) for j in range(len(y)) if G[i][j])


def ka_vertices(g, modulus, bound):
    """Exhaustive scan of pairs (e, f) in the box; modulus 2 for 2Z, 1 for Z."""
    G = hyperbolic_gram(g)
    a0 = [0] * (2 * g)
    box = list(itertools.product(range(-bound, bound + 1), repeat=2 * g))
    iso = [x for x in box if alpha_generic(G, a0, x) % modulus == 0 and lam(G, x, x) == 0]
    return sorted((e, f) for e in iso for f in iso if lam(G, e, f) == 1)


def ka_f_vector(g, modulus, bound):
    G = hyperbolic_gram(g)
    V = ka_vertices(g, modulus, bound)

    def orth(u, v):
        return all(lam(G, a, b) == 0 for a in u for b in v)

    adj = {i: {j for j in range(len(V)) if j != i and orth(V[i], V[j])} for i in range(len(V))}
    counts = [len(V)]
    layer = [(i,) for i in range(len(V))]
    while layer:
        nxt = [c + (j,) for c in layer for j in adj[c[-1]] if j > c[-1] and all(j in adj[k] for k in c)]
        if nxt:
            counts.append(len(nxt))
        layer = nxt
    return counts


def count_monomials(degrees, d):
    """Number of exponent vectors with sum k_i deg_i == d."""
    if not degrees:
        return 1 if d == 0 else 0
    first, rest = degrees[0], degrees[1:]
    return sum(count_monomials(rest, d - k * first) for k in range(d // first + 1))


def char_class_degrees(n):
    return [2 * n] + [4 * i for i in range(1, n) if 4 * i > n]
