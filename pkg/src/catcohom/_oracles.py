"""Independent reference computations used by the verification suite.

These build their matrices directly from multiplication tables or strict
chains, without touching the nerve/coefficient machinery, so agreement with
the main pipeline is a genuine two-route check.
"""
from __future__ import annotations

from itertools import product as iproduct

from .exactalg import (
    CHAIN,
    COCHAIN,
    HomologyGroup,
    IntComplex,
    Matrix,
    complex_homology,
)
from .fincat import FinCat


def _monoid_table(C: FinCat):
    """Multiplication table of a one-object category."""
    assert C.n_objects == 1
    n = C.n_morphisms
    return n, [[C.table[g][f] for f in range(n)] for g in range(n)]


def bar_cochain_groups(C: FinCat, action: list[Matrix], rank: int,
                       degrees: int, ring: str = "Z") -> list[HomologyGroup]:
    """Monoid cohomology via the inhomogeneous bar complex.

    ``action[g]`` is the matrix of g acting on the coefficient module
    (identity matrices give trivial coefficients).  C^n = maps from n-tuples
    of elements to the module; the differential is

        (dc)(g_1,...,g_{n+1}) = g_1 · c(g_2,...,g_{n+1})
            + sum_i (-1)^i c(g_1,...,g_i g_{i+1},...,g_{n+1})
            + (-1)^{n+1} c(g_1,...,g_n).
    """
    n_el, mul = _monoid_table(C)
    tuples = [list(iproduct(range(n_el), repeat=k)) for k in range(degrees + 2)]
    index = [{t: i for i, t in enumerate(ts)} for ts in tuples]
    dims = [len(ts) * rank for ts in tuples]
    diffs = []
    for n in range(degrees + 1):
        rows = dims[n + 1]
        cols = dims[n]
        data = [[0] * cols for _ in range(rows)]

        def add_block(ri, ci, M, sign):
            for a in range(rank):
                for b in range(rank):
                    data[ri * rank + a][ci * rank + b] += sign * M.data[a][b]

        eye = Matrix.identity(rank, ring)
        for ri, g in enumerate(tuples[n + 1]):
            ci = index[n][g[1:]]
            add_block(ri, ci, action[g[0]], 1)
            for i in range(1, n + 1):
                merged = g[:i - 1] + (mul[g[i - 1]][g[i]],) + g[i + 1:]
                add_block(ri, index[n][merged], eye, -1 if i % 2 else 1)
            add_block(ri, index[n][g[:-1]], eye, -1 if (n + 1) % 2 else 1)
        diffs.append(Matrix(ring, rows, cols, data))
    K = IntComplex(ring, COCHAIN, tuple(dims), tuple(diffs))
    return [complex_homology(K, n) for n in range(degrees + 1)]


def bar_chain_groups(C: FinCat, action: list[Matrix], rank: int,
                     degrees: int, ring: str = "Z") -> list[HomologyGroup]:
    """Monoid homology via the bar complex; ``action`` as above but acting
    on the right of the coefficient module (reversed matrices)."""
    n_el, mul = _monoid_table(C)
    tuples = [list(iproduct(range(n_el), repeat=k)) for k in range(degrees + 2)]
    index = [{t: i for i, t in enumerate(ts)} for ts in tuples]
    dims = [len(ts) * rank for ts in tuples]
    diffs = []
    for n in range(degrees + 1):
        rows = dims[n]
        cols = dims[n + 1]
        data = [[0] * cols for _ in range(rows)]

        def add_block(ri, ci, M, sign):
            for a in range(rank):
                for b in range(rank):
                    data[ri * rank + a][ci * rank + b] += sign * M.data[a][b]

        eye = Matrix.identity(rank, ring)
        for ci, g in enumerate(tuples[n + 1]):
            add_block(index[n][g[1:]], ci, action[g[0]], 1)
            for i in range(1, n + 1):
                merged = g[:i - 1] + (mul[g[i - 1]][g[i]],) + g[i + 1:]
                add_block(index[n][merged], ci, eye, -1 if i % 2 else 1)
            add_block(index[n][g[:-1]], ci, eye, -1 if (n + 1) % 2 else 1)
        diffs.append(Matrix(ring, rows, cols, data))
    K = IntComplex(ring, CHAIN, tuple(dims), tuple(diffs))
    return [complex_homology(K, n) for n in range(degrees + 1)]


def _strict_chains(C: FinCat, length: int):
    """Strictly increasing chains x_0 < x_1 < ... < x_length of a poset
    category, as object tuples."""
    strictly_below = {}
    for m in range(C.n_morphisms):
        if not C.is_identity(m):
            strictly_below.setdefault(C.mor_src[m], []).append(C.mor_dst[m])
    chains = [[(x,) for x in range(C.n_objects)]]
    for _ in range(length):
        nxt = []
        for ch in chains[-1]:
            for y in sorted(strictly_below.get(ch[-1], [])):
                nxt.append(ch + (y,))
        chains.append(nxt)
    return chains


def order_complex_groups(C: FinCat, degrees: int, ring: str = "Z",
                         cochain: bool = True,
                         edge_signs=None) -> list[HomologyGroup]:
    """Simplicial (co)homology of the order complex of a poset category.

    Simplices are strictly increasing chains; the boundary deletes one
    vertex at a time with alternating signs.  ``edge_signs`` optionally
    twists rank-one coefficients: a map from object pairs (x, y) with x < y
    to a unit, composed multiplicatively over deleted intervals.
    """
    chains = _strict_chains(C, degrees + 1)
    index = [{c: i for i, c in enumerate(cs)} for cs in chains]
    dims = [len(cs) for cs in chains]

    def weight(x, y):
        if edge_signs is None or x == y:
            return 1
        return edge_signs[(x, y)]

    bnds = []
    for n in range(degrees + 1):
        rows = dims[n]
        cols = dims[n + 1]
        data = [[0] * cols for _ in range(rows)]
        for ci, ch in enumerate(chains[n + 1]):
            for i in range(n + 2):
                face = ch[:i] + ch[i + 1:]
                w = 1
                if i == 0:
                    w = weight(ch[0], ch[1])
                elif i == n + 1:
                    w = 1
                data[index[n][face]][ci] += (-1 if i % 2 else 1) * w
        bnds.append(Matrix(ring, rows, cols, data))
    if cochain:
        diffs = tuple(b.transpose() for b in bnds)
        K = IntComplex(ring, COCHAIN, tuple(dims), diffs)
    else:
        K = IntComplex(ring, CHAIN, tuple(dims), tuple(bnds))
    return [complex_homology(K, n) for n in range(degrees + 1)]
