"""Slow, independent reference computations built on sympy.

Nothing here touches the package's Groebner or linear-algebra code: normal
forms come from sympy's groebner, ranks and kernels from sympy matrices.
"""

from __future__ import annotations

from itertools import product as iproduct

import sympy as sp


def quotient_data(gens, names):
    """Monomial basis of k[names]/(gens) (must be artinian) and a function
    giving coordinates of any polynomial in that basis."""
    xs = sp.symbols(names)
    G = sp.groebner([sp.sympify(g) for g in gens], *xs, order="grevlex")
    leads = [sp.Poly(g, *xs).monoms(order="grevlex")[0] for g in G.exprs]
    top = max(max(m) for m in leads) * len(xs) + 1
    basis = []
    for e in iproduct(range(top + 1), repeat=len(xs)):
        if not any(all(a >= b for a, b in zip(e, m)) for m in leads):
            basis.append(e)
    index = {e: i for i, e in enumerate(basis)}

    def coords(f):
        r = G.reduce(sp.expand(f))[1]
        v = [sp.Integer(0)] * len(basis)
        if r == 0:
            return v
        for mono, c in sp.Poly(r, *xs).terms():
            v[index[mono]] = c
        return v

    mono = [sp.Mul(*[x ** k for x, k in zip(xs, e)]) for e in basis]
    return xs, basis, mono, coords


def betti_k(gens, names, N):
    """beta_0..beta_N of the residue field by iterated syzygies.

    A module is a subspace of A^r spanned by columns; beta = dim K/mK and the
    next module is the kernel of A^beta -> K."""
    xs, basis, mono, coords = quotient_data(gens, names)
    d = len(basis)
    # multiplication matrices for the variables
    mult = []
    for x in xs:
        cols = [coords(x * b) for b in mono]
        mult.append(sp.Matrix(d, d, lambda i, j: cols[j][i]))
    mult_basis = []
    for b in mono:
        cols = [coords(b * c) for c in mono]
        mult_basis.append(sp.Matrix(d, d, lambda i, j: cols[j][i]))

    def span(vectors):
        if not vectors:
            return sp.zeros(0, 0)
        M = sp.Matrix.hstack(*vectors)
        return M.columnspace()

    def act(mat, v, r):
        return sp.Matrix.vstack(*[mat * v[k * d:(k + 1) * d, :] for k in range(r)])

    # K_0 = m inside A^1
    r = 1
    K = span([sp.Matrix(coords(x)) for x in xs])
    bettis = [1]
    for _ in range(N):
        if not K:
            bettis.append(0)
            continue
        mK = span([act(mult[i], v, r) for i in range(len(xs)) for v in K])
        # minimal generators: complement of mK in K
        gens_k = []
        cur = list(mK)
        rank = sp.Matrix.hstack(*cur).rank() if cur else 0
        for v in K:
            trial = cur + [v]
            nr = sp.Matrix.hstack(*trial).rank()
            if nr > rank:
                cur, rank = trial, nr
                gens_k.append(v)
        beta = len(gens_k)
        bettis.append(beta)
        # map A^beta -> A^r, basis element (j, b) -> b * gens_k[j]
        images = [act(mult_basis[b], g, r) for g in gens_k for b in range(d)]
        M = sp.Matrix.hstack(*images)
        K = M.nullspace()
        r = beta
    return bettis
