"""Ring generators and monomial-ideal oracles shared by the test modules."""

import itertools

from artifact.algebra import QQ, field_from_name, make_presentation, monomials_of_degree

F = field_from_name("F32003")


def random_form(rng, names, d):
    pool = monomials_of_degree(len(names), d)
    ms = rng.sample(pool, min(len(pool), 1 + rng.randrange(2)))
    return " + ".join(f"{rng.randint(1, 32002)}*" + "*".join(
        f"{v}^{e}" for v, e in zip(names, m) if e) for m in ms)


def random_ring(rng):
    """Powers of every variable plus up to two random forms of degree 2 or 3."""
    n = rng.randint(1, 3)
    names = ["x", "y", "z"][:n]
    gens = [f"{v}^{rng.randint(2, 4)}" for v in names]
    gens += [random_form(rng, names, rng.randint(2, 3)) for _ in range(rng.randint(0, 2))]
    return make_presentation(F, names, gens)


# monomial ideals, handled by hand so the package is not its own oracle

NAMES = ["x", "y", "z"]


def divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def in_monomial_ideal(m, gens):
    return any(divides(g, m) for g in gens)


def monomial_dim(gens, n):
    """Largest set of variables supporting no generator."""
    best = 0
    for k in range(n + 1):
        for T in itertools.combinations(range(n), k):
            if not any(all(g[i] == 0 or i in T for i in range(n)) for g in gens):
                best = max(best, k)
    return best


def monomial_depth_positive(gens, n):
    """(I : n) == I, with colons and intersections of monomial ideals by hand."""
    colons = []
    for i in range(n):
        colons.append([tuple(max(e - (1 if j == i else 0), 0) for j, e in enumerate(g))
                       for g in gens])
    inter = [tuple(max(col) for col in zip(*choice)) for choice in itertools.product(*colons)]
    return all(in_monomial_ideal(m, gens) for m in inter)


def mono_str(m):
    return "*".join(f"{NAMES[i]}^{e}" for i, e in enumerate(m) if e)


def enumerate_g_stretched_dim1():
    """Monomial ideals I in n^2 (n <= 3 variables, generated in degree <= 3)
    with S/I one-dimensional and mu(m^2) <= 1."""
    out = set()
    for n in (1, 2, 3):
        quad = monomials_of_degree(n, 2)
        cubic = monomials_of_degree(n, 3)
        # at most one quadratic monomial may survive
        for skip in [None] + quad:
            I2 = [q for q in quad if q != skip]
            free3 = [c for c in cubic if not in_monomial_ideal(c, I2)]
            for k in range(len(free3) + 1):
                for extra in itertools.combinations(free3, k):
                    gens = tuple(sorted(I2 + list(extra)))
                    if monomial_dim(gens, n) == 1:
                        out.add((n, gens))
    return sorted(out)


def monomial_ring(n, gens):
    return make_presentation(QQ, NAMES[:n], [mono_str(g) for g in gens])
