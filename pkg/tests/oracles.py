"""Brute-force reference computations, written without calling the library's algorithms.

They only read raw tables and index conventions, so a bug in the library
cannot leak into the expected values.
"""

import itertools


def table_lookup(table, size, args):
    off = 0
    for x in args:
        off = off * size + x
    return table[off]


def subgroups(add, size):
    """All subsets containing 0 closed under the binary table ``add``.

    In a finite group closure under the product already makes a subgroup.
    """
    out = []
    for r in range(1, size + 1):
        for subset in itertools.combinations(range(size), r):
            if 0 not in subset:
                continue
            s = set(subset)
            if all(add[a * size + b] in s for a in s for b in s):
                out.append(frozenset(s))
    return out


def fixture_arrow(m, k, x, c, y):
    """Index of the arrow x -> y labelled c in the m-object fixture over a k-element group."""
    return (x * m + y) * k + c


def right_cosets(m, add, k, subgroup):
    """Right cosets C∘g inside the star of object 0 of the m-object fixture.

    ``(0, s, 0)∘(0, c, y) = (0, s + c, y)``, so each coset is fixed by the
    target y and the group coset C + c.
    """
    cosets = set()
    for y in range(m):
        for c in range(k):
            members = frozenset(fixture_arrow(m, k, 0, add[s * k + c], y) for s in subgroup)
            cosets.add(members)
    return cosets


def semi_abelian_holds(alpha, theta, size):
    for x in range(size):
        if alpha[x * size + x] != 0:
            return False
    for x in range(size):
        for y in range(size):
            if theta[alpha[x * size + y] * size + y] != x:
                return False
    return True


def loop_images(src, tgt, arr_map, x):
    """Images of the loops at x; for a covering this is the characteristic group."""
    return {arr_map[a] for a in range(len(arr_map)) if src[a] == x and tgt[a] == x}


def count_linear_maps(exponent, k):
    """Size of the k-ary clone of an abelian group of the given exponent: maps sum(a_i x_i)."""
    return exponent ** k


def interchange_holds(n_arrows, comp, table, arity):
    """Defined left side implies defined, equal right side, by raw loops over all pairs."""
    def op(args):
        return table_lookup(table, n_arrows, args)

    pairs = list(comp)
    for chosen in itertools.product(pairs, repeat=arity):
        gs = [g for g, _ in chosen]
        hs = [h for _, h in chosen]
        lhs = op([comp[p] for p in chosen])
        rhs = comp.get((op(gs), op(hs)))
        if rhs is None or rhs != lhs:
            return False
    return True


def pointwise_group_closure(mul, size, gens):
    """Semigroup generated by tuples ``gens`` under the pointwise product.

    Breadth-first over right multiplication by a generator; in a finite
    group this is the generated subgroup.
    """
    found = set(gens)
    frontier = list(gens)
    while frontier:
        new = []
        for f in frontier:
            for g in gens:
                h = tuple(mul[a * size + b] for a, b in zip(f, g))
                if h not in found:
                    found.add(h)
                    new.append(h)
        frontier = new
    return found
