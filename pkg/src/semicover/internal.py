"""Internal groupoids in the category of algebras over one signature.

An :class:`InternalGroupoid` is a finite groupoid whose arrow set and object
set both carry an algebra, with source, target, identity, inverse and the
partial composition all homomorphisms.  For composition this is the
interchange law ``τ(g1∘h1, ..., gn∘hn) = τ(g1, ..., gn)∘τ(h1, ..., hn)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .algebra import FiniteAlgebra, Subalgebra, check_closed, product_algebra, require_same_signature
from .errors import ClosureViolation
from .fixtures import trivial_algebra
from .groupoid import FiniteGroupoid, discrete_groupoid, make_transitive_fixture, pair_groupoid
from .report import Check, Violation


@dataclass(frozen=True)
class InternalGroupoid:
    gpd: FiniteGroupoid
    arrow_alg: FiniteAlgebra
    object_alg: FiniteAlgebra

    def __post_init__(self):
        require_same_signature(self.arrow_alg, self.object_alg)
        if self.arrow_alg.size != self.gpd.n_arrows:
            raise ValueError(f"arrow algebra has {self.arrow_alg.size} elements, groupoid has {self.gpd.n_arrows} arrows")
        if self.object_alg.size != self.gpd.n_objects:
            raise ValueError(f"object algebra has {self.object_alg.size} elements, groupoid has {self.gpd.n_objects} objects")

    @property
    def sig(self):
        return self.arrow_alg.sig

    @property
    def e_object(self) -> int:
        return self.object_alg.e_index


def _cube(alg: FiniteAlgebra, name: str) -> np.ndarray:
    arity = alg.sig.arity(name)
    return np.asarray(alg.tables[name], dtype=np.int64).reshape((alg.size,) * arity)


def map_failures(kind: str, dom: FiniteAlgebra, cod: FiniteAlgebra, f) -> list[Violation]:
    """Every ``(op, args)`` where ``f(τ(args)) != τ(f(args))``."""
    f = np.asarray(f, dtype=np.int64)
    out = []
    for name, arity in dom.sig.ops:
        lhs = f[_cube(dom, name)]
        rhs = _cube(cod, name)[np.ix_(*([f] * arity))] if arity else _cube(cod, name)
        for pos in np.argwhere(lhs != rhs):
            args = tuple(int(v) for v in pos)
            out.append(Violation(kind, (name, args), f"{kind} fails for {name}{args}"))
    return out


def _comp_matrix(g: FiniteGroupoid) -> np.ndarray:
    mat = np.full((g.n_arrows, g.n_arrows), -1, dtype=np.int64)
    for (a, b), ab in g.comp.items():
        mat[a, b] = ab
    return mat


def tuple_offsets(values: np.ndarray, n: int, base: int) -> np.ndarray:
    """Offsets of ``τ(values[i1], ..., values[in])`` over all index tuples, as an n-dim grid."""
    p = len(values)
    off = np.zeros((p,) * n, dtype=np.int64)
    for j in range(n):
        shape = [1] * n
        shape[j] = p
        off = off * base + values.reshape(shape)
    return off


def interchange_failures(ig: InternalGroupoid) -> list[Violation]:
    """Interchange over all tuples of composable pairs.

    Both sides are evaluated: a defined left side whose right side is
    undefined is reported as ``interchange-undefined``, unequal sides as
    ``interchange``.
    """
    g, alg = ig.gpd, ig.arrow_alg
    pairs = np.asarray(list(g.composable_pairs()), dtype=np.int64).reshape(-1, 2)
    gs, hs = pairs[:, 0], pairs[:, 1]
    comp = _comp_matrix(g)
    ghs = comp[gs, hs]
    out = []
    for name, n in alg.sig.ops:
        table = np.asarray(alg.tables[name], dtype=np.int64)
        lhs = table[tuple_offsets(ghs, n, g.n_arrows)]
        tg = table[tuple_offsets(gs, n, g.n_arrows)]
        th = table[tuple_offsets(hs, n, g.n_arrows)]
        rhs = comp[tg, th]
        for pos in np.argwhere(rhs < 0):
            idx = tuple(int(i) for i in pos)
            loc = (name, tuple(int(gs[i]) for i in idx), tuple(int(hs[i]) for i in idx))
            out.append(Violation("interchange-undefined", loc,
                                 f"{name}(g)∘{name}(h) undefined although every g_i∘h_i is"))
        for pos in np.argwhere((rhs >= 0) & (lhs != rhs)):
            idx = tuple(int(i) for i in pos)
            loc = (name, tuple(int(gs[i]) for i in idx), tuple(int(hs[i]) for i in idx))
            out.append(Violation("interchange", loc,
                                 f"{name}(g∘h) = {int(lhs[tuple(pos)])} "
                                 f"!= {int(rhs[tuple(pos)])} = {name}(g)∘{name}(h)"))
    return out


def interchange_converse_failures(ig: InternalGroupoid) -> list[Violation]:
    """Tuples where ``τ(g)∘τ(h)`` is defined but some ``g_i∘h_i`` is not.

    Not a requirement of internal groupoids (the pair groupoid on Z/2
    already has such tuples); kept as a diagnostic.
    """
    g, alg = ig.gpd, ig.arrow_alg
    out = []
    for name, n in alg.sig.ops:
        if n == 0:
            continue
        for gv in itertools.product(range(g.n_arrows), repeat=n):
            tg = alg.apply(name, gv)
            for hv in itertools.product(range(g.n_arrows), repeat=n):
                if g.compose(tg, alg.apply(name, hv)) is None:
                    continue
                if any(g.compose(a, b) is None for a, b in zip(gv, hv)):
                    out.append(Violation("interchange-converse", (name, gv, hv),
                                         f"{name}(g)∘{name}(h) defined but some g_i∘h_i is not"))
    return out


def check_internal(ig: InternalGroupoid, strict_converse: bool = False) -> list[Violation]:
    """Exhaustive report; empty means ``ig`` is an internal groupoid."""
    g = ig.gpd
    out = []
    out += map_failures("hom-src", ig.arrow_alg, ig.object_alg, g.src)
    out += map_failures("hom-tgt", ig.arrow_alg, ig.object_alg, g.tgt)
    out += map_failures("hom-id", ig.object_alg, ig.arrow_alg, g.id)
    out += map_failures("hom-inv", ig.arrow_alg, ig.arrow_alg, g.inv)
    e = ig.object_alg.e_index
    if ig.arrow_alg.e_index != g.id[e]:
        out.append(Violation("constant", (e,), f"constant arrow {ig.arrow_alg.e_index} is not id({e}) = {g.id[e]}"))
    out += interchange_failures(ig)
    if strict_converse:
        out += interchange_converse_failures(ig)
    return sorted(out)


def check_inversion_identity(ig: InternalGroupoid) -> Check:
    """``inv(τ(g1..gn)) == τ(inv g1, ..., inv gn)``; counterexample ``(op, args)``."""
    alg, inv = ig.arrow_alg, ig.gpd.inv
    for name, arity in alg.sig.ops:
        for args in alg.tuples(arity):
            if inv[alg.apply(name, args)] != alg.apply(name, [inv[a] for a in args]):
                return Check(False, (name, args))
    return Check(True)


def check_identity_arrows(ig: InternalGroupoid) -> Check:
    """``id(τ(x1..xn)) == τ(id x1, ..., id xn)``; counterexample ``(op, args)``."""
    obj, arr, ident = ig.object_alg, ig.arrow_alg, ig.gpd.id
    for name, arity in obj.sig.ops:
        for args in obj.tuples(arity):
            if ident[obj.apply(name, args)] != arr.apply(name, [ident[x] for x in args]):
                return Check(False, (name, args))
    return Check(True)


# -- constructors ---------------------------------------------------------------

def pair_internal(a: FiniteAlgebra) -> InternalGroupoid:
    """Pair groupoid on the carrier; arrow ``(x, y)`` has index ``x*N + y``."""
    return InternalGroupoid(pair_groupoid(a.size), product_algebra(a, a), a)


def discrete_internal(a: FiniteAlgebra) -> InternalGroupoid:
    return InternalGroupoid(discrete_groupoid(a.size), a, a)


def one_object_internal(k: FiniteAlgebra, op: str | None = None) -> InternalGroupoid:
    """The group ``k`` as a one-object groupoid composed by ``op``."""
    return InternalGroupoid(make_transitive_fixture(1, k, op), k, trivial_algebra(k.sig))


def product_internal(a: InternalGroupoid, b: InternalGroupoid) -> InternalGroupoid:
    """Componentwise product; index ``(u, v) -> u * |b| + v`` on objects and arrows."""
    ga, gb = a.gpd, b.gpd
    no, na = gb.n_objects, gb.n_arrows
    src, tgt, inv = [], [], []
    for u, v in itertools.product(range(ga.n_arrows), range(na)):
        src.append(ga.src[u] * no + gb.src[v])
        tgt.append(ga.tgt[u] * no + gb.tgt[v])
        inv.append(ga.inv[u] * na + gb.inv[v])
    ids = [ga.id[x] * na + gb.id[y] for x, y in itertools.product(range(ga.n_objects), range(no))]
    comp = {}
    for (u1, u2), u in ga.comp.items():
        for (v1, v2), v in gb.comp.items():
            comp[u1 * na + v1, u2 * na + v2] = u * na + v
    gpd = FiniteGroupoid(ga.n_objects * no, ga.n_arrows * na, src, tgt, ids, inv, comp)
    return InternalGroupoid(gpd, product_algebra(a.arrow_alg, b.arrow_alg),
                            product_algebra(a.object_alg, b.object_alg))


def transitive_internal(objects: FiniteAlgebra, k: FiniteAlgebra, op: str | None = None) -> InternalGroupoid:
    """Pair groupoid on ``objects`` times the group ``k``.

    The underlying groupoid is exactly ``make_transitive_fixture(objects.size, k)``.
    """
    return product_internal(pair_internal(objects), one_object_internal(k, op))


# -- subalgebras on the star and object group of the constant ------------------

def star_subalgebra(ig: InternalGroupoid) -> Subalgebra:
    members = ig.gpd.star_arrows(ig.e_object)
    verdict = check_closed(ig.arrow_alg, members)
    if not verdict:
        raise ClosureViolation(f"star at the constant object not closed: {verdict.counterexample}")
    return Subalgebra(ig.arrow_alg, members)


def vertex_subalgebra(ig: InternalGroupoid) -> Subalgebra:
    e = ig.e_object
    members = ig.gpd.hom(e, e)
    verdict = check_closed(ig.arrow_alg, members)
    if not verdict:
        raise ClosureViolation(f"object group at the constant object not closed: {verdict.counterexample}")
    return Subalgebra(ig.arrow_alg, members)
