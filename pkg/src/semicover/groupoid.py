"""Finite groupoids, their morphisms, covering morphisms and coset spaces.

Composition is diagrammatic: ``g∘h`` exists when ``tgt[g] == src[h]`` and
runs from ``src[g]`` to ``tgt[h]``.  The partial composition is stored
sparsely as a dict keyed by arrow pairs.
"""

from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .algebra import FiniteAlgebra
from .errors import NotAGroup, NotASubgroup, NotTransitive
from .report import Check, Violation


@dataclass(frozen=True, eq=True)
class FiniteGroupoid:
    n_objects: int
    n_arrows: int
    src: tuple[int, ...]
    tgt: tuple[int, ...]
    id: tuple[int, ...]
    inv: tuple[int, ...]
    comp: Mapping[tuple[int, int], int] = field(hash=False)

    def __post_init__(self):
        for name in ("src", "tgt", "id", "inv"):
            object.__setattr__(self, name, tuple(int(v) for v in getattr(self, name)))
        object.__setattr__(self, "comp", {(int(g), int(h)): int(gh) for (g, h), gh in self.comp.items()})

    def compose(self, g: int, h: int) -> int | None:
        """``g∘h`` or ``None`` when not composable."""
        return self.comp.get((g, h))

    @cached_property
    def _stars(self) -> tuple[tuple[int, ...], ...]:
        stars = [[] for _ in range(self.n_objects)]
        for g, x in enumerate(self.src):
            stars[x].append(g)
        return tuple(tuple(s) for s in stars)

    @cached_property
    def _costars(self) -> tuple[tuple[int, ...], ...]:
        costars = [[] for _ in range(self.n_objects)]
        for g, y in enumerate(self.tgt):
            costars[y].append(g)
        return tuple(tuple(s) for s in costars)

    def star_arrows(self, x: int) -> tuple[int, ...]:
        return self._stars[x]

    def arrows_into(self, y: int) -> tuple[int, ...]:
        return self._costars[y]

    def hom(self, x: int, y: int) -> tuple[int, ...]:
        return tuple(g for g in self._stars[x] if self.tgt[g] == y)

    def composable_pairs(self) -> Iterator[tuple[int, int]]:
        """All ``(g, h)`` with ``tgt[g] == src[h]``, in index order."""
        for g in range(self.n_arrows):
            for h in self._stars[self.tgt[g]]:
                yield g, h

    def is_identity(self, g: int) -> bool:
        return self.id[self.src[g]] == g


@dataclass(frozen=True)
class Star:
    base: int
    arrows: tuple[int, ...]


@dataclass(frozen=True)
class ObjectGroup:
    base: int
    arrows: tuple[int, ...]
    table: Mapping[tuple[int, int], int] = field(hash=False)


def validate_groupoid(g: FiniteGroupoid) -> list[Violation]:
    out = []
    n, m = g.n_objects, g.n_arrows
    if n < 1 or m < 1:
        return [Violation("size", (), "groupoid needs at least one object and one arrow")]
    for name, arr, length, bound in (("src", g.src, m, n), ("tgt", g.tgt, m, n),
                                     ("id", g.id, n, m), ("inv", g.inv, m, m)):
        if len(arr) != length:
            out.append(Violation("length", (name,), f"{name} has length {len(arr)} != {length}"))
            continue
        for i, v in enumerate(arr):
            if not 0 <= v < bound:
                out.append(Violation("range", (name, i), f"{name}[{i}] = {v} out of range"))
    for (a, b), ab in g.comp.items():
        if not (0 <= a < m and 0 <= b < m and 0 <= ab < m):
            out.append(Violation("range", ("comp", a, b), f"comp entry ({a}, {b}) -> {ab} out of range"))
    if out:
        return out

    for x in range(n):
        if g.src[g.id[x]] != x or g.tgt[g.id[x]] != x:
            out.append(Violation("identity-endpoints", (x,), f"id({x}) is not a loop at {x}"))
    for a, b in g.comp:
        if g.tgt[a] != g.src[b]:
            out.append(Violation("comp-extra", (a, b), f"comp defined on non-composable pair ({a}, {b})"))
    for a, b in g.composable_pairs():
        ab = g.compose(a, b)
        if ab is None:
            out.append(Violation("comp-missing", (a, b), f"composable pair ({a}, {b}) has no composite"))
        elif g.src[ab] != g.src[a] or g.tgt[ab] != g.tgt[b]:
            out.append(Violation("comp-endpoints", (a, b), f"{a}∘{b} = {ab} has wrong endpoints"))
    for a in range(m):
        if g.compose(a, g.id[g.tgt[a]]) != a or g.compose(g.id[g.src[a]], a) != a:
            out.append(Violation("unit", (a,), f"identities do not act as units on {a}"))
        ai = g.inv[a]
        if g.compose(a, ai) != g.id[g.src[a]] or g.compose(ai, a) != g.id[g.tgt[a]]:
            out.append(Violation("inverse", (a,), f"inv({a}) = {ai} is not a two-sided inverse"))
    for a, b in g.composable_pairs():
        ab = g.compose(a, b)
        if ab is None:
            continue
        for c in g.star_arrows(g.tgt[b]):
            bc = g.compose(b, c)
            lhs, rhs = g.compose(ab, c), (g.compose(a, bc) if bc is not None else None)
            if lhs != rhs:
                out.append(Violation("associativity", (a, b, c), f"({a}∘{b})∘{c} != {a}∘({b}∘{c})"))
    return sorted(out)


def star(g: FiniteGroupoid, x: int) -> Star:
    return Star(x, g.star_arrows(x))


def object_group(g: FiniteGroupoid, x: int) -> ObjectGroup:
    loops = g.hom(x, x)
    table = {(a, b): g.compose(a, b) for a in loops for b in loops}
    return ObjectGroup(x, loops, table)


def is_transitive(g: FiniteGroupoid) -> bool:
    reach = {g.tgt[a] for a in g.star_arrows(0)}
    # in a groupoid, reaching every object from one object suffices
    return len(reach) == g.n_objects


def components(g: FiniteGroupoid) -> list[tuple[int, ...]]:
    seen = [False] * g.n_objects
    out = []
    for x in range(g.n_objects):
        if seen[x]:
            continue
        comp = sorted({g.tgt[a] for a in g.star_arrows(x)} | {x})
        for y in comp:
            seen[y] = True
        out.append(tuple(comp))
    return out


# -- morphisms ---------------------------------------------------------------

@dataclass(frozen=True)
class GroupoidMorphism:
    dom: FiniteGroupoid
    cod: FiniteGroupoid
    obj_map: tuple[int, ...]
    arr_map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "obj_map", tuple(int(v) for v in self.obj_map))
        object.__setattr__(self, "arr_map", tuple(int(v) for v in self.arr_map))

    def then(self, other: "GroupoidMorphism") -> "GroupoidMorphism":
        """Apply ``self`` first, then ``other``."""
        return GroupoidMorphism(
            self.dom, other.cod,
            tuple(other.obj_map[x] for x in self.obj_map),
            tuple(other.arr_map[a] for a in self.arr_map),
        )


def identity_morphism(g: FiniteGroupoid) -> GroupoidMorphism:
    return GroupoidMorphism(g, g, tuple(range(g.n_objects)), tuple(range(g.n_arrows)))


def validate_morphism(p: GroupoidMorphism) -> list[Violation]:
    h, g = p.dom, p.cod
    fo, fa = p.obj_map, p.arr_map
    if len(fo) != h.n_objects or len(fa) != h.n_arrows:
        return [Violation("length", (), "morphism maps have the wrong length")]
    if any(not 0 <= v < g.n_objects for v in fo) or any(not 0 <= v < g.n_arrows for v in fa):
        return [Violation("range", (), "morphism maps leave the codomain")]
    out = []
    for a in range(h.n_arrows):
        if g.src[fa[a]] != fo[h.src[a]] or g.tgt[fa[a]] != fo[h.tgt[a]]:
            out.append(Violation("morphism-endpoints", (a,), f"arrow {a} endpoints not preserved"))
        if fa[h.inv[a]] != g.inv[fa[a]]:
            out.append(Violation("morphism-inverse", (a,), f"inverse of {a} not preserved"))
    for x in range(h.n_objects):
        if fa[h.id[x]] != g.id[fo[x]]:
            out.append(Violation("morphism-identity", (x,), f"identity at {x} not preserved"))
    for (a, b), ab in h.comp.items():
        if g.compose(fa[a], fa[b]) != fa[ab]:
            out.append(Violation("morphism-composition", (a, b), f"composite {a}∘{b} not preserved"))
    return sorted(out)


def check_covering(p: GroupoidMorphism) -> Check:
    """Bijective on every star?  Counterexample is the first failing object of ``p.dom``."""
    h, g = p.dom, p.cod
    for x in range(h.n_objects):
        image = sorted(p.arr_map[a] for a in h.star_arrows(x))
        if image != list(g.star_arrows(p.obj_map[x])):
            return Check(False, x)
    return Check(True)


def characteristic_group(p: GroupoidMorphism, x: int) -> tuple[int, ...]:
    return tuple(sorted({p.arr_map[a] for a in p.dom.hom(x, x)}))


# -- subgroups and cosets ----------------------------------------------------

def check_subgroup(g: FiniteGroupoid, x: int, arrows: Iterable[int]) -> frozenset:
    """Validate ``arrows`` as a subgroup of the object group at ``x``.

    Raises :class:`NotASubgroup` whose ``witness`` names the failure:
    ``("not-a-loop", a)``, ``("missing-identity", id)``,
    ``("composition", a, b)`` or ``("inverse", a)``.
    """
    c = frozenset(int(a) for a in arrows)
    for a in sorted(c):
        if not 0 <= a < g.n_arrows or g.src[a] != x or g.tgt[a] != x:
            raise NotASubgroup(f"arrow {a} is not a loop at object {x}", ("not-a-loop", a))
    if g.id[x] not in c:
        raise NotASubgroup(f"identity arrow {g.id[x]} missing", ("missing-identity", g.id[x]))
    for a in sorted(c):
        for b in sorted(c):
            if g.compose(a, b) not in c:
                raise NotASubgroup(f"{a}∘{b} leaves the subset", ("composition", a, b))
        if g.inv[a] not in c:
            raise NotASubgroup(f"inverse of {a} leaves the subset", ("inverse", a))
    return c


@dataclass(frozen=True)
class CosetSpace:
    groupoid: FiniteGroupoid
    base: int
    subgroup: tuple[int, ...]
    cosets: tuple[tuple[int, ...], ...]
    anchor: tuple[int, ...]

    @cached_property
    def _index(self) -> dict:
        return {a: i for i, coset in enumerate(self.cosets) for a in coset}

    def coset_of(self, arrow: int) -> int:
        return self._index[arrow]

    def __len__(self) -> int:
        return len(self.cosets)


def coset_space(g: FiniteGroupoid, x: int, subgroup: Iterable[int]) -> CosetSpace:
    """Right cosets ``C∘a`` of a subgroup of ``G(x)`` inside the star of ``x``.

    Cosets are ordered by their smallest arrow; ``anchor[i]`` is the common
    target of the arrows in coset ``i``.
    """
    if not is_transitive(g):
        raise NotTransitive("coset spaces need a transitive groupoid")
    c = check_subgroup(g, x, subgroup)
    seen = set()
    cosets = []
    for a in g.star_arrows(x):
        if a in seen:
            continue
        coset = tuple(sorted({g.compose(k, a) for k in c}))
        seen.update(coset)
        cosets.append(coset)
    cosets.sort(key=lambda s: s[0])
    anchor = []
    for coset in cosets:
        targets = {g.tgt[a] for a in coset}
        if len(targets) != 1:
            raise NotASubgroup(f"coset {coset} spans several targets")
        anchor.append(targets.pop())
    return CosetSpace(g, x, tuple(sorted(c)), tuple(cosets), tuple(anchor))


# -- lifting and universal-cover search ---------------------------------------

def star_lifts(q: GroupoidMorphism) -> dict:
    """``(object of q.dom, arrow of q.cod) -> lifted arrow`` for star-injective ``q``."""
    lifts = {}
    for k in range(q.dom.n_objects):
        for a in q.dom.star_arrows(k):
            lifts.setdefault((k, q.arr_map[a]), a)
    return lifts


def iter_cover_morphisms(p: GroupoidMorphism, q: GroupoidMorphism,
                         base: tuple[int, int] | None = None) -> Iterator[GroupoidMorphism]:
    """Every ``r: p.dom -> q.dom`` with ``r`` then ``q`` equal to ``p``.

    Once an object of a connected component is placed, star lifting forces
    the rest of the component, so the search only branches on one anchor
    object per component (the smallest, or ``base[0]`` mapped to ``base[1]``).
    """
    h, k = p.dom, q.dom
    lifts = star_lifts(q)
    comps = components(h)

    def anchors(comp):
        if base is not None and base[0] in comp:
            return base[0], [base[1]] if q.obj_map[base[1]] == p.obj_map[base[0]] else []
        root = comp[0]
        return root, [y for y in range(k.n_objects) if q.obj_map[y] == p.obj_map[root]]

    def place(root, target, obj, arr):
        obj = dict(obj)
        arr = dict(arr)
        obj[root] = target
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for a in h.star_arrows(x):
                lifted = lifts.get((obj[x], p.arr_map[a]))
                if lifted is None:
                    return None
                arr[a] = lifted
                y, ky = h.tgt[a], k.tgt[lifted]
                if y in obj:
                    if obj[y] != ky:
                        return None
                else:
                    obj[y] = ky
                    queue.append(y)
        return obj, arr

    def search(i, obj, arr):
        if i == len(comps):
            r = GroupoidMorphism(h, k, tuple(obj[x] for x in range(h.n_objects)),
                                 tuple(arr[a] for a in range(h.n_arrows)))
            if not validate_morphism(r) and r.then(q).arr_map == p.arr_map and r.then(q).obj_map == p.obj_map:
                yield r
            return
        root, targets = anchors(comps[i])
        for target in targets:
            placed = place(root, target, obj, arr)
            if placed is not None:
                yield from search(i + 1, *placed)

    yield from search(0, {}, {})


def find_cover_morphism(p: GroupoidMorphism, q: GroupoidMorphism,
                        base: tuple[int, int] | None = None) -> GroupoidMorphism | None:
    return next(iter_cover_morphisms(p, q, base), None)


def is_isomorphism(r: GroupoidMorphism) -> bool:
    return (sorted(r.obj_map) == list(range(r.cod.n_objects))
            and sorted(r.arr_map) == list(range(r.cod.n_arrows)))


# -- constructors ---------------------------------------------------------------

def group_law(k: FiniteAlgebra, op: str | None = None) -> str:
    if op is not None:
        return op
    w = k.sig.witness
    if w is not None and w.n == 1:
        return w.theta
    for name, arity in k.sig.ops:
        if arity == 2:
            return name
    raise NotAGroup("algebra has no binary operation")


def check_group(k: FiniteAlgebra, op: str | None = None) -> list[int]:
    """Return the inverse table of ``op`` or raise :class:`NotAGroup`."""
    op = group_law(k, op)
    n, e = k.size, k.e_index
    mul = k.tables[op]
    for a, b, c in itertools.product(range(n), repeat=3):
        if mul[mul[a * n + b] * n + c] != mul[a * n + mul[b * n + c]]:
            raise NotAGroup(f"{op} is not associative at ({a}, {b}, {c})")
    for a in range(n):
        if mul[a * n + e] != a or mul[e * n + a] != a:
            raise NotAGroup(f"constant is not a two-sided identity for {a}")
    inverses = []
    for a in range(n):
        inv = [b for b in range(n) if mul[a * n + b] == e]
        if not inv or mul[inv[0] * n + a] != e:
            raise NotAGroup(f"{a} has no inverse")
        inverses.append(inv[0])
    return inverses


def make_transitive_fixture(m: int, k: FiniteAlgebra, op: str | None = None) -> FiniteGroupoid:
    """Objects ``0..m-1``, arrows ``(x, c, y)`` for ``c`` in the group ``k``.

    Arrow ``(x, c, y)`` has index ``(x*m + y)*|k| + c`` and
    ``(x, c, y)∘(y, d, z) = (x, c·d, z)``.
    """
    if m < 1:
        raise ValueError("need at least one object")
    inverses = check_group(k, op)
    mul = k.tables[group_law(k, op)]
    nk, e = k.size, k.e_index

    def arrow(x, c, y):
        return (x * m + y) * nk + c

    src, tgt, inv = [], [], []
    for x, y, c in itertools.product(range(m), range(m), range(nk)):
        src.append(x)
        tgt.append(y)
        inv.append(arrow(y, inverses[c], x))
    comp = {}
    for x, y, z in itertools.product(range(m), repeat=3):
        for c, d in itertools.product(range(nk), repeat=2):
            comp[arrow(x, c, y), arrow(y, d, z)] = arrow(x, mul[c * nk + d], z)
    ids = [arrow(x, e, x) for x in range(m)]
    return FiniteGroupoid(m, m * m * nk, src, tgt, ids, inv, comp)


def pair_groupoid(n: int) -> FiniteGroupoid:
    """Arrow ``(a, b)`` at index ``a*n + b``."""
    src = [a for a in range(n) for _ in range(n)]
    tgt = [b for _ in range(n) for b in range(n)]
    comp = {(a * n + b, b * n + c): a * n + c for a in range(n) for b in range(n) for c in range(n)}
    return FiniteGroupoid(n, n * n, src, tgt, [a * n + a for a in range(n)],
                          [b * n + a for a in range(n) for b in range(n)], comp)


def discrete_groupoid(n: int) -> FiniteGroupoid:
    r = list(range(n))
    return FiniteGroupoid(n, n, r, r, r, r, {(x, x): x for x in r})


def disjoint_union(a: FiniteGroupoid, b: FiniteGroupoid) -> FiniteGroupoid:
    no, na = a.n_objects, a.n_arrows
    comp = dict(a.comp)
    comp.update({(g + na, h + na): gh + na for (g, h), gh in b.comp.items()})
    return FiniteGroupoid(
        no + b.n_objects, na + b.n_arrows,
        a.src + tuple(x + no for x in b.src), a.tgt + tuple(x + no for x in b.tgt),
        a.id + tuple(g + na for g in b.id), a.inv + tuple(g + na for g in b.inv), comp,
    )


def relabel(g: FiniteGroupoid, obj_perm: Sequence[int], arr_perm: Sequence[int]) -> tuple[FiniteGroupoid, GroupoidMorphism]:
    """Rename object ``x`` to ``obj_perm[x]`` and arrow ``a`` to ``arr_perm[a]``.

    Returns the renamed groupoid and the isomorphism from it back to ``g``.
    """
    oinv = [0] * len(obj_perm)
    for x, y in enumerate(obj_perm):
        oinv[y] = x
    ainv = [0] * len(arr_perm)
    for a, b in enumerate(arr_perm):
        ainv[b] = a
    new = FiniteGroupoid(
        g.n_objects, g.n_arrows,
        [obj_perm[g.src[ainv[b]]] for b in range(g.n_arrows)],
        [obj_perm[g.tgt[ainv[b]]] for b in range(g.n_arrows)],
        [arr_perm[g.id[oinv[y]]] for y in range(g.n_objects)],
        [arr_perm[g.inv[ainv[b]]] for b in range(g.n_arrows)],
        {(arr_perm[a], arr_perm[b]): arr_perm[ab] for (a, b), ab in g.comp.items()},
    )
    return new, GroupoidMorphism(new, g, oinv, ainv)
