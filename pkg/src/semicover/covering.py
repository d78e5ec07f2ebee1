"""Groupoid actions, semi-direct products and covering morphisms.

An action of ``G`` on a set ``A`` is an anchor ``omega: A -> Ob(G)`` and a
partial map ``phi(a, g) = a·g`` defined exactly when ``omega(a) == src(g)``.
When ``G`` is an internal groupoid and ``A`` an algebra, the action is
algebraic if ``omega`` and ``phi`` are homomorphisms.  The semi-direct
product ``G⋉A`` has objects ``A`` and arrows ``(g, a)`` from ``a`` to ``a·g``;
projecting ``(g, a) -> g`` is a covering morphism.  Every covering of ``G``
arises this way up to isomorphism (``gamma`` and ``phi``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

import numpy as np

from .algebra import FiniteAlgebra, check_closed, check_map_commutes
from .errors import (ActionInvalid, BasePointError, CharacteristicGroupNotSubalgebra, ClosureViolation,
                     InternalConsistencyError, NoEquivalence, NotACovering, NotASubalgebra, NotTransitive,
                     WellDefinednessFailure)
from .groupoid import (CosetSpace, FiniteGroupoid, GroupoidMorphism, characteristic_group, check_covering,
                       coset_space, find_cover_morphism, identity_morphism, is_isomorphism, is_transitive,
                       star_lifts, validate_morphism)
from .internal import InternalGroupoid, check_internal, map_failures, star_subalgebra, tuple_offsets
from .report import Violation

Base = Union[FiniteGroupoid, InternalGroupoid]


def underlying(g: Base) -> FiniteGroupoid:
    return g.gpd if isinstance(g, InternalGroupoid) else g


@dataclass(frozen=True)
class GroupoidAction:
    """``base`` acts on ``0..size-1``; ``algebra`` is set for algebra-level actions."""

    base: Base
    size: int
    omega: tuple[int, ...]
    phi: Mapping[tuple[int, int], int] = field(hash=False)
    algebra: FiniteAlgebra | None = None
    cosets: CosetSpace | None = field(default=None, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "omega", tuple(int(v) for v in self.omega))
        object.__setattr__(self, "phi", {(int(a), int(g)): int(b) for (a, g), b in self.phi.items()})

    @property
    def gpd(self) -> FiniteGroupoid:
        return underlying(self.base)

    @property
    def is_algebraic(self) -> bool:
        return self.algebra is not None

    def act(self, a: int, g: int) -> int | None:
        return self.phi.get((a, g))

    def domain(self):
        """Pairs ``(a, g)`` where ``a·g`` must be defined, in index order."""
        g = self.gpd
        for a in range(self.size):
            for arrow in g.star_arrows(self.omega[a]):
                yield a, arrow


@dataclass(frozen=True)
class CoveringOfInternal:
    """A morphism ``p: dom -> cod`` meant to be a covering.

    ``dom`` and ``cod`` are internal groupoids for algebra-level covers and
    plain groupoids for set-level ones.
    """

    dom: Base
    cod: Base
    p: GroupoidMorphism

    @property
    def is_algebraic(self) -> bool:
        return isinstance(self.dom, InternalGroupoid) and isinstance(self.cod, InternalGroupoid)


# -- validation ---------------------------------------------------------------------

def check_action(act: GroupoidAction, strict_converse: bool = False) -> list[Violation]:
    g = act.gpd
    out = []
    if len(act.omega) != act.size or any(not 0 <= x < g.n_objects for x in act.omega):
        return [Violation("omega", (), "anchor map has wrong length or leaves the object set")]
    expected = set(act.domain())
    for key in sorted(set(act.phi) - expected):
        out.append(Violation("phi-extra", key, f"a·g defined for {key} but omega(a) != src(g)"))
    for key in sorted(expected - set(act.phi)):
        out.append(Violation("phi-missing", key, f"a·g undefined for {key}"))
    for key, b in act.phi.items():
        if not 0 <= b < act.size:
            out.append(Violation("phi-range", key, f"a·g = {b} out of range"))
    if out:
        return sorted(out)

    for (a, arrow), b in sorted(act.phi.items()):
        if act.omega[b] != g.tgt[arrow]:
            out.append(Violation("anchor", (a, arrow), f"omega({a}·{arrow}) != tgt({arrow})"))
        for h in g.star_arrows(g.tgt[arrow]):
            gh = g.compose(arrow, h)
            bh = act.act(b, h)
            if act.act(a, gh) != bh:
                out.append(Violation("composition", (a, arrow, h), f"{a}·({arrow}∘{h}) != ({a}·{arrow})·{h}"))
    for a in range(act.size):
        if act.act(a, g.id[act.omega[a]]) != a:
            out.append(Violation("unit", (a,), f"{a}·id(omega({a})) != {a}"))
    if act.is_algebraic and not out:
        out += _algebraic_action_failures(act, strict_converse)
    return sorted(out)


def _algebraic_action_failures(act: GroupoidAction, strict_converse: bool) -> list[Violation]:
    base, alg = act.base, act.algebra
    if not isinstance(base, InternalGroupoid):
        return [Violation("algebra", (), "algebra-level action needs an internal groupoid")]
    if alg.sig != base.sig or alg.size != act.size:
        return [Violation("algebra", (), "carrier algebra does not match signature or size")]
    out = map_failures("hom-omega", alg, base.object_alg, act.omega)
    g = base.gpd
    pairs = np.asarray(sorted(act.phi), dtype=np.int64).reshape(-1, 2)
    as_, gs = pairs[:, 0], pairs[:, 1]
    dense = np.full((act.size, g.n_arrows), -1, dtype=np.int64)
    for (a, arrow), b in act.phi.items():
        dense[a, arrow] = b
    ags = dense[as_, gs]
    for name, n in alg.sig.ops:
        atab = np.asarray(alg.tables[name], dtype=np.int64)
        gtab = np.asarray(base.arrow_alg.tables[name], dtype=np.int64)
        ta = atab[tuple_offsets(as_, n, act.size)]
        tg = gtab[tuple_offsets(gs, n, g.n_arrows)]
        rhs = atab[tuple_offsets(ags, n, act.size)]
        lhs = dense[ta, tg]
        for pos in np.argwhere(lhs < 0):
            idx = tuple(int(i) for i in pos)
            out.append(Violation("action-hom-undefined", (name, tuple(int(as_[i]) for i in idx), tuple(int(gs[i]) for i in idx)),
                                 f"{name}(a)·{name}(g) undefined although every a_i·g_i is"))
        for pos in np.argwhere((lhs >= 0) & (lhs != rhs)):
            idx = tuple(int(i) for i in pos)
            out.append(Violation("action-hom", (name, tuple(int(as_[i]) for i in idx), tuple(int(gs[i]) for i in idx)),
                                 f"{name}(a)·{name}(g) != {name}(a·g)"))
        if strict_converse and n > 0:
            for av in itertools.product(range(act.size), repeat=n):
                for gv in itertools.product(range(g.n_arrows), repeat=n):
                    if act.act(alg.apply(name, av), base.arrow_alg.apply(name, gv)) is None:
                        continue
                    if any(act.act(a, x) is None for a, x in zip(av, gv)):
                        out.append(Violation("action-hom-converse", (name, av, gv),
                                             f"{name}(a)·{name}(g) defined but some a_i·g_i is not"))
    return out


def check_cover(cov: CoveringOfInternal) -> list[Violation]:
    out = validate_morphism(cov.p)
    if out:
        return out
    verdict = check_covering(cov.p)
    if not verdict:
        x = verdict.counterexample
        out.append(Violation("covering", (x,), f"star of object {x} not mapped bijectively"))
    if cov.is_algebraic:
        out += map_failures("hom-objects", cov.dom.object_alg, cov.cod.object_alg, cov.p.obj_map)
        out += map_failures("hom-arrows", cov.dom.arrow_alg, cov.cod.arrow_alg, cov.p.arr_map)
    return sorted(out)


# -- constructions --------------------------------------------------------------------

def canonical_action(g: Base) -> GroupoidAction:
    """``G`` acting on its own objects: ``omega = id``, ``x·g = tgt(g)``."""
    gpd = underlying(g)
    phi = {(x, a): gpd.tgt[a] for x in range(gpd.n_objects) for a in gpd.star_arrows(x)}
    alg = g.object_alg if isinstance(g, InternalGroupoid) else None
    return GroupoidAction(g, gpd.n_objects, tuple(range(gpd.n_objects)), phi, alg)


def build_coset_action(g: Base, subgroup: Sequence[int], base: int | None = None,
                       reverse_representatives: bool = False) -> GroupoidAction:
    """``G`` acting on the right cosets ``C∘a`` of ``C`` in the star of the base object.

    For an internal groupoid the base object is the constant and ``C`` must
    also be closed under every operation; the cosets then form an algebra via
    ``τ(C∘a1, ..., C∘an) = C∘τ(a1, ..., an)``, checked here over every choice
    of representatives.
    """
    gpd = underlying(g)
    if base is None:
        base = g.e_object if isinstance(g, InternalGroupoid) else 0
    cs = coset_space(gpd, base, subgroup)
    omega = cs.anchor
    phi = {}
    for i, coset in enumerate(cs.cosets):
        rep = coset[0]
        for h in gpd.star_arrows(omega[i]):
            phi[i, h] = cs.coset_of(gpd.compose(rep, h))

    algebra = None
    if isinstance(g, InternalGroupoid):
        if base != g.e_object:
            raise BasePointError("algebraic coset actions live at the constant object")
        closed = check_closed(g.arrow_alg, cs.subgroup)
        if not closed:
            op, args = closed.counterexample
            raise NotASubalgebra(f"subgroup not closed under {op} at {args}", op, args)
        star_subalgebra(g)
        algebra = _coset_algebra(g, cs, reverse_representatives)

    act = GroupoidAction(g, len(cs), omega, phi, algebra, cs)
    violations = check_action(act)
    if violations:
        raise ActionInvalid("coset action failed validation", violations)
    return act


def _coset_algebra(g: InternalGroupoid, cs: CosetSpace, reverse: bool) -> FiniteAlgebra:
    alg = g.arrow_alg
    members = [tuple(reversed(c)) if reverse else c for c in cs.cosets]
    tables = {}
    for name, n in alg.sig.ops:
        table = []
        for idx in itertools.product(range(len(cs)), repeat=n):
            values = []
            for reps in itertools.product(*(members[i] for i in idx)):
                arrow = alg.apply(name, reps)
                try:
                    values.append(cs.coset_of(arrow))
                except KeyError:
                    raise ClosureViolation(f"{name}{reps} = {arrow} leaves the star") from None
            if len(set(values)) != 1:
                raise WellDefinednessFailure(
                    f"{name} on cosets {idx} depends on representatives", name, idx, sorted(set(values)))
            table.append(values[0])
        tables[name] = table
    return FiniteAlgebra(alg.sig, len(cs), tables)


def semidirect_arrows(act: GroupoidAction) -> list[tuple[int, int]]:
    """Arrows ``(g, a)`` of ``G⋉A`` in index order (by ``a``, then ``g``)."""
    return [(arrow, a) for a, arrow in act.domain()]


def semidirect(g: Base, act: GroupoidAction) -> CoveringOfInternal:
    """``G⋉A`` with its projection onto ``G``."""
    if act.base is not g and act.base != g:
        raise ValueError("action is not an action of this groupoid")
    violations = check_action(act)
    if violations:
        raise ActionInvalid("action failed validation", violations)
    gpd = act.gpd
    arrows = semidirect_arrows(act)
    index = {pair: i for i, pair in enumerate(arrows)}
    src = [a for _, a in arrows]
    tgt = [act.act(a, x) for x, a in arrows]
    ids = [index[gpd.id[act.omega[a]], a] for a in range(act.size)]
    inv = [index[gpd.inv[x], act.act(a, x)] for x, a in arrows]
    comp = {}
    for i, (x, a) in enumerate(arrows):
        b = act.act(a, x)
        for y in gpd.star_arrows(gpd.tgt[x]):
            comp[i, index[y, b]] = index[gpd.compose(x, y), a]
    h = FiniteGroupoid(act.size, len(arrows), src, tgt, ids, inv, comp)
    p = GroupoidMorphism(h, gpd, act.omega, [x for x, _ in arrows])
    if not check_covering(p):
        raise InternalConsistencyError("semi-direct projection is not a covering")
    if not act.is_algebraic:
        return CoveringOfInternal(h, g, p)

    alg = act.algebra
    tables = {}
    for name, n in alg.sig.ops:
        table = []
        for args in itertools.product(range(len(arrows)), repeat=n):
            x = g.arrow_alg.apply(name, [arrows[i][0] for i in args])
            a = alg.apply(name, [arrows[i][1] for i in args])
            try:
                table.append(index[x, a])
            except KeyError:
                raise InternalConsistencyError(f"{name}{args} is not an arrow of the semi-direct product") from None
        tables[name] = table
    hi = InternalGroupoid(h, FiniteAlgebra(alg.sig, len(arrows), tables), alg)
    cov = CoveringOfInternal(hi, g, p)
    if not check_map_commutes(hi.arrow_alg, g.arrow_alg, p.arr_map):
        raise InternalConsistencyError("projection is not a homomorphism on arrows")
    return cov


def identity_cover(g: Base) -> CoveringOfInternal:
    return CoveringOfInternal(g, g, identity_morphism(underlying(g)))


# -- the equivalence between actions and covers ------------------------------------------

def gamma(act: GroupoidAction) -> CoveringOfInternal:
    return semidirect(act.base, act)


def check_action_morphism(f: Sequence[int], act1: GroupoidAction, act2: GroupoidAction) -> list[Violation]:
    out = []
    for a in range(act1.size):
        if act2.omega[f[a]] != act1.omega[a]:
            out.append(Violation("action-morphism-anchor", (a,), f"omega'(f({a})) != omega({a})"))
    for (a, x), b in act1.phi.items():
        if act2.act(f[a], x) != f[b]:
            out.append(Violation("action-morphism-equivariance", (a, x), f"f({a}·{x}) != f({a})·{x}"))
    if act1.is_algebraic and act2.is_algebraic:
        out += map_failures("action-morphism-hom", act1.algebra, act2.algebra, f)
    return sorted(out)


def gamma_morphism(f: Sequence[int], act1: GroupoidAction, act2: GroupoidAction) -> GroupoidMorphism:
    """The cover morphism ``(g, a) -> (g, f(a))`` induced by an action morphism ``f``."""
    violations = check_action_morphism(f, act1, act2)
    if violations:
        raise ActionInvalid("not a morphism of actions", violations)
    h1, h2 = gamma(act1), gamma(act2)
    index2 = {pair: i for i, pair in enumerate(semidirect_arrows(act2))}
    arr_map = [index2[x, f[a]] for x, a in semidirect_arrows(act1)]
    return GroupoidMorphism(underlying(h1.dom), underlying(h2.dom), list(f), arr_map)


def phi(cov: CoveringOfInternal) -> GroupoidAction:
    """The action of ``cov.cod`` on the objects of ``cov.dom`` by lifting arrows."""
    if not check_covering(cov.p):
        raise NotACovering("phi needs a covering morphism")
    h = underlying(cov.dom)
    lifts = star_lifts(cov.p)
    table = {}
    for a in range(h.n_objects):
        for x in underlying(cov.cod).star_arrows(cov.p.obj_map[a]):
            table[a, x] = h.tgt[lifts[a, x]]
    alg = cov.dom.object_alg if cov.is_algebraic else None
    return GroupoidAction(cov.cod, h.n_objects, cov.p.obj_map, table, alg)


def actions_equal(a: GroupoidAction, b: GroupoidAction) -> bool:
    if a.size != b.size or a.omega != b.omega or a.phi != b.phi:
        return False
    if a.algebra is None or b.algebra is None:
        return a.algebra is None and b.algebra is None
    return a.algebra.tables == b.algebra.tables


def cover_isomorphism(c1: CoveringOfInternal, c2: CoveringOfInternal,
                      base: tuple[int, int] | None = None) -> GroupoidMorphism | None:
    """An isomorphism ``c1.dom -> c2.dom`` over the common base, found by search in both directions."""
    fwd = find_cover_morphism(c1.p, c2.p, base)
    if fwd is None or not is_isomorphism(fwd):
        return None
    back_base = None if base is None else (fwd.obj_map[base[0]], base[0])
    back = find_cover_morphism(c2.p, c1.p, back_base)
    if back is None:
        return None
    if fwd.then(back) != identity_morphism(fwd.dom) or back.then(fwd) != identity_morphism(fwd.cod):
        return None
    return fwd


# -- lifting algebraic structure to a cover ------------------------------------------------

def _transport(alg: FiniteAlgebra, forward: Sequence[int], backward: Sequence[int]) -> FiniteAlgebra:
    """Move ``alg`` along the bijection ``forward`` (with inverse ``backward``)."""
    tables = {}
    for name, n in alg.sig.ops:
        tables[name] = [backward[alg.apply(name, [forward[x] for x in args])]
                        for args in itertools.product(range(alg.size), repeat=n)]
    return FiniteAlgebra(alg.sig, alg.size, tables)


def lift_structure(h: FiniteGroupoid, g: InternalGroupoid, p: GroupoidMorphism, base: int,
                   reverse_representatives: bool = False) -> CoveringOfInternal:
    """Put an internal-groupoid structure on ``h`` making ``p`` a morphism of internal groupoids.

    Requires ``p`` to be a covering onto the transitive ``g`` with ``p(base)``
    the constant object and the characteristic group at ``base`` closed
    under every operation.  The structure is copied from ``G⋉A_C`` along the
    isomorphism of covers that sends ``base`` to the coset ``C``.
    """
    if p.dom != h or p.cod != g.gpd:
        raise ValueError("p must run from h to the underlying groupoid of g")
    if validate_morphism(p) or not check_covering(p):
        raise NoEquivalence("p is not a covering morphism")
    if not is_transitive(g.gpd):
        raise NotTransitive("lifting needs a transitive base groupoid")
    if p.obj_map[base] != g.e_object:
        raise BasePointError(f"p({base}) = {p.obj_map[base]} is not the constant object {g.e_object}")
    c = characteristic_group(p, base)
    closed = check_closed(g.arrow_alg, c)
    if not closed:
        op, args = closed.counterexample
        raise CharacteristicGroupNotSubalgebra(
            f"characteristic group {list(c)} not closed under {op} at {args}", op, args)

    act = build_coset_action(g, c, reverse_representatives=reverse_representatives)
    model = semidirect(g, act)
    psi = cover_isomorphism(CoveringOfInternal(h, g, p), model, base=(base, act.algebra.e_index))
    if psi is None:
        raise NoEquivalence("h is not isomorphic over g to the coset cover")
    back = find_cover_morphism(model.p, p, base=(act.algebra.e_index, base))
    lifted = InternalGroupoid(
        h,
        _transport(model.dom.arrow_alg, psi.arr_map, back.arr_map),
        _transport(model.dom.object_alg, psi.obj_map, back.obj_map),
    )
    cov = CoveringOfInternal(lifted, g, p)
    problems = check_internal(lifted) + check_cover(cov)
    if problems:
        raise InternalConsistencyError(f"lifted structure fails validation: {problems[0]}")
    return cov
