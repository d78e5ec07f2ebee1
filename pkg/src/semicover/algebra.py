"""Finite models of a single-constant algebraic theory.

Carriers are the index sets ``0..N-1``.  Each operation of arity ``k`` is a
flat table of length ``N**k``; the tuple ``(a_1, ..., a_k)`` lives at offset
``sum(a_i * N**(k-1-i))`` (big-endian in argument order), so iterating
``itertools.product(range(N), repeat=k)`` walks a table in storage order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import MissingWitness, SignatureError, SignatureMismatch
from .report import Check, Violation


@dataclass(frozen=True)
class Witness:
    alphas: tuple[str, ...]
    theta: str

    @property
    def n(self) -> int:
        return len(self.alphas)


@dataclass(frozen=True)
class Signature:
    """Operation names with arities, the distinguished constant, and
    optionally the binary ``alphas`` and ``(n+1)``-ary ``theta`` that witness
    semi-abelianness."""

    ops: tuple[tuple[str, int], ...]
    constant: str
    witness: Witness | None = None

    def __post_init__(self):
        ops = tuple((str(name), int(arity)) for name, arity in self.ops)
        object.__setattr__(self, "ops", ops)
        names = [name for name, _ in ops]
        if len(set(names)) != len(names):
            raise SignatureError(f"duplicate operation names in {names}")
        for name, arity in ops:
            if arity < 0:
                raise SignatureError(f"operation {name!r} has negative arity")
        arities = dict(ops)
        if self.constant not in arities:
            raise SignatureError(f"constant {self.constant!r} is not an operation")
        if arities[self.constant] != 0:
            raise SignatureError(f"constant {self.constant!r} must have arity 0")
        nullary = [name for name, arity in ops if arity == 0]
        if nullary != [self.constant]:
            raise SignatureError(f"exactly one constant allowed, found {nullary}")
        w = self.witness
        if w is not None:
            if not isinstance(w, Witness):
                w = Witness(tuple(w[0]), w[1])
                object.__setattr__(self, "witness", w)
            if len(w.alphas) < 1:
                raise SignatureError("witness needs at least one alpha")
            for alpha in w.alphas:
                if arities.get(alpha) != 2:
                    raise SignatureError(f"alpha {alpha!r} must name a binary operation")
            if arities.get(w.theta) != w.n + 1:
                raise SignatureError(f"theta {w.theta!r} must name an operation of arity {w.n + 1}")

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(name for name, _ in self.ops)

    def arity(self, name: str) -> int:
        for op, arity in self.ops:
            if op == name:
                return arity
        raise KeyError(name)


@dataclass(frozen=True, eq=True)
class FiniteAlgebra:
    """An algebra on ``0..size-1`` given by one lookup table per operation.

    Construction does not validate the tables; use :func:`validate_algebra`.
    """

    sig: Signature
    size: int
    tables: Mapping[str, tuple[int, ...]] = field(hash=False)

    def __post_init__(self):
        object.__setattr__(self, "tables", {name: tuple(int(v) for v in t) for name, t in self.tables.items()})

    @classmethod
    def from_functions(cls, sig: Signature, size: int, funcs: Mapping[str, Callable[..., int]]) -> "FiniteAlgebra":
        tables = {}
        for name, arity in sig.ops:
            f = funcs[name]
            tables[name] = tuple(f(*args) for args in itertools.product(range(size), repeat=arity))
        return cls(sig, size, tables)

    @property
    def e_index(self) -> int | None:
        table = self.tables.get(self.sig.constant)
        if not table:
            return None
        return table[0]

    def offset(self, args: Sequence[int]) -> int:
        off = 0
        for a in args:
            off = off * self.size + a
        return off

    def apply(self, op: str, args: Sequence[int]) -> int:
        return self.tables[op][self.offset(args)]

    def tuples(self, k: int) -> Iterator[tuple[int, ...]]:
        return itertools.product(range(self.size), repeat=k)

    def with_table(self, op: str, table: Sequence[int]) -> "FiniteAlgebra":
        tables = dict(self.tables)
        tables[op] = tuple(table)
        return FiniteAlgebra(self.sig, self.size, tables)


def validate_algebra(a: FiniteAlgebra) -> list[Violation]:
    out = []
    if a.size < 1:
        out.append(Violation("size", (), f"carrier size {a.size} must be positive"))
        return out
    known = set(a.sig.names)
    for name in sorted(set(a.tables) - known):
        out.append(Violation("unknown-table", (name,), f"table for unknown operation {name!r}"))
    for name, arity in a.sig.ops:
        table = a.tables.get(name)
        if table is None:
            kind = "missing-constant" if name == a.sig.constant else "missing-table"
            out.append(Violation(kind, (name,), f"no table for operation {name!r}"))
            continue
        expected = a.size ** arity
        if len(table) != expected:
            out.append(Violation("table-length", (name,), f"table length {len(table)} != {expected}"))
        for i, v in enumerate(table):
            if not 0 <= v < a.size:
                out.append(Violation("entry-range", (name, i), f"entry out of range: {v} at offset {i}"))
    return out


def require_same_signature(a: FiniteAlgebra, b: FiniteAlgebra) -> None:
    if a.sig != b.sig:
        raise SignatureMismatch("algebras have different signatures")


# -- semi-abelian witnesses -------------------------------------------------

def check_semi_abelian_witness(a: FiniteAlgebra, witness: Witness | None = None) -> Check:
    """Verify ``alpha_i(x, x) = e`` and ``theta(alpha_1(x,y), ..., alpha_n(x,y), y) = x``.

    The counterexample is ``("alpha", i, x)`` (``i`` is the 0-based position
    in ``alphas``) or ``("theta", x, y)``, the first failure in index order.
    """
    w = witness if witness is not None else a.sig.witness
    if w is None:
        raise MissingWitness("signature carries no semi-abelian witness")
    e = a.e_index
    alpha_tables = [a.tables[name] for name in w.alphas]
    n = a.size
    for i, table in enumerate(alpha_tables):
        for x in range(n):
            if table[x * n + x] != e:
                return Check(False, ("alpha", i, x))
    theta = a.tables[w.theta]
    for x in range(n):
        for y in range(n):
            args = [t[x * n + y] for t in alpha_tables] + [y]
            if theta[a.offset(args)] != x:
                return Check(False, ("theta", x, y))
    return Check(True)


def iter_semi_abelian_witnesses(a: FiniteAlgebra, n_max: int) -> Iterator[Witness]:
    """All witnesses drawn from signature operations, smallest ``n`` first,
    then lexicographically by operation index."""
    index = {name: i for i, name in enumerate(a.sig.names)}
    binary = [name for name, arity in a.sig.ops if arity == 2]
    for n in range(1, n_max + 1):
        thetas = [name for name, arity in a.sig.ops if arity == n + 1]
        if not binary or not thetas:
            continue
        candidates = []
        for alphas in itertools.product(binary, repeat=n):
            for theta in thetas:
                candidates.append(Witness(alphas, theta))
        candidates.sort(key=lambda w: ([index[x] for x in w.alphas], index[w.theta]))
        for w in candidates:
            if check_semi_abelian_witness(a, w):
                yield w


def search_semi_abelian_witness(a: FiniteAlgebra, n_max: int) -> Witness | None:
    return next(iter_semi_abelian_witnesses(a, n_max), None)


# -- homomorphisms ----------------------------------------------------------

@dataclass(frozen=True)
class Homomorphism:
    dom: FiniteAlgebra
    cod: FiniteAlgebra
    map: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(self.map))

    def then(self, other: "Homomorphism") -> "Homomorphism":
        return Homomorphism(self.dom, other.cod, tuple(other.map[v] for v in self.map))


def check_homomorphism(h: Homomorphism) -> Check:
    """Counterexample is ``(op, args)``; the constant is checked first."""
    require_same_signature(h.dom, h.cod)
    return check_map_commutes(h.dom, h.cod, h.map)


def check_map_commutes(dom: FiniteAlgebra, cod: FiniteAlgebra, f: Sequence[int]) -> Check:
    sig = dom.sig
    if f[dom.e_index] != cod.e_index:
        return Check(False, (sig.constant, ()))
    for name, arity in sig.ops:
        dt, ct = dom.tables[name], cod.tables[name]
        for off, args in enumerate(dom.tuples(arity)):
            if f[dt[off]] != ct[cod.offset([f[x] for x in args])]:
                return Check(False, (name, args))
    return Check(True)


def identity_homomorphism(a: FiniteAlgebra) -> Homomorphism:
    return Homomorphism(a, a, tuple(range(a.size)))


# -- subalgebras ------------------------------------------------------------

@dataclass(frozen=True)
class Subalgebra:
    parent: FiniteAlgebra
    members: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __len__(self) -> int:
        return len(self.members)


def generate_subalgebra(a: FiniteAlgebra, seed: Iterable[int] = ()) -> Subalgebra:
    members = set(seed)
    members.add(a.e_index)
    frontier = set(members)
    while frontier:
        # only tuples touching something new can produce something new
        current = sorted(members)
        new = set()
        for name, arity in a.sig.ops:
            if arity == 0:
                continue
            table = a.tables[name]
            for args in itertools.product(current, repeat=arity):
                if not frontier.intersection(args):
                    continue
                v = table[a.offset(args)]
                if v not in members:
                    new.add(v)
        members |= new
        frontier = new
    return Subalgebra(a, tuple(members))


def check_closed(a: FiniteAlgebra, members: Iterable[int]) -> Check:
    """Is ``members`` closed under every operation? Counterexample ``(op, args)``."""
    members = sorted(set(members))
    mset = set(members)
    for name, arity in a.sig.ops:
        table = a.tables[name]
        for args in itertools.product(members, repeat=arity):
            if table[a.offset(args)] not in mset:
                return Check(False, (name, args))
    return Check(True)


def product_algebra(a: FiniteAlgebra, b: FiniteAlgebra) -> FiniteAlgebra:
    """Direct product; the pair ``(x, y)`` has index ``x * b.size + y``."""
    require_same_signature(a, b)
    nb = b.size

    def lift(name):
        def f(*args):
            return a.apply(name, [x // nb for x in args]) * nb + b.apply(name, [x % nb for x in args])
        return f

    return FiniteAlgebra.from_functions(a.sig, a.size * nb, {name: lift(name) for name in a.sig.names})
