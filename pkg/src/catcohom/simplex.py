"""Simplices of the nerve of a finite category.

An n-simplex is a chain (f_1, ..., f_n) of composable morphisms, displayed
as C_0 <- C_1 <- ... <- C_n with f_i: C_i -> C_{i-1}; a 0-simplex is an
object.  Morphisms of simplices are order-preserving maps σ with
source = target∘σ.  Nerve levels are enumerated lazily per degree in
lexicographic morphism-index order and memoized on the category, so matrix
layouts downstream are reproducible bit for bit.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations_with_replacement

from .errors import (
    InternalInvariantError,
    InvalidSimplexMorphism,
    MalformedInput,
    NotOrderPreserving,
)
from .fincat import FinCat, FinFunctor, _from_index_tables, _UNDEF


class Simplex:
    """A composable chain in a fixed category.

    ``objs`` lists the objects C_0..C_n and ``chain`` the morphisms with
    chain[k]: objs[k+1] -> objs[k].  Hashing and equality ignore the
    category object itself (callers never mix simplices of different
    categories in one container).
    """

    __slots__ = ("cat", "objs", "chain")

    def __init__(self, cat: FinCat, objs: tuple[int, ...], chain: tuple[int, ...]):
        self.cat = cat
        self.objs = objs
        self.chain = chain

    @property
    def dim(self) -> int:
        return len(self.chain)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Simplex):
            return NotImplemented
        return self.objs == other.objs and self.chain == other.chain and \
            (self.cat is other.cat or self.cat == other.cat)

    def __hash__(self) -> int:
        return hash((self.objs, self.chain))

    def __repr__(self) -> str:
        return f"Simplex({self.key()})"

    def key(self) -> str:
        """Canonical chain string: morphism names joined by dots, or the
        object name for a 0-simplex."""
        if not self.chain:
            return self.cat.objects[self.objs[0]]
        return ".".join(self.cat.mor_names[m] for m in self.chain)


def vertex(cat: FinCat, obj: int) -> Simplex:
    return Simplex(cat, (obj,), ())


def simplex_from_chain(cat: FinCat, chain) -> Simplex:
    chain = tuple(chain)
    if not chain:
        raise MalformedInput("use vertex() for 0-simplices")
    objs = [cat.mor_dst[chain[0]]]
    for k, m in enumerate(chain):
        if cat.mor_dst[m] != objs[-1]:
            raise MalformedInput(f"chain is not composable at position {k}")
        objs.append(cat.mor_src[m])
    return Simplex(cat, tuple(objs), chain)


def compose_chain(s: Simplex, a: int, b: int) -> int:
    """Composite f_a∘...∘f_b of chain entries (1-indexed); identity of
    objs[b] when the range is empty (a = b+1)."""
    cat = s.cat
    if a > b:
        return cat.identity[s.objs[b]]
    m = s.chain[b - 1]
    for i in range(b - 1, a - 1, -1):
        m = cat.compose(s.chain[i - 1], m)
    return m


def is_degenerate(s: Simplex) -> bool:
    return any(s.cat.is_identity(m) for m in s.chain)


def nerve_level(C: FinCat, n: int) -> tuple[Simplex, ...]:
    """All n-simplices (identities included), duplicate-free, in
    lexicographic order of morphism indices."""
    if n < 0:
        raise MalformedInput("nerve level needs n >= 0")
    key = ("nerve", n)
    if key in C._cache:
        return C._cache[key]
    if n == 0:
        level = tuple(vertex(C, x) for x in range(C.n_objects))
    elif n == 1:
        level = tuple(
            simplex_from_chain(C, (m,)) for m in range(C.n_morphisms)
        )
    else:
        prev = nerve_level(C, n - 1)
        out = []
        for s in prev:
            tail = s.objs[-1]
            for m in range(C.n_morphisms):
                if C.mor_dst[m] == tail:
                    out.append(Simplex(C, s.objs + (C.mor_src[m],), s.chain + (m,)))
        level = tuple(out)
    C._cache[key] = level
    return level


def nondegenerate_level(C: FinCat, n: int) -> tuple[Simplex, ...]:
    key = ("nondeg", n)
    if key not in C._cache:
        C._cache[key] = tuple(s for s in nerve_level(C, n) if not is_degenerate(s))
    return C._cache[key]


# -- order-preserving maps ----------------------------------------------------


@dataclass(frozen=True)
class OrderMap:
    """An order-preserving map [dom] -> [cod], stored by its value list."""

    dom: int
    cod: int
    values: tuple[int, ...]

    def __post_init__(self):
        if self.dom < 0 or self.cod < 0 or len(self.values) != self.dom + 1:
            raise NotOrderPreserving("value list does not match the domain")
        last = 0
        for v in self.values:
            if not 0 <= v <= self.cod or v < last:
                raise NotOrderPreserving(f"values {self.values} are not monotone into [{self.cod}]")
            last = v

    def __call__(self, i: int) -> int:
        return self.values[i]

    @property
    def is_injective(self) -> bool:
        return len(set(self.values)) == self.dom + 1


def identity_map(n: int) -> OrderMap:
    return OrderMap(n, n, tuple(range(n + 1)))


def coface(n: int, i: int) -> OrderMap:
    """δ^i: [n] -> [n+1], skipping i."""
    if not 0 <= i <= n + 1:
        raise NotOrderPreserving(f"coface index {i} outside 0..{n + 1}")
    return OrderMap(n, n + 1, tuple(k if k < i else k + 1 for k in range(n + 1)))


def codegeneracy(n: int, i: int) -> OrderMap:
    """σ^i: [n+1] -> [n], repeating i."""
    if not 0 <= i <= n:
        raise NotOrderPreserving(f"codegeneracy index {i} outside 0..{n}")
    return OrderMap(n + 1, n, tuple(k if k <= i else k - 1 for k in range(n + 2)))


def compose_order_maps(s: OrderMap, t: OrderMap) -> OrderMap:
    """s∘t for t: [a] -> [b], s: [b] -> [c]."""
    if t.cod != s.dom:
        raise NotOrderPreserving("order maps not composable")
    return OrderMap(t.dom, s.cod, tuple(s.values[v] for v in t.values))


def all_order_maps(n: int, m: int):
    """All order-preserving maps [n] -> [m], lexicographically."""
    for vals in combinations_with_replacement(range(m + 1), n + 1):
        yield OrderMap(n, m, vals)


def apply_simplex_map(sigma: OrderMap, g: Simplex) -> Simplex:
    """The simplex g∘σ; entry k is the composite of g's entries
    σ(k-1)+1 .. σ(k), an identity when σ(k-1) = σ(k)."""
    if sigma.cod != g.dim:
        raise NotOrderPreserving(
            f"map into [{sigma.cod}] applied to a {g.dim}-simplex"
        )
    objs = tuple(g.objs[v] for v in sigma.values)
    chain = tuple(
        compose_chain(g, sigma.values[k - 1] + 1, sigma.values[k])
        for k in range(1, sigma.dom + 1)
    )
    return Simplex(g.cat, objs, chain)


@dataclass(frozen=True)
class SimplexMorphism:
    """A morphism (source -> target) in the simplex category: an order map σ
    with source = target∘σ, verified on construction."""

    source: Simplex
    target: Simplex
    map: OrderMap

    def __post_init__(self):
        if apply_simplex_map(self.map, self.target) != self.source:
            raise InvalidSimplexMorphism(
                f"{self.map.values} does not carry {self.target.key()} to {self.source.key()}"
            )


def face_morphism(g: Simplex, i: int) -> SimplexMorphism:
    """The coface morphism g∘δ^i -> g."""
    d = coface(g.dim - 1, i)
    return SimplexMorphism(apply_simplex_map(d, g), g, d)


def delta_u(u: FinFunctor, s: Simplex) -> Simplex:
    """Entrywise image of a simplex under a functor (the induced map on nerves)."""
    if s.cat != u.source:
        raise MalformedInput("simplex does not live in the functor's source")
    return Simplex(
        u.target,
        tuple(u.obj_map[x] for x in s.objs),
        tuple(u.mor_map[m] for m in s.chain),
    )


# -- the comparison functor to the factorization category --------------------


def nu_object(s: Simplex) -> int:
    """Full composite of the chain (an object of FC); identity for a vertex."""
    return compose_chain(s, 1, s.dim)


def nu_morphism(sm: SimplexMorphism) -> tuple[int, int]:
    """The factorization pair (α, β) of a simplex morphism σ: f -> g.

    α is the composite of g's entries σ(m)+1..n and β the composite
    1..σ(0); either degenerates to an identity when σ hits the relevant
    end.  The result satisfies ν(g) = β∘ν(f)∘α.
    """
    g = sm.target
    vals = sm.map.values
    m = sm.source.dim
    n = g.dim
    alpha = compose_chain(g, vals[m] + 1, n)
    beta = compose_chain(g, 1, vals[0])
    cat = g.cat
    lhs = cat.compose(beta, cat.compose(nu_object(sm.source), alpha))
    if lhs != nu_object(g):  # pragma: no cover - guards the formula
        raise InternalInvariantError("ν did not produce a factorization morphism")
    return alpha, beta


# -- truncated simplex category ----------------------------------------------


class TruncatedSimplexCategory:
    """The subcategory of the simplex category on simplices of dim <= N,
    materialized as a FinCat.  With ``injective_only`` the morphisms are
    restricted to injective order maps (the semi-simplicial shape carried by
    truncated tables).  Used for limit/colimit comparisons."""

    def __init__(self, C: FinCat, N: int, injective_only: bool = False):
        self.base = C
        self.max_dim = N
        simplices: list[Simplex] = []
        for n in range(N + 1):
            simplices.extend(nerve_level(C, n))
        self.simplices = tuple(simplices)
        s_ix = {s: i for i, s in enumerate(simplices)}

        names: list[str] = []
        srcs: list[int] = []
        dsts: list[int] = []
        maps: list[OrderMap] = []
        lookup: dict[tuple[int, int, tuple[int, ...]], int] = {}
        for j, t in enumerate(simplices):
            for a in range(N + 1):
                for om in all_order_maps(a, t.dim):
                    if injective_only and not om.is_injective:
                        continue
                    src = apply_simplex_map(om, t)
                    i = s_ix[src]
                    lookup[(i, j, om.values)] = len(names)
                    names.append(f"{''.join(map(str, om.values))}:{i}>{j}")
                    srcs.append(i)
                    dsts.append(j)
                    maps.append(om)
        ident = [
            lookup[(i, i, identity_map(s.dim).values)]
            for i, s in enumerate(simplices)
        ]
        nm = len(names)
        table = [[_UNDEF] * nm for _ in range(nm)]
        for m1 in range(nm):
            for m2 in range(nm):
                if dsts[m1] != srcs[m2]:
                    continue
                comp = compose_order_maps(maps[m2], maps[m1])
                table[m2][m1] = lookup[(srcs[m1], dsts[m2], comp.values)]
        self.cat = _from_index_tables(
            [f"s{i}" for i in range(len(simplices))],
            names, srcs, dsts, ident, table,
        )
        self.maps = tuple(maps)
        self._lookup = lookup

    def obj_of(self, s: Simplex) -> int:
        return self.simplices.index(s)


def truncated_simplex_category(C: FinCat, N: int,
                               injective_only: bool = False) -> TruncatedSimplexCategory:
    key = ("trunc_simplex_cat", N, injective_only)
    if key not in C._cache:
        C._cache[key] = TruncatedSimplexCategory(C, N, injective_only)
    return C._cache[key]
