"""Finite categories presented by total enumeration.

A category is stored as indexed object and morphism tables together with a
full composition table.  Constructors validate the axioms exhaustively
(identity laws, associativity over every composable triple), which is
affordable at the scale this package targets (tens of morphisms) and makes
every downstream computation trust its inputs.

Conventions fixed here and used repo-wide:

* ``compose(g, f)`` means "g after f" and is defined exactly when
  ``dst(f) == src(g)``.
* Morphism identity is by index; two categories are equal only if their
  tables agree entry for entry.  There is no isomorphism search.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Optional, Sequence

from .errors import (
    CompositionDomainMismatch,
    MalformedInput,
    MissingIdentity,
    NonAssociative,
    NotAFunctor,
    NotAMonoid,
    NotAPartialOrder,
    ObjectNotInTarget,
)

_UNDEF = -1


@dataclass(frozen=True)
class FinCat:
    """A finite category: object/morphism tables plus a composition table.

    ``table[g][f]`` holds the index of ``g∘f`` or ``-1`` when the pair is
    not composable.  ``identity[x]`` is the identity morphism of object x.
    The ``_cache`` slot carries memoized derived data (nerve levels and the
    like) and is excluded from equality and hashing.
    """

    objects: tuple[str, ...]
    mor_names: tuple[str, ...]
    mor_src: tuple[int, ...]
    mor_dst: tuple[int, ...]
    identity: tuple[int, ...]
    table: tuple[tuple[int, ...], ...]
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    # -- basic accessors -------------------------------------------------

    @property
    def n_objects(self) -> int:
        return len(self.objects)

    @property
    def n_morphisms(self) -> int:
        return len(self.mor_names)

    def src(self, m: int) -> int:
        return self.mor_src[m]

    def dst(self, m: int) -> int:
        return self.mor_dst[m]

    def is_identity(self, m: int) -> bool:
        s = self.mor_src[m]
        return s == self.mor_dst[m] and self.identity[s] == m

    def defined(self, g: int, f: int) -> bool:
        return self.table[g][f] != _UNDEF

    def compose(self, g: int, f: int) -> int:
        """Composite g∘f; raises when dst(f) != src(g)."""
        gf = self.table[g][f]
        if gf == _UNDEF:
            raise CompositionDomainMismatch(
                f"cannot compose {self.mor_names[g]} after {self.mor_names[f]}"
            )
        return gf

    def hom(self, x: int, y: int) -> list[int]:
        return [m for m in range(self.n_morphisms)
                if self.mor_src[m] == x and self.mor_dst[m] == y]

    def obj_index(self, name: str) -> int:
        try:
            return self.objects.index(name)
        except ValueError:
            raise MalformedInput(f"unknown object {name!r}") from None

    def mor_index(self, name: str) -> int:
        try:
            return self.mor_names.index(name)
        except ValueError:
            raise MalformedInput(f"unknown morphism {name!r}") from None

    def __repr__(self) -> str:  # pragma: no cover - debugging aid
        return f"FinCat({self.n_objects} objects, {self.n_morphisms} morphisms)"


def _check_laws(cat: FinCat) -> FinCat:
    """Exhaustive identity, associativity and domain checks."""
    n = cat.n_morphisms
    for x in range(cat.n_objects):
        e = cat.identity[x]
        if cat.mor_src[e] != x or cat.mor_dst[e] != x:
            raise MissingIdentity(f"identity of {cat.objects[x]} has wrong endpoints")
    for f in range(n):
        for g in range(n):
            gf = cat.table[g][f]
            composable = cat.mor_dst[f] == cat.mor_src[g]
            if composable and gf == _UNDEF:
                raise MalformedInput(
                    f"missing composite {cat.mor_names[g]}∘{cat.mor_names[f]}"
                )
            if not composable and gf != _UNDEF:
                raise CompositionDomainMismatch(
                    f"composite declared for non-composable pair "
                    f"({cat.mor_names[g]}, {cat.mor_names[f]})"
                )
            if gf != _UNDEF:
                if cat.mor_src[gf] != cat.mor_src[f] or cat.mor_dst[gf] != cat.mor_dst[g]:
                    raise CompositionDomainMismatch(
                        f"composite {cat.mor_names[g]}∘{cat.mor_names[f]} = "
                        f"{cat.mor_names[gf]} has wrong endpoints"
                    )
    for f in range(n):
        e_dst = cat.identity[cat.mor_dst[f]]
        e_src = cat.identity[cat.mor_src[f]]
        if cat.table[e_dst][f] != f or cat.table[f][e_src] != f:
            raise MissingIdentity(
                f"identity law fails for morphism {cat.mor_names[f]}"
            )
    for f in range(n):
        for g in range(n):
            if cat.mor_dst[f] != cat.mor_src[g]:
                continue
            gf = cat.table[g][f]
            for h in range(n):
                if cat.mor_dst[g] != cat.mor_src[h]:
                    continue
                hg = cat.table[h][g]
                if cat.table[h][gf] != cat.table[hg][f]:
                    raise NonAssociative(
                        f"associativity fails on triple "
                        f"({cat.mor_names[h]}, {cat.mor_names[g]}, {cat.mor_names[f]})"
                    )
    return cat


def validate_category(
    objects: Sequence[str],
    morphisms: Sequence[tuple[str, str, str]],
    compose: Iterable[tuple[str, str, str]],
    identities: Optional[Mapping[str, str]] = None,
) -> FinCat:
    """Build a category from raw name-level tables and verify the axioms.

    ``morphisms`` are (name, src, dst) triples; ``compose`` holds triples
    (g, f, gf) meaning g∘f = gf.  Objects without a declared identity get a
    fresh morphism named ``id_<obj>`` with the forced composition rows, so
    JSON inputs may omit identities entirely.
    """
    objects = tuple(objects)
    if len(set(objects)) != len(objects):
        raise MalformedInput("duplicate object names")
    obj_ix = {o: i for i, o in enumerate(objects)}

    names: list[str] = []
    srcs: list[int] = []
    dsts: list[int] = []
    for name, s, d in morphisms:
        if s not in obj_ix or d not in obj_ix:
            raise MalformedInput(f"morphism {name!r} references unknown object")
        names.append(name)
        srcs.append(obj_ix[s])
        dsts.append(obj_ix[d])
    if len(set(names)) != len(names):
        raise MalformedInput("duplicate morphism names")

    identities = dict(identities or {})
    ident: list[int] = [_UNDEF] * len(objects)
    for o, mname in identities.items():
        if o not in obj_ix or mname not in names:
            raise MalformedInput(f"identity declaration {o!r}: {mname!r} unresolvable")
        ident[obj_ix[o]] = names.index(mname)
    for i, o in enumerate(objects):
        if ident[i] == _UNDEF:
            auto = f"id_{o}"
            if auto in names:
                ident[i] = names.index(auto)
            else:
                names.append(auto)
                srcs.append(i)
                dsts.append(i)
                ident[i] = len(names) - 1

    n = len(names)
    mor_ix = {m: i for i, m in enumerate(names)}
    table = [[_UNDEF] * n for _ in range(n)]
    for g, f, gf in compose:
        for nm in (g, f, gf):
            if nm not in mor_ix:
                raise MalformedInput(f"composition rule references unknown morphism {nm!r}")
        gi, fi, ri = mor_ix[g], mor_ix[f], mor_ix[gf]
        if dsts[fi] != srcs[gi]:
            raise CompositionDomainMismatch(
                f"declared composite {g}∘{f} but dst({f}) != src({g})"
            )
        if table[gi][fi] not in (_UNDEF, ri):
            raise MalformedInput(f"conflicting composites declared for {g}∘{f}")
        table[gi][fi] = ri
    # identity rows are forced; fill only where the user left gaps
    for f in range(n):
        e_dst, e_src = ident[dsts[f]], ident[srcs[f]]
        if table[e_dst][f] == _UNDEF:
            table[e_dst][f] = f
        if table[f][e_src] == _UNDEF:
            table[f][e_src] = f

    cat = FinCat(
        objects=objects,
        mor_names=tuple(names),
        mor_src=tuple(srcs),
        mor_dst=tuple(dsts),
        identity=tuple(ident),
        table=tuple(tuple(r) for r in table),
    )
    return _check_laws(cat)


def _from_index_tables(objects, names, srcs, dsts, ident, table) -> FinCat:
    cat = FinCat(
        objects=tuple(objects),
        mor_names=tuple(names),
        mor_src=tuple(srcs),
        mor_dst=tuple(dsts),
        identity=tuple(ident),
        table=tuple(tuple(r) for r in table),
    )
    return _check_laws(cat)


# -- standard constructions ----------------------------------------------


def terminal_category() -> FinCat:
    """The category 𝟙 with one object and its identity."""
    return poset_category(["*"], [])


def interval_category(n: int) -> FinCat:
    """The poset category [n] = {0 < 1 < ... < n}."""
    if n < 0:
        raise MalformedInput("interval needs n >= 0")
    objs = [str(i) for i in range(n + 1)]
    rels = [(str(i), str(i + 1)) for i in range(n)]
    return poset_category(objs, rels)


def poset_category(objects: Sequence[str], relations: Iterable[tuple[str, str]]) -> FinCat:
    """Category of a poset given by generating relations.

    The reflexive-transitive closure of ``relations`` is taken; a cycle
    through distinct elements is rejected as NotAPartialOrder.
    """
    objects = tuple(objects)
    if len(set(objects)) != len(objects):
        raise MalformedInput("duplicate object names")
    ix = {o: i for i, o in enumerate(objects)}
    n = len(objects)
    leq = [[False] * n for _ in range(n)]
    for i in range(n):
        leq[i][i] = True
    for a, b in relations:
        if a not in ix or b not in ix:
            raise MalformedInput(f"relation ({a!r}, {b!r}) references unknown object")
        leq[ix[a]][ix[b]] = True
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for j in range(n):
                if not leq[i][j]:
                    continue
                for k in range(n):
                    if leq[j][k] and not leq[i][k]:
                        leq[i][k] = True
                        changed = True
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j] and leq[j][i]:
                raise NotAPartialOrder(
                    f"cycle between {objects[i]!r} and {objects[j]!r}"
                )

    names: list[str] = []
    srcs: list[int] = []
    dsts: list[int] = []
    ident: list[int] = []
    for i, o in enumerate(objects):
        names.append(f"id_{o}")
        srcs.append(i)
        dsts.append(i)
        ident.append(i)
    for i in range(n):
        for j in range(n):
            if i != j and leq[i][j]:
                names.append(f"{objects[i]}<{objects[j]}")
                srcs.append(i)
                dsts.append(j)
    mor_of_pair = {(srcs[m], dsts[m]): m for m in range(len(names))}
    nm = len(names)
    table = [[_UNDEF] * nm for _ in range(nm)]
    for f in range(nm):
        for g in range(nm):
            if dsts[f] == srcs[g]:
                table[g][f] = mor_of_pair[(srcs[f], dsts[g])]
    return _from_index_tables(objects, names, srcs, dsts, ident, table)


def monoid_category(
    elements: Sequence[str],
    table: Mapping[tuple[str, str], str],
    object_name: str = "*",
) -> FinCat:
    """One-object category of a finite monoid given by its full table.

    ``table[(g, f)]`` is the product g·f (g after f).  The unit is detected;
    missing entries, a missing unit, or a non-associative table raise
    NotAMonoid.
    """
    elements = tuple(elements)
    if len(set(elements)) != len(elements):
        raise MalformedInput("duplicate element names")
    ix = {e: i for i, e in enumerate(elements)}
    n = len(elements)
    t = [[_UNDEF] * n for _ in range(n)]
    for (g, f), gf in table.items():
        if g not in ix or f not in ix or gf not in ix:
            raise NotAMonoid(f"table entry ({g}, {f}) -> {gf} references unknown element")
        t[ix[g]][ix[f]] = ix[gf]
    for i in range(n):
        for j in range(n):
            if t[i][j] == _UNDEF:
                raise NotAMonoid(f"table is missing product {elements[i]}·{elements[j]}")
    unit = None
    for e in range(n):
        if all(t[e][f] == f and t[f][e] == f for f in range(n)):
            unit = e
            break
    if unit is None:
        raise NotAMonoid("no two-sided unit")
    for a in range(n):
        for b in range(n):
            for c in range(n):
                if t[t[a][b]][c] != t[a][t[b][c]]:
                    raise NotAMonoid(
                        f"non-associative triple ({elements[a]}, {elements[b]}, {elements[c]})"
                    )
    return _from_index_tables(
        [object_name], elements, [0] * n, [0] * n, [unit], t
    )


def opposite_category(C: FinCat) -> FinCat:
    """Reverse all morphisms; names and indices are kept, so op∘op == id."""
    n = C.n_morphisms
    table = [[C.table[f][g] for f in range(n)] for g in range(n)]
    return _from_index_tables(
        C.objects, C.mor_names, C.mor_dst, C.mor_src, C.identity, table
    )


def product_category(C: FinCat, D: FinCat) -> FinCat:
    """Product category; object (i, j) gets index i*|D| + j, same for morphisms."""
    objs = [f"({c},{d})" for c in C.objects for d in D.objects]
    nd = D.n_morphisms
    names = [f"({c},{d})" for c in C.mor_names for d in D.mor_names]
    srcs = []
    dsts = []
    for mc in range(C.n_morphisms):
        for md in range(D.n_morphisms):
            srcs.append(C.mor_src[mc] * D.n_objects + D.mor_src[md])
            dsts.append(C.mor_dst[mc] * D.n_objects + D.mor_dst[md])
    ident = [
        C.identity[x] * nd + D.identity[y]
        for x in range(C.n_objects)
        for y in range(D.n_objects)
    ]
    nm = len(names)
    table = [[_UNDEF] * nm for _ in range(nm)]
    for g in range(nm):
        gc, gd = divmod(g, nd)
        for f in range(nm):
            fc, fd = divmod(f, nd)
            if C.defined(gc, fc) and D.defined(gd, fd):
                table[g][f] = C.table[gc][fc] * nd + D.table[gd][fd]
    return _from_index_tables(objs, names, srcs, dsts, ident, table)


def standard_category(kind: str, **kw) -> FinCat:
    """Dispatcher over the named standard constructions."""
    if kind == "terminal":
        return terminal_category()
    if kind == "interval":
        return interval_category(kw["n"])
    if kind == "poset":
        return poset_category(kw["objects"], kw["relations"])
    if kind == "monoid":
        return monoid_category(kw["elements"], kw["table"])
    if kind == "opposite":
        return opposite_category(kw["category"])
    if kind == "product":
        return product_category(kw["left"], kw["right"])
    raise MalformedInput(f"unknown standard kind {kind!r}")


# -- functors --------------------------------------------------------------


@dataclass(frozen=True)
class FinFunctor:
    """A functor between finite categories, validated exhaustively."""

    source: FinCat
    target: FinCat
    obj_map: tuple[int, ...]
    mor_map: tuple[int, ...]

    def __post_init__(self):
        S, T = self.source, self.target
        if len(self.obj_map) != S.n_objects or len(self.mor_map) != S.n_morphisms:
            raise NotAFunctor("object or morphism map has wrong length")
        for m in range(S.n_morphisms):
            fm = self.mor_map[m]
            if T.mor_src[fm] != self.obj_map[S.mor_src[m]] or \
               T.mor_dst[fm] != self.obj_map[S.mor_dst[m]]:
                raise NotAFunctor(
                    f"src/dst not preserved on {S.mor_names[m]}"
                )
        for x in range(S.n_objects):
            if self.mor_map[S.identity[x]] != T.identity[self.obj_map[x]]:
                raise NotAFunctor(f"identity of {S.objects[x]} not preserved")
        for f in range(S.n_morphisms):
            for g in range(S.n_morphisms):
                if S.defined(g, f):
                    if self.mor_map[S.table[g][f]] != \
                            T.table[self.mor_map[g]][self.mor_map[f]]:
                        raise NotAFunctor(
                            f"composition not preserved on "
                            f"({S.mor_names[g]}, {S.mor_names[f]})"
                        )

    def obj(self, x: int) -> int:
        return self.obj_map[x]

    def mor(self, m: int) -> int:
        return self.mor_map[m]


def identity_functor(C: FinCat) -> FinFunctor:
    return FinFunctor(C, C, tuple(range(C.n_objects)), tuple(range(C.n_morphisms)))


def compose_functors(g: FinFunctor, f: FinFunctor) -> FinFunctor:
    if f.target is not g.source and f.target != g.source:
        raise NotAFunctor("functors not composable")
    return FinFunctor(
        f.source,
        g.target,
        tuple(g.obj_map[x] for x in f.obj_map),
        tuple(g.mor_map[m] for m in f.mor_map),
    )


def constant_functor(C: FinCat, D: FinCat, obj: int) -> FinFunctor:
    """The functor collapsing C onto one object of D."""
    e = D.identity[obj]
    return FinFunctor(C, D, (obj,) * C.n_objects, (e,) * C.n_morphisms)


def product_projection(P: FinCat, C: FinCat, D: FinCat, which: int) -> FinFunctor:
    """Projection of product_category(C, D) onto factor 1 (C) or 2 (D)."""
    nd_o, nd_m = D.n_objects, D.n_morphisms
    if which == 1:
        return FinFunctor(
            P, C,
            tuple(x // nd_o for x in range(P.n_objects)),
            tuple(m // nd_m for m in range(P.n_morphisms)),
        )
    return FinFunctor(
        P, D,
        tuple(x % nd_o for x in range(P.n_objects)),
        tuple(m % nd_m for m in range(P.n_morphisms)),
    )


# -- factorization category -----------------------------------------------


class Factorization:
    """The factorization category FC of C together with the forgetful π.

    Objects of FC are the morphisms of C (same indices and names).  A
    morphism f -> f' is a pair (α, β) with f' = β∘f∘α; composition is
    (α', β')∘(α, β) = (α∘α', β'∘β).  ``pi`` lands in C^op × C and sends f to
    (src f, dst f) and a pair to itself.
    """

    def __init__(self, base: FinCat):
        self.base = base
        nmor = base.n_morphisms
        names: list[str] = []
        srcs: list[int] = []
        dsts: list[int] = []
        pairs: list[tuple[int, int, int, int]] = []  # (f, alpha, beta, f')
        lookup: dict[tuple[int, int, int], int] = {}
        for f in range(nmor):
            for alpha in range(nmor):
                if base.mor_dst[alpha] != base.mor_src[f]:
                    continue
                for beta in range(nmor):
                    if base.mor_src[beta] != base.mor_dst[f]:
                        continue
                    f2 = base.table[base.table[beta][f]][alpha]
                    lookup[(f, alpha, beta)] = len(names)
                    names.append(
                        f"{base.mor_names[f]}[{base.mor_names[alpha]},{base.mor_names[beta]}]"
                    )
                    srcs.append(f)
                    dsts.append(f2)
                    pairs.append((f, alpha, beta, f2))
        ident = [
            lookup[(f, base.identity[base.mor_src[f]], base.identity[base.mor_dst[f]])]
            for f in range(nmor)
        ]
        nfm = len(names)
        table = [[_UNDEF] * nfm for _ in range(nfm)]
        for m1 in range(nfm):  # (alpha, beta): f -> f'
            f, a1, b1, fmid = pairs[m1]
            for m2 in range(nfm):  # (alpha', beta'): f' -> f''
                f2, a2, b2, _ = pairs[m2]
                if f2 != fmid:
                    continue
                table[m2][m1] = lookup[(f, base.table[a1][a2], base.table[b2][b1])]
        self.cat = _from_index_tables(
            base.mor_names, names, srcs, dsts, ident, table
        )
        self.pairs = tuple(pairs)
        self._lookup = lookup
        self._op = None
        self._op_prod = None
        self._pi = None

    # C^op x C and the forgetful functor π are built on first use; they are
    # quadratic in the morphism count and most coefficient kinds avoid them.

    @property
    def op(self) -> FinCat:
        if self._op is None:
            self._op = opposite_category(self.base)
        return self._op

    @property
    def op_prod(self) -> FinCat:
        if self._op_prod is None:
            self._op_prod = op_product_category(self.base)
        return self._op_prod

    @property
    def pi(self) -> FinFunctor:
        if self._pi is None:
            base = self.base
            nb = base.n_morphisms
            self._pi = FinFunctor(
                self.cat,
                self.op_prod,
                tuple(base.mor_src[f] * base.n_objects + base.mor_dst[f]
                      for f in range(base.n_morphisms)),
                tuple(a * nb + b for (_, a, b, _) in self.pairs),
            )
        return self._pi

    def mor_of_pair(self, f: int, alpha: int, beta: int) -> int:
        """Index of the FC-morphism (α, β) out of object f."""
        try:
            return self._lookup[(f, alpha, beta)]
        except KeyError:
            raise MalformedInput(
                f"({self.base.mor_names[alpha]}, {self.base.mor_names[beta]}) "
                f"is not a factorization morphism out of {self.base.mor_names[f]}"
            ) from None


def op_product_category(C: FinCat) -> FinCat:
    """Cached C^op x C (the index category of bimodule coefficients)."""
    key = "op_prod"
    if key not in C._cache:
        C._cache[key] = product_category(opposite_category(C), C)
    return C._cache[key]


def factorization_category(C: FinCat) -> Factorization:
    """Cached factorization-category structure of a validated category."""
    key = "factorization"
    if key not in C._cache:
        C._cache[key] = Factorization(C)
    return C._cache[key]


def factorization_functor(u: FinFunctor, FS: Factorization, FT: Factorization) -> FinFunctor:
    """The induced functor F(u): F(source) -> F(target) on factorization categories."""
    if FS.base != u.source or FT.base != u.target:
        raise NotAFunctor("factorization data does not match the functor")
    obj_map = tuple(u.mor_map[f] for f in range(u.source.n_morphisms))
    mor_map = tuple(
        FT.mor_of_pair(u.mor_map[f], u.mor_map[a], u.mor_map[b])
        for (f, a, b, _) in FS.pairs
    )
    return FinFunctor(FS.cat, FT.cat, obj_map, mor_map)


# -- comma categories -------------------------------------------------------


class Comma:
    """The comma category b/u for u: E -> B and an object b of B.

    Objects are pairs (e, φ: b -> u(e)); a morphism (e, φ) -> (e', φ') is a
    morphism m: e -> e' of E with u(m)∘φ = φ'.  ``forgetful`` projects to E.
    """

    def __init__(self, u: FinFunctor, b: int):
        E, B = u.source, u.target
        if not 0 <= b < B.n_objects:
            raise ObjectNotInTarget(f"object index {b} not in the target category")
        self.u = u
        self.b = b
        objs: list[tuple[int, int]] = []
        for e in range(E.n_objects):
            for phi in B.hom(b, u.obj_map[e]):
                objs.append((e, phi))
        names = [f"({E.objects[e]},{B.mor_names[phi]})" for e, phi in objs]
        mor_names: list[str] = []
        mor_src: list[int] = []
        mor_dst: list[int] = []
        under: list[int] = []
        for i, (e, phi) in enumerate(objs):
            for j, (e2, phi2) in enumerate(objs):
                for m in E.hom(e, e2):
                    if B.table[u.mor_map[m]][phi] == phi2:
                        mor_names.append(f"{E.mor_names[m]}@{i}>{j}")
                        mor_src.append(i)
                        mor_dst.append(j)
                        under.append(m)
        lookup = {
            (mor_src[k], mor_dst[k], under[k]): k for k in range(len(under))
        }
        ident = [lookup[(i, i, E.identity[e])] for i, (e, _) in enumerate(objs)]
        nm = len(mor_names)
        table = [[_UNDEF] * nm for _ in range(nm)]
        for m1 in range(nm):
            for m2 in range(nm):
                if mor_dst[m1] != mor_src[m2]:
                    continue
                table[m2][m1] = lookup[
                    (mor_src[m1], mor_dst[m2], E.table[under[m2]][under[m1]])
                ]
        self.cat = _from_index_tables(names, mor_names, mor_src, mor_dst, ident, table)
        self.obj_pairs = tuple(objs)
        self.mor_under = tuple(under)
        self._obj_lookup = {p: i for i, p in enumerate(objs)}
        self._mor_lookup = lookup
        self.forgetful = FinFunctor(
            self.cat, E,
            tuple(e for e, _ in objs),
            tuple(under),
        )

    def obj_of_pair(self, e: int, phi: int) -> int:
        return self._obj_lookup[(e, phi)]


def comma_category(u: FinFunctor, b: int) -> Comma:
    return Comma(u, b)


def comma_precompose(
    u: FinFunctor, beta: int, from_comma: Comma, to_comma: Comma
) -> FinFunctor:
    """For β: b -> b', the functor b'/u -> b/u given by precomposition with β.

    ``from_comma`` must be b'/u and ``to_comma`` must be b/u.
    """
    B = u.target
    if B.mor_src[beta] != to_comma.b or B.mor_dst[beta] != from_comma.b:
        raise ObjectNotInTarget("β does not run between the given comma bases")
    obj_map = []
    for e, phi in from_comma.obj_pairs:
        obj_map.append(to_comma.obj_of_pair(e, B.table[phi][beta]))
    mor_map = []
    for k in range(from_comma.cat.n_morphisms):
        i = from_comma.cat.mor_src[k]
        j = from_comma.cat.mor_dst[k]
        m = from_comma.mor_under[k]
        mor_map.append(to_comma._mor_lookup[(obj_map[i], obj_map[j], m)])
    return FinFunctor(from_comma.cat, to_comma.cat, tuple(obj_map), tuple(mor_map))
