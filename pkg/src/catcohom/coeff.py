"""Coefficient systems on the simplex category of a finite category.

Two representations are supported:

* ``PulledBack``: classical data (a natural system on the factorization
  category, a bimodule, a module, a local system on a user-supplied
  groupoid, or a single module) transported to simplices through the
  comparison functor ν followed by a prefix of the forgetful ladder
  FC -> C^op x C -> C -> G -> 1.  These systems are coherent in every
  dimension.
* ``Truncated``: explicit rank and coface tables up to a cutoff dimension.
  Only coface transports are stored, which is exactly what the (co)chain
  differentials consume; whether such tables extend to the whole simplex
  category is the caller's concern and is surfaced as metadata.

Values live in free modules over Z or Q; transports are exact matrices.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping, Optional, Union

from .errors import (
    BeyondTruncation,
    CofaceRelationViolation,
    IncompleteTables,
    MalformedInput,
    NonFunctorialData,
    NonFunctorialDiagram,
    NotALocalization,
)
from .exactalg import Matrix, ModuleDiagram, pull_diagram
from .fincat import (
    Factorization,
    FinCat,
    FinFunctor,
    compose_functors,
    factorization_category,
    factorization_functor,
    op_product_category,
    terminal_category,
)
from .simplex import (
    Simplex,
    SimplexMorphism,
    apply_simplex_map,
    coface,
    nerve_level,
    nu_morphism,
    nu_object,
)

KIND_BW = "bw"
KIND_BIMODULE = "bimodule"
KIND_MODULE = "module"
KIND_LOCAL = "local"
KIND_TRIVIAL = "trivial"
PULLBACK_KINDS = (KIND_BW, KIND_BIMODULE, KIND_MODULE, KIND_LOCAL, KIND_TRIVIAL)


@dataclass(frozen=True, eq=False)
class PulledBack:
    """Classical data seen through ν and a prefix of the forgetful ladder.

    ``data`` is a functor on the index category of the kind.  Evaluation
    sends a simplex through ν (composite morphism, pair (α, β)) and then
    through the prefix, which collapses to plain index arithmetic for every
    kind except "bw", where the factorization category itself is the index.
    """

    kind: str
    data: ModuleDiagram
    fact: Optional[Factorization] = None       # only for the "bw" kind
    localization: Optional[FinFunctor] = None  # C -> G for the "local" kind


class Truncated:
    """Explicit tables: rank per simplex and a matrix per (simplex, coface).

    Covariant tables store T(δ^i): T(g∘δ^i) -> T(g) keyed by the target
    simplex g; contravariant ones the reversed map.  The coface relations
    δ^j δ^i = δ^i δ^{j-1} (i < j) are verified for every simplex within the
    cutoff, which is exactly what d∘d = 0 downstream needs.
    """

    def __init__(
        self,
        base: FinCat,
        max_dim: int,
        values: Mapping[Simplex, int],
        cofaces: Mapping[tuple[Simplex, int], Matrix],
        ring: str,
        contravariant: bool,
    ):
        self.base = base
        self.max_dim = max_dim
        self.values = dict(values)
        self.cofaces = dict(cofaces)
        self.ring = ring
        self.contravariant = contravariant
        self._validate()

    def _validate(self):
        for n in range(self.max_dim + 1):
            for s in nerve_level(self.base, n):
                if s not in self.values:
                    raise IncompleteTables(f"missing rank for simplex {s.key()}")
                if self.values[s] < 0:
                    raise IncompleteTables(f"negative rank at {s.key()}")
        for n in range(1, self.max_dim + 1):
            for g in nerve_level(self.base, n):
                for i in range(n + 1):
                    M = self.cofaces.get((g, i))
                    if M is None:
                        raise IncompleteTables(
                            f"missing coface {i} table at simplex {g.key()}"
                        )
                    f = apply_simplex_map(coface(n - 1, i), g)
                    lo, hi = self.values[f], self.values[g]
                    want = (hi, lo) if not self.contravariant else (lo, hi)
                    if (M.rows, M.cols) != want:
                        raise IncompleteTables(
                            f"coface {i} at {g.key()} has shape {M.rows}x{M.cols}, "
                            f"expected {want[0]}x{want[1]}"
                        )
        for n in range(2, self.max_dim + 1):
            for g in nerve_level(self.base, n):
                for j in range(n + 1):
                    gj = apply_simplex_map(coface(n - 1, j), g)
                    for i in range(j):
                        gi = apply_simplex_map(coface(n - 1, i), g)
                        if not self.contravariant:
                            lhs = self.cofaces[(g, j)] * self.cofaces[(gj, i)]
                            rhs = self.cofaces[(g, i)] * self.cofaces[(gi, j - 1)]
                        else:
                            lhs = self.cofaces[(gj, i)] * self.cofaces[(g, j)]
                            rhs = self.cofaces[(gi, j - 1)] * self.cofaces[(g, i)]
                        if lhs != rhs:
                            raise CofaceRelationViolation(
                                f"coface relation ({i},{j}) fails at simplex {g.key()}"
                            )


@dataclass(frozen=True, eq=False)
class CoeffSystem:
    """A coefficient system on the simplex category of ``base``."""

    base: FinCat
    ring: str
    contravariant: bool
    rep: Union[PulledBack, Truncated]

    @property
    def kind(self) -> str:
        return self.rep.kind if isinstance(self.rep, PulledBack) else "truncated"

    @property
    def max_dim(self) -> Optional[int]:
        """Truncation cutoff, or None for fully coherent systems."""
        return self.rep.max_dim if isinstance(self.rep, Truncated) else None

    # -- evaluation -------------------------------------------------------

    def evaluate(self, s: Simplex) -> int:
        """Rank of the value module at a simplex."""
        if isinstance(self.rep, Truncated):
            if s.dim > self.rep.max_dim:
                raise BeyondTruncation(
                    f"simplex of dimension {s.dim} beyond cutoff {self.rep.max_dim}"
                )
            return self.rep.values[s]
        r = self.rep
        kind = r.kind
        if kind == KIND_TRIVIAL:
            return r.data.ranks[0]
        if kind == KIND_MODULE:
            return r.data.ranks[s.objs[0]]
        if kind == KIND_LOCAL:
            return r.data.ranks[r.localization.obj_map[s.objs[0]]]
        if kind == KIND_BIMODULE:
            return r.data.ranks[s.objs[-1] * self.base.n_objects + s.objs[0]]
        return r.data.ranks[nu_object(s)]

    def induced_map(self, sm: SimplexMorphism) -> Matrix:
        """Transport along a simplex morphism.

        Covariant systems return T(σ): T(source) -> T(target); contravariant
        ones the reversed map.  Truncated tables carry coface data only, so
        they transport along injective σ (composites of cofaces); anything
        else is beyond what the tables know.
        """
        if isinstance(self.rep, Truncated):
            return self._induced_truncated(sm)
        r = self.rep
        kind = r.kind
        if kind == KIND_TRIVIAL:
            return Matrix.identity(r.data.ranks[0], self.ring)
        alpha, beta = nu_morphism(sm)
        if kind == KIND_MODULE:
            return r.data.mats[beta]
        if kind == KIND_LOCAL:
            return r.data.mats[r.localization.mor_map[beta]]
        if kind == KIND_BIMODULE:
            return r.data.mats[alpha * self.base.n_morphisms + beta]
        fc_mor = r.fact.mor_of_pair(nu_object(sm.source), alpha, beta)
        return r.data.mats[fc_mor]

    def _induced_truncated(self, sm: SimplexMorphism) -> Matrix:
        rep = self.rep
        if sm.target.dim > rep.max_dim:
            raise BeyondTruncation(
                f"simplex of dimension {sm.target.dim} beyond cutoff {rep.max_dim}"
            )
        if not sm.map.is_injective:
            raise BeyondTruncation(
                "truncated tables carry coface data only; "
                "cannot transport along a non-injective simplex map"
            )
        missing = sorted(set(range(sm.target.dim + 1)) - set(sm.map.values))
        # σ = δ^{i_k}∘...∘δ^{i_1} for ascending missing values i_1 < ... < i_k
        mats = []
        t = sm.target
        for i in reversed(missing):
            mats.append(rep.cofaces[(t, i)])
            t = apply_simplex_map(coface(t.dim - 1, i), t)
        n = self.evaluate(sm.source if not self.contravariant else sm.target)
        out = Matrix.identity(n, self.ring)
        if not self.contravariant:
            for M in mats:  # innermost coface first
                out = M * out
        else:
            for M in mats:
                out = out * M
        return out

    def coface_map(self, g: Simplex, i: int) -> Matrix:
        """Transport along δ^i: g∘δ^i -> g (the differentials' only need)."""
        if isinstance(self.rep, Truncated):
            if g.dim > self.rep.max_dim:
                raise BeyondTruncation(
                    f"simplex of dimension {g.dim} beyond cutoff {self.rep.max_dim}"
                )
            return self.rep.cofaces[(g, i)]
        from .simplex import face_morphism
        return self.induced_map(face_morphism(g, i))


# -- constructors ------------------------------------------------------------


def pullback_system(
    C: FinCat,
    kind: str,
    data: Union[ModuleDiagram, int],
    *,
    contravariant: bool = False,
    localization: Optional[FinFunctor] = None,
    ring: Optional[str] = None,
) -> CoeffSystem:
    """Classical coefficient data as a coefficient system on simplices.

    ``data`` is a ModuleDiagram on the index category matching ``kind``:
    the factorization category for "bw", C^op x C for "bimodule", C itself
    for "module", the supplied groupoid for "local" (with ``localization``
    the functor q: C -> G, required to invert every morphism), and the
    terminal category for "trivial" (a plain rank is also accepted).
    """
    if kind not in PULLBACK_KINDS:
        raise MalformedInput(f"unknown coefficient kind {kind!r}")
    if kind == KIND_TRIVIAL and isinstance(data, int):
        data = ModuleDiagram(
            terminal_category(), ring or "Z", (data,),
            (Matrix.identity(data, ring or "Z"),),
            contravariant,
        )
    if not isinstance(data, ModuleDiagram):
        raise MalformedInput("coefficient data must be a ModuleDiagram")
    if data.contravariant != contravariant:
        raise MalformedInput("data variance does not match the requested variance")
    fact = None
    if kind == KIND_BW:
        fact = factorization_category(C)
        if data.cat != fact.cat:
            raise NonFunctorialData(
                "natural-system data must live on the factorization category of C"
            )
    elif kind == KIND_BIMODULE:
        if data.cat != op_product_category(C):
            raise NonFunctorialData("bimodule data must live on C^op x C")
    elif kind == KIND_MODULE:
        if data.cat != C:
            raise NonFunctorialData("module data must live on C")
    elif kind == KIND_LOCAL:
        if localization is None:
            raise MalformedInput("local systems need the localization functor q")
        if localization.source != C or localization.target != data.cat:
            raise MalformedInput("localization functor endpoints do not match")
        _check_localization(localization)
    else:  # trivial
        if data.cat.n_objects != 1 or data.cat.n_morphisms != 1:
            raise NonFunctorialData("trivial data must live on the terminal category")
    return CoeffSystem(
        base=C,
        ring=ring or data.ring,
        contravariant=contravariant,
        rep=PulledBack(kind, data, fact, localization),
    )


def _check_localization(q: FinFunctor):
    G = q.target
    invertible = set()
    for m in range(G.n_morphisms):
        for w in range(G.n_morphisms):
            if G.defined(w, m) and G.is_identity(G.table[w][m]) and \
               G.defined(m, w) and G.is_identity(G.table[m][w]):
                invertible.add(m)
                break
    for m in range(q.source.n_morphisms):
        if q.mor_map[m] not in invertible:
            raise NotALocalization(
                f"q sends {q.source.mor_names[m]} to a non-isomorphism"
            )


def constant_system(C: FinCat, rank: int = 1, ring: str = "Z",
                    contravariant: bool = False) -> CoeffSystem:
    """The trivial system with a fixed free value everywhere."""
    return pullback_system(C, KIND_TRIVIAL, rank, contravariant=contravariant,
                           ring=ring)


def truncated_system(
    C: FinCat,
    max_dim: int,
    values: Mapping[Simplex, int],
    cofaces: Mapping[tuple[Simplex, int], Matrix],
    ring: str = "Z",
    contravariant: bool = False,
) -> CoeffSystem:
    """Explicit tables up to ``max_dim``; validates coface relations."""
    rep = Truncated(C, max_dim, values, cofaces, ring, contravariant)
    return CoeffSystem(C, ring, contravariant, rep)


def truncate_system(T: CoeffSystem, max_dim: int) -> CoeffSystem:
    """Sample any system into explicit tables up to ``max_dim``."""
    if T.max_dim is not None and max_dim > T.max_dim:
        raise BeyondTruncation("cannot extend a truncated system")
    values = {}
    cofaces = {}
    for n in range(max_dim + 1):
        for s in nerve_level(T.base, n):
            values[s] = T.evaluate(s)
            for i in range(n + 1) if n >= 1 else ():
                cofaces[(s, i)] = T.coface_map(s, i)
    return truncated_system(T.base, max_dim, values, cofaces, T.ring,
                            T.contravariant)


# -- restriction --------------------------------------------------------------


def restrict_system(T: CoeffSystem, i: FinFunctor) -> CoeffSystem:
    """Precompose a system with the nerve map of i: D -> base.

    Pulled-back representations restrict by transporting their classical
    data along the corresponding ladder square, so the result is again a
    pulled-back system of the same kind on D.
    """
    if i.target != T.base:
        raise MalformedInput("functor target does not match the system's base")
    D = i.source
    if isinstance(T.rep, Truncated):
        from .simplex import delta_u
        values = {}
        cofaces = {}
        for n in range(T.rep.max_dim + 1):
            for s in nerve_level(D, n):
                values[s] = T.evaluate(delta_u(i, s))
                for j in range(n + 1) if n >= 1 else ():
                    cofaces[(s, j)] = T.coface_map(delta_u(i, s), j)
        return truncated_system(D, T.rep.max_dim, values, cofaces, T.ring,
                                T.contravariant)
    rep = T.rep
    kind = rep.kind
    if kind == KIND_TRIVIAL:
        return pullback_system(D, KIND_TRIVIAL, rep.data,
                               contravariant=T.contravariant, ring=T.ring)
    if kind == KIND_MODULE:
        return pullback_system(D, KIND_MODULE, pull_diagram(rep.data, i),
                               contravariant=T.contravariant, ring=T.ring)
    if kind == KIND_LOCAL:
        q = compose_functors(rep.localization, i)
        return pullback_system(D, KIND_LOCAL, rep.data,
                               contravariant=T.contravariant,
                               localization=q, ring=T.ring)
    if kind == KIND_BIMODULE:
        d_prod = op_product_category(D)
        e_prod = op_product_category(T.base)
        ne_o, ne_m = T.base.n_objects, T.base.n_morphisms
        nd_o, nd_m = D.n_objects, D.n_morphisms
        obj_map = tuple(
            i.obj_map[x // nd_o] * ne_o + i.obj_map[x % nd_o]
            for x in range(d_prod.n_objects)
        )
        mor_map = tuple(
            i.mor_map[m // nd_m] * ne_m + i.mor_map[m % nd_m]
            for m in range(d_prod.n_morphisms)
        )
        prod_f = FinFunctor(d_prod, e_prod, obj_map, mor_map)
        return pullback_system(D, KIND_BIMODULE, pull_diagram(rep.data, prod_f),
                               contravariant=T.contravariant, ring=T.ring)
    # bw: pull the natural system back along the factorization functor F(i)
    FD = factorization_category(D)
    Fi = factorization_functor(i, FD, rep.fact)
    return pullback_system(D, KIND_BW, pull_diagram(rep.data, Fi),
                           contravariant=T.contravariant, ring=T.ring)


# -- morphisms of systems ------------------------------------------------------


class CoeffMorphism:
    """A morphism of coefficient systems.

    For covariant systems this is a functor φ: target.base -> source.base
    together with components τ_s: T1(Δφ s) -> T2(s); for contravariant
    systems a functor φ: source.base -> target.base with components
    τ_f: T1(f) -> T2(Δφ f).  ``tau`` maps a simplex to the component matrix
    (``None`` means identity).  Naturality on coface and codegeneracy
    generators is verified up to the requested dimension.
    """

    def __init__(self, phi: FinFunctor, source: CoeffSystem, target: CoeffSystem,
                 tau=None):
        if source.contravariant != target.contravariant:
            raise MalformedInput("cannot mix variances in a coefficient morphism")
        self.contravariant = source.contravariant
        if not self.contravariant:
            if phi.source != target.base or phi.target != source.base:
                raise MalformedInput(
                    "covariant morphism needs φ: target.base -> source.base"
                )
        else:
            if phi.source != source.base or phi.target != target.base:
                raise MalformedInput(
                    "contravariant morphism needs φ: source.base -> target.base"
                )
        self.phi = phi
        self.source = source
        self.target = target
        self._tau = tau

    def tau(self, s: Simplex) -> Matrix:
        from .errors import NaturalityViolation
        from .simplex import delta_u
        if not self.contravariant:
            rows = self.target.evaluate(s)
            cols = self.source.evaluate(delta_u(self.phi, s))
        else:
            rows = self.target.evaluate(delta_u(self.phi, s))
            cols = self.source.evaluate(s)
        if self._tau is None:
            if rows != cols:
                raise NaturalityViolation(
                    f"identity component at {s.key()} needs equal ranks, "
                    f"got {rows} and {cols}"
                )
            return Matrix.identity(rows, self.target.ring)
        M = self._tau(s)
        if (M.rows, M.cols) != (rows, cols):
            raise NaturalityViolation(
                f"component at {s.key()} has shape {M.rows}x{M.cols}, "
                f"expected {rows}x{cols}"
            )
        return M

    def validate(self, max_dim: int):
        """Check the naturality squares on all coface and codegeneracy
        generators between simplices of dimension <= max_dim."""
        from .errors import NaturalityViolation
        from .simplex import (
            SimplexMorphism,
            codegeneracy,
            delta_u,
        )
        from .simplex import face_morphism
        base = self.target.base if not self.contravariant else self.source.base
        gens = []
        for n in range(1, max_dim + 1):
            for g in nerve_level(base, n):
                for i in range(n + 1):
                    gens.append(face_morphism(g, i))
        # codegeneracies only make sense when both sides are fully coherent
        if self.source.max_dim is None and self.target.max_dim is None:
            for n in range(max_dim):
                for g in nerve_level(base, n):
                    for i in range(n + 1):
                        sm = codegeneracy(n, i)
                        src = apply_simplex_map(sm, g)
                        gens.append(SimplexMorphism(src, g, sm))
        for sm in gens:
            if not self.contravariant:
                phis = SimplexMorphism(
                    delta_u(self.phi, sm.source),
                    delta_u(self.phi, sm.target),
                    sm.map,
                )
                lhs = self.target.induced_map(sm) * self.tau(sm.source)
                rhs = self.tau(sm.target) * self.source.induced_map(phis)
            else:
                phis = SimplexMorphism(
                    delta_u(self.phi, sm.source),
                    delta_u(self.phi, sm.target),
                    sm.map,
                )
                lhs = self.tau(sm.source) * self.source.induced_map(sm)
                rhs = self.target.induced_map(phis) * self.tau(sm.target)
            if lhs != rhs:
                raise NaturalityViolation(
                    f"naturality square fails at {sm.source.key()} -> {sm.target.key()}"
                )
        return self
