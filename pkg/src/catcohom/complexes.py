"""Cochain and chain complexes of a finite category with system coefficients.

Degree n of the cochain complex is the direct sum of the value modules over
all n-simplices; the differential is the alternating sum of coface
transports, with the sign (-1)^i on the i-th coface.  Products and
coproducts coincide degreewise because every nerve level is finite, so one
block-matrix representation serves both the cochain and the chain side.

Computing H^n always assembles through degree n+1, so reported groups are
never truncation-unsafe.  The direct Baues-Wirsching complex is built from
its own sum formula without going through the comparison functor; degreewise
matrix equality of the two constructions is the strongest form of the
classical comparison and is enforced in the test suite.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Optional

from .coeff import CoeffMorphism, CoeffSystem, PulledBack
from .errors import (
    BeyondTruncation,
    NaturalityViolation,
    UnsupportedProvenance,
    VarianceMismatch,
)
from .exactalg import (
    CHAIN,
    COCHAIN,
    HomologyGroup,
    IntComplex,
    Matrix,
    ModuleDiagram,
    assemble_blocks,
    complex_homology,
    finite_colimit,
    finite_limit,
    pull_diagram,
)
from .fincat import Factorization, FinCat, factorization_category, opposite_category
from .simplex import (
    Simplex,
    apply_simplex_map,
    coface,
    delta_u,
    is_degenerate,
    nerve_level,
    nondegenerate_level,
    nu_object,
    truncated_simplex_category,
)

PROV_COCHAIN = "thomason-cochain"
PROV_CHAIN = "thomason-chain"
PROV_BW = "bw-direct"


@dataclass(eq=False)
class AssembledComplex:
    """An IntComplex plus the directory from simplices to matrix columns."""

    category: FinCat
    system: Optional[CoeffSystem]
    complex: IntComplex
    levels: tuple[tuple[Simplex, ...], ...]
    offsets: tuple[dict, ...]
    provenance: str
    normalized: bool = False

    @property
    def max_degree(self) -> int:
        return self.complex.top_degree

    def column(self, n: int, s: Simplex, local: int = 0) -> int:
        return self.offsets[n][s] + local

    def block(self, n: int, row_s: Simplex, col_s: Simplex) -> Matrix:
        """Extract one block of the differential leaving (cochain) or
        entering (chain) degree n; rows follow the complex orientation."""
        d = self.complex.diffs[n]
        if self.complex.orientation == COCHAIN:
            r0 = self.offsets[n + 1][row_s]
            c0 = self.offsets[n][col_s]
            rr = self._rank(n + 1, row_s)
            cc = self._rank(n, col_s)
        else:
            r0 = self.offsets[n][row_s]
            c0 = self.offsets[n + 1][col_s]
            rr = self._rank(n, row_s)
            cc = self._rank(n + 1, col_s)
        data = [[d.data[r0 + i][c0 + j] for j in range(cc)] for i in range(rr)]
        return Matrix(d.ring, rr, cc, data)

    def _rank(self, n: int, s: Simplex) -> int:
        level = self.levels[n]
        off = self.offsets[n]
        i = level.index(s)
        nxt = off[level[i + 1]] if i + 1 < len(level) else self.complex.dims[n]
        return nxt - off[s]


def _levels_and_offsets(C: FinCat, T: CoeffSystem, N: int, normalized: bool):
    level_fn = nondegenerate_level if normalized else nerve_level
    levels = tuple(level_fn(C, n) for n in range(N + 1))
    offsets = []
    dims = []
    for lvl in levels:
        off = {}
        total = 0
        for s in lvl:
            off[s] = total
            total += T.evaluate(s)
        offsets.append(off)
        dims.append(total)
    return levels, tuple(offsets), tuple(dims)


def _check_degree(T: CoeffSystem, N: int):
    if N < 0:
        raise BeyondTruncation("negative assembly degree")
    if T.max_dim is not None and N > T.max_dim:
        raise BeyondTruncation(
            f"assembly to degree {N} exceeds the truncation cutoff {T.max_dim}"
        )


def thomason_cochain_complex(C: FinCat, T: CoeffSystem, N: int,
                             normalized: bool = False) -> AssembledComplex:
    """The cochain complex of a covariant system, degrees 0..N.

    Block of d^n from column simplex f to row simplex g of dimension n+1:
    the sum over all i with g∘δ^i = f of (-1)^i T(δ^i).
    """
    if T.contravariant:
        raise VarianceMismatch("cochain complexes need a covariant system")
    _check_degree(T, N)
    if normalized and T.max_dim is not None:
        raise UnsupportedProvenance(
            "normalization needs a fully coherent (pulled-back) system"
        )
    levels, offsets, dims = _levels_and_offsets(C, T, N, normalized)
    diffs = []
    for n in range(N):
        index_n = {s: k for k, s in enumerate(levels[n])}
        blocks: dict[tuple[int, int], Matrix] = {}
        for gi, g in enumerate(levels[n + 1]):
            for i in range(n + 2):
                f = apply_simplex_map(coface(n, i), g)
                fi = index_n.get(f)
                if fi is None:  # degenerate face dropped by normalization
                    continue
                M = T.coface_map(g, i)
                if i % 2:
                    M = -M
                key = (gi, fi)
                blocks[key] = blocks[key] + M if key in blocks else M
        row_dims = [T.evaluate(s) for s in levels[n + 1]]
        col_dims = [T.evaluate(s) for s in levels[n]]
        diffs.append(assemble_blocks(row_dims, col_dims, blocks, T.ring))
    cx = IntComplex(T.ring, COCHAIN, dims, tuple(diffs))
    return AssembledComplex(C, T, cx, levels, offsets,
                            PROV_COCHAIN, normalized)


def thomason_chain_complex(C: FinCat, T: CoeffSystem, N: int,
                           normalized: bool = False) -> AssembledComplex:
    """The chain complex of a contravariant system, degrees 0..N.

    Block of d from column simplex f of dimension n+1 to its face f∘δ^i:
    (-1)^i times the reversed transport T(δ^i)."""
    if not T.contravariant:
        raise VarianceMismatch("chain complexes need a contravariant system")
    _check_degree(T, N)
    if normalized and T.max_dim is not None:
        raise UnsupportedProvenance(
            "normalization needs a fully coherent (pulled-back) system"
        )
    levels, offsets, dims = _levels_and_offsets(C, T, N, normalized)
    diffs = []
    for n in range(N):
        index_n = {s: k for k, s in enumerate(levels[n])}
        blocks: dict[tuple[int, int], Matrix] = {}
        for fi, f in enumerate(levels[n + 1]):
            for i in range(n + 2):
                face = apply_simplex_map(coface(n, i), f)
                ri = index_n.get(face)
                if ri is None:
                    continue
                M = T.coface_map(f, i)
                if i % 2:
                    M = -M
                key = (ri, fi)
                blocks[key] = blocks[key] + M if key in blocks else M
        row_dims = [T.evaluate(s) for s in levels[n]]
        col_dims = [T.evaluate(s) for s in levels[n + 1]]
        diffs.append(assemble_blocks(row_dims, col_dims, blocks, T.ring))
    cx = IntComplex(T.ring, CHAIN, dims, tuple(diffs))
    return AssembledComplex(C, T, cx, levels, offsets, PROV_CHAIN, normalized)


def bw_direct_complex(C: FinCat, D: ModuleDiagram, N: int,
                      fact: Optional[Factorization] = None) -> AssembledComplex:
    """Direct cochain complex of a natural system on the factorization
    category, built from the classical sum formula:

        (dc)(l_1,...,l_{n+1}) = D(id, l_1) c(l_2,...,l_{n+1})
            + sum_i (-1)^i c(l_1,...,l_i l_{i+1},...,l_{n+1})
            + (-1)^{n+1} D(l_{n+1}, id) c(l_1,...,l_n)

    This path never touches the comparison functor; it is the oracle the
    pulled-back construction is compared against degreewise.
    """
    fact = fact or factorization_category(C)
    if D.cat != fact.cat:
        raise VarianceMismatch("data must live on the factorization category of C")
    if D.contravariant:
        raise VarianceMismatch("the direct complex takes covariant data")

    def value(s: Simplex) -> int:
        return D.ranks[_composite(C, s)]

    levels = tuple(nerve_level(C, n) for n in range(N + 1))
    offsets = []
    dims = []
    for lvl in levels:
        off = {}
        total = 0
        for s in lvl:
            off[s] = total
            total += value(s)
        offsets.append(off)
        dims.append(total)
    diffs = []
    for n in range(N):
        index_n = {s: k for k, s in enumerate(levels[n])}
        blocks: dict[tuple[int, int], Matrix] = {}

        def add(gi, f, M):
            fi = index_n[f]
            key = (gi, fi)
            blocks[key] = blocks[key] + M if key in blocks else M

        for gi, g in enumerate(levels[n + 1]):
            comp = _composite(C, g)
            # i = 0: drop the head entry, transport by (id, l_1)
            f0 = apply_simplex_map(coface(n, 0), g)
            pair0 = fact.mor_of_pair(
                _composite(C, f0), C.identity[C.mor_src[_composite(C, f0)]], g.chain[0]
            )
            add(gi, f0, D.mats[pair0])
            # middle faces merge adjacent entries; the value module is unchanged
            for i in range(1, n + 1):
                f = apply_simplex_map(coface(n, i), g)
                M = Matrix.identity(value(f), D.ring)
                add(gi, f, M if i % 2 == 0 else -M)
            # i = n+1: drop the tail entry, transport by (l_{n+1}, id)
            fl = apply_simplex_map(coface(n, n + 1), g)
            pairl = fact.mor_of_pair(
                _composite(C, fl), g.chain[-1], C.identity[C.mor_dst[_composite(C, fl)]]
            )
            M = D.mats[pairl]
            add(gi, fl, M if (n + 1) % 2 == 0 else -M)
        row_dims = [value(s) for s in levels[n + 1]]
        col_dims = [value(s) for s in levels[n]]
        diffs.append(assemble_blocks(row_dims, col_dims, blocks, D.ring))
    cx = IntComplex(D.ring, COCHAIN, tuple(dims), tuple(diffs))
    return AssembledComplex(C, None, cx, levels, tuple(offsets), PROV_BW)


def _composite(C: FinCat, s: Simplex) -> int:
    return nu_object(s)


def normalized_complex(A: AssembledComplex) -> AssembledComplex:
    """Restrict an assembled complex to its nondegenerate simplices.

    Valid for pulled-back coefficients, where codegeneracy transports are
    identities and the restriction is the standard normalization
    sub/quotient with the same (co)homology."""
    if A.provenance not in (PROV_COCHAIN, PROV_CHAIN) or A.system is None:
        raise UnsupportedProvenance(f"cannot normalize a {A.provenance} complex")
    if not isinstance(A.system.rep, PulledBack):
        raise UnsupportedProvenance("normalization needs pulled-back coefficients")
    build = thomason_cochain_complex if A.provenance == PROV_COCHAIN \
        else thomason_chain_complex
    out = build(A.category, A.system, A.max_degree, normalized=True)
    out.provenance = "normalized"
    return out


@dataclass(eq=False)
class InducedMap:
    """A degreewise matrix map between two assembled complexes."""

    source: AssembledComplex
    target: AssembledComplex
    mats: tuple[Matrix, ...]

    def check_chain_map(self):
        for n in range(len(self.mats) - 1):
            if self.source.complex.orientation == COCHAIN:
                lhs = self.target.complex.diffs[n] * self.mats[n]
                rhs = self.mats[n + 1] * self.source.complex.diffs[n]
            else:
                lhs = self.mats[n] * self.source.complex.diffs[n]
                rhs = self.target.complex.diffs[n] * self.mats[n + 1]
            if lhs != rhs:
                raise NaturalityViolation(
                    f"induced map does not commute with d between degrees {n}, {n + 1}"
                )
        return self


def induced_cochain_map(m: CoeffMorphism, N: int) -> InducedMap:
    """Degreewise map C*(C1, T1) -> C*(C2, T2) along a covariant system
    morphism (φ: C2 -> C1, τ): a family sends its component at Δφ(g) through
    τ_g into the component at g."""
    if m.contravariant:
        raise VarianceMismatch("use induced_chain_map for contravariant systems")
    m.validate(min(N, 2))
    src = thomason_cochain_complex(m.source.base, m.source, N)
    dst = thomason_cochain_complex(m.target.base, m.target, N)
    mats = []
    for n in range(N + 1):
        blocks = {}
        src_ix = {s: k for k, s in enumerate(src.levels[n])}
        for gi, g in enumerate(dst.levels[n]):
            f = delta_u(m.phi, g)
            blocks[(gi, src_ix[f])] = m.tau(g)
        row_dims = [m.target.evaluate(s) for s in dst.levels[n]]
        col_dims = [m.source.evaluate(s) for s in src.levels[n]]
        mats.append(assemble_blocks(row_dims, col_dims, blocks, m.target.ring))
    return InducedMap(src, dst, tuple(mats)).check_chain_map()


def induced_chain_map(m: CoeffMorphism, N: int) -> InducedMap:
    """Degreewise map C_*(C1, T1) -> C_*(C2, T2) along a contravariant
    system morphism (φ: C1 -> C2, τ): the component at f lands, through
    τ_f, in the component at φ∘f."""
    if not m.contravariant:
        raise VarianceMismatch("use induced_cochain_map for covariant systems")
    m.validate(min(N, 2))
    src = thomason_chain_complex(m.source.base, m.source, N)
    dst = thomason_chain_complex(m.target.base, m.target, N)
    mats = []
    for n in range(N + 1):
        blocks = {}
        dst_ix = {s: k for k, s in enumerate(dst.levels[n])}
        for fi, f in enumerate(src.levels[n]):
            key = (dst_ix[delta_u(m.phi, f)], fi)
            M = m.tau(f)
            blocks[key] = blocks[key] + M if key in blocks else M
        row_dims = [m.target.evaluate(s) for s in dst.levels[n]]
        col_dims = [m.source.evaluate(s) for s in src.levels[n]]
        mats.append(assemble_blocks(row_dims, col_dims, blocks, m.target.ring))
    return InducedMap(src, dst, tuple(mats)).check_chain_map()


# -- (co)homology entry points -------------------------------------------------


def cohomology(C: FinCat, T: CoeffSystem, n: int,
               normalized: bool = False) -> HomologyGroup:
    """H^n; assembles through degree n+1 so the answer is truncation-safe."""
    A = thomason_cochain_complex(C, T, n + 1, normalized)
    h = complex_homology(A.complex, n)
    assert not h.truncation_unsafe
    return h


def homology(C: FinCat, T: CoeffSystem, n: int,
             normalized: bool = False) -> HomologyGroup:
    """H_n; assembles through degree n+1 so the answer is truncation-safe."""
    A = thomason_chain_complex(C, T, n + 1, normalized)
    h = complex_homology(A.complex, n)
    assert not h.truncation_unsafe
    return h


# -- degree-zero comparisons ----------------------------------------------------


def limit_diagram(T: CoeffSystem) -> ModuleDiagram:
    """The restriction of a system to simplices of dimension <= 1, as a
    covariant diagram over the truncated simplex category (over its opposite
    for contravariant systems).  Truncated tables carry coface transports
    only, so in that case the semi-simplicial subcategory is used; both index
    shapes have the same (co)limit, the equalizer of the two coface maps."""
    trunc = truncated_simplex_category(T.base, 1,
                                       injective_only=T.max_dim is not None)
    from .simplex import SimplexMorphism
    ranks = tuple(T.evaluate(s) for s in trunc.simplices)
    mats = []
    for k in range(trunc.cat.n_morphisms):
        i, j = trunc.cat.mor_src[k], trunc.cat.mor_dst[k]
        sm = SimplexMorphism(trunc.simplices[i], trunc.simplices[j], trunc.maps[k])
        mats.append(T.induced_map(sm))
    if not T.contravariant:
        return ModuleDiagram(trunc.cat, T.ring, ranks, tuple(mats))
    op = opposite_category(trunc.cat)
    return ModuleDiagram(op, T.ring, ranks, tuple(mats))


def limit_of_system(T: CoeffSystem):
    """The limit of a covariant system over its simplex category (H^0)."""
    return finite_limit(limit_diagram(T))


def colimit_of_system(T: CoeffSystem) -> HomologyGroup:
    """The colimit of a contravariant system over its simplex category (H_0)."""
    return finite_colimit(limit_diagram(T))
