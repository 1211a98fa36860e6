"""Derived Kan extensions over comma categories and Leray-Andre E2 pages.

For u: E -> B and a module-type coefficient F on E, the q-th derived image
assigns to each object b of B the degree-q cohomology of the comma category
b/u with the restricted coefficients, with transports induced by the
precomposition functors between comma categories.  The E2 page pairs the
cohomology of B with these derived coefficients against the independently
computed cohomology of E (the abutment).

Everything here runs over the rationals: homology-level transports need a
functorial choice of representatives, realized by explicit section and
projection matrices of ker -> H; over the integers torsion makes such
choices ambiguous, so integer input is rejected rather than approximated.

Only the E2 page and the abutment are produced.  Higher differentials and
page turning are out of scope; convergence is checked through properties
that any convergent first-quadrant spectral sequence satisfies: the Euler
characteristic identity, the degreewise dimension bound, and collapse
equality when a single row survives.

The homology variant uses the same comma categories b/u: the left Kan
extension of a contravariant system is a colimit over (b/u)^op, so the
derived image at b is H_q(b/u) with transports running contravariantly on
B (precomposition maps b'/u into b/u and homology is covariant in the
category).
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .coeff import (
    KIND_LOCAL,
    KIND_MODULE,
    KIND_TRIVIAL,
    CoeffMorphism,
    CoeffSystem,
    pullback_system,
    restrict_system,
)
from .complexes import (
    AssembledComplex,
    cohomology,
    homology,
    induced_chain_map,
    induced_cochain_map,
    thomason_chain_complex,
    thomason_cochain_complex,
)
from .errors import RingUnsupported, UnsupportedCoefficientKind
from .exactalg import (
    COCHAIN,
    HomologyGroup,
    Matrix,
    ModuleDiagram,
    column_space_basis_q,
    hjoin,
    kernel_basis_q,
    solve_exact,
)
from .fincat import Comma, FinFunctor, comma_category, comma_precompose

MODULE_KINDS = (KIND_MODULE, KIND_LOCAL, KIND_TRIVIAL)


def _require_module_kind(F: CoeffSystem, want_contravariant: bool):
    if F.kind not in MODULE_KINDS:
        raise UnsupportedCoefficientKind(
            f"{F.kind} coefficients need comma categories over the whole simplex "
            "category, which are infinite; only module, local and trivial kinds "
            "are supported here"
        )
    if F.ring != "Q":
        raise RingUnsupported(
            "homology-level transports need rational coefficients; over the "
            "integers torsion leaves no canonical choice of representatives"
        )
    if F.contravariant != want_contravariant:
        from .errors import VarianceMismatch
        raise VarianceMismatch(
            "expected a "
            + ("contravariant" if want_contravariant else "covariant")
            + " coefficient system"
        )


@dataclass(frozen=True)
class HomologyBasis:
    """Explicit presentation of H at one degree of a rational complex.

    ``im`` spans the image of the incoming differential inside the ambient
    degree; ``sect`` completes it to a basis of the kernel of the outgoing
    one, so its columns are representatives of a homology basis.  Classes of
    kernel vectors are read off by solving against [im | sect]."""

    im: Matrix
    sect: Matrix

    @property
    def dim(self) -> int:
        return self.sect.cols

    def classes_of(self, vectors: Matrix) -> Matrix:
        """Coordinates in the homology basis of kernel-valued columns."""
        if self.im.cols + self.sect.cols == 0:
            return Matrix.zeros(0, vectors.cols, "Q")
        X = solve_exact(hjoin([self.im, self.sect]), vectors)
        data = X.data[self.im.cols:]
        return Matrix("Q", self.sect.cols, vectors.cols, data)


class _Span:
    """Incremental rational span with membership testing."""

    def __init__(self, dim: int):
        self.dim = dim
        self.pivots: list[tuple[int, list]] = []  # (pivot column, reduced row)

    def add(self, vec) -> bool:
        """Reduce against the span; returns True when the vector was new."""
        from fractions import Fraction
        v = [Fraction(x) for x in vec]
        for c, row in self.pivots:
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        for c, x in enumerate(v):
            if x:
                inv = 1 / x
                self.pivots.append((c, [a * inv for a in v]))
                return True
        return False


def homology_basis(A: AssembledComplex, n: int) -> HomologyBasis:
    """Section/projection data for H at degree n of a rational complex."""
    cx = A.complex
    if cx.orientation == COCHAIN:
        out = cx.diffs[n] if n < cx.top_degree else None
        into = cx.diffs[n - 1] if n >= 1 else None
    else:
        out = cx.diffs[n - 1] if n >= 1 else None
        into = cx.diffs[n] if n < cx.top_degree else None
    c = cx.dims[n]
    ker = kernel_basis_q(out) if out is not None else Matrix.identity(c, "Q")
    im = column_space_basis_q(into) if into is not None \
        else Matrix.zeros(c, 0, "Q")
    # complete im to a basis of ker by adding independent kernel columns
    span = _Span(c)
    for j in range(im.cols):
        span.add(im.column(j))
    chosen = [j for j in range(ker.cols) if span.add(ker.column(j))]
    sect = Matrix("Q", c, len(chosen),
                  [[ker.data[i][j] for j in chosen] for i in range(c)])
    return HomologyBasis(im, sect)


@dataclass(frozen=True)
class DerivedImage:
    """Object-wise derived Kan extension data in one degree q.

    ``diagram`` holds the homology values (as ranks over Q) and transports;
    it is covariant on the base for the right (cohomology) variant and
    contravariant for the left (homology) variant.  Functoriality of the
    transports is verified by the diagram constructor.
    """

    u: FinFunctor
    q: int
    diagram: ModuleDiagram
    values: tuple[HomologyGroup, ...]
    commas: tuple[Comma, ...] = field(repr=False)


def _comma_system(F: CoeffSystem, comma: Comma) -> CoeffSystem:
    return restrict_system(F, comma.forgetful)


def derived_right_kan(u: FinFunctor, F: CoeffSystem, q: int) -> DerivedImage:
    """R^q of the right Kan extension along u at module-type coefficients.

    Value at b: H^q(b/u, F∘Q^b).  Transport along β: b -> b': the map on
    cohomology induced by the precomposition functor b'/u -> b/u.
    """
    _require_module_kind(F, want_contravariant=False)
    B = u.target
    commas = tuple(comma_category(u, b) for b in range(B.n_objects))
    systems = [_comma_system(F, K) for K in commas]
    complexes = [thomason_cochain_complex(K.cat, S, q + 1)
                 for K, S in zip(commas, systems)]
    bases = [homology_basis(A, q) for A in complexes]
    ranks = tuple(b.dim for b in bases)
    mats = []
    for m in range(B.n_morphisms):
        b, b2 = B.mor_src[m], B.mor_dst[m]
        P = comma_precompose(u, m, commas[b2], commas[b])
        cm = CoeffMorphism(P, systems[b], systems[b2])
        im = induced_cochain_map(cm, q + 1)
        moved = im.mats[q] * bases[b].sect
        mats.append(bases[b2].classes_of(moved))
    diagram = ModuleDiagram(B, "Q", ranks, tuple(mats))
    values = tuple(HomologyGroup(r) for r in ranks)
    return DerivedImage(u, q, diagram, values, commas)


def derived_left_kan(u: FinFunctor, F: CoeffSystem, q: int) -> DerivedImage:
    """L_q of the left Kan extension along u at contravariant module-type
    coefficients.

    Value at b: H_q(b/u, F∘Q^b); transports run from b' to b along the
    precomposition functors, a contravariant diagram on the base.
    """
    _require_module_kind(F, want_contravariant=True)
    B = u.target
    commas = tuple(comma_category(u, b) for b in range(B.n_objects))
    systems = [_comma_system(F, K) for K in commas]
    complexes = [thomason_chain_complex(K.cat, S, q + 1)
                 for K, S in zip(commas, systems)]
    bases = [homology_basis(A, q) for A in complexes]
    ranks = tuple(b.dim for b in bases)
    mats = []
    for m in range(B.n_morphisms):
        b, b2 = B.mor_src[m], B.mor_dst[m]
        P = comma_precompose(u, m, commas[b2], commas[b])
        cm = CoeffMorphism(P, systems[b2], systems[b])
        im = induced_chain_map(cm, q + 1)
        moved = im.mats[q] * bases[b2].sect
        mats.append(bases[b].classes_of(moved))
    diagram = ModuleDiagram(B, "Q", ranks, tuple(mats), contravariant=True)
    values = tuple(HomologyGroup(r) for r in ranks)
    return DerivedImage(u, q, diagram, values, commas)


# -- E2 pages -----------------------------------------------------------------


@dataclass(frozen=True)
class E2Page:
    """An E2 grid with its independently computed abutment.

    ``grid[p][q]`` for 0 <= p <= pmax, 0 <= q <= qmax; ``abutment[n]`` for
    n <= pmax + qmax.  Homology pages are indexed on the same homological
    first-quadrant grid (p, q >= 0); ``meta`` records that convention."""

    variant: str  # "cohomology" | "homology"
    grid: tuple[tuple[HomologyGroup, ...], ...]
    abutment: tuple[HomologyGroup, ...]
    ring: str
    meta: dict = field(default_factory=dict, compare=False)

    @property
    def pmax(self) -> int:
        return len(self.grid) - 1

    @property
    def qmax(self) -> int:
        return len(self.grid[0]) - 1

    def dims(self) -> list[list[int]]:
        return [[h.free_rank for h in row] for row in self.grid]

    def to_json(self) -> dict:
        return {
            "variant": self.variant,
            "e2": [[h.to_json() for h in row] for row in self.grid],
            "abutment": [h.to_json() for h in self.abutment],
            "ring": self.ring,
            "meta": dict(self.meta),
        }


def e2_property_report(page: E2Page) -> dict:
    """Convergence sanity checks valid for any first-quadrant E2 with the
    given abutment: Euler identity, dimension bound, collapse equality."""
    euler_e2 = sum(
        (-1) ** (p + q) * page.grid[p][q].free_rank
        for p in range(page.pmax + 1)
        for q in range(page.qmax + 1)
    )
    euler_ab = sum(
        (-1) ** n * h.free_rank for n, h in enumerate(page.abutment)
    )
    bound_ok = True
    for n, h in enumerate(page.abutment):
        total = sum(
            page.grid[p][n - p].free_rank
            for p in range(page.pmax + 1)
            if 0 <= n - p <= page.qmax
        )
        if h.free_rank > total:
            bound_ok = False
    single_row = all(
        page.grid[p][q].free_rank == 0
        for p in range(page.pmax + 1)
        for q in range(1, page.qmax + 1)
    )
    collapse_ok = None
    if single_row:
        collapse_ok = all(
            page.abutment[n].free_rank ==
            (page.grid[n][0].free_rank if n <= page.pmax else 0)
            for n in range(len(page.abutment))
        )
    return {
        "euler_e2": euler_e2,
        "euler_abutment": euler_ab,
        "euler_ok": euler_e2 == euler_ab,
        "dimension_bound_ok": bound_ok,
        "single_row": single_row,
        "collapse_ok": collapse_ok,
    }


def leray_e2(u: FinFunctor, F: CoeffSystem, pmax: int, qmax: int) -> E2Page:
    """E2 of the cohomology spectral sequence of u with module-type F:
    the base cohomology of the derived images against the total cohomology."""
    _require_module_kind(F, want_contravariant=False)
    B, E = u.target, u.source
    grid = []
    images = [derived_right_kan(u, F, q) for q in range(qmax + 1)]
    for p in range(pmax + 1):
        row = []
        for q in range(qmax + 1):
            S = pullback_system(B, KIND_MODULE, images[q].diagram, ring="Q")
            row.append(cohomology(B, S, p))
        grid.append(tuple(row))
    abutment = tuple(cohomology(E, F, n) for n in range(pmax + qmax + 1))
    return E2Page("cohomology", tuple(grid), abutment, "Q",
                  {"indexing": "first-quadrant (p, q >= 0)"})


def colim_e2(u: FinFunctor, F: CoeffSystem, pmax: int, qmax: int) -> E2Page:
    """Homology dual of leray_e2 for contravariant module-type coefficients."""
    _require_module_kind(F, want_contravariant=True)
    B, E = u.target, u.source
    grid = []
    images = [derived_left_kan(u, F, q) for q in range(qmax + 1)]
    for p in range(pmax + 1):
        row = []
        for q in range(qmax + 1):
            S = pullback_system(B, KIND_MODULE, images[q].diagram,
                                contravariant=True, ring="Q")
            row.append(homology(B, S, p))
        grid.append(tuple(row))
    abutment = tuple(homology(E, F, n) for n in range(pmax + qmax + 1))
    return E2Page("homology", tuple(grid), abutment, "Q",
                  {"indexing": "homological first-quadrant grid (p, q >= 0)"})
