from itertools import product as iproduct

import pytest

from catcohom.errors import InvalidSimplexMorphism, NotOrderPreserving
from catcohom.fincat import (
    constant_functor,
    identity_functor,
    factorization_category,
    factorization_functor,
    product_category,
)
from catcohom.simplex import (
    OrderMap,
    SimplexMorphism,
    all_order_maps,
    apply_simplex_map,
    codegeneracy,
    coface,
    compose_order_maps,
    delta_u,
    face_morphism,
    identity_map,
    is_degenerate,
    nerve_level,
    nondegenerate_level,
    nu_morphism,
    nu_object,
    simplex_from_chain,
    truncated_simplex_category,
    vertex,
)


def bruteforce_level(C, n):
    """Independent enumeration: filter all morphism tuples by composability."""
    if n == 0:
        return [(x,) for x in range(C.n_objects)]
    out = []
    for chain in iproduct(range(C.n_morphisms), repeat=n):
        ok = all(C.mor_src[chain[i]] == C.mor_dst[chain[i + 1]] for i in range(n - 1))
        if ok:
            out.append(chain)
    return out


class TestNerve:
    def test_group_powers(self, bz2):
        for n in range(6):
            assert len(nerve_level(bz2, n)) == 2 ** n

    def test_circle_counts_vs_bruteforce(self, circle):
        for n in range(4):
            assert len(nerve_level(circle, n)) == len(bruteforce_level(circle, n))
        assert len(nerve_level(circle, 2)) == 12

    def test_terminal(self, one):
        assert len(nerve_level(one, 5)) == 1

    def test_product_cardinality(self, circle, i1):
        P = product_category(circle, i1)
        for n in range(4):
            assert len(nerve_level(P, n)) == \
                len(nerve_level(circle, n)) * len(nerve_level(i1, n))

    def test_deterministic_lex_order(self, circle):
        lvl = nerve_level(circle, 2)
        chains = [s.chain for s in lvl]
        assert chains == sorted(chains)

    def test_nondegenerate_counts(self, circle):
        assert len(nondegenerate_level(circle, 0)) == 4
        assert len(nondegenerate_level(circle, 1)) == 4
        assert len(nondegenerate_level(circle, 2)) == 0


class TestOrderMaps:
    def test_validation(self):
        with pytest.raises(NotOrderPreserving):
            OrderMap(1, 1, (1, 0))
        with pytest.raises(NotOrderPreserving):
            OrderMap(1, 1, (0, 2))

    def test_cofaces_and_codegeneracies(self):
        assert coface(1, 0).values == (1, 2)
        assert coface(1, 2).values == (0, 1)
        assert codegeneracy(0, 0).values == (0, 0)

    def test_cosimplicial_identity(self):
        # δ^j∘δ^i = δ^i∘δ^{j-1} for i < j
        for n in range(3):
            for j in range(n + 2):
                for i in range(j):
                    lhs = compose_order_maps(coface(n + 1, j), coface(n, i))
                    rhs = compose_order_maps(coface(n + 1, i), coface(n, j - 1))
                    assert lhs == rhs


class TestApplySimplexMap:
    def test_identity(self, circle):
        for s in nerve_level(circle, 2):
            assert apply_simplex_map(identity_map(2), s) == s

    def test_inner_face_composes(self, i2):
        f2 = i2.hom(i2.obj_index("2"), i2.obj_index("1"))  # none; chain goes down
        g1 = i2.mor_index("1<2")
        g0 = i2.mor_index("0<1")
        # chain C0=2 <- C1=1 <- C2=0: entries (1<2, 0<1)
        s = simplex_from_chain(i2, (g1, g0))
        face1 = apply_simplex_map(coface(1, 1), s)
        assert face1.chain == (i2.mor_index("0<2"),)

    def test_degeneracy_inserts_identity(self, i1):
        u = i1.mor_index("0<1")
        s = simplex_from_chain(i1, (u,))
        degen = apply_simplex_map(codegeneracy(1, 0), s)
        assert degen.chain == (i1.identity[1], u)
        assert is_degenerate(degen)

    def test_functoriality_of_application(self, bz2, circle):
        # exhaustive over all monotone [a] -> [b] -> [c], a,b,c <= 3
        for C in (bz2, circle):
            for c in range(3):
                for g in nerve_level(C, c):
                    for b in range(4):
                        for s in all_order_maps(b, c):
                            gs = apply_simplex_map(s, g)
                            for a in range(4):
                                for t in all_order_maps(a, b):
                                    lhs = apply_simplex_map(t, gs)
                                    rhs = apply_simplex_map(compose_order_maps(s, t), g)
                                    assert lhs == rhs


class TestDegeneracy:
    def test_vertices_never_degenerate(self, circle):
        for s in nerve_level(circle, 0):
            assert not is_degenerate(s)

    def test_identity_entry_degenerate(self, i1):
        u = i1.mor_index("0<1")
        s = simplex_from_chain(i1, (i1.identity[1], u))
        assert is_degenerate(s)

    def test_degenerate_iff_image_of_noninjective(self, bz2, i1):
        for C in (bz2, i1):
            for n in range(1, 4):
                images = set()
                for m in range(n):
                    for g in nerve_level(C, m):
                        for sm in all_order_maps(n, m):
                            if not sm.is_injective or True:
                                images.add(apply_simplex_map(sm, g))
                # images along maps from lower dimension are exactly the degenerate ones
                for s in nerve_level(C, n):
                    assert is_degenerate(s) == (s in images)


class TestDeltaU:
    def test_identity_functor(self, circle):
        u = identity_functor(circle)
        for s in nerve_level(circle, 2):
            assert delta_u(u, s) == s

    def test_collapse_to_point(self, circle, one):
        u = constant_functor(circle, one, 0)
        for s in nerve_level(circle, 3):
            t = delta_u(u, s)
            assert t.dim == 3 and set(t.chain) == {one.identity[0]}

    def test_commutes_with_simplex_maps(self, circle, one, bz2):
        u = constant_functor(circle, one, 0)
        for n in range(3):
            for g in nerve_level(circle, n):
                for a in range(3):
                    for sm in all_order_maps(a, n):
                        assert delta_u(u, apply_simplex_map(sm, g)) == \
                            apply_simplex_map(sm, delta_u(u, g))


class TestNu:
    def test_object_is_composite(self, i2):
        s = simplex_from_chain(i2, (i2.mor_index("1<2"), i2.mor_index("0<1")))
        assert nu_object(s) == i2.mor_index("0<2")
        assert nu_object(vertex(i2, 0)) == i2.identity[0]

    def test_inner_coface_gives_identity_pair(self, bz2):
        t = bz2.mor_index("t")
        g = simplex_from_chain(bz2, (t, t))
        sm = face_morphism(g, 1)
        e = bz2.identity[0]
        assert nu_morphism(sm) == (e, e)

    def test_coface_zero_composes_head(self, bz2):
        t = bz2.mor_index("t")
        e = bz2.identity[0]
        g = simplex_from_chain(bz2, (t, t))
        sm = face_morphism(g, 0)  # σ(0)=1, σ(1)=2
        assert nu_morphism(sm) == (e, t)

    def test_top_coface_composes_alpha(self, bz2):
        t = bz2.mor_index("t")
        e = bz2.identity[0]
        g = simplex_from_chain(bz2, (t, t))
        sm = face_morphism(g, 2)
        assert nu_morphism(sm) == (t, e)

    def test_invalid_simplex_morphism(self, bz2):
        t = bz2.mor_index("t")
        e = bz2.identity[0]
        g = simplex_from_chain(bz2, (t, t))
        wrong = simplex_from_chain(bz2, (e,))
        with pytest.raises(InvalidSimplexMorphism):
            SimplexMorphism(wrong, g, coface(1, 0))

    def test_functoriality_exhaustive(self, bz2, i2):
        # ν(σ∘τ) = ν(σ)∘ν(τ) in FC, over all simplex morphisms of dim <= 3
        for C in (bz2, i2):
            F = factorization_category(C)
            for c in range(3):
                for g in nerve_level(C, c):
                    for b in range(3):
                        for s in all_order_maps(b, c):
                            mid = apply_simplex_map(s, g)
                            sm_s = SimplexMorphism(mid, g, s)
                            a_s = nu_morphism(sm_s)
                            m_s = F.mor_of_pair(nu_object(mid), *a_s)
                            for a in range(3):
                                for t in all_order_maps(a, b):
                                    low = apply_simplex_map(t, mid)
                                    sm_t = SimplexMorphism(low, mid, t)
                                    a_t = nu_morphism(sm_t)
                                    m_t = F.mor_of_pair(nu_object(low), *a_t)
                                    st = compose_order_maps(s, t)
                                    sm_st = SimplexMorphism(low, g, st)
                                    a_st = nu_morphism(sm_st)
                                    m_st = F.mor_of_pair(nu_object(low), *a_st)
                                    assert m_st == F.cat.compose(m_s, m_t)

    def test_ladder_square_on_objects(self, circle, one):
        # ν(Δu(s)) = F(u)(ν(s)) for dims <= 3
        u = constant_functor(circle, one, 0)
        Fu = factorization_functor(
            u, factorization_category(circle), factorization_category(one)
        )
        for n in range(4):
            for s in nerve_level(circle, n):
                assert nu_object(delta_u(u, s)) == Fu.mor_map[nu_object(s)]


class TestTruncatedSimplexCategory:
    def test_interval_dim0(self, i1):
        T = truncated_simplex_category(i1, 0)
        assert T.cat.n_objects == 2
        assert T.cat.n_morphisms == 2

    def test_terminal_dim1(self, one):
        T = truncated_simplex_category(one, 1)
        # objects: the vertex and the degenerate edge
        assert T.cat.n_objects == 2
        # maps: [0]->[0] (1), [0]->[1] (2), [1]->[0] (1), [1]->[1] (3)
        assert T.cat.n_morphisms == 7
