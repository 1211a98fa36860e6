import math
import random
from fractions import Fraction

import pytest

from catcohom.errors import DegreeOutOfRange, NonFunctorialDiagram
from catcohom.exactalg import (
    CHAIN,
    COCHAIN,
    HomologyGroup,
    IntComplex,
    Matrix,
    ModuleDiagram,
    complex_homology,
    constant_diagram,
    determinant,
    finite_colimit,
    finite_limit,
    invariant_factors,
    kernel_basis_q,
    kernel_basis_z,
    rank_exact,
    smith_normal_form,
    solve_exact,
)
from catcohom.fincat import interval_category, terminal_category


def M(rows, ring="Z"):
    return Matrix.from_rows(rows, ring)


class TestSmithNormalForm:
    def test_already_diagonal(self):
        U, D, V = smith_normal_form(M([[2]]), verify=True)
        assert D.data == ((2,),)

    def test_two_by_two(self):
        A = M([[2, 4], [6, 8]])
        # oracle: d1 = gcd of entries, d1*d2 = |det|
        d1 = math.gcd(2, math.gcd(4, math.gcd(6, 8)))
        d2 = abs(2 * 8 - 4 * 6) // d1
        U, D, V = smith_normal_form(A, verify=True)
        assert D.data == ((d1, 0), (0, d2)) == ((2, 0), (0, 4))
        assert U * A * V == D

    def test_zero_matrix(self):
        A = Matrix.zeros(3, 2)
        U, D, V = smith_normal_form(A, verify=True)
        assert D.is_zero()
        assert abs(determinant(U)) == 1 and abs(determinant(V)) == 1

    def test_empty_shapes(self):
        for shape in [(0, 0), (0, 3), (3, 0)]:
            A = Matrix.zeros(*shape)
            U, D, V = smith_normal_form(A, verify=True)
            assert (D.rows, D.cols) == shape

    def test_randomized_postconditions(self):
        rng = random.Random(7)
        for _ in range(40):
            m = rng.randint(1, 5)
            n = rng.randint(1, 5)
            A = M([[rng.randint(-9, 9) for _ in range(n)] for _ in range(m)])
            U, D, V = smith_normal_form(A, verify=True)
            diag = [D.data[i][i] for i in range(min(m, n))]
            for a, b in zip(diag, diag[1:]):
                assert (a == 0 and b == 0) or (a != 0 and b % a == 0)

    def test_invariant_factors(self):
        assert invariant_factors(M([[2, 4], [6, 8]])) == [2, 4]
        assert invariant_factors(Matrix.zeros(2, 2)) == []


class TestRankKernelSolve:
    def test_rank_int_and_fraction_agree(self):
        rng = random.Random(3)
        for _ in range(25):
            rows = [[rng.randint(-4, 4) for _ in range(4)] for _ in range(3)]
            A = M(rows)
            B = Matrix.from_rows([[Fraction(x) for x in r] for r in rows], "Q")
            assert rank_exact(A) == rank_exact(B)

    def test_kernel_q(self):
        A = M([[1, 2, 3]])
        K = kernel_basis_q(A)
        assert K.cols == 2
        assert (A * K).is_zero()

    def test_kernel_z_is_saturated_basis(self):
        A = M([[2, 4], [1, 2]])
        K = kernel_basis_z(A)
        assert K.cols == 1
        assert (A * K).is_zero()
        col = [K.data[i][0] for i in range(2)]
        assert math.gcd(*[abs(x) for x in col]) == 1  # primitive vector

    def test_solve(self):
        A = M([[1, 2], [3, 4]])
        B = M([[5], [6]])
        X = solve_exact(A, B)
        assert A * X == B.to_ring("Q")


class TestComplexHomology:
    def test_single_degree(self):
        K = IntComplex("Z", COCHAIN, (1,), ())
        h = complex_homology(K, 0)
        assert (h.free_rank, h.torsion) == (1, ())
        assert h.truncation_unsafe  # no d^0 supplied

    def test_times_two(self):
        d = M([[2]])
        K = IntComplex("Z", COCHAIN, (1, 1), (d,))
        assert complex_homology(K, 0) == HomologyGroup(0)
        h1 = complex_homology(K, 1)
        assert (h1.free_rank, h1.torsion) == (0, (2,))

    def test_chain_orientation(self):
        # Z <--2-- Z in degrees 0, 1: H_0 = Z/2, H_1 = 0 (unsafe)
        d = M([[2]])
        K = IntComplex("Z", CHAIN, (1, 1), (d,))
        h0 = complex_homology(K, 0)
        assert (h0.free_rank, h0.torsion) == (0, (2,))
        assert not h0.truncation_unsafe
        assert complex_homology(K, 1).truncation_unsafe

    def test_degree_out_of_range(self):
        K = IntComplex("Z", COCHAIN, (1,), ())
        with pytest.raises(DegreeOutOfRange):
            complex_homology(K, 2)

    def test_rational_complex_has_no_torsion(self):
        d = Matrix.from_rows([[2]], "Q")
        K = IntComplex("Q", COCHAIN, (1, 1), (d,))
        assert complex_homology(K, 1) == HomologyGroup(0)


class TestDiagrams:
    def test_non_functorial_rejected(self):
        i2 = interval_category(2)
        # break composition: (0<2) must equal (1<2)∘(0<1) = 6 but is set to 5
        mats = [Matrix.identity(1)] * i2.n_morphisms
        mats[i2.mor_index("0<1")] = M([[2]])
        mats[i2.mor_index("1<2")] = M([[3]])
        mats[i2.mor_index("0<2")] = M([[5]])
        with pytest.raises(NonFunctorialDiagram):
            ModuleDiagram(i2, "Z", (1, 1, 1), tuple(mats))
        # wrong shape on an identity
        i1 = interval_category(1)
        with pytest.raises(NonFunctorialDiagram):
            ModuleDiagram(
                i1, "Z", (1, 1),
                (Matrix.identity(1), Matrix.identity(2), M([[2]])),
            )

    def test_limit_over_terminal(self):
        T = terminal_category()
        F = constant_diagram(T, 2)
        res = finite_limit(F)
        assert res.group == HomologyGroup(2)

    def test_limit_over_interval_initial_object(self):
        i1 = interval_category(1)
        u = i1.mor_index("0<1")
        mats = [None] * i1.n_morphisms
        for m in range(i1.n_morphisms):
            mats[m] = M([[2]]) if m == u else Matrix.identity(1)
        F = ModuleDiagram(i1, "Z", (1, 1), tuple(mats))
        res = finite_limit(F)
        assert res.group == HomologyGroup(1)
        # the cone projects isomorphically onto F(0)
        assert abs(res.projections[0].data[0][0]) == 1

    def test_sign_action_limit_and_colimit(self, bz2=None):
        from catcohom.fincat import monoid_category
        bz2 = monoid_category(
            ["1", "t"],
            {("1", "1"): "1", ("1", "t"): "t", ("t", "1"): "t", ("t", "t"): "1"},
        )
        t = bz2.mor_index("t")
        mats = [Matrix.identity(1), Matrix.identity(1)]
        mats[t] = M([[-1]])
        F = ModuleDiagram(bz2, "Z", (1,), tuple(mats))
        # fixed points of x -> -x on Z: kernel of multiplication by 2
        assert finite_limit(F).group == HomologyGroup(0)
        # coinvariants: Z / (x - (-x)) = Z/2
        assert finite_colimit(F) == HomologyGroup(0, (2,))

    def test_rational_rank_matches_integer_free_rank(self):
        i1 = interval_category(1)
        u = i1.mor_index("0<1")
        mats_z = [Matrix.identity(1)] * i1.n_morphisms
        mats_z[u] = M([[3]])
        Fz = ModuleDiagram(i1, "Z", (1, 1), tuple(mats_z))
        Fq = ModuleDiagram(
            i1, "Q", (1, 1),
            tuple(m.to_ring("Q") for m in mats_z),
        )
        assert finite_limit(Fz).group.free_rank == finite_limit(Fq).group.free_rank
