"""Structure-constant coalgebras, morphisms, comodules, and their validators."""

from fractions import Fraction

import pytest

import oracle
from comono import (
    QQ,
    Bicomodule,
    Coalgebra,
    CoalgebraMorphism,
    CoalgebraMismatchError,
    Matrix,
    RightComodule,
    ShapeError,
    Subspace,
    comatrix,
    corestrict,
    corestrict_left,
    grouplike,
    identity_morphism,
    kernel_bicomodule,
    kron,
    quotient,
    regular_comodules,
    subspace_leq,
    validate_bicomodule,
    validate_coalgebra,
    validate_comodule,
    validate_morphism,
)


@pytest.fixture
def m2():
    return comatrix(2)


@pytest.fixture
def paper_pi(m2):
    span = Subspace.from_rows(QQ, 4, [[0, 0, 1, 0]])
    D, pi = quotient(m2, span, name="D")
    return pi


class TestCoalgebraValidation:
    def test_one_dim_grouplike_valid(self):
        C = grouplike(["g"])
        assert validate_coalgebra(C).ok

    def test_comatrix_valid(self, m2):
        assert validate_coalgebra(m2).ok

    def test_comatrix_coassoc_cells_by_oracle(self, m2):
        # the machine identity (Delta x I) Delta = (I x Delta) Delta holds
        # entrywise; recheck through plain list arithmetic
        d = m2.delta.to_rows()
        eye = [[Fraction(int(i == j)) for j in range(4)] for i in range(4)]
        lhs = oracle.matmul(oracle.kron(d, eye), d)
        rhs = oracle.matmul(oracle.kron(eye, d), d)
        assert lhs == rhs

    def test_broken_counit_reported(self):
        C = Coalgebra.from_terms("bad", ["g"], {"g": [("g", "g", 1)]}, {"g": 0})
        report = validate_coalgebra(C)
        assert not report.ok
        laws = {v.law for v in report.violations}
        assert laws == {"left counit law", "right counit law"}

    def test_every_violation_listed(self):
        # scaling one comultiplication column breaks several cells at once
        base = comatrix(2)
        a = base.delta.a.copy()
        a[:, 2] = a[:, 2] * Fraction(2)
        broken = Coalgebra("scaled", base.labels, Matrix(QQ, a), base.counit)
        report = validate_coalgebra(broken)
        assert len(report.violations) > 1

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            Coalgebra("bad", ["x"], Matrix.zeros(QQ, 2, 1), Matrix.zeros(QQ, 1, 1))


class TestMorphismValidation:
    def test_identity_valid(self, m2):
        assert validate_morphism(identity_morphism(m2)).ok

    def test_projection_valid(self, paper_pi):
        assert validate_morphism(paper_pi).ok

    def test_swap_breaks_comultiplicativity(self, m2):
        # swapping c11 and c12 is not a coalgebra map; one broken cell:
        # Delta(phi(c11)) = Delta(c12) has a c11 x c12 term, while
        # (phi x phi) Delta(c11) = c12 x c12 + c11 x c21 does not
        swap = Matrix.from_rows(
            QQ, [[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]]
        )
        phi = CoalgebraMorphism(m2, m2, swap, name="swap")
        report = validate_morphism(phi)
        assert not report.ok
        assert any(v.law == "comultiplicativity" for v in report.violations)

    def test_counit_preserved_on_basis(self, paper_pi):
        # a consequence of the counit law: eps_D(phi(c)) = eps_C(c)
        lhs = paper_pi.target.counit @ paper_pi.matrix
        assert lhs == paper_pi.source.counit


class TestComodules:
    def test_regular_comodules_valid(self, m2):
        right, left, bi = regular_comodules(m2)
        assert validate_comodule(right).ok
        assert validate_comodule(left).ok
        assert validate_bicomodule(bi).ok

    def test_regular_coaction_is_delta(self, m2):
        right, _, _ = regular_comodules(m2)
        assert right.coaction == m2.delta

    def test_grouplike_regular(self):
        C = grouplike(["g"])
        right, _, _ = regular_comodules(C)
        assert right.coaction == Matrix.from_rows(QQ, [[1]])

    def test_zero_dimensional_comodule_valid(self, m2):
        z = RightComodule(m2, [], Matrix.zeros(QQ, 0, 0), name="0")
        assert validate_comodule(z).ok

    def test_scaled_row_breaks_counit_law(self, m2):
        right, _, _ = regular_comodules(m2)
        a = right.coaction.a.copy()
        a[:, 0] = a[:, 0] * Fraction(2)
        bad = RightComodule(m2, right.labels, Matrix(QQ, a), name="bad")
        report = validate_comodule(bad)
        assert any(v.law == "coaction counit law" for v in report.violations)


class TestCorestriction:
    def test_identity_corestriction_fixes_comodule(self, m2):
        right, left, _ = regular_comodules(m2)
        assert corestrict(right, identity_morphism(m2)) == right
        assert corestrict_left(left, identity_morphism(m2)) == left

    def test_counit_corestriction_is_trivial(self):
        # pushing the regular comodule along eps: C -> k gives m |-> m x 1
        C = grouplike(["g", "h"])
        pt = grouplike(["e"])
        eps = CoalgebraMorphism.from_columns(
            C, pt, {"g": [("e", 1)], "h": [("e", 1)]}, name="eps"
        )
        right, _, _ = regular_comodules(C)
        pushed = corestrict(right, eps)
        assert pushed.coaction == Matrix.identity(QQ, 2)
        assert validate_comodule(pushed).ok

    def test_paper_projection_drops_kernel_terms(self, m2, paper_pi):
        right, _, _ = regular_comodules(m2)
        pushed = corestrict(right, paper_pi)
        # by hand: coefficients of m_b x pi(e_i) from Delta, c21 components dropped
        expect = kron(Matrix.identity(QQ, 4), paper_pi.matrix) @ m2.delta
        assert pushed.coaction == expect
        assert validate_comodule(pushed).ok

    def test_corestrict_composes(self, m2, paper_pi):
        right, _, _ = regular_comodules(m2)
        D = paper_pi.target
        span = Subspace.from_rows(QQ, 3, [[0, 1, 0]])
        E, pr2 = quotient(D, span, name="E")
        both = corestrict(corestrict(right, paper_pi), pr2)
        composed = corestrict(right, paper_pi.then(pr2))
        assert both == composed

    def test_wrong_coalgebra_rejected(self, m2, paper_pi):
        rightD, _, _ = regular_comodules(paper_pi.target)
        with pytest.raises(CoalgebraMismatchError):
            corestrict(rightD, paper_pi)


class TestKernelBicomodule:
    def test_injective_morphism_gives_zero(self, m2):
        bico, _ = kernel_bicomodule(identity_morphism(m2))
        assert bico.dim == 0
        assert validate_bicomodule(bico).ok

    def test_paper_example_coactions(self, m2, paper_pi):
        # Delta(c21) = c21 x c11 + c22 x c21, so after applying pi the left
        # coaction is c21 |-> pi(c22) x c21 and the right is c21 |-> c21 x pi(c11)
        bico, inclusion = kernel_bicomodule(paper_pi)
        assert bico.dim == 1
        assert inclusion.T.to_rows() == [[0, 0, Fraction(1), 0]]
        D = paper_pi.target
        left_expect = Matrix.zeros(QQ, 3, 1).a.copy()
        left_expect[D.label_index("c22"), 0] = Fraction(1)
        assert bico.left_coaction == Matrix(QQ, left_expect)
        right_expect = Matrix.zeros(QQ, 3, 1).a.copy()
        right_expect[D.label_index("c11"), 0] = Fraction(1)
        assert bico.right_coaction == Matrix(QQ, right_expect)
        assert validate_bicomodule(bico).ok

    def test_grouplike_counit_kernel(self):
        C = grouplike(["g", "h"])
        pt = grouplike(["e"])
        eps = CoalgebraMorphism.from_columns(
            C, pt, {"g": [("e", 1)], "h": [("e", 1)]}, name="eps"
        )
        bico, inclusion = kernel_bicomodule(eps)
        assert bico.dim == 1
        # kernel of (1 1) is spanned by g - h, canonical leading one
        assert inclusion.T.to_rows() == [[Fraction(1), Fraction(-1)]]
        assert validate_bicomodule(bico).ok

    def test_certificate_subspaces(self, m2, paper_pi):
        # (phi x I) Delta(Ker) <= D x Ker and (I x phi) Delta(Ker) <= Ker x D
        _, inclusion = kernel_bicomodule(paper_pi)
        ker_rows = inclusion.T
        ker = Subspace.from_matrix(ker_rows)
        F = paper_pi.matrix
        eye = Matrix.identity(QQ, 4)
        img_left = (kron(F, eye) @ m2.delta @ inclusion).T
        d_tensor_ker = Subspace.from_matrix(kron(Matrix.identity(QQ, 3), ker.basis))
        assert subspace_leq(Subspace.from_matrix(img_left), d_tensor_ker)
        img_right = (kron(eye, F) @ m2.delta @ inclusion).T
        ker_tensor_d = Subspace.from_matrix(kron(ker.basis, Matrix.identity(QQ, 3)))
        assert subspace_leq(Subspace.from_matrix(img_right), ker_tensor_d)


class TestBicomoduleCompatibility:
    def test_tampered_compatibility_detected(self, m2):
        _, _, bi = regular_comodules(m2)
        a = bi.left_coaction.a.copy()
        a[0, 0] = a[0, 0] + Fraction(1)
        bad = Bicomodule(m2, m2, bi.labels, Matrix(QQ, a), bi.right_coaction, name="bad")
        report = validate_bicomodule(bad)
        assert not report.ok
