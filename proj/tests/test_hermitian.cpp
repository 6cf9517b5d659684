#include "doctest.h"

#include "bt/errors.hpp"
#include "bt/hermitian.hpp"

#include "test_util.hpp"

using namespace bt;
using namespace bt::testutil;

namespace {

Matrix basis_vector(int n, int k) {
    Matrix v(n, 1);
    v.at(k, 0) = Laurent::one();
    return v;
}

} // namespace

TEST_CASE("make_witt_space gram matrices") {
    SUBCASE("hyperbolic hermitian plane") {
        HermitianSpace s = make_witt_space(2, 1, 1, {});
        Matrix j(2, 2);
        j.at(0, 1) = Laurent::one();
        j.at(1, 0) = Laurent::one();
        CHECK(certified_equal(s.gram(), j));
    }
    SUBCASE("symplectic plane") {
        HermitianSpace s = make_witt_space(2, 1, -1, {});
        Matrix j(2, 2);
        j.at(0, 1) = Laurent::one();
        j.at(1, 0) = -Laurent::one();
        CHECK(certified_equal(s.gram(), j));
    }
    SUBCASE("rank one with anisotropic line") {
        Laurent u = Laurent::constant(2);
        HermitianSpace s = make_witt_space(3, 1, 1, {u});
        Matrix j(3, 3);
        j.at(0, 1) = Laurent::one();
        j.at(1, 0) = Laurent::one();
        j.at(2, 2) = u;
        CHECK(certified_equal(s.gram(), j));
    }
    SUBCASE("bad data") {
        CHECK_THROWS_AS(make_witt_space(3, 1, -1, {Laurent::one()}), BadWittData);
        CHECK_THROWS_AS(make_witt_space(3, 1, 1, {Laurent::t_power(1)}), BadWittData);
        CHECK_THROWS_AS(make_witt_space(2, 2, 1, {}), BadWittData);
    }
}

TEST_CASE("involution on units") {
    HermitianSpace herm = make_witt_space(2, 1, 1, {});
    HermitianSpace symp = make_witt_space(2, 1, -1, {});

    // E_{1,2} pairs Witt labels (1,-1): fixed for the hermitian plane
    CHECK(certified_equal(herm.involution(Matrix::unit(2, 0, 1)), Matrix::unit(2, 0, 1)));
    CHECK(involution_on_unit(herm, 0, 1).kind == UnitClassification::fixed);
    // ... and antifixed for the symplectic plane
    CHECK(certified_equal(symp.involution(Matrix::unit(2, 0, 1)), -Matrix::unit(2, 0, 1)));
    CHECK(involution_on_unit(symp, 0, 1).kind == UnitClassification::antifixed);

    CHECK(certified_equal(herm.involution(Matrix::identity(2)), Matrix::identity(2)));

    UnitClassification c = involution_on_unit(herm, 0, 0);
    CHECK(c.kind == UnitClassification::swapped);
    CHECK(c.k == 1);
    CHECK(c.l == 1);
    CHECK(certified_equal(c.lambda, Laurent::one()));

    // n = 3 with anisotropic unit u = 2: sigma(E_{1,3}) = u^-1 E_{3,2}
    HermitianSpace s3 = make_witt_space(3, 1, 1, {Laurent::constant(2)});
    UnitClassification c3 = involution_on_unit(s3, 0, 2);
    CHECK(c3.kind == UnitClassification::swapped);
    CHECK(c3.k == 2);
    CHECK(c3.l == 1);
    CHECK(certified_equal(c3.lambda, Laurent::constant(2).inverse()));
}

TEST_CASE("skew projection") {
    HermitianSpace herm = make_witt_space(2, 1, 1, {});
    Matrix fixed = Matrix::unit(2, 0, 1); // sigma-fixed
    CHECK(herm.skew_project(fixed).is_certified_zero());

    Matrix skew = Matrix::unit(2, 0, 0) - Matrix::unit(2, 1, 1);
    CHECK(certified_equal(herm.skew_project(skew), skew));

    Laurent half = Laurent::constant(2).inverse();
    Matrix expect = half * skew;
    CHECK(certified_equal(herm.skew_project(Matrix::unit(2, 0, 0)), expect));
}

TEST_CASE("form values") {
    HermitianSpace herm = make_witt_space(2, 1, 1, {});
    CHECK(certified_equal(herm.form_value(basis_vector(2, 0), basis_vector(2, 1)), Laurent::one()));
    CHECK(herm.form_value(basis_vector(2, 0), basis_vector(2, 0)).is_exact_zero());
}

TEST_CASE("involution algebra on random matrices") {
    std::mt19937_64 rng(101);
    std::vector<HermitianSpace> spaces;
    spaces.push_back(make_witt_space(2, 1, 1, {}));
    spaces.push_back(make_witt_space(2, 1, -1, {}));
    spaces.push_back(make_witt_space(3, 1, 1, {Laurent::constant(2)}));
    spaces.push_back(make_witt_space(4, 2, 1, {}));
    spaces.push_back(make_witt_space(4, 2, -1, {}));
    for (const HermitianSpace& s : spaces) {
        for (int trial = 0; trial < 25; ++trial) {
            Matrix a = random_matrix(rng, s.n, s.n);
            Matrix b = random_matrix(rng, s.n, s.n);
            CHECK(agree(s.involution(s.involution(a)), a));
            CHECK(agree(s.involution(a * b), s.involution(b) * s.involution(a)));
            // adjointness on all basis vector pairs
            for (int i = 0; i < s.n; ++i)
                for (int j = 0; j < s.n; ++j) {
                    Laurent lhs = s.form_value(a * basis_vector(s.n, i), basis_vector(s.n, j));
                    Laurent rhs = s.form_value(basis_vector(s.n, i), s.involution(a) * basis_vector(s.n, j));
                    CHECK(agree(lhs, rhs));
                }
        }
    }
}

TEST_CASE("unit fixing pattern by epsilon") {
    HermitianSpace symp = make_witt_space(4, 2, -1, {});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            CHECK(involution_on_unit(symp, i, j).kind != UnitClassification::fixed);

    HermitianSpace herm = make_witt_space(4, 2, 1, {});
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            bool fixed = involution_on_unit(herm, i, j).kind == UnitClassification::fixed;
            WittIndex wi = herm.witt_of_col(i), wj = herm.witt_of_col(j);
            CHECK(fixed == (wi.hyperbolic == -wj.hyperbolic));
        }
}

TEST_CASE("skew basis dimensions") {
    // dim so_2 = 1, dim sp_2 = 3
    CHECK(make_witt_space(2, 1, 1, {}).skew_basis().cols() == 1);
    CHECK(make_witt_space(2, 1, -1, {}).skew_basis().cols() == 3);
    // dim so_4 = 6, dim sp_4 = 10
    CHECK(make_witt_space(4, 2, 1, {}).skew_basis().cols() == 6);
    CHECK(make_witt_space(4, 2, -1, {}).skew_basis().cols() == 10);
}
