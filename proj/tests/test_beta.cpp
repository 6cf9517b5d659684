#include "doctest.h"

#include "bt/beta.hpp"
#include "bt/errors.hpp"

using namespace bt;

namespace {

Laurent L(int a) { return Laurent::constant(a); }

Matrix diag4(int a, int b, int c, int d) {
    return Matrix::diagonal({L(a), L(b), L(c), L(d)});
}

poly::Poly lin(int root) {
    // X - root
    return {L(-root), L(1)};
}

ComponentSpec full_space_zero_spec(int n, SelfDualSpec sd) {
    ComponentSpec s;
    s.index = 1;
    s.min_poly = {Laurent(), Laurent::one()}; // X
    s.e_vectors = Matrix::identity(n);
    s.sd = sd;
    return s;
}

SelfDualSpec mirror_pairs(std::vector<std::pair<int, int>> pairs) {
    SelfDualSpec sd;
    sd.mode = SelfDualSpec::mirror;
    sd.pairs = std::move(pairs);
    return sd;
}

SelfDualSpec value_list(std::vector<std::vector<Rat>> vals) {
    SelfDualSpec sd;
    sd.mode = SelfDualSpec::values;
    sd.value_list = std::move(vals);
    return sd;
}

} // namespace

TEST_CASE("polynomial helpers") {
    poly::Poly a = poly::mul(lin(1), lin(-1)); // X^2 - 1
    poly::Poly b = poly::mul(lin(1), {Laurent(), Laurent::one()}); // X^2 - X
    poly::Poly g = poly::gcd(a, b);
    REQUIRE(poly::degree(g) == 1);
    CHECK(certified_equal(g[0], L(-1)));
    CHECK(certified_equal(g[1], L(1)));

    // X * 1 = 1 mod (X - 1)
    poly::Poly inv = poly::inverse_mod({Laurent(), Laurent::one()}, lin(1));
    REQUIRE(poly::degree(inv) == 0);
    CHECK(certified_equal(inv[0], L(1)));

    CHECK_THROWS_AS(poly::inverse_mod(lin(1), poly::mul(lin(1), lin(-1))),
                    FactorizationMismatch);

    // (-1)^2 (X^2 + tX + 1)|_{X -> -X} = X^2 - tX + 1
    poly::Poly p = {L(1), Laurent::t_power(1), L(1)};
    poly::Poly q = poly::negate_variable(p);
    CHECK(certified_equal(q[0], L(1)));
    CHECK(certified_equal(q[1], -Laurent::t_power(1)));
    CHECK(certified_equal(q[2], L(1)));

    Matrix m(2, 2);
    m.at(0, 1) = L(1);
    m.at(1, 0) = Laurent::t_power(1);
    // m^2 = t * id, so m^2 - t vanishes at m
    poly::Poly mp = {-Laurent::t_power(1), Laurent(), Laurent::one()};
    CHECK(poly::eval_at(mp, m).is_certified_zero());
}

TEST_CASE("beta = 0 on a symplectic plane") {
    HermitianSpace space = make_witt_space(2, 1, -1, {});
    Matrix beta(2, 2);
    BetaDatum d = validate_beta(space, beta, {full_space_zero_spec(2, mirror_pairs({{0, 1}}))});
    REQUIRE(d.components.size() == 1);
    const ComponentField& c = d.components[0];
    CHECK(certified_equal(c.idempotent, Matrix::identity(2)));
    CHECK(c.d == 2);
    CHECK(c.beta_zero);
    CHECK(c.endo_basis.cols() == 4);
    CHECK(c.h_block.cols() == 3); // dim sp_2
    CHECK_FALSE(d.has_gl1_factor);
}

TEST_CASE("beta = 0 on a hyperbolic orthogonal plane") {
    HermitianSpace space = make_witt_space(2, 1, 1, {});
    Matrix beta(2, 2);
    ComponentSpec s = full_space_zero_spec(2, mirror_pairs({{0, 1}}));
    s.o2_type = true;
    BetaDatum d = validate_beta(space, beta, {s});
    CHECK(d.components[0].h_block.cols() == 1); // dim so_2
    CHECK(d.has_gl1_factor);
}

TEST_CASE("beta = 0 on the four-dimensional hermitian space") {
    HermitianSpace space = make_witt_space(4, 2, 1, {});
    Matrix beta(4, 4);
    BetaDatum d = validate_beta(space, beta,
                                {full_space_zero_spec(4, mirror_pairs({{0, 3}, {1, 2}}))});
    CHECK(d.components[0].h_block.cols() == 6); // dim so_4
    CHECK(d.components[0].endo_basis.cols() == 16);
    CHECK_FALSE(d.has_gl1_factor);
}

TEST_CASE("swapped pair of two-dimensional components") {
    HermitianSpace space = make_witt_space(4, 2, 1, {});
    Matrix beta = diag4(1, 1, -1, -1);
    ComponentSpec s;
    s.index = 1;
    s.is_plus = true;
    s.min_poly = lin(1);
    s.e_vectors = Matrix::identity(4).cols_range(0, 2);
    BetaDatum d = validate_beta(space, beta, {s});
    REQUIRE(d.components.size() == 1);
    const ComponentField& c = d.components[0];
    CHECK(certified_equal(c.idempotent, diag4(1, 1, 0, 0)));
    CHECK(certified_equal(c.idempotent_neg, diag4(0, 0, 1, 1)));
    CHECK(c.endo_basis.cols() == 4);
    CHECK(c.h_block.cols() == 4); // gl_2 embedded as a - sigma(a)
    CHECK_FALSE(d.has_gl1_factor);

    // every h element is skew and commutes with beta
    for (int j = 0; j < d.h_basis.cols(); ++j) {
        Matrix a = Matrix::unvectorize(d.h_basis.col(j), 4, 4);
        CHECK((space.involution(a) + a).is_certified_zero());
        CHECK((a * beta - beta * a).is_certified_zero());
    }

    Matrix emb = embed_component_endo(space, d, 1, Matrix::unit(2, 0, 0));
    CHECK((space.involution(emb) + emb).is_certified_zero());
    CHECK(certified_equal(emb, diag4(1, 0, 0, -1)));
}

TEST_CASE("swapped pair of lines gives a gl1 factor") {
    HermitianSpace space = make_witt_space(2, 1, 1, {});
    Matrix beta = Matrix::diagonal({L(1), L(-1)});
    ComponentSpec s;
    s.index = 1;
    s.is_plus = true;
    s.min_poly = lin(1);
    s.e_vectors = Matrix::identity(2).cols_range(0, 1);
    BetaDatum d = validate_beta(space, beta, {s});
    CHECK(d.components[0].h_block.cols() == 1);
    CHECK(d.has_gl1_factor);
}

TEST_CASE("unramified quadratic component") {
    HermitianSpace space = make_witt_space(2, 1, -1, {});
    Matrix beta(2, 2);
    beta.at(0, 1) = L(-1);
    beta.at(1, 0) = L(1); // beta^2 = -1, X^2 + 1 irreducible for q = 3
    ComponentSpec s;
    s.index = 1;
    s.min_poly = {L(1), Laurent(), Laurent::one()};
    s.e = 1;
    s.f = 2;
    s.theta = beta;
    s.e_vectors = Matrix::identity(2).cols_range(0, 1);
    s.sd = value_list({{Rat(0)}});
    BetaDatum d = validate_beta(space, beta, {s});
    const ComponentField& c = d.components[0];
    CHECK(certified_equal(c.idempotent, Matrix::identity(2)));
    CHECK(c.d == 2);
    CHECK(c.m == 1);
    CHECK(c.h_block.cols() == 1); // the unitary group of a line
    CHECK(c.frame_shift[0] == Rat(0));
    CHECK(c.frame_shift[1] == Rat(0)); // theta carries no shift
    CHECK_FALSE(d.has_gl1_factor);
}

TEST_CASE("ramified quadratic component") {
    HermitianSpace space = make_witt_space(2, 1, -1, {});
    Matrix beta(2, 2);
    beta.at(0, 1) = Laurent::t_power(1);
    beta.at(1, 0) = L(1); // beta^2 = t, Eisenstein X^2 - t
    ComponentSpec s;
    s.index = 1;
    s.min_poly = {-Laurent::t_power(1), Laurent(), Laurent::one()};
    s.e = 2;
    s.f = 1;
    s.uniformizer = beta;
    s.e_vectors = Matrix::identity(2).cols_range(0, 1);
    s.sd = value_list({{Rat(-1, 4)}});
    BetaDatum d = validate_beta(space, beta, {s});
    const ComponentField& c = d.components[0];
    CHECK(c.h_block.cols() == 1);
    CHECK(c.frame_shift[0] == Rat(0));
    CHECK(c.frame_shift[1] == Rat(1, 2)); // the pi-column sits half a step up
    // in the adapted frame the uniformizer squares to t
    Matrix sq = c.pi_coords * c.pi_coords;
    CHECK(certified_equal(sq, Laurent::t_power(1) * Matrix::identity(2)));
}

TEST_CASE("mixed decomposition on a symplectic four-space") {
    HermitianSpace space = make_witt_space(4, 2, -1, {});
    // basis order e_1, e_2, e_{-2}, e_{-1}; beta acts by +-1 on the outer
    // lines and by a square root of -1 on the inner plane
    Matrix beta(4, 4);
    beta.at(0, 0) = L(1);
    beta.at(3, 3) = L(-1);
    beta.at(1, 2) = L(1);
    beta.at(2, 1) = L(-1);

    ComponentSpec inner;
    inner.index = 1;
    inner.min_poly = {L(1), Laurent(), Laurent::one()};
    inner.e = 1;
    inner.f = 2;
    inner.theta = Matrix::unit(4, 1, 2) - Matrix::unit(4, 2, 1);
    inner.e_vectors = Matrix::identity(4).cols_range(1, 1);
    inner.sd = value_list({{Rat(0)}});

    ComponentSpec outer;
    outer.index = 2;
    outer.is_plus = true;
    outer.min_poly = lin(1);
    outer.e_vectors = Matrix::identity(4).cols_range(0, 1);

    BetaDatum d = validate_beta(space, beta, {inner, outer});
    REQUIRE(d.components.size() == 2);
    const ComponentField& c1 = d.components[0];
    const ComponentField& c2 = d.components[1];
    CHECK(c1.d == 2);
    CHECK(c2.d == 1);
    CHECK(c1.h_block.cols() == 1);
    CHECK(c2.h_block.cols() == 1);
    CHECK(d.has_gl1_factor); // the swapped pair of lines is a GL_1 factor

    // idempotent identities
    Matrix total = c1.idempotent + c2.idempotent + c2.idempotent_neg;
    CHECK(certified_equal(total, Matrix::identity(4)));
    CHECK((c1.idempotent * c2.idempotent).is_certified_zero());
    CHECK((c1.idempotent * c2.idempotent_neg).is_certified_zero());
    CHECK(certified_equal(space.involution(c2.idempotent), c2.idempotent_neg));
    CHECK((c1.idempotent * beta - beta * c1.idempotent).is_certified_zero());

    CHECK(d.h_basis.cols() == 2);
    CHECK(d.h_block_offset[1] == 1);
    CHECK_THROWS_AS(d.component(3), IndexOutOfRange);
    CHECK_THROWS_AS(d.component(-1), NotPositiveIndex);
}

TEST_CASE("validation failures") {
    SUBCASE("beta must be skew") {
        HermitianSpace space = make_witt_space(2, 1, -1, {});
        CHECK_THROWS_AS(
            validate_beta(space, Matrix::unit(2, 0, 0),
                          {full_space_zero_spec(2, mirror_pairs({{0, 1}}))}),
            NotSkew);
    }
    SUBCASE("two zero components") {
        HermitianSpace space = make_witt_space(4, 2, -1, {});
        Matrix beta(4, 4);
        ComponentSpec a, b;
        a.index = 1;
        a.min_poly = {Laurent(), Laurent::one()};
        a.e_vectors = Matrix::identity(4).cols_range(0, 2);
        a.sd = mirror_pairs({{0, 1}});
        b = a;
        b.index = 2;
        b.e_vectors = Matrix::identity(4).cols_range(2, 2);
        CHECK_THROWS_AS(validate_beta(space, beta, {a, b}), TwoZeroComponents);
    }
    SUBCASE("zero component cannot be swapped") {
        HermitianSpace space = make_witt_space(2, 1, 1, {});
        Matrix beta(2, 2);
        ComponentSpec s;
        s.index = 1;
        s.is_plus = true;
        s.min_poly = {Laurent(), Laurent::one()};
        s.e_vectors = Matrix::identity(2).cols_range(0, 1);
        CHECK_THROWS_AS(validate_beta(space, beta, {s}), ZeroComponentInJ);
    }
    SUBCASE("min poly must annihilate beta") {
        HermitianSpace space = make_witt_space(2, 1, -1, {});
        Matrix beta(2, 2);
        ComponentSpec s;
        s.index = 1;
        s.min_poly = lin(1);
        s.e_vectors = Matrix::identity(2);
        s.sd = mirror_pairs({{0, 1}});
        CHECK_THROWS_AS(validate_beta(space, beta, {s}), FactorizationMismatch);
    }
    SUBCASE("coprime factors required") {
        HermitianSpace space = make_witt_space(4, 2, 1, {});
        Matrix beta = diag4(1, 1, -1, -1);
        ComponentSpec a, b;
        a.index = 1;
        a.is_plus = true;
        a.min_poly = lin(1);
        a.e_vectors = Matrix::identity(4).cols_range(0, 1);
        b = a;
        b.index = 2;
        b.e_vectors = Matrix::identity(4).cols_range(1, 1);
        CHECK_THROWS_AS(validate_beta(space, beta, {a, b}), FactorizationMismatch);
    }
    SUBCASE("fixed component endomorphism must be skew") {
        HermitianSpace space = make_witt_space(2, 1, -1, {});
        Matrix beta(2, 2);
        BetaDatum d = validate_beta(space, beta,
                                    {full_space_zero_spec(2, mirror_pairs({{0, 1}}))});
        CHECK_THROWS_AS(embed_component_endo(space, d, 1, Matrix::unit(2, 0, 0)),
                        NotSkew);
    }
}
