#include "doctest.h"

#include <random>

#include "bt/errors.hpp"
#include "bt/filtrations.hpp"

#include "test_data.hpp"
#include "test_util.hpp"

using namespace bt;
using namespace bt::testdata;

namespace {

LatticeFunction split_fn(const std::vector<Rat>& alphas) {
    return LatticeFunction::from_alphas(Matrix::identity((int)alphas.size()), alphas);
}

std::vector<int> sorted_diag(const Lattice& l) {
    std::vector<int> d = l.diagonal_valuations();
    std::sort(d.begin(), d.end());
    return d;
}

// coordinates of the columns of `vecs` in the column span of `basis`
Matrix in_basis(const Matrix& basis, const Matrix& vecs) {
    Matrix out(basis.cols(), vecs.cols());
    for (int j = 0; j < vecs.cols(); ++j) {
        Matrix k = hcat(basis, vecs.col(j)).kernel_basis();
        REQUIRE(k.cols() == 1);
        Laurent lam = k.at(basis.cols(), 0);
        REQUIRE(lam.known_nonzero());
        for (int i = 0; i < basis.cols(); ++i)
            out.at(i, j) = -(k.at(i, 0) / lam);
    }
    return out;
}

// left multiplication by b (frame coordinates) in the endo basis of comp
Matrix endo_left_mult(const bt::ComponentField& c, const Matrix& b) {
    Matrix mult = product_map(b, Matrix::identity(c.d), c.d, c.d);
    return in_basis(c.endo_basis_coords, mult * c.endo_basis_coords);
}

} // namespace

TEST_CASE("square filtration exponent matrix") {
    LatticeFunction y = split_fn({Rat(0), Rat(1, 2)});
    Lattice order = square_filtration(y, Rat(0));
    // exponent matrix [[0, 1], [0, 0]]
    Matrix expect(4, 4);
    expect.at(0, 0) = Laurent::one();
    expect.at(1, 1) = Laurent::one();
    expect.at(2, 2) = Laurent::t_power(1); // E_{0,1} sits at vec index 2
    expect.at(3, 3) = Laurent::one();
    CHECK(order == Lattice::from_columns(expect));

    // it is a unital ring
    CHECK(order.contains(Matrix::identity(2).vectorize()));
    const Matrix& b = order.basis();
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            Matrix prod = Matrix::unvectorize(b.col(i), 2, 2) *
                          Matrix::unvectorize(b.col(j), 2, 2);
            CHECK(order.contains(prod.vectorize()));
        }

    LatticeFunction one = split_fn({Rat(0)});
    CHECK(square_filtration(one, Rat(1, 3)) == Lattice::t_power_standard({1}));
}

TEST_CASE("fast path agrees with the Hom intersection") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 20; ++trial) {
        Matrix g = bt::testutil::random_f_invertible(rng, 3);
        std::vector<Rat> alphas;
        for (int k = 0; k < 3; ++k)
            alphas.push_back(Rat(int64_t(rng() % 9) - 4, 1 + int64_t(rng() % 4)));
        LatticeFunction y = LatticeFunction::from_alphas(g, alphas);
        Rat s(int64_t(rng() % 9) - 4, 1 + int64_t(rng() % 4));
        CHECK(square_filtration(y, s) == square_filtration_oracle(y, s));
    }
}

TEST_CASE("square filtration properties") {
    LatticeFunction y = split_fn({Rat(1, 3), Rat(0), Rat(-1, 4)});
    // periodicity
    for (Rat s : {Rat(0), Rat(1, 5)})
        CHECK(square_filtration(y, s + Rat(1)) == square_filtration(y, s).scaled_by_t(1));
    // multiplicativity at sampled pairs
    for (Rat s : {Rat(0), Rat(1, 3), Rat(-1, 4)})
        for (Rat sp : {Rat(1, 2), Rat(2, 3)}) {
            Lattice a = square_filtration(y, s);
            Lattice bb = square_filtration(y, sp);
            Lattice c = square_filtration(y, s + sp);
            for (int i = 0; i < a.basis().cols(); ++i)
                for (int j = 0; j < bb.basis().cols(); ++j) {
                    Matrix prod = Matrix::unvectorize(a.basis().col(i), 3, 3) *
                                  Matrix::unvectorize(bb.basis().col(j), 3, 3);
                    CHECK(c.contains(prod.vectorize()));
                }
        }
}

TEST_CASE("lie filtration of the symplectic plane") {
    ScenarioData sc = sp2_split();
    Rat a(1, 3);
    LatticeFunction y = split_fn({a, -a});
    Lattice l0 = lie_filtration_g(sc.space, y, Rat(0));
    CHECK(l0.dim() == 3);
    // exponents (0, ceil(-2a), ceil(2a)) = (0, 0, 1)
    CHECK(sorted_diag(l0) == std::vector<int>{0, 0, 1});
    // periodicity
    CHECK(lie_filtration_g(sc.space, y, Rat(4, 3)) ==
          lie_filtration_g(sc.space, y, Rat(1, 3)).scaled_by_t(1));
    CHECK_THROWS_AS(lie_filtration_g(sc.space, split_fn({Rat(0), Rat(1, 2)}), Rat(0)),
                    NotSelfDual);
}

TEST_CASE("so2 lie filtration is alpha independent") {
    ScenarioData sc = so2_gl1();
    for (Rat s : {Rat(0), Rat(1, 4), Rat(-2, 3)}) {
        Lattice ref = lie_filtration_g(sc.space, so2_model_point(Rat(0)), s);
        CHECK(ref.dim() == 1);
        CHECK(ref.diagonal_valuations()[0] == (int)s.ceil());
        for (Rat a : {Rat(1, 3), Rat(1, 4), Rat(-5, 6)})
            CHECK(lie_filtration_g(sc.space, so2_model_point(a), s) == ref);
    }
}

TEST_CASE("extension predicate on the split symplectic plane") {
    ScenarioData sc = sp2_split();
    const ComponentField& c = sc.datum.components[0];
    Rat a(1, 3);
    ComponentTuple x = {component_point(c, {a, -a})};
    LatticeFunction y = split_fn({a, -a});
    CHECK(is_extension(sc.space, sc.datum, y, x).ok);
    CHECK(idempotents_in_order(sc.datum, y));

    // any other grid point fails, including translates
    for (Rat b : {Rat(0), Rat(1, 4), Rat(-1, 3), Rat(5, 12)}) {
        ExtensionResult r = is_extension(sc.space, sc.datum, split_fn({b, -b}), x);
        CHECK_FALSE(r.ok);
        CHECK(r.witness.has_value());
    }

    // a non-self-dual component point is rejected
    CHECK_THROWS_AS(
        is_extension(sc.space, sc.datum, y, {component_point(c, {a, a})}),
        BadComponentPoint);
}

TEST_CASE("so2 extension holds along the whole translation family") {
    ScenarioData sc = so2_gl1();
    const ComponentField& c = sc.datum.components[0];
    Rat a(1, 3);
    ComponentTuple x = {component_point(c, {a, -a})};
    // the diagonal exponents do not see alpha: every grid point extends x
    for (Rat b : {a, a + Rat(1, 4), Rat(0), Rat(-5, 6)})
        CHECK(is_extension(sc.space, sc.datum, so2_model_point(b), x).ok);
}

TEST_CASE("extension for a swapped pair") {
    ScenarioData sc = glpair();
    const ComponentField& c = sc.datum.components[0];
    Rat a1(1, 3), a2(0);
    ComponentTuple x = {component_point(c, {a1, a2})};
    LatticeFunction y = split_fn({a1, a2, -a2, -a1});
    REQUIRE(is_self_dual(y, sc.space.gram()));
    CHECK(is_extension(sc.space, sc.datum, y, x).ok);
    CHECK(is_extension_componentwise(sc.space, sc.datum, y, x).ok);
    CHECK(idempotents_in_order(sc.datum, y));

    // perturbing the dual block breaks the extension
    LatticeFunction bad = split_fn({a1, a2 + Rat(1, 2), -a2 - Rat(1, 2), -a1});
    CHECK_FALSE(is_extension(sc.space, sc.datum, bad, x).ok);
    CHECK_FALSE(is_extension_componentwise(sc.space, sc.datum, bad, x).ok);

    // a point mixing the swapped components fails and drops the idempotents
    Matrix g = Matrix::identity(4);
    g.at(3, 0) = Laurent::one();
    LatticeFunction mixed_y =
        LatticeFunction::from_alphas(g, {Rat(1, 4), Rat(0), Rat(0), Rat(-1, 4)});
    CHECK_FALSE(idempotents_in_order(sc.datum, mixed_y));
    CHECK_FALSE(is_extension(sc.space, sc.datum, mixed_y, x).ok);
    CHECK_THROWS_AS(split_components(sc.datum, mixed_y), DoesNotSplit);
}

TEST_CASE("componentwise reduction on the mixed scenario") {
    ScenarioData sc = mixed();
    const ComponentField& inner = sc.datum.components[0];
    const ComponentField& outer = sc.datum.components[1];
    Rat a(1, 4);
    ComponentTuple x = {component_point(inner, {Rat(0)}), component_point(outer, {a})};
    LatticeFunction y = split_fn({a, Rat(0), Rat(0), -a});
    REQUIRE(is_self_dual(y, sc.space.gram()));
    CHECK(is_extension(sc.space, sc.datum, y, x).ok);
    CHECK(is_extension_componentwise(sc.space, sc.datum, y, x).ok);

    ComponentSplit split = split_components(sc.datum, y);
    CHECK(split.pieces[0] == split_fn({Rat(0), Rat(0)}));
    CHECK(split.pieces[1] == split_fn({a}));
    CHECK(split.neg_pieces[1] == split_fn({-a}));

    // wrong inner block: both predicates reject at the same time
    LatticeFunction y2 = split_fn({a, Rat(1, 3), Rat(-1, 3), -a});
    CHECK_FALSE(is_extension(sc.space, sc.datum, y2, x).ok);
    CHECK_FALSE(is_extension_componentwise(sc.space, sc.datum, y2, x).ok);
}

TEST_CASE("invertible beta shifts the endomorphism filtration") {
    // unramified: beta is a unit, shift 0
    {
        ScenarioData sc = unram_e();
        const ComponentField& c = sc.datum.components[0];
        LatticeFunction xi = component_point(c, {Rat(0)});
        Matrix mult = endo_left_mult(c, c.oE_gen_coords[0]);
        for (Rat s : {Rat(0), Rat(1, 3), Rat(1, 2)}) {
            Lattice f = component_endo_filtration(c, xi, s);
            CHECK(Lattice::from_columns(mult * f.basis()) == f);
        }
    }
    // ramified: beta is a uniformizer, shift 1/2
    {
        ScenarioData sc = ram_e();
        const ComponentField& c = sc.datum.components[0];
        LatticeFunction xi = component_point(c, {Rat(-1, 4)});
        Matrix mult = endo_left_mult(c, c.pi_coords);
        for (Rat s : {Rat(0), Rat(1, 3), Rat(3, 4)}) {
            Lattice f = component_endo_filtration(c, xi, s);
            CHECK(Lattice::from_columns(mult * f.basis()) ==
                  component_endo_filtration(c, xi, s + Rat(1, 2)));
        }
    }
}

TEST_CASE("h filtration blocks concatenate over components") {
    ScenarioData sc = mixed();
    ComponentTuple x = {component_point(sc.datum.components[0], {Rat(0)}),
                        component_point(sc.datum.components[1], {Rat(1, 4)})};
    Lattice h0 = h_filtration(sc.space, sc.datum, x, Rat(0));
    CHECK(h0.dim() == 2);
    Lattice b0 = preimage_lattice(sc.datum.components[0].h_block_coords,
                                  square_filtration(x[0], Rat(0)));
    Lattice b1 = preimage_lattice(sc.datum.components[1].h_block_coords,
                                  square_filtration(x[1], Rat(0)));
    CHECK(h0.diagonal_valuations()[0] == b0.diagonal_valuations()[0]);
    CHECK(h0.diagonal_valuations()[1] == b1.diagonal_valuations()[0]);
}
