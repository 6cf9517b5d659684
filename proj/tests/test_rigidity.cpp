#include "doctest.h"

#include <random>

#include "bt/errors.hpp"
#include "bt/rigidity.hpp"

using namespace bt;

TEST_CASE("tree ball shapes") {
    TreeBallModel b22 = build_tree_ball(2, 2);
    CHECK(b22.vertex_count() == 10); // 1 + 3 + 6
    CHECK(b22.chambers.size() == 9);
    TreeBallModel b32 = build_tree_ball(3, 2);
    CHECK(b32.vertex_count() == 17); // 1 + 4 + 12
    TreeBallModel b21 = build_tree_ball(2, 1);
    CHECK(b21.vertex_count() == 4); // a star

    // bipartite types alternate along every chamber
    for (auto [u, v] : b22.chambers)
        CHECK(b22.type[u] != b22.type[v]);
    // thickness: interior panels lie in exactly q+1 chambers
    for (int v = 0; v < b22.vertex_count(); ++v)
        if (b22.is_interior(v))
            CHECK(b22.neighbors[v].size() == 3);

    CHECK_THROWS_AS(build_tree_ball(0, 2), ValidationError);
}

TEST_CASE("rational rank") {
    CHECK(rational_rank({}) == 0);
    CHECK(rational_rank({{Rat(1), Rat(2)}, {Rat(2), Rat(4)}}) == 1);
    CHECK(rational_rank({{Rat(1), Rat(2)}, {Rat(1, 2), Rat(2)}}) == 2);
    CHECK(rational_rank({{Rat(0), Rat(0)}}) == 0);
}

TEST_CASE("thick tree balls only carry constant affine functionals") {
    for (int q : {2, 3})
        for (int radius : {2, 3})
            CHECK(affine_solution_space(build_tree_ball(q, radius)) == 1);
}

TEST_CASE("thin controls keep nonconstant functionals") {
    // the q = 1 line: genuine affine maps on a segment survive
    CHECK(affine_solution_space(build_tree_ball(1, 3)) == 2);
    // deleting the panel constraints from a thick ball frees the branches
    CHECK(affine_solution_space(build_tree_ball(2, 3), false) >= 2);
}

TEST_CASE("constants always satisfy the constraint system") {
    // dimension >= 1 whatever the parameters
    for (int q : {1, 2, 3})
        for (int radius : {1, 2, 3})
            for (bool panels : {false, true})
                CHECK(affine_solution_space(build_tree_ball(q, radius), panels) >= 1);
}

TEST_CASE("periodic affine maps are constant exactly when the slope vanishes") {
    auto line = [](Rat slope, Rat offset, const std::vector<Rat>& xs) {
        std::vector<std::pair<Rat, Rat>> out;
        for (Rat x : xs)
            out.push_back({x, slope * x + offset});
        return out;
    };
    CHECK(periodic_affine_is_constant(line(Rat(0), Rat(5), {Rat(0), Rat(1), Rat(7, 2)}),
                                      Rat(1)));
    CHECK_FALSE(periodic_affine_is_constant(
        line(Rat(1), Rat(1, 2), {Rat(0), Rat(1), Rat(-3)}), Rat(1)));
    // the psi equivariance form f(x + 1) = f(x) + 1 has slope one
    CHECK_FALSE(periodic_affine_is_constant(
        line(Rat(1), Rat(0), {Rat(1, 4), Rat(5, 4)}), Rat(1)));

    CHECK_THROWS_AS(periodic_affine_is_constant(
                        {{Rat(0), Rat(0)}, {Rat(1), Rat(0)}, {Rat(2), Rat(1)}}, Rat(1)),
                    NotAffine);
    CHECK_THROWS_AS(periodic_affine_is_constant({{Rat(0), Rat(0)}}, Rat(1)),
                    ValidationError);
    CHECK_THROWS_AS(periodic_affine_is_constant({{Rat(0), Rat(0)}, {Rat(1), Rat(1)}},
                                                Rat(0)),
                    ValidationError);

    // agreement with the direct slope computation on random affine maps
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 100; ++trial) {
        Rat slope((int64_t)(rng() % 11) - 5, 1 + (int64_t)(rng() % 6));
        Rat offset((int64_t)(rng() % 11) - 5, 1 + (int64_t)(rng() % 6));
        std::vector<Rat> xs;
        for (int k = 0; k < 4; ++k)
            xs.push_back(Rat((int64_t)(rng() % 17) - 8, 1 + (int64_t)(rng() % 5)));
        if (xs[0] == xs[1] && xs[0] == xs[2] && xs[0] == xs[3])
            continue;
        CHECK(periodic_affine_is_constant(line(slope, offset, xs), Rat(1)) ==
              (slope == Rat(0)));
    }
}
