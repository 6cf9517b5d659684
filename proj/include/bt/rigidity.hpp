#ifndef BT_RIGIDITY_HPP
#define BT_RIGIDITY_HPP

#include <utility>
#include <vector>

#include "bt/rational.hpp"

namespace bt {

// The ball of radius R in the (q+1)-regular tree, with bipartite vertex
// types; chambers are the edges, panels the vertices. q >= 2 makes the
// model thick (every interior panel lies in q+1 >= 3 chambers); q = 1
// degenerates to a line segment, the thin comparison model.
struct TreeBallModel {
    int q = 2;
    int radius = 2;
    std::vector<int> type;   // 0/1, alternating with depth
    std::vector<int> parent; // -1 at the root
    std::vector<int> depth;
    std::vector<std::pair<int, int>> chambers;
    std::vector<std::vector<int>> neighbors;

    int vertex_count() const { return (int)type.size(); }
    bool is_interior(int v) const { return depth[v] < radius; }
};

TreeBallModel build_tree_ball(int q, int radius);

// Dimension of the space of functionals on the vertices that are affine
// on every apartment (midpoint relations along radial 2-paths) and,
// when panel constraints are kept, constant across the chambers around
// each interior panel with at least three of them.
int affine_solution_space(const TreeBallModel& model, bool panel_constraints = true);

// Exact rank over the rationals of a constraint matrix (rows = equations)
int rational_rank(std::vector<std::vector<Rat>> rows);

// Fit an affine map through the samples (x, f(x)) and decide whether the
// periodicity hypothesis f(x + period) = f(x) forces it to be constant;
// returns true iff the slope is zero. Throws NotAffine when the samples
// are not collinear.
bool periodic_affine_is_constant(const std::vector<std::pair<Rat, Rat>>& samples,
                                 Rat period);

} // namespace bt

#endif
