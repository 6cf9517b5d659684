#include "bt/rigidity.hpp"

#include <optional>

#include "bt/errors.hpp"

namespace bt {

TreeBallModel build_tree_ball(int q, int radius) {
    if (q < 1 || radius < 1)
        throw ValidationError("build_tree_ball needs q >= 1 and radius >= 1");
    TreeBallModel m;
    m.q = q;
    m.radius = radius;
    m.type = {0};
    m.parent = {-1};
    m.depth = {0};
    m.neighbors = {{}};
    // breadth-first: the root has q+1 children, every other vertex q
    for (int v = 0; v < m.vertex_count(); ++v) {
        if (m.depth[v] == radius)
            break;
        int kids = (v == 0) ? q + 1 : q;
        for (int c = 0; c < kids; ++c) {
            int w = m.vertex_count();
            m.type.push_back(1 - m.type[v]);
            m.parent.push_back(v);
            m.depth.push_back(m.depth[v] + 1);
            m.neighbors.push_back({v});
            m.neighbors[v].push_back(w);
            m.chambers.push_back({v, w});
        }
    }
    return m;
}

int rational_rank(std::vector<std::vector<Rat>> rows) {
    if (rows.empty())
        return 0;
    size_t cols = rows[0].size();
    int rank = 0;
    size_t pivot_row = 0;
    for (size_t col = 0; col < cols && pivot_row < rows.size(); ++col) {
        size_t p = pivot_row;
        while (p < rows.size() && rows[p][col] == Rat(0))
            ++p;
        if (p == rows.size())
            continue;
        std::swap(rows[p], rows[pivot_row]);
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == pivot_row || rows[r][col] == Rat(0))
                continue;
            Rat factor = rows[r][col] / rows[pivot_row][col];
            for (size_t c = col; c < cols; ++c)
                rows[r][c] = rows[r][c] - factor * rows[pivot_row][c];
        }
        ++pivot_row;
        ++rank;
    }
    return rank;
}

int affine_solution_space(const TreeBallModel& model, bool panel_constraints) {
    int n = model.vertex_count();
    std::vector<std::vector<Rat>> rows;
    auto new_row = [&]() -> std::vector<Rat>& {
        rows.emplace_back(n, Rat(0));
        return rows.back();
    };
    for (int v = 0; v < n; ++v) {
        if (!model.is_interior(v))
            continue;
        // affinity along the apartments through v: the radial 2-paths
        // parent - v - child give the midpoint relation 2a(v) = a(p) + a(c)
        if (model.parent[v] >= 0) {
            for (int w : model.neighbors[v]) {
                if (w == model.parent[v])
                    continue;
                std::vector<Rat>& row = new_row();
                row[v] = Rat(2);
                row[model.parent[v]] = Rat(-1);
                row[w] = row[w] - Rat(1);
            }
        } else if (model.neighbors[v].size() >= 2) {
            // one apartment passes straight through the root
            std::vector<Rat>& row = new_row();
            row[v] = Rat(2);
            row[model.neighbors[v][0]] = Rat(-1);
            int other = model.neighbors[v][1];
            row[other] = row[other] - Rat(1);
        }
        // the chambers around an interior panel in >= 3 chambers carry
        // equal values on their outer vertices
        if (panel_constraints && (int)model.neighbors[v].size() >= 3) {
            int first = model.neighbors[v][0];
            for (size_t k = 1; k < model.neighbors[v].size(); ++k) {
                std::vector<Rat>& row = new_row();
                row[first] = Rat(1);
                row[model.neighbors[v][k]] = row[model.neighbors[v][k]] - Rat(1);
            }
        }
    }
    return n - rational_rank(std::move(rows));
}

bool periodic_affine_is_constant(const std::vector<std::pair<Rat, Rat>>& samples,
                                 Rat period) {
    if (samples.size() < 2)
        throw ValidationError("periodic_affine_is_constant needs two samples");
    if (!(Rat(0) < period))
        throw ValidationError("period must be positive");
    // fit a line through the first pair of distinct abscissae
    std::optional<Rat> slope;
    for (size_t k = 1; k < samples.size() && !slope; ++k)
        if (!(samples[k].first == samples[0].first))
            slope = (samples[k].second - samples[0].second) /
                    (samples[k].first - samples[0].first);
    if (!slope)
        throw ValidationError("all samples share one abscissa");
    for (const auto& [x, y] : samples)
        if (!(y == samples[0].second + *slope * (x - samples[0].first)))
            throw NotAffine("samples are not collinear");
    // the periodicity hypothesis f(x + p) = f(x) holds iff the slope vanishes
    return *slope == Rat(0);
}

} // namespace bt
