#include "bt/embeddings.hpp"

#include <algorithm>

#include "bt/errors.hpp"

namespace bt {

LatticeFunction sharp_dual(const BetaDatum& datum, int index,
                           const LatticeFunction& fn) {
    const ComponentField& c = datum.component(index);
    if (!c.is_plus)
        throw NotPositiveIndex("sharp_dual needs a swapped component index");
    // the cross pairing V_{-i} x V_i identifies V_{-i} with the dual of V_i
    return dual_fn(fn, c.cross_gram);
}

LatticeFunction assemble_j(const HermitianSpace& space, const BetaDatum& datum,
                           const ComponentTuple& y) {
    if (y.size() != datum.components.size())
        throw BadComponentPoint("tuple length does not match the component count");
    std::vector<std::pair<Matrix, LatticeFunction>> parts;
    for (size_t k = 0; k < y.size(); ++k) {
        const ComponentField& c = datum.components[k];
        if (y[k].dim() != c.d)
            throw BadComponentPoint("component function has the wrong dimension");
        parts.push_back({c.subspace, y[k]});
        if (c.is_plus)
            parts.push_back({c.subspace_neg, sharp_dual(datum, c.index, y[k])});
    }
    LatticeFunction out = direct_sum(space.n, parts);
    if (!is_self_dual(out, space.gram()))
        throw OutputNotSelfDual("assembled function is not self-dual");
    return out;
}

LatticeFunction j_beta(const HermitianSpace& space, const BetaDatum& datum,
                       const ComponentTuple& x) {
    validate_component_tuple(space, datum, x);
    return assemble_j(space, datum, x);
}

ComponentTuple factorize(const HermitianSpace& space, const BetaDatum& datum,
                         const LatticeFunction& y) {
    if (!is_self_dual(y, space.gram()))
        throw NotInImage("function is not self-dual");
    ComponentSplit split = [&] {
        try {
            return split_components(datum, y);
        } catch (const DoesNotSplit&) {
            throw NotInImage("function does not split along the components");
        }
    }();
    ComponentTuple out;
    for (size_t k = 0; k < datum.components.size(); ++k) {
        const ComponentField& c = datum.components[k];
        const LatticeFunction& piece = split.pieces[k];
        if (!is_oE_component_function(c, piece))
            throw NotInImage("component piece is not an o_E-function");
        if (c.is_plus) {
            if (split.neg_pieces[k] != sharp_dual(datum, c.index, piece))
                throw NotInImage("swapped partner is not the pairing dual");
        } else {
            if (!is_self_dual(piece, c.restricted_gram))
                throw NotInImage("fixed-index piece is not self-dual");
        }
        out.push_back(piece);
    }
    return out;
}

bool is_E_fixed(const BetaDatum& datum, const LatticeFunction& y) {
    return is_oE_function(datum, y).ok;
}

Translation zero_translation(const BetaDatum& datum) {
    Translation t;
    t.shifts.assign(datum.components.size(), Rat(0));
    return t;
}

bool is_valid_translation(const BetaDatum& datum, const Translation& t) {
    if (t.shifts.size() != datum.components.size())
        return false;
    for (size_t k = 0; k < t.shifts.size(); ++k) {
        const ComponentField& c = datum.components[k];
        if (!(t.shifts[k] == Rat(0)) && !c.is_plus && !c.o2_type)
            return false;
    }
    return true;
}

ComponentTuple apply_translation(const BetaDatum& datum, const Translation& t,
                                 const ComponentTuple& x) {
    if (!is_valid_translation(datum, t))
        throw InvalidTranslation("shift on a rigid component index");
    if (x.size() != datum.components.size())
        throw BadComponentPoint("tuple length does not match the component count");
    ComponentTuple out;
    for (size_t k = 0; k < x.size(); ++k) {
        const ComponentField& c = datum.components[k];
        const Rat& s0 = t.shifts[k];
        if (s0 == Rat(0)) {
            out.push_back(x[k]);
        } else if (c.is_plus) {
            out.push_back(translate(x[k], s0));
        } else {
            // O2-type: move the model parameter, not the function
            std::optional<Rat> a = so2_alpha(x[k]);
            if (!a)
                throw BadComponentPoint("O2 entry is not a model point");
            out.push_back(component_point(c, {*a + s0, -(*a + s0)}));
        }
    }
    return out;
}

std::optional<Rat> recover_difference(const HermitianSpace& space,
                                      const LatticeFunction& y, int i, int j,
                                      int denom) {
    int n = space.n;
    Matrix e = Matrix::unit(n, i, j);
    Matrix c = e - space.involution(e);
    if (c.is_certified_zero())
        return std::nullopt; // the line is fixed by sigma, invisible in g
    Matrix v = c.vectorize();
    std::optional<Rat> best;
    for (int k = 1; k <= denom; ++k) {
        Rat s(k, denom);
        Lattice line = subspace_lattice_intersect(square_filtration(y, s), v);
        Rat gap = Rat(line.diagonal_valuations()[0]) - s;
        if (!best || gap < *best)
            best = gap;
    }
    return best;
}

namespace {

// alphas of the standard self-dual apartment point with the given free
// coordinates on the first r basis vectors
std::vector<Rat> witt_pattern(const HermitianSpace& space,
                              const std::vector<Rat>& free_coords) {
    int r = space.r;
    std::vector<Rat> alphas(space.n, Rat(0));
    for (int k = 0; k < r; ++k) {
        alphas[k] = free_coords[k];
        alphas[r + k] = -free_coords[r - 1 - k];
    }
    return alphas;
}

} // namespace

Matrix random_isometry(const HermitianSpace& space, std::mt19937_64& rng,
                       int factors) {
    int n = space.n;
    Matrix g = Matrix::identity(n);
    int made = 0;
    // some spaces (e.g. odd orthogonal) admit few factors of this shape;
    // return the partial product rather than reject forever
    for (int attempt = 0; made < factors && attempt < 200 * factors; ++attempt) {
        int i = (int)(rng() % n);
        int j = (int)(rng() % n);
        if (i == j)
            continue;
        Laurent lam = Laurent::constant(1 + (int)(rng() % 2)) *
                      Laurent::t_power((int)(rng() % 2));
        Matrix a = Matrix::unit(n, i, j);
        for (int p = 0; p < n; ++p)
            for (int q = 0; q < n; ++q)
                a.at(p, q) = a.at(p, q) * lam;
        Matrix c = a - space.involution(a);
        if (c.is_certified_zero() || !(c * c).is_certified_zero())
            continue;
        Matrix u = Matrix::identity(n) + c;
        if (!certified_equal(u.transpose() * space.gram() * u, space.gram()))
            continue;
        g = g * u;
        ++made;
    }
    return g;
}

namespace {

bool search_accepts(const HermitianSpace& space, const BetaDatum& datum,
                    const ComponentTuple& x, const LatticeFunction& y,
                    bool pin_swapped) {
    if (!is_extension(space, datum, y, x).ok)
        return false;
    if (!pin_swapped)
        return true;
    bool any_plus = false;
    for (const ComponentField& c : datum.components)
        any_plus = any_plus || c.is_plus;
    if (!any_plus)
        return true;
    try {
        ComponentSplit split = split_components(datum, y);
        for (size_t k = 0; k < datum.components.size(); ++k)
            if (datum.components[k].is_plus && split.pieces[k] != x[k])
                return false;
    } catch (const DoesNotSplit&) {
        return false;
    }
    return true;
}

} // namespace

SearchResult uniqueness_search(const HermitianSpace& space, const BetaDatum& datum,
                               const ComponentTuple& x, const SearchOptions& opts) {
    LatticeFunction jb = j_beta(space, datum, x);
    int r = space.r;
    std::vector<Rat> grid_values;
    for (int k = -opts.radius; k <= opts.radius; ++k)
        grid_values.push_back(Rat(k, opts.denom));

    SearchResult res;
    std::vector<LatticeFunction> grid_points;
    std::vector<std::vector<Rat>> grid_alphas;
    bool jb_on_grid = false;

    std::vector<size_t> odo(r, 0);
    while (true) {
        std::vector<Rat> free_coords;
        for (int k = 0; k < r; ++k)
            free_coords.push_back(grid_values[odo[k]]);
        LatticeFunction y = LatticeFunction::from_alphas(
            Matrix::identity(space.n), witt_pattern(space, free_coords));
        ++res.examined;
        if (y == jb)
            jb_on_grid = true;
        if (search_accepts(space, datum, x, y, opts.pin_swapped)) {
            grid_points.push_back(y);
            grid_alphas.push_back(free_coords);
        }
        int pos = r - 1;
        while (pos >= 0 && ++odo[pos] == grid_values.size())
            odo[pos--] = 0;
        if (pos < 0)
            break;
    }
    if (!jb_on_grid)
        throw GridMissesJBeta("j_beta(x) is not a grid apartment point");

    res.compatible = std::move(grid_points);
    res.compatible_alphas = std::move(grid_alphas);

    std::mt19937_64 rng(opts.seed);
    for (int a = 0; a < opts.random_apartments; ++a) {
        Matrix g = random_isometry(space, rng);
        size_t total = 1;
        for (int k = 0; k < r; ++k)
            total *= grid_values.size();
        for (size_t odx = 0; odx < total; ++odx) {
            size_t rem = odx;
            std::vector<Rat> free_coords;
            for (int k = 0; k < r; ++k) {
                free_coords.push_back(grid_values[rem % grid_values.size()]);
                rem /= grid_values.size();
            }
            LatticeFunction y = apply_matrix(
                g, LatticeFunction::from_alphas(Matrix::identity(space.n),
                                                witt_pattern(space, free_coords)));
            ++res.examined;
            if (!search_accepts(space, datum, x, y, opts.pin_swapped))
                continue;
            bool seen = false;
            for (const LatticeFunction& have : res.compatible)
                if (have == y) {
                    seen = true;
                    break;
                }
            if (!seen) {
                res.compatible.push_back(y);
                res.compatible_alphas.push_back({});
            }
        }
    }

    for (size_t k = 0; k < res.compatible.size(); ++k)
        if (res.compatible[k] == jb) {
            res.jbeta_index = (int)k;
            break;
        }
    return res;
}

Translation classify_compatible_map(
    const HermitianSpace& space, const BetaDatum& datum,
    const std::vector<std::pair<ComponentTuple, LatticeFunction>>& samples) {
    if (samples.empty())
        throw ValidationError("classify_compatible_map needs samples");
    std::vector<ComponentTuple> images;
    for (const auto& [x, phi_x] : samples) {
        if (!is_extension(space, datum, phi_x, x).ok)
            throw NotCompatibleSample("image point is not compatible with its input");
        images.push_back(factorize(space, datum, phi_x));
    }
    size_t m = datum.components.size();
    // the image of component k may depend only on x_k
    for (size_t k = 0; k < m; ++k)
        for (size_t a = 0; a < samples.size(); ++a)
            for (size_t b = a + 1; b < samples.size(); ++b)
                if (samples[a].first[k] == samples[b].first[k] &&
                    images[a][k] != images[b][k])
                    throw NotProductDecomposable(
                        "component image depends on the other coordinates");
    Translation t = zero_translation(datum);
    for (size_t k = 0; k < m; ++k) {
        std::optional<Rat> shift;
        for (size_t a = 0; a < samples.size(); ++a) {
            const ComponentField& c = datum.components[k];
            Rat here(0);
            if (c.is_plus) {
                std::optional<Rat> off =
                    offset_between(samples[a].first[k], images[a][k]);
                if (!off)
                    throw NotATranslation("swapped component image is not a translate");
                here = *off;
            } else if (c.o2_type) {
                std::optional<Rat> from = so2_alpha(samples[a].first[k]);
                std::optional<Rat> to = so2_alpha(images[a][k]);
                if (!from || !to)
                    throw NotATranslation("O2 entries are not model points");
                here = *to - *from;
            } else {
                if (images[a][k] != samples[a].first[k])
                    throw NotATranslation("rigid component is moved");
            }
            if (shift && !(*shift == here))
                throw NotATranslation("shift varies across samples");
            shift = here;
        }
        t.shifts[k] = *shift;
    }
    return t;
}

} // namespace bt
