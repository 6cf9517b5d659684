#include "bt/filtrations.hpp"

#include <algorithm>

#include "bt/errors.hpp"

namespace bt {

namespace {

// jump parameters of s -> square_filtration(y, s) within one period
std::vector<Rat> filtration_jumps(const LatticeFunction& fn) {
    std::vector<Rat> out = {Rat(1)};
    for (const Rat& b : fn.breakpoints())
        for (const Rat& b2 : fn.breakpoints()) out.push_back(frac1(b - b2));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void merge_into(std::vector<Rat>& target, const std::vector<Rat>& extra) {
    target.insert(target.end(), extra.begin(), extra.end());
    std::sort(target.begin(), target.end());
    target.erase(std::unique(target.begin(), target.end()), target.end());
}

Lattice h_filtration_unchecked(const BetaDatum& datum, const ComponentTuple& x,
                               Rat s) {
    int dim = datum.h_basis.cols();
    Matrix blocks(dim, dim);
    for (size_t ci = 0; ci < datum.components.size(); ++ci) {
        const ComponentField& c = datum.components[ci];
        Lattice li = preimage_lattice(c.h_block_coords, square_filtration(x[ci], s));
        int off = datum.h_block_offset[ci];
        for (int i = 0; i < li.dim(); ++i)
            for (int j = 0; j < li.dim(); ++j)
                blocks.at(off + i, off + j) = li.basis().at(i, j);
    }
    return Lattice::from_columns(blocks);
}

} // namespace

Lattice square_filtration(const LatticeFunction& y, Rat s) {
    if (!y.split_form()) return square_filtration_oracle(y, s);
    const SplitForm& sf = *y.split_form();
    int n = sf.frame.rows();
    Matrix m = product_map(sf.frame, sf.frame.inverse(), n, n);
    for (int j = 0; j < n; ++j)
        for (int i = 0; i < n; ++i) {
            int exp = (int)(s + sf.alphas[j] - sf.alphas[i]).ceil();
            for (int k = 0; k < n * n; ++k)
                m.at(k, j * n + i) = m.at(k, j * n + i).times_t_power(exp);
        }
    return Lattice::from_columns(m);
}

Lattice square_filtration_oracle(const LatticeFunction& y, Rat s) {
    int n = y.dim();
    std::optional<Lattice> acc;
    for (const Rat& r : y.breakpoints()) {
        Matrix b1 = y.eval(r).basis();
        Matrix b2 = y.eval(r + s).basis();
        Lattice hom = Lattice::from_columns(product_map(b2, b1.inverse(), n, n));
        acc = acc ? lattice_intersect(*acc, hom) : hom;
    }
    return *acc;
}

Lattice lie_filtration_g(const HermitianSpace& space, const LatticeFunction& y,
                         Rat s) {
    if (!is_self_dual(y, space.gram()))
        throw NotSelfDual("lie filtration needs a self-dual point");
    return subspace_lattice_intersect(square_filtration(y, s), space.skew_basis());
}

Lattice component_endo_filtration(const ComponentField& comp,
                                  const LatticeFunction& x_i, Rat s) {
    return preimage_lattice(comp.endo_basis_coords, square_filtration(x_i, s));
}

void validate_component_tuple(const HermitianSpace& space, const BetaDatum& datum,
                              const ComponentTuple& x) {
    if (x.size() != datum.components.size())
        throw BadComponentPoint("one point per component index required");
    for (size_t ci = 0; ci < x.size(); ++ci) {
        const ComponentField& c = datum.components[ci];
        if (x[ci].dim() != c.d)
            throw BadComponentPoint("component point has wrong dimension");
        if (!is_oE_component_function(c, x[ci]))
            throw BadComponentPoint("component point is not an o_E lattice function");
        if (!c.is_plus && !is_self_dual(x[ci], c.restricted_gram))
            throw BadComponentPoint("fixed-index component point must be self-dual");
    }
}

Lattice h_filtration(const HermitianSpace& space, const BetaDatum& datum,
                     const ComponentTuple& x, Rat s) {
    validate_component_tuple(space, datum, x);
    return h_filtration_unchecked(datum, x, s);
}

Lattice g_intersect_h(const BetaDatum& datum, const LatticeFunction& y, Rat s) {
    return preimage_lattice(datum.h_basis, square_filtration(y, s));
}

ExtensionResult is_extension(const HermitianSpace& space, const BetaDatum& datum,
                             const LatticeFunction& y, const ComponentTuple& x) {
    validate_component_tuple(space, datum, x);
    std::vector<Rat> samples = filtration_jumps(y);
    for (const LatticeFunction& xi : x) merge_into(samples, filtration_jumps(xi));
    ExtensionResult res;
    for (const Rat& s : samples) {
        if (h_filtration_unchecked(datum, x, s) != g_intersect_h(datum, y, s)) {
            res.ok = false;
            res.witness = s;
            return res;
        }
    }
    return res;
}

bool idempotents_in_order(const BetaDatum& datum, const LatticeFunction& y) {
    Lattice order = square_filtration(y, Rat(0));
    for (const ComponentField& c : datum.components) {
        if (!order.contains(c.idempotent.vectorize())) return false;
        if (c.is_plus && !order.contains(c.idempotent_neg.vectorize())) return false;
    }
    return true;
}

ComponentSplit split_components(const BetaDatum& datum, const LatticeFunction& y) {
    std::vector<std::pair<const ComponentField*, bool>> pieces;
    for (const ComponentField& c : datum.components) {
        pieces.push_back({&c, false});
        if (c.is_plus) pieces.push_back({&c, true});
    }
    for (const Rat& b : y.breakpoints()) {
        Lattice l = y.eval(b);
        Matrix gens;
        for (auto [c, neg] : pieces) {
            const Matrix& sub = neg ? c->subspace_neg : c->subspace;
            Matrix g = sub * subspace_lattice_intersect(l, sub).basis();
            gens = gens.cols() == 0 ? g : hcat(gens, g);
        }
        if (Lattice::from_columns(gens) != l)
            throw DoesNotSplit("point does not split along the components");
    }
    ComponentSplit out;
    for (const ComponentField& c : datum.components) {
        out.pieces.push_back(component_restrict(y, c.subspace));
        out.neg_pieces.push_back(c.is_plus ? component_restrict(y, c.subspace_neg)
                                           : LatticeFunction());
    }
    return out;
}

ExtensionResult is_extension_componentwise(const HermitianSpace& space,
                                           const BetaDatum& datum,
                                           const LatticeFunction& y,
                                           const ComponentTuple& x) {
    validate_component_tuple(space, datum, x);
    ComponentSplit split = split_components(datum, y);
    ExtensionResult res;
    for (size_t ci = 0; ci < datum.components.size(); ++ci) {
        const ComponentField& c = datum.components[ci];
        std::vector<Rat> samples = filtration_jumps(x[ci]);
        merge_into(samples, filtration_jumps(split.pieces[ci]));
        if (c.is_plus) merge_into(samples, filtration_jumps(split.neg_pieces[ci]));
        for (const Rat& s : samples) {
            Lattice lhs = preimage_lattice(c.h_block_coords,
                                           square_filtration(x[ci], s));
            Lattice rhs = preimage_lattice(c.h_block_coords,
                                           square_filtration(split.pieces[ci], s));
            if (c.is_plus) {
                Lattice rhs_neg = preimage_lattice(
                    c.h_block_neg_coords,
                    square_filtration(split.neg_pieces[ci], s));
                rhs = lattice_intersect(rhs, rhs_neg);
            }
            if (lhs != rhs) {
                res.ok = false;
                res.witness = s;
                return res;
            }
        }
    }
    return res;
}

} // namespace bt
