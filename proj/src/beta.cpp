#include "bt/beta.hpp"

#include <set>

#include "bt/errors.hpp"
#include "bt/lattice.hpp"

namespace bt {

namespace {

Matrix matrix_power(const Matrix& a, int k) {
    Matrix r = Matrix::identity(a.rows());
    for (int i = 0; i < k; ++i) r = r * a;
    return r;
}

bool minpoly_is_x(const std::vector<Laurent>& p) {
    return poly::degree(p) == 1 && p[0].is_exact_zero();
}

void check_commutes(const Matrix& a, const Matrix& b, const char* what) {
    if (!(a * b - b * a).is_certified_zero())
        throw ValidationError(std::string(what) + " does not commute with beta");
}

void check_supported(const Matrix& idem, const Matrix& a, const char* what) {
    if (!certified_equal(idem * a, a) || !certified_equal(a * idem, a))
        throw ValidationError(std::string(what) + " is not supported on the component");
}

void check_sd_spec(const SelfDualSpec& sd, int m, bool is_plus) {
    if (is_plus) {
        if (sd.mode != SelfDualSpec::none)
            throw ValidationError("swapped components carry no self-duality constraint");
        return;
    }
    if (sd.mode == SelfDualSpec::mirror) {
        std::set<int> seen;
        auto claim = [&](int s) {
            if (s < 0 || s >= m) throw ValidationError("self-dual slot out of range");
            if (!seen.insert(s).second) throw ValidationError("self-dual slot repeated");
        };
        for (auto [i, j] : sd.pairs) {
            claim(i);
            if (j != i) claim(j);
        }
        for (auto& [i, v] : sd.fixed) { claim(i); (void)v; }
        if ((int)seen.size() != m)
            throw ValidationError("self-dual description does not cover all slots");
    } else if (sd.mode == SelfDualSpec::values) {
        if (sd.value_list.empty())
            throw ValidationError("empty self-dual value list");
        for (const auto& v : sd.value_list)
            if ((int)v.size() != m)
                throw ValidationError("self-dual value vector has wrong length");
    } else {
        throw ValidationError("fixed-index component needs a self-dual description");
    }
}

} // namespace

const ComponentField& BetaDatum::component(int index) const {
    if (index <= 0) throw NotPositiveIndex("component labels are positive");
    for (const ComponentField& c : components)
        if (c.index == index) return c;
    throw IndexOutOfRange("no component with this label");
}

BetaDatum validate_beta(const HermitianSpace& space, const Matrix& beta,
                        const std::vector<ComponentSpec>& specs) {
    const int n = space.n;
    if (beta.rows() != n || beta.cols() != n)
        throw ValidationError("beta has wrong shape");
    if (specs.empty()) throw ValidationError("no components declared");
    if (!(space.involution(beta) + beta).is_certified_zero())
        throw NotSkew("beta is not sigma-skew");

    // structural checks on the declared factorization
    int zero_count = 0;
    for (const ComponentSpec& s : specs) {
        if (s.index <= 0) throw NotPositiveIndex("component labels are positive");
        int deg = poly::degree(s.min_poly);
        if (deg != s.e * s.f)
            throw ValidationError("min poly degree must equal e*f");
        if (!certified_equal(s.min_poly[deg], Laurent::one()))
            throw ValidationError("min poly must be monic");
        if (minpoly_is_x(s.min_poly)) {
            if (s.is_plus) throw ZeroComponentInJ("beta vanishes on a swapped component");
            ++zero_count;
        }
        check_sd_spec(s.sd, s.e_vectors.cols(), s.is_plus);
    }
    if (zero_count > 1)
        throw TwoZeroComponents("beta vanishes on two components");

    // one CRT slot per component index, including the mirrored -i slots
    struct Slot {
        int label;
        const ComponentSpec* spec;
        poly::Poly f;
    };
    std::vector<Slot> slots;
    for (const ComponentSpec& s : specs) {
        slots.push_back({s.index, &s, poly::trim(s.min_poly)});
        if (s.is_plus)
            slots.push_back({-s.index, &s, poly::negate_variable(s.min_poly)});
    }
    {
        std::set<int> labels;
        for (const Slot& s : slots)
            if (!labels.insert(s.label).second)
                throw ValidationError("repeated component label");
    }
    for (size_t i = 0; i < slots.size(); ++i)
        for (size_t j = i + 1; j < slots.size(); ++j)
            if (poly::degree(poly::gcd(slots[i].f, slots[j].f)) != 0)
                throw FactorizationMismatch("component min polys are not coprime");

    poly::Poly product = {Laurent::one()};
    for (const Slot& s : slots) product = poly::mul(product, s.f);
    if (!poly::eval_at(product, beta).is_certified_zero())
        throw FactorizationMismatch("product of min polys does not annihilate beta");

    // CRT interpolation of the idempotents: 1^i = (P/f_i) * ((P/f_i)^-1 mod f_i)
    std::vector<Matrix> idem(slots.size());
    for (size_t i = 0; i < slots.size(); ++i) {
        auto [q, rem] = poly::divmod(product, slots[i].f);
        if (!poly::is_zero(rem))
            throw FactorizationMismatch("min poly does not divide the product");
        poly::Poly g = poly::mod(poly::mul(q, poly::inverse_mod(q, slots[i].f)), product);
        idem[i] = poly::eval_at(g, beta);
    }

    Matrix idem_sum(n, n);
    for (const Matrix& e : idem) idem_sum = idem_sum + e;
    if (!certified_equal(idem_sum, Matrix::identity(n)))
        throw FactorizationMismatch("idempotents do not sum to the identity");
    for (size_t i = 0; i < slots.size(); ++i) {
        if (!certified_equal(idem[i] * idem[i], idem[i]))
            throw FactorizationMismatch("interpolated projector is not idempotent");
        for (size_t j = 0; j < slots.size(); ++j)
            if (i != j && !(idem[i] * idem[j]).is_certified_zero())
                throw FactorizationMismatch("idempotents are not orthogonal");
        if (!(poly::eval_at(slots[i].f, beta) * idem[i]).is_certified_zero())
            throw FactorizationMismatch("min poly does not kill its component");
    }

    auto slot_of = [&](int label) -> int {
        for (size_t i = 0; i < slots.size(); ++i)
            if (slots[i].label == label) return (int)i;
        throw IndexOutOfRange("internal: missing slot");
    };

    BetaDatum datum;
    datum.beta = beta;

    // assemble the frames and the global coordinate change
    Matrix frame_all;
    std::vector<int> offsets, neg_offsets;
    for (const ComponentSpec& s : specs) {
        ComponentField c;
        c.index = s.index;
        c.is_plus = s.is_plus;
        c.o2_type = s.o2_type;
        c.min_poly = poly::trim(s.min_poly);
        c.e = s.e;
        c.f = s.f;
        c.m = s.e_vectors.cols();
        c.d = c.m * c.e * c.f;
        c.sd = s.sd;
        c.idempotent = idem[slot_of(s.index)];
        c.beta_zero = minpoly_is_x(s.min_poly);
        if (!(beta * c.idempotent).is_certified_zero() == c.beta_zero)
            throw ValidationError("zero-component flag disagrees with beta");

        if (s.is_plus) {
            c.idempotent_neg = idem[slot_of(-s.index)];
            if (!certified_equal(space.involution(c.idempotent), c.idempotent_neg))
                throw ValidationError("sigma does not swap the paired idempotents");
        } else {
            if (!certified_equal(space.involution(c.idempotent), c.idempotent))
                throw ValidationError("sigma does not fix the component idempotent");
        }
        if (c.idempotent.rank() != c.d)
            throw ValidationError("component dimension disagrees with m*e*f");

        if (s.e_vectors.rows() != n || c.m == 0)
            throw ValidationError("component basis has wrong shape");
        for (int j = 0; j < c.m; ++j)
            if (!certified_equal(c.idempotent * s.e_vectors.col(j), s.e_vectors.col(j)))
                throw ValidationError("component basis vector is not in the component");

        c.uniformizer = s.uniformizer ? *s.uniformizer
                                      : Laurent::t_power(1) * c.idempotent;
        check_commutes(c.uniformizer, beta, "uniformizer");
        check_supported(c.idempotent, c.uniformizer, "uniformizer");

        std::vector<Matrix> gens;
        if (c.f > 1) {
            if (!s.theta) throw ValidationError("residue generator required when f > 1");
            gens.push_back(*s.theta);
        }
        for (const Matrix& g : s.extra_oE_gens) gens.push_back(g);
        for (const Matrix& g : gens) {
            check_commutes(g, beta, "o_E generator");
            check_supported(c.idempotent, g, "o_E generator");
            check_commutes(g, c.uniformizer, "o_E generator");
        }

        // adapted frame: columns theta^b pi^j w_c carrying shift j/e
        Matrix frame(n, c.d);
        c.frame_shift.resize(c.d);
        c.frame_slot.resize(c.d);
        const Matrix& theta = gens.empty() ? Matrix() : gens[0];
        for (int cc = 0; cc < c.m; ++cc) {
            Matrix v = s.e_vectors.col(cc);
            for (int j = 0; j < c.e; ++j) {
                Matrix w = v;
                for (int b = 0; b < c.f; ++b) {
                    int col = (cc * c.e + j) * c.f + b;
                    for (int i = 0; i < n; ++i) frame.at(i, col) = w.at(i, 0);
                    c.frame_shift[col] = Rat(j, c.e);
                    c.frame_slot[col] = cc;
                    if (b + 1 < c.f) w = theta * w;
                }
                if (j + 1 < c.e) v = c.uniformizer * v;
            }
        }
        c.subspace = frame;
        offsets.push_back(frame_all.cols());
        frame_all = frame_all.cols() == 0 ? frame : hcat(frame_all, frame);
        // oE generator list kept in ambient form via gens; coordinates later
        c.oE_gen_coords.clear();
        datum.components.push_back(std::move(c));
    }
    for (ComponentField& c : datum.components) {
        if (!c.is_plus) { neg_offsets.push_back(-1); continue; }
        c.subspace_neg = c.idempotent_neg.column_space_basis();
        if (c.subspace_neg.cols() != c.d)
            throw ValidationError("swapped partner has mismatched dimension");
        neg_offsets.push_back(frame_all.cols());
        frame_all = hcat(frame_all, c.subspace_neg);
    }
    if (frame_all.cols() != n)
        throw ValidationError("component dimensions do not sum to n");
    Matrix change;
    try {
        change = frame_all.inverse();
    } catch (const RankDeficient&) {
        throw ValidationError("component frames do not span the space");
    }

    // coordinates, restricted pairings, and the h-basis blocks
    const Matrix& sigma_map = space.involution_map();
    Matrix commute_c = product_map(beta, Matrix::identity(n), n, n) -
                       product_map(Matrix::identity(n), beta, n, n);
    for (size_t ci = 0; ci < datum.components.size(); ++ci) {
        ComponentField& c = datum.components[ci];
        const ComponentSpec& s = specs[ci];
        c.coord = change.submatrix(offsets[ci], 0, c.d, n);
        if (c.is_plus)
            c.coord_neg = change.submatrix(neg_offsets[ci], 0, c.d, n);

        c.pi_coords = c.coord * c.uniformizer * c.subspace;
        Matrix pe = matrix_power(c.pi_coords, c.e);
        Matrix unit_part(c.d, c.d);
        for (int i = 0; i < c.d; ++i)
            for (int j = 0; j < c.d; ++j) {
                const Laurent& x = pe.at(i, j);
                if (!x.valuation_at_least(1))
                    throw ValidationError("uniformizer valuation is not 1/e");
                unit_part.at(i, j) = x.times_t_power(-1);
            }
        Matrix unit_inv;
        try {
            unit_inv = unit_part.inverse();
        } catch (const RankDeficient&) {
            throw ValidationError("uniformizer valuation is not 1/e");
        }
        for (int i = 0; i < c.d; ++i)
            for (int j = 0; j < c.d; ++j)
                if (!unit_inv.at(i, j).in_o())
                    throw ValidationError("uniformizer valuation is not 1/e");

        std::vector<Matrix> gens;
        if (c.f > 1) gens.push_back(*s.theta);
        for (const Matrix& g : s.extra_oE_gens) gens.push_back(g);
        for (const Matrix& g : gens) {
            Matrix gc = c.coord * g * c.subspace;
            for (int i = 0; i < c.d; ++i)
                for (int j = 0; j < c.d; ++j)
                    if (!gc.at(i, j).in_o())
                        throw ValidationError("o_E generator is not integral in the frame");
            if (Lattice::from_columns(gc).det_valuation() != 0)
                throw ValidationError("o_E generator is not a unit in the frame");
            c.oE_gen_coords.push_back(std::move(gc));
        }

        if (c.is_plus) {
            // sigma transports the o_E action to the paired component; any
            // uniformizer works for the periodicity predicate there, so no
            // integrality normalization is needed on this side
            c.pi_coords_neg =
                c.coord_neg * space.involution(c.uniformizer) * c.subspace_neg;
            for (const Matrix& g : gens)
                c.oE_gen_coords_neg.push_back(c.coord_neg * space.involution(g) *
                                              c.subspace_neg);
        }

        if (!c.is_plus) {
            c.restricted_gram = c.subspace.transpose() * space.gram() * c.subspace;
            try {
                (void)c.restricted_gram.inverse();
            } catch (const RankDeficient&) {
                throw ValidationError("restricted form is degenerate on the component");
            }
        } else {
            c.cross_gram = c.subspace_neg.transpose() * space.gram() * c.subspace;
            try {
                (void)c.cross_gram.inverse();
            } catch (const RankDeficient&) {
                throw ValidationError("pairing between swapped components is degenerate");
            }
        }

        if (c.o2_type) {
            if (c.is_plus || poly::degree(c.min_poly) != 1 || c.m != 2)
                throw ValidationError("o2-type flag on an unsuitable component");
            if (!space.form_value(c.subspace.col(0), c.subspace.col(0)).is_exact_zero() ||
                !space.form_value(c.subspace.col(1), c.subspace.col(1)).is_exact_zero())
                throw ValidationError("o2-type component needs an isotropic frame");
        }

        Matrix support_c = Matrix::identity(n * n) -
                           product_map(c.idempotent, c.idempotent, n, n);
        Matrix endo_constraints = vcat(support_c, commute_c);
        c.endo_basis = endo_constraints.kernel_basis();
        if (c.endo_basis.cols() != c.m * c.m * c.e * c.f)
            throw ValidationError("embedded endomorphism algebra has wrong dimension");
        if (c.is_plus) {
            c.h_block = (Matrix::identity(n * n) - sigma_map) * c.endo_basis;
        } else {
            Matrix skew_c = sigma_map + Matrix::identity(n * n);
            c.h_block = vcat(endo_constraints, skew_c).kernel_basis();
        }

        Matrix to_coords = product_map(c.coord, c.subspace, n, n);
        c.endo_basis_coords = to_coords * c.endo_basis;
        c.h_block_coords = to_coords * c.h_block;
        if (c.is_plus)
            c.h_block_neg_coords =
                product_map(c.coord_neg, c.subspace_neg, n, n) * c.h_block;
    }

    datum.h_basis = Matrix();
    for (ComponentField& c : datum.components) {
        datum.h_block_offset.push_back(datum.h_basis.cols());
        datum.h_basis = datum.h_basis.cols() == 0 ? c.h_block
                                                  : hcat(datum.h_basis, c.h_block);
    }
    if (datum.h_basis.rank() != datum.h_basis.cols())
        throw ValidationError("h-basis blocks are not independent");

    datum.has_gl1_factor = false;
    for (const ComponentField& c : datum.components)
        if ((c.is_plus && c.m == 1) || c.o2_type) datum.has_gl1_factor = true;

    return datum;
}

Matrix embed_component_endo(const HermitianSpace& space, const BetaDatum& datum,
                            int index, const Matrix& a) {
    const ComponentField& c = datum.component(index);
    if (a.rows() != c.d || a.cols() != c.d)
        throw ValidationError("endomorphism has wrong shape for the component");
    Matrix embedded = c.subspace * a * c.coord;
    if (c.is_plus)
        return embedded - space.involution(embedded);
    if (!(space.involution(embedded) + embedded).is_certified_zero())
        throw NotSkew("fixed-index component endomorphism must be skew");
    return embedded;
}

} // namespace bt
