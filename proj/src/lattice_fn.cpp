#include "bt/lattice_fn.hpp"

#include <algorithm>

#include "bt/errors.hpp"

namespace bt {

Rat frac1(Rat c) { return c - Rat(c.ceil()) + Rat(1); }

LatticeFunction LatticeFunction::from_steps(std::vector<Rat> breaks,
                                            std::vector<Lattice> values) {
    if (breaks.empty() || breaks.size() != values.size())
        throw ValidationError("lattice function needs matching breakpoints and values");
    std::vector<size_t> order(breaks.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return breaks[a] < breaks[b]; });
    LatticeFunction fn;
    for (size_t i : order) {
        if (breaks[i] <= Rat(0) || breaks[i] > Rat(1))
            throw ValidationError("breakpoints must lie in (0, 1]");
        if (!fn.breaks_.empty() && fn.breaks_.back() == breaks[i])
            throw ValidationError("repeated breakpoint");
        fn.breaks_.push_back(breaks[i]);
        fn.values_.push_back(values[i]);
    }
    if (fn.breaks_.back() != Rat(1)) {
        // quasi-periodicity fills the final interval (b_last, 1]
        fn.breaks_.push_back(Rat(1));
        fn.values_.push_back(fn.values_.front().scaled_by_t(1));
    }
    for (size_t j = 0; j + 1 < fn.values_.size(); ++j)
        if (!fn.values_[j].contains_lattice(fn.values_[j + 1]))
            throw ValidationError("lattice function values must decrease");
    if (!fn.values_.back().contains_lattice(fn.values_.front().scaled_by_t(1)))
        throw ValidationError("lattice function violates quasi-periodicity");
    // merge intervals with equal values (the last interval is the anchor)
    std::vector<Rat> mb;
    std::vector<Lattice> mv;
    for (size_t j = 0; j < fn.values_.size(); ++j) {
        if (j + 1 < fn.values_.size() && fn.values_[j] == fn.values_[j + 1]) continue;
        mb.push_back(fn.breaks_[j]);
        mv.push_back(fn.values_[j]);
    }
    fn.breaks_ = std::move(mb);
    fn.values_ = std::move(mv);
    return fn;
}

LatticeFunction LatticeFunction::from_alphas(const Matrix& frame,
                                             const std::vector<Rat>& alphas) {
    if ((int)alphas.size() != frame.cols())
        throw ValidationError("one alpha per frame column");
    std::vector<Rat> candidates = {Rat(1)};
    for (const Rat& a : alphas) candidates.push_back(frac1(a));
    LatticeFunction fn = from_samples(candidates, [&](Rat s) {
        std::vector<int> exps;
        for (const Rat& a : alphas) exps.push_back((int)(s - a).ceil());
        return Lattice::from_columns(frame * Matrix::t_power_diagonal(exps));
    });
    fn.split_ = SplitForm{frame, alphas};
    return fn;
}

LatticeFunction LatticeFunction::from_samples(
    const std::vector<Rat>& candidates,
    const std::function<Lattice(Rat)>& value_at) {
    std::vector<Rat> pts = {Rat(1)};
    for (const Rat& c : candidates) pts.push_back(frac1(c));
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<Lattice> vals;
    for (const Rat& b : pts) vals.push_back(value_at(b));
    return from_steps(std::move(pts), std::move(vals));
}

Lattice LatticeFunction::eval(Rat s) const {
    int m = (int)s.ceil() - 1;
    Rat u = s - Rat(m); // in (0, 1]
    for (size_t j = 0; j < breaks_.size(); ++j)
        if (u <= breaks_[j]) return values_[j].scaled_by_t(m);
    throw ValidationError("internal: breakpoint lookup failed");
}

Lattice LatticeFunction::eval_plus(Rat s) const {
    int m = (int)s.floor();
    Rat u = s - Rat(m); // in [0, 1)
    for (size_t j = 0; j < breaks_.size(); ++j)
        if (u < breaks_[j]) return values_[j].scaled_by_t(m);
    throw ValidationError("internal: breakpoint lookup failed");
}

bool operator==(const LatticeFunction& a, const LatticeFunction& b) {
    if (a.dim() != b.dim()) return false;
    std::vector<Rat> pts = a.breaks_;
    pts.insert(pts.end(), b.breaks_.begin(), b.breaks_.end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const Rat& s : pts)
        if (a.eval(s) != b.eval(s)) return false;
    return true;
}

std::string LatticeFunction::str() const {
    std::string out;
    for (size_t j = 0; j < breaks_.size(); ++j) {
        out += "(.., " + breaks_[j].str() + "]:\n";
        out += values_[j].str();
    }
    return out;
}

LatticeFunction translate(const LatticeFunction& fn, Rat s0) {
    std::vector<Rat> candidates;
    for (const Rat& b : fn.breakpoints()) candidates.push_back(b - s0);
    LatticeFunction out = LatticeFunction::from_samples(
        candidates, [&](Rat s) { return fn.eval(s + s0); });
    if (fn.split_form()) {
        SplitForm sf = *fn.split_form();
        for (Rat& a : sf.alphas) a -= s0;
        // note: from_samples leaves split_ empty, so rebuild via from_alphas
        LatticeFunction tagged = LatticeFunction::from_alphas(sf.frame, sf.alphas);
        return tagged;
    }
    return out;
}

LatticeFunction apply_matrix(const Matrix& g, const LatticeFunction& fn) {
    LatticeFunction out = LatticeFunction::from_samples(
        fn.breakpoints(),
        [&](Rat s) { return Lattice::from_columns(g * fn.eval(s).basis()); });
    if (fn.split_form()) {
        SplitForm sf = *fn.split_form();
        return LatticeFunction::from_alphas(g * sf.frame, sf.alphas);
    }
    return out;
}

Lattice pairing_dual(const Lattice& l, const Matrix& p) {
    return Lattice::from_columns(p.transpose().inverse() * l.standard_dual().basis());
}

LatticeFunction dual_fn(const LatticeFunction& fn, const Matrix& p) {
    std::vector<Rat> candidates;
    for (const Rat& b : fn.breakpoints()) candidates.push_back(Rat(1) - b);
    LatticeFunction out = LatticeFunction::from_samples(candidates, [&](Rat s) {
        return pairing_dual(fn.eval_plus(-s), p).scaled_by_t(1);
    });
    if (fn.split_form()) {
        // the dual of a split function is split by the pairing-inverse frame
        SplitForm sf = *fn.split_form();
        Matrix frame = (p * sf.frame).transpose().inverse();
        for (Rat& a : sf.alphas) a = -a;
        LatticeFunction tagged = LatticeFunction::from_alphas(frame, sf.alphas);
        if (tagged != out)
            throw ValidationError("dual of a split function lost its split form");
        return tagged;
    }
    return out;
}

bool is_self_dual(const LatticeFunction& fn, const Matrix& p) {
    return dual_fn(fn, p) == fn;
}

LatticeFunction direct_sum(int ambient_dim,
                           const std::vector<std::pair<Matrix, LatticeFunction>>& parts) {
    if (parts.empty()) throw ValidationError("empty direct sum");
    std::vector<Rat> candidates;
    for (const auto& [s, f] : parts) {
        if (s.rows() != ambient_dim || s.cols() != f.dim())
            throw ValidationError("direct sum embedding has wrong shape");
        for (const Rat& b : f.breakpoints()) candidates.push_back(b);
    }
    return LatticeFunction::from_samples(candidates, [&](Rat s) {
        Matrix gens;
        for (const auto& [emb, f] : parts) {
            Matrix g = emb * f.eval(s).basis();
            gens = gens.cols() == 0 ? g : hcat(gens, g);
        }
        return Lattice::from_columns(gens);
    });
}

LatticeFunction component_restrict(const LatticeFunction& fn, const Matrix& s) {
    return LatticeFunction::from_samples(fn.breakpoints(), [&](Rat r) {
        return subspace_lattice_intersect(fn.eval(r), s);
    });
}

LatticeFunction component_point(const ComponentField& comp,
                                const std::vector<Rat>& params) {
    if ((int)params.size() != comp.m)
        throw BadComponentPoint("wrong number of parameters");
    std::vector<Rat> alphas(comp.d);
    for (int col = 0; col < comp.d; ++col)
        alphas[col] = params[comp.frame_slot[col]] + comp.frame_shift[col];
    return LatticeFunction::from_alphas(Matrix::identity(comp.d), alphas);
}

bool is_oE_component_function(const ComponentField& comp, const LatticeFunction& fn,
                              bool negative_side) {
    if (fn.dim() != comp.d) return false;
    const Matrix& pi = negative_side ? comp.pi_coords_neg : comp.pi_coords;
    const std::vector<Matrix>& gens =
        negative_side ? comp.oE_gen_coords_neg : comp.oE_gen_coords;
    for (const Lattice& l : fn.values())
        for (const Matrix& g : gens)
            if (!l.contains_lattice(Lattice::from_columns(g * l.basis())))
                return false;
    Rat step(1, comp.e);
    std::vector<Rat> pts;
    for (const Rat& b : fn.breakpoints()) {
        pts.push_back(b);
        pts.push_back(frac1(b - step));
    }
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    for (const Rat& s : pts) {
        Lattice lhs = Lattice::from_columns(pi * fn.eval(s).basis());
        if (lhs != fn.eval(s + step)) return false;
    }
    return true;
}

OECheckResult is_oE_function(const BetaDatum& datum, const LatticeFunction& fn) {
    OECheckResult res;
    // pieces of the decomposition V = (+) V_i, swapped partners included
    std::vector<std::pair<const ComponentField*, bool>> pieces;
    for (const ComponentField& c : datum.components) {
        pieces.push_back({&c, false});
        if (c.is_plus) pieces.push_back({&c, true});
    }
    for (const Rat& b : fn.breakpoints()) {
        Lattice l = fn.eval(b);
        Matrix gens;
        for (auto [c, neg] : pieces) {
            const Matrix& sub = neg ? c->subspace_neg : c->subspace;
            Matrix g = sub * subspace_lattice_intersect(l, sub).basis();
            gens = gens.cols() == 0 ? g : hcat(gens, g);
        }
        if (Lattice::from_columns(gens) != l) {
            res.ok = false;
            res.reason = "value does not split along the components";
            res.witness.push_back(b);
        }
    }
    if (!res.ok) return res;
    for (auto [c, neg] : pieces) {
        LatticeFunction piece = component_restrict(fn, neg ? c->subspace_neg : c->subspace);
        if (!is_oE_component_function(*c, piece, neg)) {
            res.ok = false;
            res.reason = "component piece is not an o_E lattice function (index " +
                         std::to_string(neg ? -c->index : c->index) + ")";
            for (const Rat& b : piece.breakpoints()) res.witness.push_back(b);
            return res;
        }
    }
    return res;
}

LatticeFunction so2_model_point(Rat alpha) {
    return LatticeFunction::from_alphas(Matrix::identity(2), {alpha, -alpha});
}

std::optional<Rat> offset_between(const LatticeFunction& f, const LatticeFunction& g) {
    if (f.dim() != g.dim() || f.dim() == 0) return std::nullopt;
    int d = f.dim();
    int gdet = g.eval(Rat(1)).det_valuation();
    Rat bf = f.breakpoints().front();
    for (const Rat& bg : g.breakpoints()) {
        Rat u = frac1(bf - bg);
        int fdet = f.eval(Rat(1) + u).det_valuation();
        if ((gdet - fdet) % d != 0) continue;
        Rat s0 = u + Rat((gdet - fdet) / d);
        if (translate(f, s0) == g) return s0;
    }
    return std::nullopt;
}

std::optional<Rat> so2_alpha(const LatticeFunction& fn) {
    if (fn.dim() != 2) return std::nullopt;
    Matrix id = Matrix::identity(2);
    for (const Rat& b : fn.breakpoints())
        for (const Rat& base : {b, frac1(-b)})
            for (int j = -2; j <= 2; ++j) {
                Rat a = base + Rat(j);
                if (fn == LatticeFunction::from_alphas(id, {a, -a})) return a;
            }
    return std::nullopt;
}

} // namespace bt
