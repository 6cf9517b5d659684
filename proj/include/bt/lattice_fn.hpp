#ifndef BT_LATTICE_FN_HPP
#define BT_LATTICE_FN_HPP

#include <functional>
#include <optional>

#include "bt/beta.hpp"
#include "bt/lattice.hpp"
#include "bt/rational.hpp"

namespace bt {

// A function is "split" by a frame g when its value at every s is
// g * diag(t^ceil(s - alpha_k)) o^d; the alphas are barycentric
// coordinates in the apartment of g.
struct SplitForm {
    Matrix frame;
    std::vector<Rat> alphas;
};

// A point of the (enlarged) building as a lattice function: decreasing,
// left-continuous, with quasi-period Lambda(s + 1) = t Lambda(s).
// Stored as one period: breakpoints 0 < b_0 < ... < b_{k-1} = 1 with
// value v_j on (b_{j-1}, b_j].
class LatticeFunction {
public:
    static LatticeFunction from_steps(std::vector<Rat> breaks,
                                      std::vector<Lattice> values);
    static LatticeFunction from_alphas(const Matrix& frame,
                                       const std::vector<Rat>& alphas);
    // sample a value oracle on the half-open intervals cut out by the
    // candidate jump points (any rationals; reduced mod 1)
    static LatticeFunction from_samples(const std::vector<Rat>& candidates,
                                        const std::function<Lattice(Rat)>& value_at);

    int dim() const { return values_.empty() ? 0 : values_[0].dim(); }
    const std::vector<Rat>& breakpoints() const { return breaks_; }
    const std::vector<Lattice>& values() const { return values_; }
    const std::optional<SplitForm>& split_form() const { return split_; }

    Lattice eval(Rat s) const;      // value on the interval containing s
    Lattice eval_plus(Rat s) const; // value just to the right of s

    friend bool operator==(const LatticeFunction& a, const LatticeFunction& b);
    friend bool operator!=(const LatticeFunction& a, const LatticeFunction& b) {
        return !(a == b);
    }

    std::string str() const;

private:
    std::vector<Rat> breaks_;
    std::vector<Lattice> values_;
    std::optional<SplitForm> split_;
};

// reduce into the stored period: frac1(c) in (0, 1] with c - frac1(c) integer
Rat frac1(Rat c);

LatticeFunction translate(const LatticeFunction& fn, Rat s0);
LatticeFunction apply_matrix(const Matrix& g, const LatticeFunction& fn);

// {v : v^T P w integral for all w in L}
Lattice pairing_dual(const Lattice& l, const Matrix& p);
// the dual point: s -> t * pairing_dual(Lambda((-s)+), P)
LatticeFunction dual_fn(const LatticeFunction& fn, const Matrix& p);
bool is_self_dual(const LatticeFunction& fn, const Matrix& p);

// ambient function s -> sum_i S_i (fn_i(s)) from component functions
LatticeFunction direct_sum(int ambient_dim,
                           const std::vector<std::pair<Matrix, LatticeFunction>>& parts);
// the function s -> {w : S w in Lambda(s)} in subspace coordinates
LatticeFunction component_restrict(const LatticeFunction& fn, const Matrix& s);

// the o_{E_i}-point with parameter vector a (frame coordinates):
// alphas a[slot(col)] + shift(col)
LatticeFunction component_point(const ComponentField& comp,
                                const std::vector<Rat>& params);

// does fn (in frame coordinates of comp, or of its paired partner when
// `negative_side`) come from a point of the building of GL over E_i:
// values stable under the o_E generators and Lambda(s + 1/e) = pi Lambda(s)
bool is_oE_component_function(const ComponentField& comp, const LatticeFunction& fn,
                              bool negative_side = false);

// ambient o_E-structure check: the function splits along V = (+) V_i and
// every piece is an o_{E_i}-lattice function
struct OECheckResult {
    bool ok = true;
    std::string reason;        // empty when ok
    std::vector<Rat> witness;  // breakpoints at which the check failed
};
OECheckResult is_oE_function(const BetaDatum& datum, const LatticeFunction& fn);

// the split function with coordinates (alpha, -alpha) on F (+) F
LatticeFunction so2_model_point(Rat alpha);

// s0 with g == translate(f, s0), if the two functions are translates
std::optional<Rat> offset_between(const LatticeFunction& f, const LatticeFunction& g);

// parameter a with fn == from_alphas(id, {a, -a}); rank-one split
// orthogonal components only
std::optional<Rat> so2_alpha(const LatticeFunction& fn);

} // namespace bt

#endif
