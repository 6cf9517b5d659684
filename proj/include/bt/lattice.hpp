#ifndef BT_LATTICE_HPP
#define BT_LATTICE_HPP

#include <optional>
#include <vector>

#include "bt/matrix.hpp"

namespace bt {

// Full-rank o_F-lattice in F^n, held in a canonical column-Hermite basis:
// lower triangular, diagonal t^{d_i} with unit coefficient 1, and entries
// below the diagonal reduced modulo the t-power of their row's pivot.
class Lattice {
public:
    // generators as columns, any count >= dim; throws RankDeficient
    static Lattice from_columns(const Matrix& generators);
    static Lattice standard(int dim);            // o^dim
    static Lattice t_power_standard(const std::vector<int>& exps); // (+) p^{e_k}

    int dim() const { return dim_; }
    const Matrix& basis() const { return basis_; }
    const std::vector<int>& diagonal_valuations() const { return diag_; }
    int det_valuation() const;

    Lattice scaled_by_t(int k) const;

    bool contains(const Matrix& v) const;        // v: dim x 1
    bool contains_lattice(const Lattice& other) const;
    friend bool operator==(const Lattice& a, const Lattice& b);
    friend bool operator!=(const Lattice& a, const Lattice& b) { return !(a == b); }

    friend Lattice lattice_sum(const Lattice& a, const Lattice& b);
    friend Lattice lattice_intersect(const Lattice& a, const Lattice& b);

    // dual with respect to the standard pairing, {v : v . L (subset) o}
    Lattice standard_dual() const;

    std::string str() const;

private:
    int dim_ = 0;
    Matrix basis_;
    std::vector<int> diag_;
};

struct SmithResult {
    std::vector<int> d;  // nondecreasing t-exponents
    Matrix u;            // invertible over o_F, rows side
    Matrix w;            // invertible over o_F, cols side; u*m*w diagonal
};

// Smith reduction of an m x k matrix of full column rank over o_F-style
// transforms. Throws RankDeficient / PrecisionExhausted.
SmithResult smith_reduce(const Matrix& m);

// {x in F^k : W x in L}, W an m x k matrix of full column rank.
Lattice preimage_lattice(const Matrix& w, const Lattice& l);

// {w in S-coordinates : S w in L}; alias for preimage_lattice.
Lattice subspace_lattice_intersect(const Lattice& l, const Matrix& s);

} // namespace bt

#endif
