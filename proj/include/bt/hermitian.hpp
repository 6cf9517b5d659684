#ifndef BT_HERMITIAN_HPP
#define BT_HERMITIAN_HPP

#include <optional>

#include "bt/matrix.hpp"

namespace bt {

// Witt-basis index: hyperbolic labels +-1..+-r, anisotropic labels (0,k).
struct WittIndex {
    int hyperbolic = 0; // nonzero label, or 0 for anisotropic
    int aniso = 0;      // k >= 1 when hyperbolic == 0

    static WittIndex hyp(int i) { return WittIndex{i, 0}; }
    static WittIndex an(int k) { return WittIndex{0, k}; }
    bool is_hyperbolic() const { return hyperbolic != 0; }
};

// epsilon-hermitian space in Witt-decomposed form, first-kind involution.
// Basis order: e_1..e_r, e_{-r}..e_{-1}, e_{(0,1)}..e_{(0,n-2r)}.
class HermitianSpace {
public:
    int n = 0;
    int r = 0;
    int epsilon = 1;
    std::vector<Laurent> aniso; // valuation-0 units, length n - 2r

    const Matrix& gram() const { return gram_; }

    int col_of(const WittIndex& w) const;
    WittIndex witt_of_col(int col) const;

    // adjoint involution sigma(A) = J^-1 A^T J
    Matrix involution(const Matrix& a) const;
    // (A - sigma(A)) / 2
    Matrix skew_project(const Matrix& a) const;
    // v^T J w
    Laurent form_value(const Matrix& v, const Matrix& w) const;

    // F-basis of the sigma-skew subspace of End_F(V), as n^2 x dim columns
    const Matrix& skew_basis() const;
    // matrix of sigma acting on vectorized endomorphisms, n^2 x n^2
    const Matrix& involution_map() const;

    friend HermitianSpace make_witt_space(int n, int r, int epsilon,
                                          const std::vector<Laurent>& aniso);

private:
    Matrix gram_, gram_inv_;
    mutable std::optional<Matrix> skew_basis_;
    mutable std::optional<Matrix> involution_map_;
};

HermitianSpace make_witt_space(int n, int r, int epsilon,
                               const std::vector<Laurent>& aniso);

struct UnitClassification {
    enum Kind { fixed, antifixed, swapped } kind;
    int k = -1, l = -1;  // matrix indices of the swapped image, 0-based
    Laurent lambda;      // sigma(E_{i,j}) = lambda E_{k,l} when swapped
};

// classify sigma(E_{i,j}) for 0-based matrix indices
UnitClassification involution_on_unit(const HermitianSpace& space, int i, int j);

} // namespace bt

#endif
