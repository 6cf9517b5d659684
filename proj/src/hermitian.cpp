#include "bt/hermitian.hpp"

#include "bt/errors.hpp"

namespace bt {

HermitianSpace make_witt_space(int n, int r, int epsilon,
                               const std::vector<Laurent>& aniso) {
    if (epsilon != 1 && epsilon != -1) throw BadWittData("epsilon must be +-1");
    if (r < 0 || 2 * r > n) throw BadWittData("witt rank out of range");
    if ((int)aniso.size() != n - 2 * r) throw BadWittData("anisotropic diagonal has wrong length");
    if (epsilon == -1 && !aniso.empty())
        throw BadWittData("alternating form with anisotropic part is not modeled");
    for (const Laurent& u : aniso) {
        if (!u.known_nonzero() || u.valuation() != 0)
            throw BadWittData("anisotropic entries must be valuation-0 units");
    }
    HermitianSpace s;
    s.n = n;
    s.r = r;
    s.epsilon = epsilon;
    s.aniso = aniso;
    // J = [[0, M, 0], [eps M, 0, 0], [0, 0, D]], M antidiagonal ones
    Matrix j(n, n);
    for (int i = 0; i < r; ++i) {
        j.at(i, r + (r - 1 - i)) = Laurent::one();
        j.at(r + (r - 1 - i), i) = Laurent::constant(epsilon == 1 ? 1 : field_config().q - 1);
    }
    for (int k = 0; k < n - 2 * r; ++k) j.at(2 * r + k, 2 * r + k) = aniso[k];
    s.gram_ = j;
    s.gram_inv_ = j.inverse();
    return s;
}

int HermitianSpace::col_of(const WittIndex& w) const {
    if (w.is_hyperbolic()) {
        int i = w.hyperbolic;
        if (i >= 1 && i <= r) return i - 1;
        if (i <= -1 && i >= -r) return 2 * r + i; // e_{-i} sits at column 2r - |i|
        throw IndexOutOfRange("hyperbolic label out of range");
    }
    if (w.aniso >= 1 && w.aniso <= n - 2 * r) return 2 * r + w.aniso - 1;
    throw IndexOutOfRange("anisotropic label out of range");
}

WittIndex HermitianSpace::witt_of_col(int col) const {
    if (col < 0 || col >= n) throw IndexOutOfRange("column out of range");
    if (col < r) return WittIndex::hyp(col + 1);
    if (col < 2 * r) return WittIndex::hyp(col - 2 * r);
    return WittIndex::an(col - 2 * r + 1);
}

Matrix HermitianSpace::involution(const Matrix& a) const {
    return gram_inv_ * a.transpose() * gram_;
}

Matrix HermitianSpace::skew_project(const Matrix& a) const {
    Laurent half = Laurent::constant(2).inverse();
    return half * (a - involution(a));
}

Laurent HermitianSpace::form_value(const Matrix& v, const Matrix& w) const {
    Matrix x = v.transpose() * gram_ * w;
    return x.at(0, 0);
}

const Matrix& HermitianSpace::involution_map() const {
    if (!involution_map_) {
        Matrix m(n * n, n * n);
        for (int j = 0; j < n; ++j)
            for (int i = 0; i < n; ++i) {
                Matrix img = involution(Matrix::unit(n, i, j)).vectorize();
                for (int k = 0; k < n * n; ++k) m.at(k, j * n + i) = img.at(k, 0);
            }
        involution_map_ = std::move(m);
    }
    return *involution_map_;
}

const Matrix& HermitianSpace::skew_basis() const {
    if (!skew_basis_) {
        // kernel of (sigma + id) on vectorized endomorphisms
        Matrix m = involution_map() + Matrix::identity(n * n);
        skew_basis_ = m.kernel_basis();
    }
    return *skew_basis_;
}

UnitClassification involution_on_unit(const HermitianSpace& space, int i, int j) {
    int n = space.n;
    if (i < 0 || i >= n || j < 0 || j >= n) throw IndexOutOfRange("unit indices");
    Matrix img = space.involution(Matrix::unit(n, i, j));
    // the image of a unit is always a scalar multiple of a single unit
    int k = -1, l = -1;
    Laurent lambda;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            if (img.at(a, b).is_exact_zero()) continue;
            if (k != -1) throw ValidationError("unit image not a scalar multiple of a unit");
            k = a; l = b; lambda = img.at(a, b);
        }
    if (k == -1) throw ValidationError("unit image vanished");
    UnitClassification c;
    if (k == i && l == j) {
        if (certified_equal(lambda, Laurent::one())) { c.kind = UnitClassification::fixed; return c; }
        if (certified_equal(lambda, -Laurent::one())) { c.kind = UnitClassification::antifixed; return c; }
    }
    c.kind = UnitClassification::swapped;
    c.k = k; c.l = l; c.lambda = lambda;
    return c;
}

} // namespace bt
