#include "bt/lattice.hpp"

#include <numeric>
#include <sstream>

#include "bt/errors.hpp"

namespace bt {

namespace {

// forward substitution: basis is lower triangular with monomial diagonal
Matrix triangular_coords(const Matrix& basis, const std::vector<int>& diag, const Matrix& rhs) {
    int n = basis.rows();
    Matrix x(n, rhs.cols());
    for (int c = 0; c < rhs.cols(); ++c) {
        for (int i = 0; i < n; ++i) {
            Laurent acc = rhs.at(i, c);
            for (int j = 0; j < i; ++j) {
                if (basis.at(i, j).is_exact_zero() || x.at(j, c).is_exact_zero()) continue;
                acc -= basis.at(i, j) * x.at(j, c);
            }
            x.at(i, c) = acc.times_t_power(-diag[i]);
        }
    }
    return x;
}

} // namespace

Lattice Lattice::from_columns(const Matrix& generators) {
    int n = generators.rows();
    int m = generators.cols();
    if (m < n) throw RankDeficient("fewer generators than ambient dimension");
    Matrix b = generators;
    std::vector<int> diag(n, 0);
    for (int r = 0; r < n; ++r) {
        int pivot = -1, best_val = Laurent::kInf;
        bool saw_indeterminate = false;
        for (int j = r; j < m; ++j) {
            const Laurent& e = b.at(r, j);
            if (e.known_nonzero()) {
                if (e.valuation() < best_val) { best_val = e.valuation(); pivot = j; }
            } else if (!e.is_exact_zero()) {
                saw_indeterminate = true;
            }
        }
        if (pivot < 0) {
            if (saw_indeterminate) throw PrecisionExhausted("lattice pivot selection");
            throw RankDeficient("generators do not span row " + std::to_string(r));
        }
        if (pivot != r)
            for (int i = 0; i < n; ++i) std::swap(b.at(i, pivot), b.at(i, r));
        int d = best_val;
        Laurent unit_inv = (b.at(r, r).times_t_power(-d)).inverse();
        for (int i = 0; i < n; ++i) b.at(i, r) = unit_inv * b.at(i, r);
        b.at(r, r) = Laurent::t_power(d); // exact by construction
        diag[r] = d;
        for (int j = r + 1; j < m; ++j) {
            Laurent f = b.at(r, j).times_t_power(-d); // in o: pivot had minimal valuation
            if (!f.is_exact_zero()) {
                for (int i = r + 1; i < n; ++i) b.at(i, j) -= f * b.at(i, r);
            }
            b.at(r, j) = Laurent();
        }
    }
    // reduce below-diagonal entries modulo the row pivot
    for (int j = 0; j < n; ++j) {
        for (int i = j + 1; i < n; ++i) {
            const Laurent& e = b.at(i, j);
            if (e.is_exact_zero()) continue;
            Laurent head, q;
            try {
                head = e.head_below(diag[i]);
                q = e.tail_from(diag[i]).times_t_power(-diag[i]);
            } catch (const PrecisionExhausted&) {
                continue; // leave unreduced; equality goes through inclusions anyway
            }
            if (!q.is_exact_zero())
                for (int k = i + 1; k < n; ++k) b.at(k, j) -= q * b.at(k, i);
            b.at(i, j) = head;
        }
    }
    Lattice l;
    l.dim_ = n;
    l.basis_ = b.cols_range(0, n);
    l.diag_ = std::move(diag);
    return l;
}

Lattice Lattice::standard(int dim) {
    return from_columns(Matrix::identity(dim));
}

Lattice Lattice::t_power_standard(const std::vector<int>& exps) {
    return from_columns(Matrix::t_power_diagonal(exps));
}

int Lattice::det_valuation() const {
    return std::accumulate(diag_.begin(), diag_.end(), 0);
}

Lattice Lattice::scaled_by_t(int k) const {
    Lattice l = *this;
    for (int j = 0; j < dim_; ++j)
        for (int i = 0; i < dim_; ++i)
            l.basis_.at(i, j) = l.basis_.at(i, j).times_t_power(k);
    for (int& d : l.diag_) d += k;
    return l;
}

bool Lattice::contains(const Matrix& v) const {
    Matrix x = triangular_coords(basis_, diag_, v);
    for (int i = 0; i < dim_; ++i)
        if (!x.at(i, 0).in_o()) return false;
    return true;
}

bool Lattice::contains_lattice(const Lattice& other) const {
    Matrix x = triangular_coords(basis_, diag_, other.basis_);
    for (int i = 0; i < x.rows(); ++i)
        for (int j = 0; j < x.cols(); ++j)
            if (!x.at(i, j).in_o()) return false;
    return true;
}

bool operator==(const Lattice& a, const Lattice& b) {
    if (a.dim_ != b.dim_) return false;
    if (a.diag_ != b.diag_) return false; // canonical diagonals are invariants
    return a.contains_lattice(b) && b.contains_lattice(a);
}

Lattice lattice_sum(const Lattice& a, const Lattice& b) {
    if (a.dim_ != b.dim_) throw ValidationError("lattice_sum dimension mismatch");
    return Lattice::from_columns(hcat(a.basis_, b.basis_));
}

Lattice Lattice::standard_dual() const {
    return from_columns(basis_.inverse().transpose());
}

Lattice lattice_intersect(const Lattice& a, const Lattice& b) {
    if (a.dim_ != b.dim_) throw ValidationError("lattice_intersect dimension mismatch");
    return lattice_sum(a.standard_dual(), b.standard_dual()).standard_dual();
}

SmithResult smith_reduce(const Matrix& mat) {
    Matrix a = mat;
    int m = a.rows(), k = a.cols();
    Matrix u = Matrix::identity(m);
    Matrix w = Matrix::identity(k);
    std::vector<int> d;
    int steps = std::min(m, k);
    for (int step = 0; step < steps; ++step) {
        int pi = -1, pj = -1, best_val = Laurent::kInf;
        bool saw_indeterminate = false;
        for (int i = step; i < m; ++i)
            for (int j = step; j < k; ++j) {
                const Laurent& e = a.at(i, j);
                if (e.known_nonzero()) {
                    if (e.valuation() < best_val) { best_val = e.valuation(); pi = i; pj = j; }
                } else if (!e.is_exact_zero()) {
                    saw_indeterminate = true;
                }
            }
        if (pi < 0) {
            if (saw_indeterminate) throw PrecisionExhausted("smith pivot selection");
            break; // remaining block is exactly zero
        }
        if (pi != step)
            for (int j = 0; j < k; ++j) std::swap(a.at(pi, j), a.at(step, j));
        if (pi != step)
            for (int j = 0; j < m; ++j) std::swap(u.at(pi, j), u.at(step, j));
        if (pj != step) {
            for (int i = 0; i < m; ++i) std::swap(a.at(i, pj), a.at(i, step));
            for (int i = 0; i < k; ++i) std::swap(w.at(i, pj), w.at(i, step));
        }
        int dv = best_val;
        Laurent unit_inv = (a.at(step, step).times_t_power(-dv)).inverse();
        for (int j = 0; j < k; ++j) a.at(step, j) = unit_inv * a.at(step, j);
        for (int j = 0; j < m; ++j) u.at(step, j) = unit_inv * u.at(step, j);
        a.at(step, step) = Laurent::t_power(dv);
        for (int i = step + 1; i < m; ++i) {
            Laurent f = a.at(i, step).times_t_power(-dv);
            if (!f.is_exact_zero()) {
                for (int j = 0; j < k; ++j) a.at(i, j) -= f * a.at(step, j);
                for (int j = 0; j < m; ++j) u.at(i, j) -= f * u.at(step, j);
            }
            a.at(i, step) = Laurent();
        }
        for (int j = step + 1; j < k; ++j) {
            Laurent g = a.at(step, j).times_t_power(-dv);
            if (!g.is_exact_zero()) {
                for (int i = 0; i < m; ++i) a.at(i, j) -= g * a.at(i, step);
                for (int i = 0; i < k; ++i) w.at(i, j) -= g * w.at(i, step);
            }
            a.at(step, j) = Laurent();
        }
        d.push_back(dv);
    }
    return SmithResult{std::move(d), std::move(u), std::move(w)};
}

Lattice preimage_lattice(const Matrix& w, const Lattice& l) {
    if (w.rows() != l.dim()) throw ValidationError("preimage_lattice shape mismatch");
    Matrix c = triangular_coords(l.basis(), l.diagonal_valuations(), w);
    SmithResult s = smith_reduce(c);
    if ((int)s.d.size() < w.cols())
        throw RankDeficient("preimage map does not have full column rank");
    std::vector<int> neg(s.d.size());
    for (size_t i = 0; i < s.d.size(); ++i) neg[i] = -s.d[i];
    return Lattice::from_columns(s.w * Matrix::t_power_diagonal(neg));
}

Lattice subspace_lattice_intersect(const Lattice& l, const Matrix& s) {
    return preimage_lattice(s, l);
}

std::string Lattice::str() const {
    std::ostringstream os;
    os << "Lattice dim=" << dim_ << " diag=[";
    for (size_t i = 0; i < diag_.size(); ++i) os << diag_[i] << (i + 1 < diag_.size() ? "," : "");
    os << "]\n" << basis_.str();
    return os.str();
}

} // namespace bt
