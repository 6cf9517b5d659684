#include "bt/laurent.hpp"

#include <algorithm>
#include <sstream>

namespace bt {

FieldConfig& field_config() {
    static FieldConfig cfg;
    return cfg;
}

void set_field(int q, int window) {
    if (q < 3 || q % 2 == 0) throw ValidationError("field characteristic must be an odd prime");
    for (int d = 3; d * d <= q; d += 2)
        if (q % d == 0) throw ValidationError("field characteristic must be prime");
    if (window < 4) throw ValidationError("precision window too small");
    field_config().q = q;
    field_config().window = window;
}

int fq_add(int a, int b) { return (a + b) % field_config().q; }
int fq_sub(int a, int b) { int q = field_config().q; return ((a - b) % q + q) % q; }
int fq_mul(int a, int b) { return (a * b) % field_config().q; }
int fq_neg(int a) { int q = field_config().q; return (q - a) % q; }

int fq_inv(int a) {
    int q = field_config().q;
    a = ((a % q) + q) % q;
    if (a == 0) throw DivisionByZero("inverse of 0 in F_q");
    // Fermat: a^(q-2)
    int result = 1, base = a, exp = q - 2;
    while (exp > 0) {
        if (exp & 1) result = (result * base) % q;
        base = (base * base) % q;
        exp >>= 1;
    }
    return result;
}

void Laurent::normalize() {
    int q = field_config().q;
    for (int& c : coeffs_) c = ((c % q) + q) % q;
    // drop anything at or above the floor
    if (!exact() && val_ + (int)coeffs_.size() > floor_) {
        int keep = std::max(0, floor_ - val_);
        coeffs_.resize(keep);
    }
    // strip leading zeros
    size_t lead = 0;
    while (lead < coeffs_.size() && coeffs_[lead] == 0) ++lead;
    if (lead > 0) {
        coeffs_.erase(coeffs_.begin(), coeffs_.begin() + lead);
        val_ += static_cast<int>(lead);
    }
    if (exact()) {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    if (coeffs_.empty()) {
        if (exact()) { val_ = 0; floor_ = kInf; }
        else { val_ = floor_; }
        return;
    }
    // enforce the relative-precision window
    if (!exact()) {
        int cap = val_ + field_config().window;
        if (floor_ > cap) floor_ = cap;
        if (val_ + (int)coeffs_.size() > floor_) coeffs_.resize(floor_ - val_);
    }
}

Laurent Laurent::from_coeffs(int val, std::vector<int> coeffs, int floor) {
    Laurent x;
    x.val_ = val;
    x.coeffs_ = std::move(coeffs);
    x.floor_ = floor;
    x.normalize();
    return x;
}

Laurent Laurent::t_power(int k) { return from_coeffs(k, {1}); }

Laurent Laurent::constant(int a) { return from_coeffs(0, {a}); }

Laurent Laurent::unknown_above(int floor) {
    Laurent x;
    x.val_ = floor;
    x.floor_ = floor;
    return x;
}

int Laurent::valuation() const {
    if (known_nonzero()) return val_;
    if (exact()) return kInf;
    throw PrecisionExhausted("valuation of a scalar that is zero up to exponent " + std::to_string(floor_));
}

bool Laurent::valuation_at_least(int k) const {
    if (known_nonzero()) return val_ >= k;
    if (exact()) return true;
    if (floor_ >= k) return true;
    throw PrecisionExhausted("cannot certify valuation >= " + std::to_string(k));
}

int Laurent::coeff(int exponent) const {
    if (!exact() && exponent >= floor_) throw PrecisionExhausted("coefficient above precision floor");
    if (coeffs_.empty()) return 0;
    if (exponent < val_ || exponent >= val_ + (int)coeffs_.size()) return 0;
    return coeffs_[exponent - val_];
}

Laurent Laurent::operator-() const {
    Laurent x = *this;
    for (int& c : x.coeffs_) c = fq_neg(c);
    return x;
}

Laurent operator+(const Laurent& a, const Laurent& b) {
    if (a.is_exact_zero()) return b;
    if (b.is_exact_zero()) return a;
    int floor = std::min(a.floor_, b.floor_);
    int lo = std::min(a.coeffs_.empty() ? a.floor_ : a.val_,
                      b.coeffs_.empty() ? b.floor_ : b.val_);
    int hi = floor >= Laurent::kInf
                 ? std::max(a.val_ + (int)a.coeffs_.size(), b.val_ + (int)b.coeffs_.size())
                 : floor;
    if (lo >= hi && floor < Laurent::kInf) return Laurent::unknown_above(floor);
    std::vector<int> c(std::max(0, hi - lo), 0);
    for (int e = lo; e < hi; ++e) {
        int ca = (e >= a.val_ && e < a.val_ + (int)a.coeffs_.size()) ? a.coeffs_[e - a.val_] : 0;
        int cb = (e >= b.val_ && e < b.val_ + (int)b.coeffs_.size()) ? b.coeffs_[e - b.val_] : 0;
        c[e - lo] = fq_add(ca, cb);
    }
    return Laurent::from_coeffs(lo, std::move(c), floor);
}

Laurent operator-(const Laurent& a, const Laurent& b) { return a + (-b); }

Laurent operator*(const Laurent& a, const Laurent& b) {
    if (a.is_exact_zero() || b.is_exact_zero()) return Laurent();
    // indeterminate-zero factors: the product is zero below the sum of floors
    if (a.coeffs_.empty() || b.coeffs_.empty()) {
        long fa = a.coeffs_.empty() ? a.floor_ : a.val_;
        long fb = b.coeffs_.empty() ? b.floor_ : b.val_;
        long f = std::min<long>(fa + fb, Laurent::kInf);
        return Laurent::unknown_above(static_cast<int>(f));
    }
    long floor = Laurent::kInf;
    if (!a.exact()) floor = std::min(floor, (long)a.floor_ + b.val_);
    if (!b.exact()) floor = std::min(floor, (long)b.floor_ + a.val_);
    int val = a.val_ + b.val_;
    int len;
    if (floor >= Laurent::kInf)
        len = (int)a.coeffs_.size() + (int)b.coeffs_.size() - 1;
    else
        len = std::min<long>((long)a.coeffs_.size() + (long)b.coeffs_.size() - 1, floor - val);
    std::vector<int> c(std::max(len, 0), 0);
    for (size_t i = 0; i < a.coeffs_.size(); ++i) {
        if ((int)i >= len) break;
        if (a.coeffs_[i] == 0) continue;
        size_t jmax = std::min(b.coeffs_.size(), (size_t)(len - (int)i));
        for (size_t j = 0; j < jmax; ++j)
            c[i + j] = fq_add(c[i + j], fq_mul(a.coeffs_[i], b.coeffs_[j]));
    }
    return Laurent::from_coeffs(val, std::move(c),
                                floor >= Laurent::kInf ? Laurent::kInf : (int)floor);
}

Laurent Laurent::inverse() const {
    if (is_exact_zero()) throw DivisionByZero("inverse of exact zero");
    if (!known_nonzero()) throw PrecisionExhausted("inverse of an indeterminate zero");
    int window = field_config().window;
    int rel = exact() ? window : floor_ - val_;
    rel = std::min(rel, window);
    if (is_monomial()) {
        // exact: (u t^v)^-1 = u^-1 t^-v
        Laurent r = from_coeffs(-val_, {fq_inv(coeffs_[0])},
                                exact() ? kInf : -val_ + rel);
        return r;
    }
    // power-series inversion of the unit part
    std::vector<int> inv(rel, 0);
    int u0 = fq_inv(coeffs_[0]);
    inv[0] = u0;
    for (int k = 1; k < rel; ++k) {
        int s = 0;
        for (int j = 1; j <= k; ++j) {
            int aj = (j < (int)coeffs_.size()) ? coeffs_[j] : 0;
            s = fq_add(s, fq_mul(aj, inv[k - j]));
        }
        inv[k] = fq_mul(fq_neg(s), u0);
    }
    return from_coeffs(-val_, std::move(inv), -val_ + rel);
}

Laurent operator/(const Laurent& a, const Laurent& b) {
    if (a.is_exact_zero()) return Laurent();
    if (b.is_monomial()) {
        // exactness preserved
        Laurent r = a.times_t_power(-b.val_);
        int u = fq_inv(b.coeffs_[0]);
        for (int& c : r.coeffs_) c = fq_mul(c, u);
        return r;
    }
    return a * b.inverse();
}

Laurent Laurent::times_t_power(int k) const {
    Laurent r = *this;
    if (r.is_exact_zero()) return r;
    r.val_ += k;
    if (!r.exact()) r.floor_ += k;
    return r;
}

Laurent Laurent::head_below(int m) const {
    if (coeffs_.empty() && !exact() && floor_ < m)
        throw PrecisionExhausted("head of an indeterminate zero");
    if (!exact() && floor_ < m)
        throw PrecisionExhausted("head beyond precision floor");
    Laurent r;
    r.val_ = val_;
    int keep = std::max(0, std::min((int)coeffs_.size(), m - val_));
    r.coeffs_.assign(coeffs_.begin(), coeffs_.begin() + keep);
    r.floor_ = kInf; // head is exact once certified
    r.normalize();
    return r;
}

Laurent Laurent::tail_from(int m) const {
    Laurent r;
    if (coeffs_.empty()) {
        if (exact()) return Laurent();
        return unknown_above(std::max(floor_, m));
    }
    int start = std::max(0, m - val_);
    if (start >= (int)coeffs_.size()) {
        if (exact()) return Laurent();
        return unknown_above(floor_);
    }
    r.val_ = val_ + start;
    r.coeffs_.assign(coeffs_.begin() + start, coeffs_.end());
    r.floor_ = floor_;
    r.normalize();
    return r;
}

bool certified_equal(const Laurent& a, const Laurent& b) {
    Laurent d = a - b;
    if (d.known_nonzero()) return false;
    if (d.is_exact_zero()) return true;
    throw PrecisionExhausted("equality undecidable within window");
}

std::string Laurent::str() const {
    std::ostringstream os;
    if (coeffs_.empty()) {
        if (exact()) return "0";
        os << "O(t^" << floor_ << ")";
        return os.str();
    }
    bool first = true;
    for (size_t i = 0; i < coeffs_.size(); ++i) {
        if (coeffs_[i] == 0) continue;
        if (!first) os << " + ";
        first = false;
        int e = val_ + (int)i;
        if (e == 0) os << coeffs_[i];
        else {
            if (coeffs_[i] != 1) os << coeffs_[i] << "*";
            os << "t";
            if (e != 1) os << "^" << e;
        }
    }
    if (!exact()) os << " + O(t^" << floor_ << ")";
    return os.str();
}

} // namespace bt
