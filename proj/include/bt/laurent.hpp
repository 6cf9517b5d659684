#ifndef BT_LAURENT_HPP
#define BT_LAURENT_HPP

#include <climits>
#include <string>
#include <vector>

#include "bt/errors.hpp"

namespace bt {

// Global field parameters: F = F_q((t)) with q an odd prime and a
// coefficient window bounding the relative precision of inexact values.
struct FieldConfig {
    int q = 3;
    int window = 24;
};

FieldConfig& field_config();
void set_field(int q, int window);

// mod-q helpers
int fq_add(int a, int b);
int fq_sub(int a, int b);
int fq_mul(int a, int b);
int fq_neg(int a);
int fq_inv(int a);

// An element of F = F_q((t)) with tracked precision.
//
// Coefficients are stored from the leading valuation upward. A value is
// "exact" when every unstored coefficient is exactly zero; otherwise
// coefficients at exponents >= floor() are indeterminate. The exact zero
// has an empty coefficient list and infinite floor.
class Laurent {
public:
    static constexpr int kInf = INT_MAX / 4;

    Laurent() = default; // exact zero

    static Laurent from_coeffs(int val, std::vector<int> coeffs, int floor = kInf);
    static Laurent t_power(int k);
    static Laurent constant(int a); // a mod q
    static Laurent one() { return constant(1); }
    // an indeterminate zero: all coefficients below `floor` known zero
    static Laurent unknown_above(int floor);

    bool exact() const { return floor_ >= kInf; }
    int floor() const { return floor_; }
    bool is_exact_zero() const { return coeffs_.empty() && exact(); }
    // normalized leading coefficient is nonzero, so this is decisive
    bool known_nonzero() const { return !coeffs_.empty(); }

    // leading valuation; kInf for exact zero; throws PrecisionExhausted
    // for an indeterminate zero.
    int valuation() const;

    // certified test v(x) >= k; throws PrecisionExhausted only when the
    // stored window cannot decide.
    bool valuation_at_least(int k) const;
    bool in_o() const { return valuation_at_least(0); }

    int coeff(int exponent) const; // throws PrecisionExhausted above floor

    Laurent operator-() const;
    friend Laurent operator+(const Laurent& a, const Laurent& b);
    friend Laurent operator-(const Laurent& a, const Laurent& b);
    friend Laurent operator*(const Laurent& a, const Laurent& b);
    Laurent inverse() const;
    friend Laurent operator/(const Laurent& a, const Laurent& b);
    Laurent& operator+=(const Laurent& b) { *this = *this + b; return *this; }
    Laurent& operator-=(const Laurent& b) { *this = *this - b; return *this; }
    Laurent& operator*=(const Laurent& b) { *this = *this * b; return *this; }

    Laurent times_t_power(int k) const;

    // Split at exponent m: head keeps exponents < m, tail keeps >= m.
    Laurent head_below(int m) const;
    Laurent tail_from(int m) const;

    // true if the coefficient at the leading valuation is the only
    // stored one and the value is exact (a unit multiple of t^v)
    bool is_monomial() const { return exact() && coeffs_.size() == 1; }

    // Certified equality; throws PrecisionExhausted when undecidable.
    friend bool certified_equal(const Laurent& a, const Laurent& b);

    std::string str() const;

private:
    std::vector<int> coeffs_; // coeffs_[i] is the coefficient of t^(val_+i)
    int val_ = 0;
    int floor_ = kInf;

    void normalize();
};

} // namespace bt

#endif
