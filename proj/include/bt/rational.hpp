#ifndef BT_RATIONAL_HPP
#define BT_RATIONAL_HPP

#include <cstdint>
#include <numeric>
#include <string>
#include <stdexcept>

namespace bt {

// Small exact rational, always normalized with positive denominator.
// Denominators stay tiny (lcm of grid denominators and ramification
// indices), so int64 never overflows here.
struct Rat {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rat() = default;
    Rat(std::int64_t n) : num(n), den(1) {}
    Rat(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }

    void normalize() {
        if (den == 0) throw std::invalid_argument("Rat: zero denominator");
        if (den < 0) { num = -num; den = -den; }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) { num /= g; den /= g; }
    }

    friend Rat operator+(Rat a, Rat b) { return Rat(a.num * b.den + b.num * a.den, a.den * b.den); }
    friend Rat operator-(Rat a, Rat b) { return Rat(a.num * b.den - b.num * a.den, a.den * b.den); }
    friend Rat operator*(Rat a, Rat b) { return Rat(a.num * b.num, a.den * b.den); }
    friend Rat operator/(Rat a, Rat b) {
        if (b.num == 0) throw std::invalid_argument("Rat: division by zero");
        return Rat(a.num * b.den, a.den * b.num);
    }
    Rat operator-() const { return Rat(-num, den); }
    Rat& operator+=(Rat b) { *this = *this + b; return *this; }
    Rat& operator-=(Rat b) { *this = *this - b; return *this; }

    friend bool operator==(Rat a, Rat b) { return a.num == b.num && a.den == b.den; }
    friend bool operator!=(Rat a, Rat b) { return !(a == b); }
    friend bool operator<(Rat a, Rat b) { return a.num * b.den < b.num * a.den; }
    friend bool operator<=(Rat a, Rat b) { return a.num * b.den <= b.num * a.den; }
    friend bool operator>(Rat a, Rat b) { return b < a; }
    friend bool operator>=(Rat a, Rat b) { return b <= a; }

    // floor and ceil as integers
    std::int64_t floor() const {
        std::int64_t q = num / den;
        if (num % den != 0 && num < 0) --q;
        return q;
    }
    std::int64_t ceil() const {
        std::int64_t q = num / den;
        if (num % den != 0 && num > 0) ++q;
        return q;
    }
    // fractional part in [0, 1)
    Rat frac() const { return *this - Rat(floor()); }
    bool is_integer() const { return den == 1; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    static Rat parse(const std::string& s) {
        auto slash = s.find('/');
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    }
};

} // namespace bt

#endif
