#include "bt/poly.hpp"

#include "bt/errors.hpp"

namespace bt {
namespace poly {

Poly trim(Poly p) {
    while (!p.empty() && p.back().is_exact_zero()) p.pop_back();
    return p;
}

bool is_zero(const Poly& p) {
    for (const Laurent& c : p)
        if (!c.is_exact_zero()) return false;
    return true;
}

int degree(const Poly& p) {
    for (int i = (int)p.size() - 1; i >= 0; --i)
        if (!p[i].is_exact_zero()) return i;
    return -1;
}

Poly add(const Poly& a, const Poly& b) {
    Poly r(std::max(a.size(), b.size()));
    for (size_t i = 0; i < r.size(); ++i) {
        if (i < a.size()) r[i] += a[i];
        if (i < b.size()) r[i] += b[i];
    }
    return trim(std::move(r));
}

Poly sub(const Poly& a, const Poly& b) {
    return add(a, scale(-Laurent::one(), b));
}

Poly mul(const Poly& a, const Poly& b) {
    if (is_zero(a) || is_zero(b)) return {};
    Poly r(a.size() + b.size() - 1);
    for (size_t i = 0; i < a.size(); ++i)
        for (size_t j = 0; j < b.size(); ++j)
            r[i + j] += a[i] * b[j];
    return trim(std::move(r));
}

Poly scale(const Laurent& s, const Poly& a) {
    Poly r = a;
    for (Laurent& c : r) c *= s;
    return trim(std::move(r));
}

std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b) {
    int db = degree(b);
    if (db < 0) throw DivisionByZero("polynomial division");
    if (!b[db].known_nonzero())
        throw PrecisionExhausted("leading coefficient of divisor is indeterminate");
    Laurent lead_inv = b[db].inverse();
    Poly rem = trim(a);
    int da = degree(rem);
    if (da < db) return {{}, rem};
    Poly quot(da - db + 1);
    while ((da = degree(rem)) >= db) {
        Laurent c = rem[da] * lead_inv;
        quot[da - db] = c;
        for (int i = 0; i <= db; ++i) rem[da - db + i] -= c * b[i];
        rem[da] = Laurent(); // force exact cancellation of the head term
        rem = trim(std::move(rem));
    }
    return {trim(std::move(quot)), rem};
}

Poly mod(const Poly& a, const Poly& b) { return divmod(a, b).second; }

Poly monic(const Poly& a) {
    int d = degree(a);
    if (d < 0) return {};
    Poly r = trim(a);
    return scale(r[d].inverse(), r);
}

Poly gcd(Poly a, Poly b) {
    a = trim(std::move(a));
    b = trim(std::move(b));
    while (degree(b) >= 0) {
        Poly r = mod(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return monic(a);
}

Poly inverse_mod(const Poly& a, const Poly& f) {
    // extended Euclid on (a mod f, f)
    Poly r0 = trim(f), r1 = mod(a, f);
    Poly s0 = {}, s1 = {Laurent::one()}; // coefficients of `a` along the way
    while (degree(r1) > 0) {
        auto [q, r2] = divmod(r0, r1);
        Poly s2 = sub(s0, mul(q, s1));
        r0 = std::move(r1); r1 = std::move(r2);
        s0 = std::move(s1); s1 = std::move(s2);
    }
    if (degree(r1) != 0)
        throw FactorizationMismatch("factors are not coprime");
    return mod(scale(r1[0].inverse(), s1), f);
}

Poly negate_variable(const Poly& p) {
    int d = degree(p);
    Poly r = trim(p);
    for (int k = 0; k <= d; ++k)
        if ((d - k) % 2 == 1) r[k] = -r[k];
    return r;
}

Matrix eval_at(const Poly& p, const Matrix& m) {
    int n = m.rows();
    Matrix r(n, n);
    for (int k = degree(p); k >= 0; --k) {
        r = r * m;
        for (int i = 0; i < n; ++i) r.at(i, i) += p[k];
    }
    return r;
}

} // namespace poly
} // namespace bt
