#ifndef BT_POLY_HPP
#define BT_POLY_HPP

#include "bt/matrix.hpp"

namespace bt {

// Polynomials over F = F_q((t)), coefficients from degree 0 upward.
// Only what the idempotent interpolation needs.
namespace poly {

using Poly = std::vector<Laurent>;

Poly trim(Poly p);
bool is_zero(const Poly& p);
int degree(const Poly& p); // -1 for zero
Poly add(const Poly& a, const Poly& b);
Poly sub(const Poly& a, const Poly& b);
Poly mul(const Poly& a, const Poly& b);
Poly scale(const Laurent& s, const Poly& a);
// division with remainder; divisor must have a certified-nonzero leading coeff
std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
Poly mod(const Poly& a, const Poly& b);
Poly monic(const Poly& a);
Poly gcd(Poly a, Poly b);
// h with a*h = 1 mod f; throws FactorizationMismatch if not coprime
Poly inverse_mod(const Poly& a, const Poly& f);
// p(-X) adjusted to stay monic
Poly negate_variable(const Poly& p);
Matrix eval_at(const Poly& p, const Matrix& m);

} // namespace poly

} // namespace bt

#endif
