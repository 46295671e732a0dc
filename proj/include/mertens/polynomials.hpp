#pragma once

// The asymptotic polynomials P_k and the coefficients a_k. A ShiftedPoly
// stores coefficients in powers of u = y + B, where y = log log x; in that
// basis every P_k is monic with a zero u^{k-1} coefficient.

#include <vector>

#include "mertens/xfloat.hpp"

namespace mertens {

struct ShiftedPoly {
    std::vector<XFloat> coeffs;  // coeffs[j] multiplies u^j

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
    friend bool operator==(const ShiftedPoly&, const ShiftedPoly&) = default;
};

inline constexpr int kMaxCoeffIndex = 24;

// a_2 .. a_kmax.
struct CoeffSequence {
    std::vector<XFloat> values;  // values[k - 2] = a_k

    int kmax() const { return static_cast<int>(values.size()) + 1; }
    // a_0 = 1 and a_1 = 0 by convention; throws DomainError past kmax.
    XFloat at(int k) const;
};

// a_2 = -zeta(2), a_3 = 2 zeta(3), a_4 = 3 zeta(2)^2 - 6 zeta(4), and for
// k > 4 the recurrence evaluated by `a_recurrence`. 2 <= kmax <= 24.
CoeffSequence a_seq(int kmax);

// a_k = sum_{i=1}^{k-3} (-1)^i C(k-1, i) i! zeta(i+1) a_{k-1-i}
//       + (-1)^{k-1} (k-1)! zeta(k),
// using a_2 .. a_{k-1} from `seq`. Defined for 2 <= k <= seq.kmax() + 1.
XFloat a_recurrence(int k, const CoeffSequence& seq);

// u^k + sum_{m=2}^{k} C(k, m) a_m u^{k-m}; P_0 = 1.
ShiftedPoly p_poly(int k, const CoeffSequence& seq);

// P_k from P_0 = 1, P_1 = u and
//   P_k = P_1 P_{k-1} + sum_{t=1}^{k-1} C(k-1, t) (-1)^t t! zeta(t+1) P_{k-1-t},
// using zeta values only. 0 <= k <= 24.
ShiftedPoly p_poly_recursive(int k);

// P_0 .. P_kmax from a_seq(kmax) (kmax >= 2 internally).
std::vector<ShiftedPoly> p_family(int kmax);

// Q(u) = P(u - c).
ShiftedPoly shift_poly(const ShiftedPoly& p, const XFloat& c);

// P evaluated at u = y + B by Horner's rule.
XFloat eval_poly(const ShiftedPoly& p, const XFloat& y, const XFloat& B);

// Coefficients of P as a polynomial in y (not u): plain[j] multiplies y^j.
std::vector<XFloat> to_plain_basis(const ShiftedPoly& p, const XFloat& B);

// (1/Gamma)^{(m)}(1) for m = 0 .. mmax, from the power series
//   1/Gamma(1+z) = exp(gamma z - sum_{j>=2} (-1)^j zeta(j) z^j / j).
// 1 <= mmax <= 20.
std::vector<XFloat> inv_gamma_taylor(int mmax);

struct LambdaTable {
    int k = 0;
    std::vector<XFloat> lambda;  // lambda[j] = lambda_{j,k}, j = 0 .. k
};

// lambda_{j,k} = sum_{m=0}^{k-j} k!/(m! j! (k-m-j)!) (B - gamma)^{k-m-j}
//                (1/Gamma)^{(m)}(1), so that P_k(X) = sum_j lambda_{j,k} X^j.
// 1 <= k <= 12.
LambdaTable tenenbaum_lambda(int k, const XFloat& B, const XFloat& gamma);

// Exact binomial coefficient as an XFloat, 0 <= r <= n <= 64.
XFloat binomial(int n, int r);

// n! as an XFloat, exact for n <= 27.
XFloat factorial(int n);

}  // namespace mertens
