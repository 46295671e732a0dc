#include "mertens/polynomials.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>

#include "mertens/errors.hpp"
#include "mertens/special_functions.hpp"

namespace mertens {

namespace {

std::uint64_t binomial_u64(int n, int r) {
    if (r < 0 || r > n) return 0;
    r = std::min(r, n - r);
    std::uint64_t c = 1;
    // c * (n - r + i) is divisible by i; cancel the common factor first so
    // the product stays below 2^64 for n <= 64.
    for (int i = 1; i <= r; ++i) {
        const std::uint64_t g = std::gcd(c, static_cast<std::uint64_t>(i));
        c = c / g * (static_cast<std::uint64_t>(n - r + i) / (static_cast<std::uint64_t>(i) / g));
    }
    return c;
}

void check_k(int k, int lo, int hi, const char* what) {
    if (k < lo || k > hi)
        throw DomainError(std::string(what) + " requires " + std::to_string(lo) + " <= k <= " + std::to_string(hi));
}

XFloat sign(int e) { return (e % 2 == 0) ? XFloat(1.0) : XFloat(-1.0); }

// Coefficient of P_{k-1-t} in the recursion: C(k-1, t) (-1)^t t! zeta(t+1).
XFloat recursion_weight(int k, int t) { return sign(t) * binomial(k - 1, t) * factorial(t) * zeta_int(t + 1); }

}  // namespace

XFloat binomial(int n, int r) {
    if (n < 0 || n > 64 || r < 0 || r > n) throw DomainError("binomial requires 0 <= r <= n <= 64");
    return XFloat::from_u64(binomial_u64(n, r));
}

XFloat factorial(int n) {
    if (n < 0) throw DomainError("factorial requires n >= 0");
    XFloat f(1.0);
    for (int i = 2; i <= n; ++i) f *= XFloat(i);
    return f;
}

XFloat CoeffSequence::at(int k) const {
    if (k == 0) return XFloat(1.0);
    if (k == 1) return XFloat();
    if (k < 0 || k > kmax()) throw DomainError("coefficient index " + std::to_string(k) + " is out of range");
    return values[static_cast<std::size_t>(k - 2)];
}

XFloat a_recurrence(int k, const CoeffSequence& seq) {
    check_k(k, 2, seq.kmax() + 1, "a_recurrence");
    XFloat a = sign(k - 1) * factorial(k - 1) * zeta_int(k);
    for (int i = 1; i <= k - 3; ++i) a += recursion_weight(k, i) * seq.at(k - 1 - i);
    return a;
}

CoeffSequence a_seq(int kmax) {
    check_k(kmax, 2, kMaxCoeffIndex, "a_seq");
    const XFloat z2 = zeta_int(2);
    CoeffSequence seq;
    seq.values.push_back(-z2);
    if (kmax >= 3) seq.values.push_back(XFloat(2.0) * zeta_int(3));
    if (kmax >= 4) seq.values.push_back(XFloat(3.0) * z2 * z2 - XFloat(6.0) * zeta_int(4));
    for (int k = 5; k <= kmax; ++k) seq.values.push_back(a_recurrence(k, seq));
    return seq;
}

ShiftedPoly p_poly(int k, const CoeffSequence& seq) {
    if (k < 0 || k > seq.kmax()) throw DomainError("p_poly index " + std::to_string(k) + " exceeds the coefficient range");
    ShiftedPoly p;
    p.coeffs.assign(static_cast<std::size_t>(k + 1), XFloat());
    p.coeffs[static_cast<std::size_t>(k)] = XFloat(1.0);
    for (int m = 2; m <= k; ++m) p.coeffs[static_cast<std::size_t>(k - m)] = binomial(k, m) * seq.at(m);
    return p;
}

ShiftedPoly p_poly_recursive(int k) {
    check_k(k, 0, kMaxCoeffIndex, "p_poly_recursive");
    std::vector<ShiftedPoly> family{ShiftedPoly{{XFloat(1.0)}}};
    for (int n = 1; n <= k; ++n) {
        ShiftedPoly next;
        next.coeffs.assign(static_cast<std::size_t>(n + 1), XFloat());
        // P_1 * P_{n-1} shifts coefficients up by one.
        const auto& prev = family.back().coeffs;
        for (std::size_t j = 0; j < prev.size(); ++j) next.coeffs[j + 1] = prev[j];
        for (int t = 1; t <= n - 1; ++t) {
            const XFloat w = recursion_weight(n, t);
            const auto& q = family[static_cast<std::size_t>(n - 1 - t)].coeffs;
            for (std::size_t j = 0; j < q.size(); ++j) next.coeffs[j] += w * q[j];
        }
        family.push_back(std::move(next));
    }
    return family[static_cast<std::size_t>(k)];
}

std::vector<ShiftedPoly> p_family(int kmax) {
    if (kmax < 0 || kmax > kMaxCoeffIndex) throw DomainError("p_family requires 0 <= kmax <= 24");
    const CoeffSequence seq = a_seq(std::max(kmax, 2));
    std::vector<ShiftedPoly> out;
    for (int k = 0; k <= kmax; ++k) out.push_back(p_poly(k, seq));
    return out;
}

ShiftedPoly shift_poly(const ShiftedPoly& p, const XFloat& c) {
    const int d = p.degree();
    ShiftedPoly q;
    q.coeffs.assign(p.coeffs.size(), XFloat());
    // (u - c)^i = sum_j C(i, j) u^j (-c)^{i-j}
    for (int i = 0; i <= d; ++i) {
        XFloat neg_c_pow(1.0);
        for (int j = i; j >= 0; --j) {
            q.coeffs[static_cast<std::size_t>(j)] += p.coeffs[static_cast<std::size_t>(i)] * binomial(i, j) * neg_c_pow;
            neg_c_pow *= -c;
        }
    }
    return q;
}

XFloat eval_poly(const ShiftedPoly& p, const XFloat& y, const XFloat& B) {
    const XFloat u = y + B;
    XFloat acc;
    for (auto it = p.coeffs.rbegin(); it != p.coeffs.rend(); ++it) acc = acc * u + *it;
    return acc;
}

std::vector<XFloat> to_plain_basis(const ShiftedPoly& p, const XFloat& B) {
    // P(y + B) as a polynomial in y is the shift of P by -B.
    return shift_poly(p, -B).coeffs;
}

std::vector<XFloat> inv_gamma_taylor(int mmax) {
    check_k(mmax, 1, 20, "inv_gamma_taylor");
    const auto n = static_cast<std::size_t>(mmax);
    // h = log(1/Gamma(1+z)), coefficients h_1 .. h_mmax.
    std::vector<XFloat> h(n + 1);
    h[1] = euler_gamma();
    for (int j = 2; j <= mmax; ++j) h[static_cast<std::size_t>(j)] = -sign(j) * zeta_int(j) / XFloat(j);
    // g = exp(h): n g_n = sum_{k=1}^{n} k h_k g_{n-k}.
    std::vector<XFloat> g(n + 1);
    g[0] = XFloat(1.0);
    for (std::size_t i = 1; i <= n; ++i) {
        XFloat acc;
        for (std::size_t k = 1; k <= i; ++k) acc += XFloat(static_cast<int>(k)) * h[k] * g[i - k];
        g[i] = acc / XFloat(static_cast<int>(i));
    }
    for (std::size_t m = 0; m <= n; ++m) g[m] *= factorial(static_cast<int>(m));
    return g;
}

LambdaTable tenenbaum_lambda(int k, const XFloat& B, const XFloat& gamma) {
    check_k(k, 1, 12, "tenenbaum_lambda");
    const auto ig = inv_gamma_taylor(std::max(k, 1));
    const XFloat shift = B - gamma;
    LambdaTable t{k, std::vector<XFloat>(static_cast<std::size_t>(k + 1))};
    for (int j = 0; j <= k; ++j) {
        XFloat acc;
        for (int m = 0; m <= k - j; ++m) {
            // k! / (m! j! (k-m-j)!) = C(k, j) C(k-j, m), exact in integers.
            const std::uint64_t multinomial = binomial_u64(k, j) * binomial_u64(k - j, m);
            acc += XFloat::from_u64(multinomial) * pow(shift, k - m - j) * ig[static_cast<std::size_t>(m)];
        }
        t.lambda[static_cast<std::size_t>(j)] = acc;
    }
    return t;
}

}  // namespace mertens
