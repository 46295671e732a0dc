#pragma once

// Extended-precision constants and special values: zeta(n), Li_n(1/2), the
// log-power integrals int_0^{1/2} log^m(1-x)/x dx, the Mertens constant and
// Euler's constant.

#include <cstdint>

#include "mertens/prime_table.hpp"
#include "mertens/xfloat.hpp"

namespace mertens {

struct Constants {
    XFloat B;       // Mertens constant
    XFloat gamma;   // Euler's constant
    XFloat a;       // log 2
    std::uint64_t b_limit = 0;   // prime bound used for B
    double b_error_bound = 0.0;  // bound on |B - computed B|
};

inline constexpr std::uint64_t kDefaultBLimit = 1'000'000;

// Riemann zeta at an integer 2 <= n <= 64, relative error <= 1e-28.
XFloat zeta_int(int n);

// Li_n(1/2) = sum_{k>=1} 1 / (k^n 2^k) for 2 <= n <= 64.
XFloat polylog_half(int n);

// int_{0}^{1/2} log^m(1-x)/x dx, 1 <= m <= 32, from the closed form in zeta
// values and Li_{s+1}(1/2). The closed form cancels about log10(m! zeta(m+1))
// digits, so the result keeps roughly 31 - log10(m!) of them.
XFloat log_power_integral_closed(int m);

struct LogIntegralQuad {
    XFloat value;
    double error_estimate;
};

// The same integral by adaptive Gauss-Kronrod on [1e-8, 1/2] plus a series
// for the piece near zero. Independent of the closed form. 1 <= m <= 32 and
// 1e-14 <= tol <= 0.1.
LogIntegralQuad log_power_integral_quad(int m, double tol);

struct MertensConstantResult {
    XFloat value;
    double tail_bound;  // 1/(2 L log L): size of the neglected tail
};

// B = gamma + sum_{p<=L} (log(1 - 1/p) + 1/p) - 1/(2 L log L).
// Requires 1e3 <= L <= table.limit().
MertensConstantResult mertens_constant(std::uint64_t limit, const PrimeTable& table);

// Euler's constant from the Euler-Maclaurin expansion of H_n - log n at
// n = 100 with twelve Bernoulli correction terms.
XFloat euler_gamma();

Constants compute_constants(const PrimeTable& table, std::uint64_t b_limit = kDefaultBLimit);

// Error bounds used when reporting values.
double zeta_error_bound(int n);
double polylog_half_error_bound(int n);
double log_power_integral_closed_error_bound(int m);
inline constexpr double kEulerGammaErrorBound = 1e-30;

}  // namespace mertens
