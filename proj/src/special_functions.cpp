#include "mertens/special_functions.hpp"

#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "mertens/errors.hpp"
#include "mertens/quadrature.hpp"

namespace mertens {

namespace {

constexpr int kMaxZetaArg = 64;
constexpr int kZetaDirectTerms = 32;

// B_{2j} = num/den for j = 1..12.
constexpr std::array<std::pair<double, double>, 12> kBernoulli = {{
    {1.0, 6.0},
    {-1.0, 30.0},
    {1.0, 42.0},
    {-1.0, 30.0},
    {5.0, 66.0},
    {-691.0, 2730.0},
    {7.0, 6.0},
    {-3617.0, 510.0},
    {43867.0, 798.0},
    {-174611.0, 330.0},
    {854513.0, 138.0},
    {-236364091.0, 2730.0},
}};

// sum_{k<N} k^-n directly, then Euler-Maclaurin for the tail at N:
//   sum_{k>=N} k^-n = N^{1-n}/(n-1) + N^-n/2
//                     + sum_j B_{2j}/(2j)! * n(n+1)...(n+2j-2) * N^{-n-2j+1}
XFloat zeta_series(int n) {
    XFloat direct;
    for (int k = kZetaDirectTerms - 1; k >= 1; --k) direct += pow(XFloat(k), -n);

    const XFloat big_n(kZetaDirectTerms);
    const XFloat inv_n = XFloat(1.0) / big_n;
    const XFloat n_pow = pow(inv_n, n);  // N^-n
    XFloat tail = n_pow * big_n / XFloat(n - 1) + n_pow.ldexp(-1);

    XFloat rising(n);       // n (n+1) ... (n+2j-2)
    XFloat factorial(2.0);  // (2j)!
    XFloat npow = n_pow * inv_n;  // N^{-n-2j+1}
    for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
        const auto [num, den] = kBernoulli[j - 1];
        tail += XFloat(num) / XFloat(den) / factorial * rising * npow;
        const int jj = static_cast<int>(j);
        rising *= XFloat(n + 2 * jj - 1) * XFloat(n + 2 * jj);
        factorial *= XFloat(2 * jj + 1) * XFloat(2 * jj + 2);
        npow *= inv_n * inv_n;
    }
    return direct + tail;
}

XFloat polylog_half_series(int n) {
    XFloat sum;
    for (int k = 1; k < 200; ++k) {
        XFloat term = pow(XFloat(k), -n).ldexp(-k);
        sum += term;
        if (term.hi() < 1e-34 * sum.hi()) break;
    }
    return sum;
}

std::vector<XFloat> tabulate(XFloat (*fn)(int)) {
    std::vector<XFloat> t(kMaxZetaArg + 1);
    for (int n = 2; n <= kMaxZetaArg; ++n) t[static_cast<std::size_t>(n)] = fn(n);
    return t;
}

void check_arg(int n, const char* what) {
    if (n < 2) throw DomainError(std::string(what) + " requires n >= 2");
    if (n > kMaxZetaArg) throw DomainError(std::string(what) + " requires n <= 64");
}

// Coefficients c_i of (sum_{j>=0} x^j/(j+1))^m up to degree `terms - 1`,
// so that log^m(1-x)/x = (-1)^m x^{m-1} sum_i c_i x^i.
std::vector<double> log_ratio_power_series(int m, int terms) {
    std::vector<double> g(static_cast<std::size_t>(terms));
    for (int j = 0; j < terms; ++j) g[static_cast<std::size_t>(j)] = 1.0 / (j + 1);
    std::vector<double> acc(static_cast<std::size_t>(terms), 0.0);
    acc[0] = 1.0;
    for (int r = 0; r < m; ++r) {
        std::vector<double> next(static_cast<std::size_t>(terms), 0.0);
        for (int i = 0; i < terms; ++i)
            for (int j = 0; i + j < terms; ++j)
                next[static_cast<std::size_t>(i + j)] += acc[static_cast<std::size_t>(i)] * g[static_cast<std::size_t>(j)];
        acc = std::move(next);
    }
    return acc;
}

}  // namespace

XFloat zeta_int(int n) {
    check_arg(n, "zeta_int");
    static const std::vector<XFloat> table = tabulate(zeta_series);
    return table[static_cast<std::size_t>(n)];
}

XFloat polylog_half(int n) {
    check_arg(n, "polylog_half");
    static const std::vector<XFloat> table = tabulate(polylog_half_series);
    return table[static_cast<std::size_t>(n)];
}

double zeta_error_bound(int n) { return 1e-28 * zeta_int(n).hi(); }

double polylog_half_error_bound(int n) { return 1e-28 * polylog_half(n).hi(); }

XFloat log_power_integral_closed(int m) {
    if (m < 1) throw DomainError("log_power_integral_closed requires m >= 1");
    if (m > 32) throw DomainError("log_power_integral_closed requires m <= 32");
    const XFloat& a = xconst::ln2();
    const XFloat sign_m = (m % 2 == 0) ? XFloat(1.0) : XFloat(-1.0);

    XFloat m_fact(1.0);
    for (int i = 2; i <= m; ++i) m_fact *= XFloat(i);

    XFloat result = pow(-a, m + 1) + sign_m * m_fact * zeta_int(m + 1);
    XFloat poly_sum;
    XFloat falling(1.0);  // A_m^s = m!/(m-s)!
    for (int s = 1; s <= m; ++s) {
        falling *= XFloat(m - s + 1);
        poly_sum += falling * pow(a, m - s) * polylog_half(s + 1);
    }
    result += (-sign_m) * poly_sum;
    return result;
}

double log_power_integral_closed_error_bound(int m) {
    // Dominated by rounding of the m! zeta(m+1) term against the Li sum.
    double m_fact = std::tgamma(m + 1.0);
    return 1e-30 * 4.0 * m_fact * zeta_int(m + 1).hi();
}

LogIntegralQuad log_power_integral_quad(int m, double tol) {
    if (m < 1 || m > 32) throw DomainError("log_power_integral_quad requires 1 <= m <= 32");
    if (!(tol >= 1e-14 && tol <= 0.1)) throw DomainError("log_power_integral_quad requires 1e-14 <= tol <= 0.1");

    constexpr double delta = 1e-8;
    constexpr int kSeriesTerms = 6;
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;

    // int_0^delta (-1)^m x^{m-1} sum_i c_i x^i dx
    const auto c = log_ratio_power_series(m, kSeriesTerms);
    double head = 0.0;
    for (int i = kSeriesTerms - 1; i >= 0; --i)
        head += c[static_cast<std::size_t>(i)] * std::pow(delta, m + i) / (m + i);
    head *= sign;

    auto integrand = [m](double x) { return std::pow(std::log1p(-x), m) / x; };
    QuadResult body = integrate_gk15(integrand, delta, 0.5, tol);
    return {XFloat(head) + XFloat(body.value), body.error};
}

XFloat euler_gamma() {
    // gamma = H_n - log n - 1/(2n) + sum_j B_{2j} / (2j n^{2j})
    static const XFloat value = [] {
        constexpr int n = 100;
        XFloat harmonic;
        for (int k = n; k >= 1; --k) harmonic += XFloat(1.0) / XFloat(k);
        const XFloat nn(n);
        const XFloat inv2 = XFloat(1.0) / (nn * nn);
        XFloat g = harmonic - log(nn) - (XFloat(1.0) / nn).ldexp(-1);
        XFloat npow = inv2;
        for (std::size_t j = 1; j <= kBernoulli.size(); ++j) {
            const auto [num, den] = kBernoulli[j - 1];
            g += XFloat(num) / (XFloat(den) * XFloat(2 * static_cast<int>(j))) * npow;
            npow *= inv2;
        }
        return g;
    }();
    return value;
}

MertensConstantResult mertens_constant(std::uint64_t limit, const PrimeTable& table) {
    if (limit < 1000) throw AccuracyError("mertens_constant requires limit >= 1000 for a valid tail estimate");
    if (limit > table.limit()) throw OutOfRangeError("mertens_constant limit exceeds sieve limit");
    const std::size_t count = table.count_upto(limit);

    // log(1 - 1/p) + 1/p = -sum_{j>=2} 1/(j p^j)
    XFloat sum;
    for (std::size_t i = 0; i < count; ++i) {
        const XFloat r = table.recip(i);
        XFloat pw = r * r;
        XFloat term;
        for (int j = 2; j < 200; ++j) {
            XFloat piece = pw / XFloat(j);
            term += piece;
            if (piece.hi() < 1e-34 * term.hi()) break;
            pw *= r;
        }
        sum -= term;
    }
    const XFloat big_l = XFloat::from_u64(limit);
    const XFloat tail = -(XFloat(1.0) / (big_l * log(big_l))).ldexp(-1);
    return {euler_gamma() + sum + tail, std::abs(tail.hi())};
}

Constants compute_constants(const PrimeTable& table, std::uint64_t b_limit) {
    auto b = mertens_constant(b_limit, table);
    return {b.value, euler_gamma(), xconst::ln2(), b_limit, b.tail_bound};
}

}  // namespace mertens
