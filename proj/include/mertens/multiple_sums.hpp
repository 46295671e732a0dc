#pragma once

// Exact multiple prime sums over ordered k-tuples,
//   L_{k,s}(x) = sum_{p_1 ... p_k <= x} log^s(p_1 ... p_k) / (p_1 ... p_k),
// with S_k = L_{k,0}, computed three independent ways, together with the
// asymptotic predictors they are compared against.
//
// Only floor(x) matters for an exact sum, so every bound is reduced to an
// integer before any comparison with a product of primes.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mertens/polynomials.hpp"
#include "mertens/prime_table.hpp"
#include "mertens/xfloat.hpp"

namespace mertens {

enum class SumMethod { Enumerate, Multiset, Hyperbola };

// "enum", "multiset", "hyperbola".
std::string_view method_name(SumMethod m);
// Inverse of method_name; DomainError for anything else.
SumMethod parse_method(std::string_view name);

inline constexpr int kMaxSumK = 6;
inline constexpr int kMaxSumS = 4;
inline constexpr std::uint64_t kDefaultTupleBudget = 10'000'000'000ULL;

struct SumSpec {
    int k = 1;
    int s = 0;
    double x = 2.0;
    SumMethod method = SumMethod::Enumerate;
    std::optional<double> split_y;  // hyperbola split point, default sqrt(x)
};

struct SumOptions {
    unsigned threads = 1;
    std::uint64_t tuple_budget = kDefaultTupleBudget;
};

struct SumValue {
    XFloat value;
    std::uint64_t term_count = 0;  // number of ordered tuples
    SumMethod method = SumMethod::Enumerate;
    SumSpec spec;
};

// Ordered enumeration: p_1 ascending, recurse on floor(x / p_1); the last
// factor is handled with prefix sums. Throws DomainError for k, s or x out of
// range, OutOfRangeError when x / 2^{k-1} exceeds the sieve limit and
// ResourceError when the tuple count passes the budget.
SumValue sum_enumerate(const PrimeTable& table, const SumSpec& spec, const SumOptions& options = {});

// Nondecreasing tuples p_1 <= ... <= p_k, each weighted by the number of its
// distinct orderings k! / prod(multiplicity!).
SumValue sum_multiset(const PrimeTable& table, const SumSpec& spec, const SumOptions& options = {});

// The hyperbola identity with split y (1 < y < x, k >= 2):
//   S_k(x) = sum_{p <= y} S_{k-1}(x/p) / p + sum_{R <= x/y} V_1(x/R) / R
//            - V_1(y) S_{k-1}(x/y),
// R running over products of ordered (k-1)-tuples and V_1(t) = sum_{p<=t} 1/p.
// For s > 0 the weight log^s(pR) is expanded binomially and each piece
// split the same way.
SumValue sum_hyperbola(const PrimeTable& table, const SumSpec& spec, const SumOptions& options = {});

// Dispatches on spec.method.
SumValue compute_sum(const PrimeTable& table, const SumSpec& spec, const SumOptions& options = {});

// ---------------------------------------------------------------------------
// Predictors. `polys` holds P_0 .. P_n in the shifted basis (see p_family)
// and B is the Mertens constant. All require x > e.
// ---------------------------------------------------------------------------

// P_k(log log x).
XFloat theorem_main_prediction(int k, double x, const std::vector<ShiftedPoly>& polys, const XFloat& B);

// sum_{l=0}^{k-1} (-1)^l A_k^{l+1} / s^{l+1} P_{k-1-l}(log log x) log^s x
//   + f(2) log^{s-1} 2,
// f(t) = sum_{l=0}^{k-1} (-1)^l A_k^{l+1} P_{k-1-l}(log log t) log t and
// A_k^l = k!/(k-l)!. Requires k >= 1 and s >= 1.
XFloat theorem_weighted_prediction(int k, int s, double x, const std::vector<ShiftedPoly>& polys,
                                   const XFloat& B);

// Predicted value of L_{k,s}(x) / log^s x, or with sqrt_mode of
// L_{k,s}(sqrt x) / log^s x, which carries an extra 2^{-s} and evaluates the
// polynomials at log log sqrt(x).
XFloat corollary_normalized(int k, int s, double x, bool sqrt_mode, const std::vector<ShiftedPoly>& polys,
                            const XFloat& B);

struct Decomposition {
    XFloat A;     // sum_{p <= sqrt x} P_{k-1}(log log(x/p)) / p
    XFloat Bsum;  // sum_{R <= sqrt x} P_1(log log(x/R)) / R over (k-1)-tuples
    XFloat C;     // P_1(log log sqrt x) P_{k-1}(log log sqrt x)
    XFloat S;     // S_k(x), exact
    XFloat residual;  // S - (A + Bsum - C)
};

// Requires k >= 2 and x > e^2.
Decomposition decomposition_check(const PrimeTable& table, int k, double x, const std::vector<ShiftedPoly>& polys,
                                  const XFloat& B, const SumOptions& options = {});

// sum_{p <= sqrt x} (1/p) log^m(1 - log p / log x); m >= 1, x >= 4.
XFloat prop_log_ratio_sum(const PrimeTable& table, int m, double x);

// sum_{p <= sqrt x} (1/p) (log log(x/p))^m; m >= 1, x >= 4 and x/p > e for
// every p <= sqrt x.
XFloat prop_loglog_sum(const PrimeTable& table, int m, double x);

// (log log x)^m P_1(log log sqrt x)
//   + sum_{t=1}^{m} C(m,t) (log log x)^{m-t} int_0^{1/2} log^t(1-u)/u du.
// 1 <= m <= 32, x > e^2.
XFloat prop_loglog_main_term(int m, double x, const XFloat& B);

}  // namespace mertens
