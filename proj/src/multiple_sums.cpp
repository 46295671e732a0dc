#include "mertens/multiple_sums.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <string>

#include "mertens/detail/parallel.hpp"
#include "mertens/errors.hpp"
#include "mertens/special_functions.hpp"

namespace mertens {

namespace {

constexpr std::size_t kOuterChunk = 1024;
constexpr std::array<std::array<double, kMaxSumS + 1>, kMaxSumS + 1> kBinom = {{
    {1, 0, 0, 0, 0},
    {1, 1, 0, 0, 0},
    {1, 2, 1, 0, 0},
    {1, 3, 3, 1, 0},
    {1, 4, 6, 4, 1},
}};

// Values of L_{r,s'} for every s' = 0 .. s of one computation, plus the
// ordered tuple count.
struct Partial {
    std::array<XFloat, kMaxSumS + 1> v{};
    std::uint64_t count = 0;

    void add(const Partial& o, int s) {
        for (int j = 0; j <= s; ++j) v[static_cast<std::size_t>(j)] += o.v[static_cast<std::size_t>(j)];
        count += o.count;
    }
};

void validate(const SumSpec& spec) {
    if (spec.k < 1 || spec.k > kMaxSumK) throw DomainError("k must satisfy 1 <= k <= 6");
    if (spec.s < 0 || spec.s > kMaxSumS) throw DomainError("s must satisfy 0 <= s <= 4");
    if (!std::isfinite(spec.x) || spec.x < 2.0) throw DomainError("x must be a finite real >= 2");
}

// Prefix sums T_j(i) = sum over the first i primes of log^j p / p, j = 0 .. s.
// j = 0 and j = 1 come straight from the table.
class LogPowerPrefix {
public:
    LogPowerPrefix(const PrimeTable& table, int s, std::size_t count) : table_(table) {
        for (int j = 2; j <= s; ++j) {
            std::vector<XFloat> t(count);
            XFloat acc;
            for (std::size_t i = 0; i < count; ++i) {
                acc += pow(table.log_prime(i), j) * table.recip(i);
                t[i] = acc;
            }
            higher_.push_back(std::move(t));
        }
    }

    // Sum over the first `count` primes; count 0 gives zero.
    XFloat sum(int j, std::size_t count) const {
        if (count == 0) return XFloat();
        if (j == 0) return table_.prefix_recip()[count - 1];
        if (j == 1) return table_.prefix_logp_over_p()[count - 1];
        return higher_[static_cast<std::size_t>(j - 2)][count - 1];
    }

private:
    const PrimeTable& table_;
    std::vector<std::vector<XFloat>> higher_;
};

// Largest prime that can occur in a k-tuple with product <= n.
std::uint64_t largest_factor(std::uint64_t n, int k) { return n >> (k - 1); }

void require_primes(const PrimeTable& table, std::uint64_t bound) {
    if (bound > table.limit())
        throw OutOfRangeError("sum needs primes up to " + std::to_string(bound) + " but the sieve limit is " +
                              std::to_string(table.limit()));
}

// p^r <= n without overflow.
bool power_fits(std::uint64_t p, int r, std::uint64_t n) {
    std::uint64_t acc = 1;
    for (int i = 0; i < r; ++i) {
        if (acc > n / p) return false;
        acc *= p;
    }
    return true;
}

class Enumerator {
public:
    Enumerator(const PrimeTable& table, const LogPowerPrefix& prefix, int s, std::uint64_t budget)
        : table_(table), prefix_(prefix), s_(s), budget_(budget) {}

    // All ordered r-tuples with product <= n, each scaled by w = 1/Q and
    // shifted by log Q.
    void run(int r, std::uint64_t n, const XFloat& w, const XFloat& log_q, Partial& out) const {
        if (r == 1) {
            leaf(n, w, log_q, out);
            return;
        }
        const std::uint64_t pmax = largest_factor(n, r);
        const auto primes = table_.primes();
        for (std::size_t i = 0; i < primes.size() && primes[i] <= pmax; ++i)
            step(r, n, i, w, log_q, out);
    }

    // One choice of the first prime (index i) at level r.
    void step(int r, std::uint64_t n, std::size_t i, const XFloat& w, const XFloat& log_q, Partial& out) const {
        run(r - 1, n / table_.primes()[i], w * table_.recip(i), log_q + table_.log_prime(i), out);
        if (out.count > budget_) throw ResourceError("tuple count exceeds the enumeration budget");
    }

private:
    // sum_{p <= n} log^{s'}(Q p) / (Q p) = w sum_j C(s', j) log^{s'-j} Q T_j(n)
    void leaf(std::uint64_t n, const XFloat& w, const XFloat& log_q, Partial& out) const {
        const std::size_t idx = table_.count_upto(n);
        if (idx == 0) return;
        std::array<XFloat, kMaxSumS + 1> t{};
        std::array<XFloat, kMaxSumS + 1> lq{};
        lq[0] = XFloat(1.0);
        for (int j = 0; j <= s_; ++j) {
            t[static_cast<std::size_t>(j)] = prefix_.sum(j, idx);
            if (j > 0) lq[static_cast<std::size_t>(j)] = lq[static_cast<std::size_t>(j - 1)] * log_q;
        }
        for (int sp = 0; sp <= s_; ++sp) {
            XFloat acc;
            for (int j = 0; j <= sp; ++j)
                acc += XFloat(kBinom[static_cast<std::size_t>(sp)][static_cast<std::size_t>(j)]) *
                       lq[static_cast<std::size_t>(sp - j)] * t[static_cast<std::size_t>(j)];
            out.v[static_cast<std::size_t>(sp)] += w * acc;
        }
        out.count += idx;
    }

    const PrimeTable& table_;
    const LogPowerPrefix& prefix_;
    int s_;
    std::uint64_t budget_;
};

// L_{k,s'}(n) for all s' <= s. The outermost prime range is cut into fixed
// chunks whose partial results are combined in chunk order.
Partial enumerate_all(const PrimeTable& table, const LogPowerPrefix& prefix, int k, int s, std::uint64_t n,
                      const SumOptions& options) {
    const Enumerator e(table, prefix, s, options.tuple_budget);
    Partial total;
    if (k == 1 || n < (std::uint64_t{1} << k)) {
        e.run(k, n, XFloat(1.0), XFloat(), total);
        return total;
    }
    const std::size_t outer = table.count_upto(largest_factor(n, k));
    const std::size_t chunks = (outer + kOuterChunk - 1) / kOuterChunk;
    std::vector<Partial> parts(chunks);
    detail::parallel_for(chunks, options.threads, [&](std::size_t c) {
        const std::size_t end = std::min(outer, (c + 1) * kOuterChunk);
        for (std::size_t i = c * kOuterChunk; i < end; ++i) e.step(k, n, i, XFloat(1.0), XFloat(), parts[c]);
    });
    for (const auto& p : parts) {
        total.add(p, s);
        if (total.count > options.tuple_budget) throw ResourceError("tuple count exceeds the enumeration budget");
    }
    return total;
}

SumValue make_value(const SumSpec& spec, SumMethod method, const XFloat& value, std::uint64_t count) {
    SumValue r;
    r.value = value;
    r.term_count = count;
    r.method = method;
    r.spec = spec;
    r.spec.method = method;
    return r;
}

// Visits every ordered r-tuple with product <= bound, calling
// fn(1/R, log R, R).
template <class Fn>
void for_each_tuple(const PrimeTable& table, int r, std::uint64_t bound, const XFloat& w, const XFloat& log_r,
                    std::uint64_t prod, Fn& fn) {
    if (r == 0) {
        fn(w, log_r, prod);
        return;
    }
    const std::uint64_t pmax = largest_factor(bound, r);
    const auto primes = table.primes();
    for (std::size_t i = 0; i < primes.size() && primes[i] <= pmax; ++i)
        for_each_tuple(table, r - 1, bound / primes[i], w * table.recip(i), log_r + table.log_prime(i),
                       prod * primes[i], fn);
}

// Nondecreasing tuples starting at prime index `start`. `orderings` is the
// number of distinct orderings of the tuple so far; `run` is how many times
// the last prime repeats; `depth` is the current tuple length.
struct MultisetWalker {
    const PrimeTable& table;
    int k;
    int s;
    std::uint64_t budget;

    void walk(int r, std::size_t start, std::uint64_t n, const XFloat& w, const XFloat& log_q,
              std::uint64_t orderings, int run, int depth, Partial& out) const {
        if (r == 0) {
            const XFloat weight = XFloat::from_u64(orderings) * w;
            out.v[static_cast<std::size_t>(s)] += s == 0 ? weight : weight * pow(log_q, s);
            out.count += orderings;
            return;
        }
        const auto primes = table.primes();
        for (std::size_t i = start; i < primes.size(); ++i) {
            if (!power_fits(primes[i], r, n)) break;
            child(r, i, start, n, w, log_q, orderings, run, depth, out);
        }
    }

    void child(int r, std::size_t i, std::size_t start, std::uint64_t n, const XFloat& w, const XFloat& log_q,
               std::uint64_t orderings, int run, int depth, Partial& out) const {
        // Appending position depth+1: multinomial grows by (depth+1)/new_run.
        const int new_run = (depth > 0 && i == start) ? run + 1 : 1;
        const std::uint64_t next = orderings * static_cast<std::uint64_t>(depth + 1) / static_cast<std::uint64_t>(new_run);
        walk(r - 1, i, n / table.primes()[i], w * table.recip(i), log_q + table.log_prime(i), next, new_run, depth + 1,
             out);
        if (out.count > budget) throw ResourceError("tuple count exceeds the enumeration budget");
    }
};

XFloat loglog(double x) { return log(log(XFloat(x))); }

void require_above_e(double x) {
    if (!(x > std::numbers::e)) throw DomainError("predictors require x > e");
}

void require_poly(const std::vector<ShiftedPoly>& polys, int k) {
    if (k < 0 || static_cast<std::size_t>(k) >= polys.size())
        throw DomainError("polynomial P_" + std::to_string(k) + " is not available");
}

// sum_{l=0}^{k-1} (-1)^l A_k^{l+1} scale_l P_{k-1-l}(y), scale_l = 1/s^{l+1}
// or 1 when s == 0.
XFloat falling_poly_sum(int k, int s, const XFloat& y, const std::vector<ShiftedPoly>& polys, const XFloat& B) {
    require_poly(polys, k - 1);
    XFloat acc;
    XFloat falling(1.0);
    XFloat s_pow(1.0);
    for (int l = 0; l <= k - 1; ++l) {
        falling *= XFloat(k - l);  // A_k^{l+1}
        if (s > 0) s_pow *= XFloat(s);
        const XFloat term = falling / s_pow * eval_poly(polys[static_cast<std::size_t>(k - 1 - l)], y, B);
        acc += (l % 2 == 0) ? term : -term;
    }
    return acc;
}

}  // namespace

std::string_view method_name(SumMethod m) {
    switch (m) {
        case SumMethod::Enumerate: return "enum";
        case SumMethod::Multiset: return "multiset";
        case SumMethod::Hyperbola: return "hyperbola";
    }
    return "enum";
}

SumMethod parse_method(std::string_view name) {
    if (name == "enum") return SumMethod::Enumerate;
    if (name == "multiset") return SumMethod::Multiset;
    if (name == "hyperbola") return SumMethod::Hyperbola;
    throw DomainError("unknown summation method '" + std::string(name) + "'");
}

SumValue sum_enumerate(const PrimeTable& table, const SumSpec& spec, const SumOptions& options) {
    validate(spec);
    const std::uint64_t n = floor_u64(spec.x);
    const std::uint64_t pmax = largest_factor(n, spec.k);
    require_primes(table, pmax);
    const LogPowerPrefix prefix(table, spec.s, table.count_upto(pmax));
    const Partial p = enumerate_all(table, prefix, spec.k, spec.s, n, options);
    return make_value(spec, SumMethod::Enumerate, p.v[static_cast<std::size_t>(spec.s)], p.count);
}

SumValue sum_multiset(const PrimeTable& table, const SumSpec& spec, const SumOptions& options) {
    validate(spec);
    const std::uint64_t n = floor_u64(spec.x);
    require_primes(table, largest_factor(n, spec.k));
    const MultisetWalker walker{table, spec.k, spec.s, options.tuple_budget};

    // Outer chunks over the smallest prime p_1, which satisfies p_1^k <= n.
    std::size_t outer = 0;
    const auto primes = table.primes();
    while (outer < primes.size() && power_fits(primes[outer], spec.k, n)) ++outer;
    const std::size_t chunks = (outer + kOuterChunk - 1) / kOuterChunk;
    std::vector<Partial> parts(chunks);
    detail::parallel_for(chunks, options.threads, [&](std::size_t c) {
        const std::size_t end = std::min(outer, (c + 1) * kOuterChunk);
        for (std::size_t i = c * kOuterChunk; i < end; ++i)
            walker.child(spec.k, i, 0, n, XFloat(1.0), XFloat(), 1, 0, 0, parts[c]);
    });
    Partial total;
    for (const auto& p : parts) total.add(p, spec.s);
    if (total.count > options.tuple_budget) throw ResourceError("tuple count exceeds the enumeration budget");
    return make_value(spec, SumMethod::Multiset, total.v[static_cast<std::size_t>(spec.s)], total.count);
}

SumValue sum_hyperbola(const PrimeTable& table, const SumSpec& spec, const SumOptions& options) {
    validate(spec);
    if (spec.k < 2) throw DomainError("the hyperbola method requires k >= 2");
    const double y = spec.split_y.value_or(std::sqrt(spec.x));
    if (!(y > 1.0 && y < spec.x)) throw DomainError("split point must satisfy 1 < y < x");

    const int k = spec.k;
    const int s = spec.s;
    const std::uint64_t n = floor_u64(spec.x);
    const std::uint64_t y_int = floor_u64(y);  // p <= y  iff  p <= floor(y)
    // m_int = max{m : m y <= n}, settled with an exact product test.
    auto fits = [&](std::uint64_t m) {
        double p, e;
        detail::two_prod(static_cast<double>(m), y, p, e);
        return XFloat::from_parts(p, e) <= XFloat::from_u64(n);
    };
    std::uint64_t m_int = floor_u64(static_cast<double>(n) / y);
    while (m_int > 0 && !fits(m_int)) --m_int;
    while (fits(m_int + 1)) ++m_int;

    const std::uint64_t pmax = largest_factor(n, k);
    require_primes(table, std::max(pmax, y_int));
    const LogPowerPrefix prefix(table, s, table.count_upto(std::max(pmax, y_int)));
    SumOptions inner = options;
    inner.threads = 1;

    // First term: p <= y, grouped by the distinct inner bounds floor(n/p).
    std::vector<std::uint64_t> keys;
    std::vector<std::size_t> key_of;  // per prime index
    const std::size_t py = table.count_upto(y_int);
    for (std::size_t i = 0; i < py; ++i) {
        const std::uint64_t key = n / table.primes()[i];
        if (keys.empty() || keys.back() != key) keys.push_back(key);
        key_of.push_back(keys.size() - 1);
    }
    std::vector<Partial> memo(keys.size());
    detail::parallel_for(keys.size(), options.threads, [&](std::size_t c) {
        memo[c] = enumerate_all(table, prefix, k - 1, s, keys[c], inner);
    });

    // log^s(pR) = sum_j C(s,j) log^j p log^{s-j} R
    auto binom = [s](int j) { return XFloat(kBinom[static_cast<std::size_t>(s)][static_cast<std::size_t>(j)]); };
    XFloat term_a;
    std::uint64_t count_a = 0;
    for (std::size_t i = 0; i < py; ++i) {
        const Partial& inner_sum = memo[key_of[i]];
        XFloat log_pow(1.0);
        XFloat acc;
        for (int j = 0; j <= s; ++j) {
            acc += binom(j) * log_pow * inner_sum.v[static_cast<std::size_t>(s - j)];
            log_pow *= table.log_prime(i);
        }
        term_a += table.recip(i) * acc;
        count_a += inner_sum.count;
    }

    // Second term: (k-1)-tuples with R <= m_int, against the one-prime sums.
    XFloat term_b;
    std::uint64_t count_b = 0;
    auto visit = [&](const XFloat& w, const XFloat& log_r, std::uint64_t r) {
        const std::size_t idx = table.count_upto(n / r);
        XFloat log_pow(1.0);
        std::array<XFloat, kMaxSumS + 1> lr{};
        for (int j = 0; j <= s; ++j) {
            lr[static_cast<std::size_t>(j)] = log_pow;
            log_pow *= log_r;
        }
        XFloat acc;
        for (int j = 0; j <= s; ++j)
            acc += binom(j) * lr[static_cast<std::size_t>(s - j)] * prefix.sum(j, idx);
        term_b += w * acc;
        count_b += idx;
        if (count_b > options.tuple_budget) throw ResourceError("tuple count exceeds the enumeration budget");
    };
    for_each_tuple(table, k - 1, m_int, XFloat(1.0), XFloat(), 1, visit);

    // Overlap: p <= y and R <= n/y.
    const Partial overlap = enumerate_all(table, prefix, k - 1, s, m_int, inner);
    XFloat term_c;
    for (int j = 0; j <= s; ++j)
        term_c += binom(j) * prefix.sum(j, py) * overlap.v[static_cast<std::size_t>(s - j)];
    const std::uint64_t count_c = static_cast<std::uint64_t>(py) * overlap.count;

    return make_value(spec, SumMethod::Hyperbola, term_a + term_b - term_c, count_a + count_b - count_c);
}

SumValue compute_sum(const PrimeTable& table, const SumSpec& spec, const SumOptions& options) {
    switch (spec.method) {
        case SumMethod::Enumerate: return sum_enumerate(table, spec, options);
        case SumMethod::Multiset: return sum_multiset(table, spec, options);
        case SumMethod::Hyperbola: return sum_hyperbola(table, spec, options);
    }
    throw DomainError("unknown summation method");
}

XFloat theorem_main_prediction(int k, double x, const std::vector<ShiftedPoly>& polys, const XFloat& B) {
    require_above_e(x);
    require_poly(polys, k);
    return eval_poly(polys[static_cast<std::size_t>(k)], loglog(x), B);
}

XFloat theorem_weighted_prediction(int k, int s, double x, const std::vector<ShiftedPoly>& polys,
                                   const XFloat& B) {
    if (k < 1) throw DomainError("the weighted prediction requires k >= 1");
    if (s < 1) throw DomainError("the weighted prediction requires s >= 1; use the main prediction for s = 0");
    require_above_e(x);
    const XFloat log_x = log(XFloat(x));
    const XFloat& ln2 = xconst::ln2();
    const XFloat main = falling_poly_sum(k, s, log(log_x), polys, B) * pow(log_x, s);
    const XFloat f2 = falling_poly_sum(k, 0, log(ln2), polys, B) * ln2;
    return main + f2 * pow(ln2, s - 1);
}

XFloat corollary_normalized(int k, int s, double x, bool sqrt_mode, const std::vector<ShiftedPoly>& polys,
                            const XFloat& B) {
    if (k < 1 || s < 1) throw DomainError("the normalized prediction requires k >= 1 and s >= 1");
    require_above_e(x);
    if (!sqrt_mode) return falling_poly_sum(k, s, loglog(x), polys, B);
    const XFloat y = log(log(XFloat(x)).ldexp(-1));
    return falling_poly_sum(k, s, y, polys, B).ldexp(-s);
}

Decomposition decomposition_check(const PrimeTable& table, int k, double x, const std::vector<ShiftedPoly>& polys,
                                  const XFloat& B, const SumOptions& options) {
    if (k < 2) throw DomainError("decomposition_check requires k >= 2");
    if (!(x > std::exp(2.0))) throw DomainError("decomposition_check requires x > e^2");
    require_poly(polys, k - 1);
    const ShiftedPoly& pk1 = polys[static_cast<std::size_t>(k - 1)];
    const ShiftedPoly& p1 = polys[1];
    const XFloat log_x = log(XFloat(x));
    const std::uint64_t root = isqrt_floor(x);
    require_primes(table, root);

    Decomposition d;
    const std::size_t count = table.count_upto(root);
    for (std::size_t i = 0; i < count; ++i)
        d.A += table.recip(i) * eval_poly(pk1, log(log_x - table.log_prime(i)), B);
    auto visit = [&](const XFloat& w, const XFloat& log_r, std::uint64_t) {
        d.Bsum += w * eval_poly(p1, log(log_x - log_r), B);
    };
    for_each_tuple(table, k - 1, root, XFloat(1.0), XFloat(), 1, visit);
    const XFloat y_half = log(log_x.ldexp(-1));
    d.C = eval_poly(p1, y_half, B) * eval_poly(pk1, y_half, B);
    SumSpec spec;
    spec.k = k;
    spec.x = x;
    d.S = sum_enumerate(table, spec, options).value;
    d.residual = d.S - (d.A + d.Bsum - d.C);
    return d;
}

XFloat prop_log_ratio_sum(const PrimeTable& table, int m, double x) {
    if (m < 1) throw DomainError("prop_log_ratio_sum requires m >= 1");
    if (!(x >= 4.0)) throw DomainError("prop_log_ratio_sum requires x >= 4");
    const std::uint64_t root = isqrt_floor(x);
    require_primes(table, root);
    const XFloat inv_log_x = XFloat(1.0) / log(XFloat(x));
    XFloat sum;
    const std::size_t count = table.count_upto(root);
    for (std::size_t i = 0; i < count; ++i)
        sum += table.recip(i) * pow(log(XFloat(1.0) - table.log_prime(i) * inv_log_x), m);
    return sum;
}

XFloat prop_loglog_sum(const PrimeTable& table, int m, double x) {
    if (m < 1) throw DomainError("prop_loglog_sum requires m >= 1");
    if (!(x >= 4.0)) throw DomainError("prop_loglog_sum requires x >= 4");
    const std::uint64_t root = isqrt_floor(x);
    require_primes(table, root);
    const std::size_t count = table.count_upto(root);
    const XFloat log_x = log(XFloat(x));
    if (count > 0 && !(log_x - table.log_prime(count - 1) > XFloat(1.0)))
        throw DomainError("prop_loglog_sum requires x/p > e for every p <= sqrt(x)");
    XFloat sum;
    for (std::size_t i = 0; i < count; ++i) sum += table.recip(i) * pow(log(log_x - table.log_prime(i)), m);
    return sum;
}

XFloat prop_loglog_main_term(int m, double x, const XFloat& B) {
    if (m < 1 || m > 32) throw DomainError("prop_loglog_main_term requires 1 <= m <= 32");
    if (!(x > std::exp(2.0))) throw DomainError("prop_loglog_main_term requires x > e^2");
    const XFloat log_x = log(XFloat(x));
    const XFloat y = log(log_x);
    XFloat acc = pow(y, m) * (log(log_x.ldexp(-1)) + B);
    for (int t = 1; t <= m; ++t) acc += binomial(m, t) * pow(y, m - t) * log_power_integral_closed(t);
    return acc;
}

}  // namespace mertens
