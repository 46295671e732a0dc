#pragma once

// Double-double arithmetic. A value is the unevaluated sum hi + lo of two
// IEEE doubles with |lo| <= ulp(hi)/2, giving roughly 31 significant
// decimal digits. The error-free transformations follow Dekker and Knuth;
// every operation renormalizes its result.

#include <cmath>
#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

namespace mertens {

namespace detail {

// s + e == a + b exactly.
inline void two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    double bb = s - a;
    e = (a - (s - bb)) + (b - bb);
}

// Requires |a| >= |b|.
inline void quick_two_sum(double a, double b, double& s, double& e) {
    s = a + b;
    e = b - (s - a);
}

#if defined(__FMA__) || defined(__FP_FAST_FMA)
inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    e = std::fma(a, b, -p);
}
#else
inline void split(double a, double& hi, double& lo) {
    constexpr double kSplitter = 134217729.0;  // 2^27 + 1
    double t = kSplitter * a;
    hi = t - (t - a);
    lo = a - hi;
}

inline void two_prod(double a, double b, double& p, double& e) {
    p = a * b;
    double ah, al, bh, bl;
    split(a, ah, al);
    split(b, bh, bl);
    e = ((ah * bh - p) + ah * bl + al * bh) + al * bl;
}
#endif

}  // namespace detail

class XFloat {
public:
    constexpr XFloat() = default;
    constexpr XFloat(double v) : hi_(v), lo_(0.0) {}  // NOLINT: implicit by intent
    constexpr XFloat(int v) : hi_(static_cast<double>(v)), lo_(0.0) {}  // NOLINT

    // Builds from an arbitrary pair; the result is renormalized.
    static XFloat from_parts(double hi, double lo) {
        XFloat r;
        detail::two_sum(hi, lo, r.hi_, r.lo_);
        return r;
    }

    // Exact for |v| < 2^106.
    static XFloat from_u64(std::uint64_t v) {
        double hi = static_cast<double>(v);
        std::uint64_t back = static_cast<std::uint64_t>(hi);
        double lo = v >= back ? static_cast<double>(v - back) : -static_cast<double>(back - v);
        return from_parts(hi, lo);
    }

    // Decimal literal such as "-1.202056903159594285399738161511449990765e0".
    // Throws DomainError on malformed input.
    static XFloat parse(std::string_view text);

    constexpr double hi() const { return hi_; }
    constexpr double lo() const { return lo_; }
    constexpr double to_double() const { return hi_ + lo_; }
    explicit constexpr operator double() const { return hi_ + lo_; }

    bool is_finite() const { return std::isfinite(hi_) && std::isfinite(lo_); }

    XFloat operator-() const { return raw(-hi_, -lo_); }

    friend XFloat operator+(const XFloat& a, const XFloat& b) {
        double s1, s2, t1, t2;
        detail::two_sum(a.hi_, b.hi_, s1, s2);
        detail::two_sum(a.lo_, b.lo_, t1, t2);
        s2 += t1;
        detail::quick_two_sum(s1, s2, s1, s2);
        s2 += t2;
        XFloat r;
        detail::quick_two_sum(s1, s2, r.hi_, r.lo_);
        return r;
    }

    friend XFloat operator-(const XFloat& a, const XFloat& b) { return a + (-b); }

    friend XFloat operator*(const XFloat& a, const XFloat& b) {
        double p1, p2;
        detail::two_prod(a.hi_, b.hi_, p1, p2);
        p2 += a.hi_ * b.lo_ + a.lo_ * b.hi_;
        XFloat r;
        detail::quick_two_sum(p1, p2, r.hi_, r.lo_);
        return r;
    }

    friend XFloat operator/(const XFloat& a, const XFloat& b) {
        double q1 = a.hi_ / b.hi_;
        XFloat r = a - b * XFloat(q1);
        double q2 = r.hi_ / b.hi_;
        r = r - b * XFloat(q2);
        double q3 = r.hi_ / b.hi_;
        XFloat q;
        detail::quick_two_sum(q1, q2, q.hi_, q.lo_);
        return q + XFloat(q3);
    }

    XFloat& operator+=(const XFloat& o) { return *this = *this + o; }
    XFloat& operator-=(const XFloat& o) { return *this = *this - o; }
    XFloat& operator*=(const XFloat& o) { return *this = *this * o; }
    XFloat& operator/=(const XFloat& o) { return *this = *this / o; }

    friend bool operator==(const XFloat& a, const XFloat& b) {
        return a.hi_ == b.hi_ && a.lo_ == b.lo_;
    }
    friend std::partial_ordering operator<=>(const XFloat& a, const XFloat& b) {
        if (auto c = a.hi_ <=> b.hi_; c != 0) return c;
        return a.lo_ <=> b.lo_;
    }

    // Multiplication by a power of two; exact.
    XFloat ldexp(int e) const { return raw(std::ldexp(hi_, e), std::ldexp(lo_, e)); }

    // Decimal rendering with `digits` significant digits, correctly carried.
    std::string to_string(int digits = 32) const;

private:
    static constexpr XFloat raw(double hi, double lo) {
        XFloat r;
        r.hi_ = hi;
        r.lo_ = lo;
        return r;
    }

    double hi_ = 0.0;
    double lo_ = 0.0;
};

XFloat abs(const XFloat& x);
XFloat sqrt(const XFloat& x);
XFloat exp(const XFloat& x);
XFloat log(const XFloat& x);       // natural logarithm; DomainError for x <= 0
XFloat pow(const XFloat& x, int n);
XFloat pow(const XFloat& x, const XFloat& y);
XFloat floor(const XFloat& x);

namespace xconst {
// Exact-to-XFloat log(2), computed once from its series.
const XFloat& ln2();
}  // namespace xconst

}  // namespace mertens
