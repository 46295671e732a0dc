#include "mertens/xfloat.hpp"

#include <cctype>
#include <cmath>
#include <limits>
#include <vector>

#include "mertens/errors.hpp"

namespace mertens {

namespace {

// exp(r) - 1 for |r| <= ln2/2, relative accuracy near double-double.
XFloat expm1_reduced(const XFloat& a) {
    constexpr int kHalvings = 9;
    const XFloat r = a.ldexp(-kHalvings);
    XFloat sum = r;
    XFloat term = r;
    for (int i = 2; i < 40; ++i) {
        term = term * r / XFloat(i);
        sum += term;
        if (std::abs(term.hi()) <= 1e-36 * std::abs(sum.hi())) break;
    }
    // e^{2r} - 1 = s (s + 2)
    for (int i = 0; i < kHalvings; ++i) sum = sum * (sum + XFloat(2.0));
    return sum;
}

XFloat pow10(int e) {
    if (e >= 0) return pow(XFloat(10.0), e);
    return XFloat(1.0) / pow(XFloat(10.0), -e);
}

}  // namespace

namespace xconst {

const XFloat& ln2() {
    // log 2 = sum_{k>=1} 1 / (k 2^k)
    static const XFloat value = [] {
        XFloat sum;
        for (int k = 120; k >= 1; --k) sum += (XFloat(1.0) / XFloat(k)).ldexp(-k);
        return sum;
    }();
    return value;
}

}  // namespace xconst

XFloat abs(const XFloat& x) { return x.hi() < 0.0 ? -x : x; }

XFloat floor(const XFloat& x) {
    double hi = std::floor(x.hi());
    double lo = 0.0;
    if (hi == x.hi()) lo = std::floor(x.lo());
    return XFloat::from_parts(hi, lo);
}

XFloat sqrt(const XFloat& a) {
    if (a.hi() == 0.0) return XFloat();
    if (a.hi() < 0.0) throw DomainError("sqrt of a negative number");
    double x = 1.0 / std::sqrt(a.hi());
    double ax = a.hi() * x;
    XFloat ax2 = XFloat(ax) * XFloat(ax);
    return XFloat(ax) + XFloat((a - ax2).hi() * x * 0.5);
}

XFloat exp(const XFloat& a) {
    if (a.hi() > 709.0) return XFloat(std::numeric_limits<double>::infinity());
    if (a.hi() < -745.0) return XFloat();
    if (a.hi() == 0.0 && a.lo() == 0.0) return XFloat(1.0);
    const XFloat& l2 = xconst::ln2();
    double m = std::floor(a.hi() / l2.hi() + 0.5);
    XFloat r = a - l2 * XFloat(m);
    XFloat e = expm1_reduced(r) + XFloat(1.0);
    return e.ldexp(static_cast<int>(m));
}

XFloat log(const XFloat& a) {
    if (!(a.hi() > 0.0)) throw DomainError("log of a non-positive number");
    if (a.hi() == 1.0 && a.lo() == 0.0) return XFloat();
    // One Newton step on exp(y) = a doubles the precision of std::log.
    XFloat y(std::log(a.hi()));
    y = y + a * exp(-y) - XFloat(1.0);
    return y;
}

XFloat pow(const XFloat& x, int n) {
    if (n == 0) return XFloat(1.0);
    unsigned un = n < 0 ? static_cast<unsigned>(-(n + 1)) + 1u : static_cast<unsigned>(n);
    XFloat base = x;
    XFloat result(1.0);
    while (un) {
        if (un & 1u) result *= base;
        un >>= 1u;
        if (un) base *= base;
    }
    return n < 0 ? XFloat(1.0) / result : result;
}

XFloat pow(const XFloat& x, const XFloat& y) { return exp(y * log(x)); }

XFloat XFloat::parse(std::string_view text) {
    std::size_t i = 0;
    auto fail = [&] { throw DomainError("malformed decimal literal: '" + std::string(text) + "'"); };
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    bool negative = false;
    if (i < text.size() && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';
    XFloat value;
    int exponent = 0;
    int digit_count = 0;
    bool seen_point = false;
    for (; i < text.size(); ++i) {
        char c = text[i];
        if (c == '.') {
            if (seen_point) fail();
            seen_point = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            ++digit_count;
            if (digit_count <= 40) {
                value = value * XFloat(10.0) + XFloat(c - '0');
                if (seen_point) --exponent;
            } else if (!seen_point) {
                ++exponent;
            }
        } else {
            break;
        }
    }
    if (digit_count == 0) fail();
    if (i < text.size() && (text[i] == 'e' || text[i] == 'E')) {
        ++i;
        bool neg_exp = false;
        if (i < text.size() && (text[i] == '+' || text[i] == '-')) neg_exp = text[i++] == '-';
        int e = 0;
        bool any = false;
        for (; i < text.size() && std::isdigit(static_cast<unsigned char>(text[i])); ++i) {
            e = e * 10 + (text[i] - '0');
            any = true;
            if (e > 400) fail();
        }
        if (!any) fail();
        exponent += neg_exp ? -e : e;
    }
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    if (i != text.size()) fail();
    if (exponent > 0) value *= pow10(exponent);
    if (exponent < 0) value /= pow10(-exponent);
    return negative ? -value : value;
}

std::string XFloat::to_string(int digits) const {
    if (std::isnan(hi_)) return "nan";
    if (std::isinf(hi_)) return hi_ > 0 ? "inf" : "-inf";
    if (hi_ == 0.0) return "0";
    if (digits < 1) digits = 1;
    if (digits > 34) digits = 34;

    XFloat x = abs(*this);
    int e = static_cast<int>(std::floor(std::log10(x.hi())));
    XFloat r = e >= 0 ? x / pow10(e) : x * pow10(-e);
    while (r >= XFloat(10.0)) {
        r /= XFloat(10.0);
        ++e;
    }
    while (r < XFloat(1.0)) {
        r *= XFloat(10.0);
        --e;
    }

    std::vector<int> d(static_cast<std::size_t>(digits) + 1);
    for (auto& di : d) {
        XFloat f = floor(r);
        int v = static_cast<int>(f.hi() + f.lo());
        if (v < 0) v = 0;
        if (v > 9) v = 9;
        di = v;
        r = (r - XFloat(v)) * XFloat(10.0);
    }
    if (d.back() >= 5) {
        int pos = digits - 1;
        while (pos >= 0) {
            if (++d[static_cast<std::size_t>(pos)] < 10) break;
            d[static_cast<std::size_t>(pos)] = 0;
            --pos;
        }
        if (pos < 0) {
            d.insert(d.begin(), 1);
            ++e;
        }
    }
    d.resize(static_cast<std::size_t>(digits));

    std::string mant;
    for (int v : d) mant.push_back(static_cast<char>('0' + v));
    std::string out = hi_ < 0 ? "-" : "";
    auto strip = [](std::string s) {
        if (s.find('.') == std::string::npos) return s;
        while (!s.empty() && s.back() == '0') s.pop_back();
        if (!s.empty() && s.back() == '.') s.pop_back();
        return s;
    };
    if (e >= -5 && e < digits) {
        std::string body;
        if (e < 0) {
            body = "0." + std::string(static_cast<std::size_t>(-e - 1), '0') + mant;
        } else {
            body = mant.substr(0, static_cast<std::size_t>(e) + 1);
            if (static_cast<int>(mant.size()) > e + 1) body += "." + mant.substr(static_cast<std::size_t>(e) + 1);
        }
        return out + strip(body);
    }
    std::string body = mant.substr(0, 1);
    if (mant.size() > 1) body += "." + mant.substr(1);
    body = strip(body);
    char buf[16];
    std::snprintf(buf, sizeof buf, "e%+03d", e);
    return out + body + buf;
}

}  // namespace mertens
