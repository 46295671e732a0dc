#include <doctest.h>

#include "../reference.hpp"
#include "../support.hpp"
#include "mertens/errors.hpp"
#include "mertens/xfloat.hpp"

using mertens::XFloat;
using support::abs_diff;
using support::rel_diff;
using support::X;

TEST_CASE("parse and print round-trip") {
    CHECK(X("0.1").to_string() == "0.1");
    CHECK(X("-123.5").to_string(6) == "-123.5");
    CHECK(X("0").to_string() == "0");
    CHECK(X("1.5e3").to_double() == 1500.0);
    const XFloat pi = X(ref::kPi);
    CHECK(rel_diff(X(pi.to_string(32).c_str()), pi) < 1e-31);
}

TEST_CASE("malformed literals are domain errors") {
    CHECK_THROWS_AS(X(""), mertens::DomainError);
    CHECK_THROWS_AS(X("abc"), mertens::DomainError);
    CHECK_THROWS_AS(X("1.2.3"), mertens::DomainError);
    CHECK_THROWS_AS(X("1e"), mertens::DomainError);
}

TEST_CASE("one tenth carries a low word") {
    const XFloat tenth = X("0.1");
    CHECK(tenth.lo() != 0.0);
    CHECK(abs_diff(tenth * XFloat(10), XFloat(1)) < 1e-31);
}

TEST_CASE("elementary functions against reference digits") {
    CHECK(rel_diff(mertens::exp(XFloat(1)), X(ref::kE)) < 1e-30);
    CHECK(rel_diff(mertens::log(X(ref::kE)), XFloat(1)) < 1e-30);
    CHECK(rel_diff(mertens::xconst::ln2(), X(ref::kLn2)) < 1e-31);
    CHECK(rel_diff(mertens::log(XFloat(2)), X(ref::kLn2)) < 1e-30);
    CHECK(rel_diff(mertens::sqrt(XFloat(2)) * mertens::sqrt(XFloat(2)), XFloat(2)) < 1e-31);
    const XFloat pi = X(ref::kPi);
    CHECK(rel_diff(mertens::pow(pi, 2) / XFloat(6), X(ref::kZeta2)) < 1e-30);
    CHECK(rel_diff(mertens::pow(XFloat(2), XFloat(0.5)), mertens::sqrt(XFloat(2))) < 1e-30);
    CHECK(mertens::floor(X("7.999999999999999999999999")) == XFloat(7));
    CHECK(mertens::floor(XFloat(-0.5)) == XFloat(-1));
}

TEST_CASE("log and sqrt reject non-positive input") {
    CHECK_THROWS_AS(mertens::log(XFloat(0)), mertens::DomainError);
    CHECK_THROWS_AS(mertens::log(XFloat(-1)), mertens::DomainError);
    CHECK_THROWS_AS(mertens::sqrt(XFloat(-1)), mertens::DomainError);
}

TEST_CASE("from_u64 is exact above 2^53") {
    const std::uint64_t v = (std::uint64_t{1} << 60) + 1;
    const XFloat x = XFloat::from_u64(v);
    CHECK(x - XFloat(static_cast<double>(std::uint64_t{1} << 60)) == XFloat(1));
}

TEST_CASE("property: (x + y) - y == x") {
    support::Gen gen(0x5eed0001);
    for (int i = 0; i < 20000; ++i) {
        const double xv = gen.log_uniform(1e-6, 1e10);
        const double yv = gen.uniform(-1.0, 1.0) * std::fabs(xv);
        const XFloat x(xv), y(yv);
        REQUIRE(((x + y) - y) == x);
    }
}

TEST_CASE("property: exp and log are inverse") {
    support::Gen gen(0x5eed0002);
    for (int i = 0; i < 2000; ++i) {
        const XFloat v = XFloat(gen.uniform(-40.0, 40.0)) / XFloat(3);
        REQUIRE(abs_diff(mertens::log(mertens::exp(v)), v) < 1e-29 * std::fmax(1.0, std::fabs(v.to_double())));
    }
}

TEST_CASE("property: division inverts multiplication") {
    support::Gen gen(0x5eed0003);
    for (int i = 0; i < 5000; ++i) {
        const XFloat a = XFloat(gen.log_uniform(1e-8, 1e8)) / XFloat(7);
        const XFloat b = XFloat(gen.log_uniform(1e-8, 1e8)) / XFloat(3);
        REQUIRE(rel_diff((a * b) / b, a) < 1e-30);
    }
}
