#include "mertens/cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <optional>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "mertens/asymptotics.hpp"
#include "mertens/errors.hpp"
#include "mertens/multiple_sums.hpp"
#include "mertens/polynomials.hpp"
#include "mertens/prime_table.hpp"
#include "mertens/special_functions.hpp"

namespace mertens::cli {

namespace {

using nlohmann::ordered_json;

enum class Format { Table, Csv, Json };

struct Config {
    std::uint64_t prime_limit = 10'000'000;
    std::string cache_path;
    std::string threads = "auto";
    Format format = Format::Table;
    std::uint64_t b_limit = kDefaultBLimit;
};

std::string num(double v, int digits) {
    if (std::isnan(v)) return "nan";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", digits, v);
    return buf;
}

// Shared, lazily built state for one invocation.
class Context {
public:
    explicit Context(Config cfg) : cfg_(std::move(cfg)) {}

    const Config& config() const { return cfg_; }

    unsigned threads() const {
        if (cfg_.threads == "auto") return std::max(1u, std::thread::hardware_concurrency());
        int t = 0;
        try {
            t = std::stoi(cfg_.threads);
        } catch (const std::exception&) {
            throw DomainError("--threads must be a positive integer or 'auto'");
        }
        if (t < 1) throw DomainError("--threads must be at least 1");
        return static_cast<unsigned>(t);
    }

    SumOptions sum_options() const { return SumOptions{threads(), kDefaultTupleBudget}; }

    const PrimeTable& table() {
        if (!table_) table_.emplace(load_or_build());
        return *table_;
    }

    const Constants& constants() {
        if (!constants_) {
            if (cfg_.b_limit > table().limit())
                throw DomainError("--b-limit exceeds --prime-limit");
            constants_ = compute_constants(table(), cfg_.b_limit);
        }
        return *constants_;
    }

    const std::vector<ShiftedPoly>& polys() {
        if (!polys_) polys_ = p_family(kMaxCoeffIndex);
        return *polys_;
    }

    std::string fmt(double v) const { return num(v, cfg_.format == Format::Table ? 10 : 17); }

private:
    PrimeTable load_or_build() {
        if (cfg_.prime_limit < 1000) throw DomainError("--prime-limit must be at least 1000");
        const std::filesystem::path path = cfg_.cache_path;
        SieveOptions opts;
        opts.threads = threads();
        if (!path.empty() && std::filesystem::exists(path)) {
            PrimeTable cached = load_cache(path);
            if (cached.limit() == cfg_.prime_limit) return cached;
        }
        PrimeTable built = build_sieve(cfg_.prime_limit, opts);
        if (!path.empty()) save_cache(built, path);
        return built;
    }

    Config cfg_;
    std::optional<PrimeTable> table_;
    std::optional<Constants> constants_;
    std::optional<std::vector<ShiftedPoly>> polys_;
};

// Column-aligned plain text table.
void print_table(std::ostream& out, const std::vector<std::string>& header,
                 const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> width(header.size());
    for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) {
            if (c) out << "  ";
            out << cells[c];
            if (c + 1 < cells.size()) out << std::string(width[c] - cells[c].size(), ' ');
        }
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void print_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows) {
    auto line = [&](const std::vector<std::string>& cells) {
        for (std::size_t c = 0; c < cells.size(); ++c) out << (c ? "," : "") << cells[c];
        out << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

void print_rows(Context& ctx, std::ostream& out, const std::vector<std::string>& header,
                const std::vector<std::vector<std::string>>& rows) {
    if (ctx.config().format == Format::Csv)
        print_csv(out, header, rows);
    else
        print_table(out, header, rows);
}

// JSON numbers carry the value's leading double.
ordered_json jnum(double v) { return std::isfinite(v) ? ordered_json(v) : ordered_json(nullptr); }

// ---------------------------------------------------------------------------
// sums

struct SumsArgs {
    int k = 1;
    int s = 0;
    double x = 0.0;
    std::string method = "enum";
    std::optional<double> split;
};

void cmd_sums(Context& ctx, const SumsArgs& a, std::ostream& out) {
    std::vector<SumMethod> methods;
    if (a.method == "all") {
        methods = {SumMethod::Enumerate, SumMethod::Multiset};
        if (a.k >= 2) methods.push_back(SumMethod::Hyperbola);
    } else {
        methods = {parse_method(a.method)};
    }
    std::optional<XFloat> prediction;
    if (a.x > std::exp(1.0)) {
        prediction = a.s == 0 ? theorem_main_prediction(a.k, a.x, ctx.polys(), ctx.constants().B)
                              : theorem_weighted_prediction(a.k, a.s, a.x, ctx.polys(), ctx.constants().B);
    }
    std::vector<SumValue> values;
    for (SumMethod m : methods) {
        SumSpec spec;
        spec.k = a.k;
        spec.s = a.s;
        spec.x = a.x;
        spec.method = m;
        spec.split_y = a.split;
        values.push_back(compute_sum(ctx.table(), spec, ctx.sum_options()));
    }

    if (ctx.config().format == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (const auto& v : values) {
            ordered_json o;
            o["x"] = jnum(a.x);
            o["k"] = a.k;
            o["s"] = a.s;
            o["method"] = std::string(method_name(v.method));
            o["value"] = jnum(v.value.hi());
            o["term_count"] = v.term_count;
            o["prediction"] = prediction ? jnum(prediction->hi()) : ordered_json(nullptr);
            o["residual"] = prediction ? jnum((v.value - *prediction).hi()) : ordered_json(nullptr);
            if (v.method == SumMethod::Hyperbola) o["split"] = jnum(a.split.value_or(std::sqrt(a.x)));
            arr.push_back(std::move(o));
        }
        out << (arr.size() == 1 ? arr[0] : arr).dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& v : values) {
        rows.push_back({ctx.fmt(a.x), std::to_string(a.k), std::to_string(a.s), std::string(method_name(v.method)),
                        ctx.fmt(v.value.hi()), std::to_string(v.term_count),
                        prediction ? ctx.fmt(prediction->hi()) : "",
                        prediction ? ctx.fmt((v.value - *prediction).hi()) : ""});
    }
    print_rows(ctx, out, {"x", "k", "s", "method", "value", "term_count", "prediction", "residual"}, rows);
}

// ---------------------------------------------------------------------------
// poly, coeffs

void cmd_poly(Context& ctx, int k, const std::string& basis, std::ostream& out) {
    if (k < 0 || k > kMaxCoeffIndex) throw DomainError("--k must satisfy 0 <= k <= 24");
    const ShiftedPoly& p = ctx.polys()[static_cast<std::size_t>(k)];
    std::vector<XFloat> coeffs;
    if (basis == "shifted")
        coeffs = p.coeffs;
    else
        coeffs = to_plain_basis(p, ctx.constants().B);

    if (ctx.config().format == Format::Json) {
        ordered_json o;
        o["k"] = k;
        o["basis"] = basis;
        o["variable"] = basis == "shifted" ? "u = loglog x + B" : "y = loglog x";
        ordered_json arr = ordered_json::array();
        for (const auto& c : coeffs) arr.push_back(jnum(c.hi()));
        o["coefficients"] = std::move(arr);
        out << o.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (std::size_t j = coeffs.size(); j-- > 0;)
        rows.push_back({std::to_string(j), ctx.fmt(coeffs[j].hi())});
    print_rows(ctx, out, {"degree", "coefficient"}, rows);
}

void cmd_coeffs(Context& ctx, int kmax, std::ostream& out) {
    const CoeffSequence seq = a_seq(kmax);
    if (ctx.config().format == Format::Json) {
        ordered_json arr = ordered_json::array();
        for (int k = 2; k <= kmax; ++k) arr.push_back({{"k", k}, {"a", jnum(seq.at(k).hi())}});
        out << ordered_json{{"kmax", kmax}, {"coefficients", arr}}.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (int k = 2; k <= kmax; ++k) rows.push_back({std::to_string(k), ctx.fmt(seq.at(k).hi())});
    print_rows(ctx, out, {"k", "a_k"}, rows);
}

// ---------------------------------------------------------------------------
// specfun

struct SpecfunArgs {
    std::string name;
    int n = 2;
    int m = 1;
    double tol = 1e-12;
    std::optional<std::uint64_t> limit;
};

void cmd_specfun(Context& ctx, const SpecfunArgs& a, std::ostream& out) {
    ordered_json args = ordered_json::object();
    XFloat value;
    double bound = 0.0;
    if (a.name == "zeta") {
        args["n"] = a.n;
        value = zeta_int(a.n);
        bound = zeta_error_bound(a.n);
    } else if (a.name == "polylog-half") {
        args["n"] = a.n;
        value = polylog_half(a.n);
        bound = polylog_half_error_bound(a.n);
    } else if (a.name == "log-integral") {
        args["m"] = a.m;
        value = log_power_integral_closed(a.m);
        bound = log_power_integral_closed_error_bound(a.m);
    } else if (a.name == "log-integral-quad") {
        args["m"] = a.m;
        args["tol"] = a.tol;
        const LogIntegralQuad q = log_power_integral_quad(a.m, a.tol);
        value = q.value;
        bound = q.error_estimate;
    } else if (a.name == "mertens-b") {
        const std::uint64_t limit = a.limit.value_or(ctx.config().b_limit);
        args["limit"] = limit;
        const MertensConstantResult b = mertens_constant(limit, ctx.table());
        value = b.value;
        bound = b.tail_bound;
    } else if (a.name == "euler-gamma") {
        value = euler_gamma();
        bound = kEulerGammaErrorBound;
    } else {
        throw DomainError("unknown function '" + a.name + "'");
    }

    const std::string text = value.to_string(32);
    switch (ctx.config().format) {
        case Format::Json: {
            ordered_json o;
            o["name"] = a.name;
            o["args"] = args;
            o["value"] = text;
            o["abs_error_bound"] = jnum(bound);
            out << o.dump(2) << '\n';
            return;
        }
        case Format::Csv: {
            std::string arg_text;
            for (const auto& [key, v] : args.items()) arg_text += (arg_text.empty() ? "" : ";") + key + "=" + v.dump();
            print_csv(out, {"name", "args", "value", "abs_error_bound"}, {{a.name, arg_text, text, num(bound, 3)}});
            return;
        }
        case Format::Table:
            out << a.name;
            for (const auto& [key, v] : args.items()) out << ' ' << key << '=' << v.dump();
            out << "\n  " << text << "  +/- " << num(bound, 3) << '\n';
            return;
    }
}

// ---------------------------------------------------------------------------
// verify

struct Suite {
    explicit Suite(std::string n) : name(std::move(n)) {}

    std::string name;
    int checks = 0;
    std::vector<std::string> failures;

    void check(bool ok, const std::string& what) {
        ++checks;
        if (!ok) failures.push_back(what);
    }
};

bool rel_close(const XFloat& a, const XFloat& b, double tol) {
    const double scale = std::max(std::abs(a.hi()), std::abs(b.hi()));
    return std::abs((a - b).hi()) <= tol * scale;
}

std::string xlabel(double x) { return num(x, 10); }

std::vector<Suite> run_suites(Context& ctx) {
    const PrimeTable& table = ctx.table();
    const SumOptions opts = ctx.sum_options();
    auto sum = [&](int k, int s, double x, SumMethod m, std::optional<double> y = std::nullopt) {
        return compute_sum(table, SumSpec{k, s, x, m, y}, opts);
    };
    std::vector<Suite> suites;

    {
        Suite st{"hand-values"};
        struct Case {
            int k, s;
            double x;
            XFloat expected;
        };
        const XFloat l4 = log(XFloat(4.0)), l6 = log(XFloat(6.0));
        const std::vector<Case> cases = {
            {2, 0, 6.0, XFloat(7.0) / XFloat(12.0)},
            {3, 0, 8.0, XFloat(1.0) / XFloat(8.0)},
            {2, 0, 4.0, XFloat(1.0) / XFloat(4.0)},
            {2, 0, 3.9, XFloat()},
            {2, 1, 6.0, l4 / XFloat(4.0) + XFloat(2.0) * l6 / XFloat(6.0)},
        };
        for (const auto& c : cases)
            for (SumMethod m : {SumMethod::Enumerate, SumMethod::Multiset, SumMethod::Hyperbola}) {
                const XFloat v = sum(c.k, c.s, c.x, m).value;
                st.check(c.expected == XFloat() ? v == XFloat() : rel_close(v, c.expected, 1e-12),
                         "k=" + std::to_string(c.k) + " s=" + std::to_string(c.s) + " x=" + xlabel(c.x) + " " +
                             std::string(method_name(m)));
            }
        suites.push_back(std::move(st));
    }
    {
        Suite st{"triple-oracle"};
        for (int k = 1; k <= 4; ++k)
            for (double x : {1e2, 1e3, 1e4, 1e5}) {
                const SumValue e = sum(k, 0, x, SumMethod::Enumerate);
                const SumValue ms = sum(k, 0, x, SumMethod::Multiset);
                const std::string tag = "k=" + std::to_string(k) + " x=" + xlabel(x);
                st.check(rel_close(e.value, ms.value, 1e-12) && e.term_count == ms.term_count, tag + " multiset");
                if (k >= 2) {
                    const SumValue h = sum(k, 0, x, SumMethod::Hyperbola);
                    st.check(rel_close(e.value, h.value, 1e-12) && e.term_count == h.term_count, tag + " hyperbola");
                }
            }
        suites.push_back(std::move(st));
    }
    {
        Suite st{"hyperbola-splits"};
        for (int k = 2; k <= 4; ++k)
            for (double x : {1e2, 1e3, 1e4, 1e5}) {
                const XFloat e = sum(k, 0, x, SumMethod::Enumerate).value;
                for (double y : {std::sqrt(x), std::pow(x, 0.3), std::pow(x, 0.7)})
                    st.check(rel_close(e, sum(k, 0, x, SumMethod::Hyperbola, y).value, 1e-12),
                             "k=" + std::to_string(k) + " x=" + xlabel(x) + " y=" + xlabel(y));
            }
        const XFloat e = sum(2, 0, 1e4, SumMethod::Enumerate).value;
        for (double y : {5.0, 20.0, 50.0, 100.0})
            st.check(rel_close(e, sum(2, 0, 1e4, SumMethod::Hyperbola, y).value, 1e-13),
                     "k=2 x=1e4 y=" + xlabel(y));
        suites.push_back(std::move(st));
    }
    {
        Suite st{"log-integral"};
        for (int m = 1; m <= 12; ++m) {
            const XFloat closed = log_power_integral_closed(m);
            const XFloat quad = log_power_integral_quad(m, 1e-12).value;
            st.check(std::abs((closed - quad).hi()) <= 1e-10, "m=" + std::to_string(m));
        }
        const XFloat& a = xconst::ln2();
        const XFloat lhs = -a * a + XFloat(2.0) * log_power_integral_closed(1);
        st.check(std::abs((lhs + zeta_int(2)).hi()) <= 1e-25, "dilogarithm reflection");
        suites.push_back(std::move(st));
    }
    {
        Suite st{"polynomials"};
        const CoeffSequence seq = a_seq(12);
        for (int k = 0; k <= 12; ++k) {
            const ShiftedPoly direct = p_poly(k, seq);
            const ShiftedPoly rec = p_poly_recursive(k);
            bool ok = direct.degree() == rec.degree();
            for (std::size_t j = 0; ok && j < direct.coeffs.size(); ++j)
                ok = rel_close(direct.coeffs[j], rec.coeffs[j], 1e-20) ||
                     std::abs((direct.coeffs[j] - rec.coeffs[j]).hi()) <= 1e-25;
            st.check(ok, "recursion k=" + std::to_string(k));
        }
        st.check(std::abs((a_recurrence(3, seq) - seq.at(3)).hi()) <= 1e-25, "recurrence k=3");
        st.check(std::abs((a_recurrence(4, seq) - seq.at(4)).hi()) <= 1e-25, "recurrence k=4");
        const Constants& c = ctx.constants();
        for (int k = 1; k <= 8; ++k) {
            const auto plain = to_plain_basis(p_poly(k, seq), c.B);
            const LambdaTable lt = tenenbaum_lambda(k, c.B, c.gamma);
            bool ok = true;
            for (int j = 0; j <= k; ++j)
                ok = ok && std::abs((plain[static_cast<std::size_t>(j)] - lt.lambda[static_cast<std::size_t>(j)]).hi()) <= 1e-10;
            st.check(ok, "gamma-series k=" + std::to_string(k));
        }
        suites.push_back(std::move(st));
    }
    {
        Suite st{"constants"};
        const double b = mertens_constant(1'000'000, table).value.hi();
        st.check(b >= 0.26149 && b <= 0.26151, "Mertens constant at 10^6");
        const double g = euler_gamma().hi();
        st.check(g > 0.577 && g < 0.578, "Euler constant");
        suites.push_back(std::move(st));
    }
    {
        Suite st{"residuals"};
        for (int k = 1; k <= 3; ++k) {
            const ConvergenceReport rep = convergence_report(table, k, 0, GridSpec{}, ctx.polys(), ctx.constants().B,
                                                             ResidualMethod::Enumerate, opts);
            st.check(rep.status == ConvergenceStatus::Convergent && rep.max_scaled.is_finite(),
                     "k=" + std::to_string(k));
        }
        suites.push_back(std::move(st));
    }
    return suites;
}

bool cmd_verify(Context& ctx, std::ostream& out) {
    const std::vector<Suite> suites = run_suites(ctx);
    bool all = true;
    for (const auto& s : suites) all = all && s.failures.empty();

    switch (ctx.config().format) {
        case Format::Json: {
            ordered_json arr = ordered_json::array();
            for (const auto& s : suites)
                arr.push_back({{"name", s.name},
                               {"status", s.failures.empty() ? "PASS" : "FAIL"},
                               {"checks", s.checks},
                               {"failures", s.failures}});
            out << ordered_json{{"suites", arr}, {"passed", all}}.dump(2) << '\n';
            break;
        }
        case Format::Csv: {
            std::vector<std::vector<std::string>> rows;
            for (const auto& s : suites) {
                std::string f;
                for (const auto& x : s.failures) f += (f.empty() ? "" : ";") + x;
                rows.push_back({s.name, s.failures.empty() ? "PASS" : "FAIL", std::to_string(s.checks), f});
            }
            print_csv(out, {"suite", "status", "checks", "failures"}, rows);
            break;
        }
        case Format::Table:
            for (const auto& s : suites) {
                out << (s.failures.empty() ? "PASS " : "FAIL ") << s.name << " (" << s.checks << " checks)\n";
                for (const auto& f : s.failures) out << "  failed: " << f << '\n';
            }
            break;
    }
    return all;
}

// ---------------------------------------------------------------------------
// residuals

struct ResidualArgs {
    int k = 1;
    int s = 0;
    double xmin = 1e3;
    double xmax = 1e7;
    int points = 8;
    std::string method = "enum";
};

void cmd_residuals(Context& ctx, const ResidualArgs& a, std::ostream& out) {
    const GridSpec grid{a.xmin, a.xmax, a.points, Spacing::Geometric};
    grid_points(grid);
    const ConvergenceReport rep = convergence_report(ctx.table(), a.k, a.s, grid, ctx.polys(), ctx.constants().B,
                                                     parse_residual_method(a.method), ctx.sum_options());
    if (ctx.config().format == Format::Json) {
        ordered_json rows = ordered_json::array();
        for (const auto& r : rep.rows)
            rows.push_back({{"k", r.k},
                            {"s", r.s},
                            {"x", jnum(r.x)},
                            {"exact", jnum(r.exact.hi())},
                            {"prediction", jnum(r.prediction.hi())},
                            {"residual", jnum(r.residual.hi())},
                            {"scaled", jnum(r.scaled.hi())}});
        ordered_json o;
        o["rows"] = rows;
        o["implied_constant"] = jnum(rep.max_scaled.hi());
        o["trend_slope"] = jnum(rep.trend_slope);
        o["status"] = std::string(status_name(rep.status));
        out << o.dump(2) << '\n';
        return;
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& r : rep.rows)
        rows.push_back({std::to_string(r.k), std::to_string(r.s), ctx.fmt(r.x), ctx.fmt(r.exact.hi()),
                        ctx.fmt(r.prediction.hi()), ctx.fmt(r.residual.hi()), ctx.fmt(r.scaled.hi())});
    print_rows(ctx, out, {"k", "s", "x", "exact", "prediction", "residual", "scaled"}, rows);
    if (ctx.config().format == Format::Table) {
        out << "implied constant: " << ctx.fmt(rep.max_scaled.hi()) << '\n';
        out << "trend slope: " << ctx.fmt(rep.trend_slope) << '\n';
        out << "status: " << status_name(rep.status) << '\n';
    }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Multiple Mertens sums, their asymptotic polynomials and supporting special functions", "mertens"};
    app.require_subcommand(1);
    app.fallthrough();

    Config cfg;
    std::string format = "table";
    app.add_option("--prime-limit", cfg.prime_limit, "Sieve bound")->capture_default_str();
    app.add_option("--prime-cache", cfg.cache_path, "Prime cache file")->envname("MERTENS_PRIME_CACHE");
    app.add_option("--threads", cfg.threads, "Worker threads or 'auto'")->capture_default_str();
    app.add_option("--format", format, "Output format")
        ->check(CLI::IsMember({"table", "csv", "json"}))
        ->capture_default_str();
    app.add_option("--b-limit", cfg.b_limit, "Prime bound for the Mertens constant")->capture_default_str();

    std::function<int(Context&)> action;

    SumsArgs sums;
    auto* sums_cmd = app.add_subcommand("sums", "Exact multiple prime sums with their predicted values");
    sums_cmd->add_option("--k", sums.k, "Number of prime factors")->required();
    sums_cmd->add_option("--s", sums.s, "Power of the log weight")->capture_default_str();
    sums_cmd->add_option("--x", sums.x, "Upper bound on the product")->required();
    sums_cmd->add_option("--method", sums.method, "Summation method")
        ->check(CLI::IsMember({"enum", "multiset", "hyperbola", "all"}))
        ->capture_default_str();
    sums_cmd->add_option("--split", sums.split, "Hyperbola split point (default sqrt(x))");
    sums_cmd->callback([&] { action = [&](Context& c) { cmd_sums(c, sums, out); return kExitOk; }; });

    int poly_k = 0;
    std::string basis = "shifted";
    auto* poly_cmd = app.add_subcommand("poly", "Coefficients of the asymptotic polynomial P_k");
    poly_cmd->add_option("--k", poly_k, "Degree")->required();
    poly_cmd->add_option("--basis", basis, "shifted: powers of loglog x + B; plain: powers of loglog x")
        ->check(CLI::IsMember({"shifted", "plain"}))
        ->capture_default_str();
    poly_cmd->callback([&] { action = [&](Context& c) { cmd_poly(c, poly_k, basis, out); return kExitOk; }; });

    int kmax = 8;
    auto* coeffs_cmd = app.add_subcommand("coeffs", "The coefficient sequence a_2 .. a_kmax");
    coeffs_cmd->add_option("--kmax", kmax, "Last index")->capture_default_str();
    coeffs_cmd->callback([&] { action = [&](Context& c) { cmd_coeffs(c, kmax, out); return kExitOk; }; });

    SpecfunArgs sf;
    auto* sf_cmd = app.add_subcommand("specfun", "Special values with error bounds");
    sf_cmd->add_option("name", sf.name, "zeta | polylog-half | log-integral | log-integral-quad | mertens-b | euler-gamma")
        ->required()
        ->check(CLI::IsMember({"zeta", "polylog-half", "log-integral", "log-integral-quad", "mertens-b", "euler-gamma"}));
    sf_cmd->add_option("--n", sf.n, "Argument of zeta and polylog-half")->capture_default_str();
    sf_cmd->add_option("--m", sf.m, "Log power of the integral")->capture_default_str();
    sf_cmd->add_option("--tol", sf.tol, "Quadrature tolerance")->capture_default_str();
    sf_cmd->add_option("--limit", sf.limit, "Prime bound for mertens-b (default --b-limit)");
    sf_cmd->callback([&] { action = [&](Context& c) { cmd_specfun(c, sf, out); return kExitOk; }; });

    auto* verify_cmd = app.add_subcommand("verify", "Run the built-in verification suites");
    verify_cmd->callback(
        [&] { action = [&](Context& c) { return cmd_verify(c, out) ? kExitOk : kExitVerifyFailed; }; });

    ResidualArgs ra;
    auto* res_cmd = app.add_subcommand("residuals", "Residuals of exact sums against their predictions");
    res_cmd->add_option("--k", ra.k, "Number of prime factors")->required();
    res_cmd->add_option("--s", ra.s, "Power of the log weight")->capture_default_str();
    res_cmd->add_option("--xmin", ra.xmin, "First grid point")->capture_default_str();
    res_cmd->add_option("--xmax", ra.xmax, "Last grid point")->capture_default_str();
    res_cmd->add_option("--points", ra.points, "Number of grid points")->capture_default_str();
    res_cmd->add_option("--method", ra.method, "Summation method")
        ->check(CLI::IsMember({"enum", "multiset", "hyperbola", "all"}))
        ->capture_default_str();
    res_cmd->callback([&] { action = [&](Context& c) { cmd_residuals(c, ra, out); return kExitOk; }; });

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitUsage;
    }

    cfg.format = format == "csv" ? Format::Csv : format == "json" ? Format::Json : Format::Table;
    try {
        Context ctx(cfg);
        return action(ctx);
    } catch (const ConvergenceError& e) {
        err << "error: " << e.what() << " (best estimate " << num(e.best_estimate(), 17) << ", error estimate "
            << num(e.error_estimate(), 3) << ")\n";
        return kExitUsage;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace mertens::cli
