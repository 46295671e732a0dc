#include "mertens/asymptotics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "mertens/detail/parallel.hpp"
#include "mertens/errors.hpp"

namespace mertens {

namespace {

constexpr double kSnapTolerance = 1e-9;
constexpr double kMethodAgreement = 1e-12;

XFloat exact_sum(const PrimeTable& table, int k, int s, double x, ResidualMethod method,
                 const SumOptions& options) {
    SumSpec spec;
    spec.k = k;
    spec.s = s;
    spec.x = x;
    switch (method) {
        case ResidualMethod::Enumerate: return sum_enumerate(table, spec, options).value;
        case ResidualMethod::Multiset: return sum_multiset(table, spec, options).value;
        case ResidualMethod::Hyperbola: return sum_hyperbola(table, spec, options).value;
        case ResidualMethod::All: break;
    }
    const XFloat reference = sum_enumerate(table, spec, options).value;
    std::vector<XFloat> others{sum_multiset(table, spec, options).value};
    if (k >= 2) others.push_back(sum_hyperbola(table, spec, options).value);
    for (const XFloat& v : others) {
        const double diff = std::abs((v - reference).hi());
        if (diff > kMethodAgreement * std::abs(reference.hi()))
            throw AccuracyError("summation methods disagree at x = " + std::to_string(x));
    }
    return reference;
}

}  // namespace

std::vector<double> grid_points(const GridSpec& grid) {
    if (grid.points < 2) throw DomainError("a grid needs at least two points");
    if (!(grid.x_min > std::exp(2.0))) throw DomainError("grid x_min must exceed e^2");
    if (!(grid.x_max > grid.x_min) || !std::isfinite(grid.x_max))
        throw DomainError("grid x_max must be finite and exceed x_min");
    std::vector<double> xs(static_cast<std::size_t>(grid.points));
    const double ratio = std::log(grid.x_max / grid.x_min);
    for (int i = 0; i < grid.points; ++i) {
        double x = grid.x_min * std::exp(ratio * i / (grid.points - 1));
        const double r = std::round(x);
        if (std::abs(x - r) <= kSnapTolerance * x) x = r;
        xs[static_cast<std::size_t>(i)] = x;
    }
    xs.front() = grid.x_min;
    xs.back() = grid.x_max;
    return xs;
}

std::string_view residual_method_name(ResidualMethod m) {
    switch (m) {
        case ResidualMethod::Enumerate: return "enum";
        case ResidualMethod::Multiset: return "multiset";
        case ResidualMethod::Hyperbola: return "hyperbola";
        case ResidualMethod::All: return "all";
    }
    return "enum";
}

ResidualMethod parse_residual_method(std::string_view name) {
    if (name == "all") return ResidualMethod::All;
    switch (parse_method(name)) {
        case SumMethod::Enumerate: return ResidualMethod::Enumerate;
        case SumMethod::Multiset: return ResidualMethod::Multiset;
        case SumMethod::Hyperbola: return ResidualMethod::Hyperbola;
    }
    return ResidualMethod::Enumerate;
}

XFloat residual_scale(int k, int s, double x) {
    const XFloat log_x = log(XFloat(x));
    const XFloat loglog_x = log(log_x);
    if (s == 0) return log_x / pow(loglog_x, k - 1);
    return XFloat(1.0) / (pow(log_x, s - 1) * pow(loglog_x, k));
}

std::vector<ResidualRow> residual_table(const PrimeTable& table, int k, int s, const GridSpec& grid,
                                        const std::vector<ShiftedPoly>& polys, const XFloat& B,
                                        ResidualMethod method, const SumOptions& options) {
    const std::vector<double> xs = grid_points(grid);
    std::vector<ResidualRow> rows(xs.size());
    SumOptions inner = options;
    inner.threads = 1;
    detail::parallel_for(xs.size(), options.threads, [&](std::size_t i) {
        ResidualRow& row = rows[i];
        row.k = k;
        row.s = s;
        row.x = xs[i];
        row.prediction = s == 0 ? theorem_main_prediction(k, row.x, polys, B)
                                : theorem_weighted_prediction(k, s, row.x, polys, B);
        row.exact = exact_sum(table, k, s, row.x, method, inner);
        row.residual = row.exact - row.prediction;
        row.scaled = row.residual * residual_scale(k, s, row.x);
    });
    return rows;
}

XFloat implied_constant(const std::vector<ResidualRow>& rows) {
    if (rows.empty()) throw DomainError("implied_constant needs at least one row");
    XFloat best;
    for (const auto& r : rows) {
        if (r.k != rows.front().k || r.s != rows.front().s)
            throw DomainError("implied_constant rows must share k and s");
        best = std::max(best, abs(r.scaled));
    }
    return best;
}

std::string_view status_name(ConvergenceStatus s) {
    switch (s) {
        case ConvergenceStatus::Convergent: return "CONVERGENT";
        case ConvergenceStatus::Nonconvergent: return "NONCONVERGENT";
        case ConvergenceStatus::NotApplicable: return "NOT_APPLICABLE";
    }
    return "NOT_APPLICABLE";
}

ConvergenceReport convergence_report(const PrimeTable& table, int k, int s, const GridSpec& grid,
                                     const std::vector<ShiftedPoly>& polys, const XFloat& B,
                                     ResidualMethod method, const SumOptions& options) {
    ConvergenceReport rep;
    rep.k = k;
    rep.s = s;
    rep.rows = residual_table(table, k, s, grid, polys, B, method, options);
    rep.max_scaled = implied_constant(rep.rows);

    double n = 0, sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rep.rows) {
        const double res = std::abs(r.residual.hi());
        if (res == 0.0) continue;
        const double lx = std::log(r.x);
        const double ly = std::log(res);
        n += 1;
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    rep.trend_slope = n < 2 ? std::numeric_limits<double>::quiet_NaN() : (n * sxy - sx * sy) / (n * sxx - sx * sx);

    if (s == 0) {
        const bool decreasing = abs(rep.rows.back().residual) < abs(rep.rows.front().residual);
        rep.status = decreasing ? ConvergenceStatus::Convergent : ConvergenceStatus::Nonconvergent;
    }
    return rep;
}

}  // namespace mertens
