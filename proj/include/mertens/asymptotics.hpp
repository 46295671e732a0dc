#pragma once

// Residuals of exact multiple sums against their asymptotic predictions on
// geometric x-grids, scaled by the shape of the expected error term.

#include <string_view>
#include <vector>

#include "mertens/multiple_sums.hpp"

namespace mertens {

enum class Spacing { Geometric };

struct GridSpec {
    double x_min = 1e3;
    double x_max = 1e7;
    int points = 8;
    Spacing spacing = Spacing::Geometric;
};

// Grid abscissae in ascending order. Endpoints are exact; interior points
// within 1e-9 relative of an integer are snapped to it. Requires
// x_min > e^2, x_max > x_min and points >= 2.
std::vector<double> grid_points(const GridSpec& grid);

// Which exact sum feeds the table. All runs every applicable method and
// requires them to agree within 1e-12 relative (AccuracyError otherwise).
enum class ResidualMethod { Enumerate, Multiset, Hyperbola, All };

// "enum", "multiset", "hyperbola", "all" and back.
std::string_view residual_method_name(ResidualMethod m);
ResidualMethod parse_residual_method(std::string_view name);

struct ResidualRow {
    int k = 0;
    int s = 0;
    double x = 0.0;
    XFloat exact;
    XFloat prediction;
    XFloat residual;  // exact - prediction
    // s = 0: residual log x / (log log x)^{k-1}
    // s > 0: residual / (log^{s-1} x (log log x)^k)
    XFloat scaled;
};

// Scaling factor applied to a residual at x for the given k and s.
XFloat residual_scale(int k, int s, double x);

// One row per grid point, ascending in x. Rows are computed in parallel
// when options.threads > 1; the output does not depend on the thread count.
std::vector<ResidualRow> residual_table(const PrimeTable& table, int k, int s, const GridSpec& grid,
                                        const std::vector<ShiftedPoly>& polys, const XFloat& B,
                                        ResidualMethod method = ResidualMethod::Enumerate,
                                        const SumOptions& options = {});

// max |scaled| over rows. Rows must be nonempty and share k and s.
XFloat implied_constant(const std::vector<ResidualRow>& rows);

enum class ConvergenceStatus { Convergent, Nonconvergent, NotApplicable };

// "CONVERGENT", "NONCONVERGENT", "NOT_APPLICABLE".
std::string_view status_name(ConvergenceStatus s);

struct ConvergenceReport {
    int k = 0;
    int s = 0;
    std::vector<ResidualRow> rows;
    XFloat max_scaled;
    // Least-squares slope of log|residual| against log x over the rows with
    // a nonzero residual; NaN when fewer than two such rows exist.
    double trend_slope = 0.0;
    // For s = 0: Convergent iff |residual| at the last grid point is below
    // the one at the first. Weighted sums (s > 0) are not flagged.
    ConvergenceStatus status = ConvergenceStatus::NotApplicable;
};

ConvergenceReport convergence_report(const PrimeTable& table, int k, int s, const GridSpec& grid,
                                     const std::vector<ShiftedPoly>& polys, const XFloat& B,
                                     ResidualMethod method = ResidualMethod::Enumerate,
                                     const SumOptions& options = {});

}  // namespace mertens
