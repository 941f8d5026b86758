#include "gpflow/diagnostics.hpp"

#include "gpflow/errors.hpp"

#include <cmath>
#include <limits>

namespace gpflow {

double energy_from_curvature(std::span<const double> k, double ds) {
    if (k.size() < 2) return 0.0;
    double acc = 0.5 * (k.front() * k.front() + k.back() * k.back());
    for (std::size_t j = 1; j + 1 < k.size(); ++j) acc += k[j] * k[j];
    return acc * ds;
}

double energy(const AngleProfile& prof) {
    return energy_from_curvature(theta_s_from_theta(prof), prof.ds());
}

double k0_exact(double t, double u0) { return 2.0 * u0 / std::cbrt(3.0 * t); }

std::pair<double, double> curvature_origin(const AngleProfile& prof) {
    const std::size_t j0 = prof.index_of_s0();
    const std::vector<double> k = theta_s_from_theta(prof);
    return {k[j0], k0_exact(prof.t, prof.pair.u0)};
}

double support_width_from_curvature(std::span<const double> k, double ds, double threshold) {
    if (!(threshold > 0)) throw ConfigError("support_width: threshold must be positive");
    std::size_t count = 0;
    for (double kj : k)
        if (std::fabs(kj) > threshold) ++count;
    return static_cast<double>(count) * ds;
}

double support_width(const AngleProfile& prof, double threshold) {
    return support_width_from_curvature(theta_s_from_theta(prof), prof.ds(), threshold);
}

DiagnosticsRecord observe(const Evolver& ev, const ObserveOptions& opts) {
    DiagnosticsRecord rec;
    const SpectralState& st = ev.state();
    rec.t = st.t;
    const std::vector<double> k = ev.curvature();
    const double ds = st.L / static_cast<double>(st.n);
    rec.energy = energy_from_curvature(k, ds);
    rec.support_width = support_width_from_curvature(k, ds, opts.support_threshold);
    rec.k0_exact = k0_exact(st.t, st.pair.u0);
    const double j0f = -st.s_a / ds;
    const auto j0 = static_cast<std::size_t>(std::llround(j0f));
    if (j0 > st.n || std::fabs(j0f - std::round(j0f)) > 1e-6)
        throw NodeMissing("observe: s = 0 is not a grid node");
    rec.k0 = k[j0];
    if (opts.closed_curve_diagnostics) {
        const CurveSamples curve = reconstruct_curve(ev.snapshot(), st.s_a, cplx(0.0));
        rec.closure_error = std::abs(closure_gap(curve));
        rec.area = enclosed_area(curve);
    }
    return rec;
}

std::vector<IntegralScanRow> scan_curvature_integral(const std::vector<InitialPair>& pairs,
                                                     const ScanOptions& opts) {
    std::size_t n1 = opts.n1;
    if (n1 == 0) n1 = static_cast<std::size_t>(std::llround((opts.x_max - opts.x_min) / 0.05));
    std::vector<IntegralScanRow> rows;
    rows.reserve(pairs.size());
    for (const InitialPair& pair : pairs) {
        IntegralScanRow row;
        row.pair = pair;
        try {
            const ProfileSolution prof =
                integrate_profile(pair, opts.x_min, opts.x_max, opts.shoot);
            const WorkingTheta wt = theta_from_profile(prof, n1);
            const ThetaMinusEstimate est = estimate_theta_minus(wt.s, wt.theta);
            row.integral = -est.theta_minus; // theta_plus is pinned to zero
        } catch (const NotAdmissible&) {
            row.integral = std::numeric_limits<double>::quiet_NaN();
            row.admissible = false;
        } catch (const NoExtrema&) {
            row.integral = std::numeric_limits<double>::quiet_NaN();
            row.admissible = false;
        }
        rows.push_back(row);
    }
    return rows;
}

LinearFit fit_line(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2) throw ConfigError("fit_line: need >= 2 samples");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
        syy += y[i] * y[i];
    }
    LinearFit fit;
    const double den = n * sxx - sx * sx;
    fit.slope = (n * sxy - sx * sy) / den;
    fit.intercept = (sy - fit.slope * sx) / n;
    double ss_res = 0.0;
    const double mean_y = sy / n;
    double ss_tot = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double fi = fit.slope * x[i] + fit.intercept;
        ss_res += (y[i] - fi) * (y[i] - fi);
        ss_tot += (y[i] - mean_y) * (y[i] - mean_y);
    }
    fit.r2 = ss_tot > 0 ? 1.0 - ss_res / ss_tot : 1.0;
    return fit;
}

} // namespace gpflow
