#ifndef GPFLOW_DIAGNOSTICS_HPP
#define GPFLOW_DIAGNOSTICS_HPP

#include <optional>
#include <span>
#include <vector>

#include "gpflow/curve.hpp"
#include "gpflow/evolver.hpp"
#include "gpflow/profile.hpp"
#include "gpflow/shooting.hpp"

namespace gpflow {

/** Scalar observables of one evolution instant. */
struct DiagnosticsRecord {
    double t = 0.0;
    double energy = 0.0;        // int k^2 ds over [s_a, s_b]
    double k0 = 0.0;            // curvature at the s = 0 node
    double k0_exact = 0.0;      // 2 u(0) / (3t)^{1/3}
    std::optional<double> closure_error;
    std::optional<double> area;
    double support_width = 0.0; // measure of {s : |k| > threshold}
};

double energy_from_curvature(std::span<const double> k, double ds);
double energy(const AngleProfile& prof);

double k0_exact(double t, double u0);
/** (measured k at the s = 0 node, exact scaling value). */
std::pair<double, double> curvature_origin(const AngleProfile& prof);

double support_width_from_curvature(std::span<const double> k, double ds, double threshold);
double support_width(const AngleProfile& prof, double threshold = 1e-3);

struct ObserveOptions {
    double support_threshold = 1e-3;
    /** Reconstruct z and record closure error and enclosed area (closed runs). */
    bool closed_curve_diagnostics = false;
};

/** Assembles a full record from a running evolver. */
DiagnosticsRecord observe(const Evolver& ev, const ObserveOptions& opts = {});

struct IntegralScanRow {
    InitialPair pair;
    double integral = 0.0; // theta_plus - theta_minus estimate
    bool admissible = true;
};

struct ScanOptions {
    double x_min = -80.0;
    double x_max = 20.0;
    std::size_t n1 = 0; // 0: derive at working spacing 0.05
    ShootOptions shoot;
};

/** Estimates the full-line curvature integral for each pair by building the
 *  angle on the working grid and reading theta_plus - theta_minus. Rows whose
 *  trajectory fails to decay are flagged and skipped, the scan continues. */
std::vector<IntegralScanRow> scan_curvature_integral(const std::vector<InitialPair>& pairs,
                                                     const ScanOptions& opts = {});

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r2 = 0.0;
};

LinearFit fit_line(std::span<const double> x, std::span<const double> y);

} // namespace gpflow

#endif
