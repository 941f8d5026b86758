#ifndef GPFLOW_CURVE_HPP
#define GPFLOW_CURVE_HPP

#include <complex>
#include <cstddef>
#include <vector>

#include "gpflow/evolver.hpp"
#include "gpflow/profile.hpp"

namespace gpflow {

/** An arc-length parametrized plane curve sampled on the profile grid,
 *  together with its unit tangents exp(i theta). */
struct CurveSamples {
    double s_a = 0.0;
    double s_b = 0.0;
    double t = 1.0;
    std::vector<cplx> z;       // N+1 points
    std::vector<cplx> tangent; // N+1 unit tangents

    std::size_t n() const { return z.empty() ? 0 : z.size() - 1; }
    double ds() const { return (s_b - s_a) / static_cast<double>(n()); }
    double length() const { return s_b - s_a; }
};

/** Integrates z_s = exp(i theta) by spectral antidifferentiation of the
 *  ramp-free part (the linear-in-s mean handled exactly), then translates so
 *  that z(s_star) = z_star; s_star must be a grid node. */
CurveSamples reconstruct_curve(const AngleProfile& prof, double s_star, cplx z_star);

/** Location of the curve point at s = 0: -2 (3t)^{1/3} [i u'(0) + u(0)^2] z_s(0,t). */
cplx anchor_z0(double t, InitialPair pair, cplx z_s_at_0);

/** Parameters of the closing bump: psi = exp[-beta/((x-alpha)(1-x))] on
 *  (alpha, 1), zero elsewhere. */
struct ClosureParams {
    double alpha = 0.1;
    double beta = 5.0;
};

/** The bump itself. */
double bump_psi(double x, const ClosureParams& p);

/** Primitive Psi(s) = int_0^s psi, by adaptive Gauss-Kronrod quadrature to
 *  1e-13 absolute. Zero for s <= alpha, increasing on (alpha, 1). */
double bump_primitive(double s, const ClosureParams& p);

/** Appends the loop angle [2 pi - (theta_plus - theta_minus)] Psi(tau)/Psi(1)
 *  on [s_b, s_b + 3(s_b - s_a)], tau = (s - s_b)/(3(s_b - s_a)). The input
 *  must carry theta(s_b) = 0 (BadProfile otherwise); the result has 4N+1
 *  nodes at unchanged spacing and theta_plus - theta_minus = 2 pi. */
AngleProfile extend_theta_with_loop(const AngleProfile& prof, const ClosureParams& p);

struct ClosureTrial {
    double alpha, beta;
    cplx endpoint; // z(s_b) - z(s_a) with the tangent at s_a aligned to 1
};

struct ClosureOptions {
    double alpha_lo = 0.1, alpha_hi = 0.2;
    double beta_lo = 0.5, beta_hi = 20.0;
    double imag_tol_rel = 1e-11; // inner stop, relative to the closed length
    double real_tol_rel = 1e-10; // outer stop, relative to the closed length
    int max_iter = 200;
};

struct ClosureResult {
    ClosureParams params;
    cplx residual;              // final endpoint gap
    AngleProfile closed;        // extended profile at params
    std::vector<ClosureTrial> trials;
};

/** Endpoint gap of the closed curve for given parameters (the alignment
 *  z_s(s_a) = 1 and anchor z(s_a) = 0 are applied internally). */
cplx closure_endpoint(const AngleProfile& prof, const ClosureParams& p,
                      std::vector<ClosureTrial>* log = nullptr);

/** Inner bisection: beta in [beta_lo, beta_hi] with Im z(s_b) = 0 at fixed
 *  alpha. Stops when |Im| <= imag_tol_abs or the doubles are exhausted. */
double closure_beta_for_alpha(const AngleProfile& prof, double alpha, double beta_lo,
                              double beta_hi, double imag_tol_abs, int max_iter = 200,
                              std::vector<ClosureTrial>* log = nullptr);

/** Nested bisection on (alpha, beta) driving z(s_b) to zero. */
ClosureResult close_curve(const AngleProfile& prof, const ClosureOptions& opts = {});

/** 1/2 closed-contour integral of (x dy - y dx), trapezoid rule with the
 *  analytic tangents as derivatives. Positive for counterclockwise curves. */
double enclosed_area(const CurveSamples& curve);

/** z(last) - z(first); ~0 for a closed curve. */
cplx closure_gap(const CurveSamples& curve);

/** Advances theta(s0, t) by theta_t = -theta_sss - theta_s^3/2 and
 *  z(s0, t) by z_t = -z_sss + (3/2) conj(z_s) z_ss^2 (with z_s = exp(i theta))
 *  on the stepper's own RK4 stage cadence. */
class PointTracker : public StageObserver {
public:
    struct Sample {
        double t;
        double theta;
        cplx z;
    };

    PointTracker(const AngleProfile& initial, double s0, cplx z0);
    void on_step(const SpectralState& state, double dt, std::span<const cplx> stage_a,
                 std::span<const cplx> stage_b, std::span<const cplx> stage_c) override;

    const std::vector<Sample>& samples() const { return samples_; }

private:
    struct Rhs {
        double theta_t;
        // z_t = -[i theta_ss + theta_s^2/2] exp(i theta) given the tracked theta
        double theta_s, theta_ss;
    };
    Rhs field_rhs(const SpectralState& state, std::span<const cplx> modes) const;

    double s0_;
    double theta_;
    cplx z_;
    std::vector<Sample> samples_;
    std::vector<cplx> phase_; // exp(2 pi i xi (s0 - s_a)/L) per mode slot
    bool phase_ready_ = false;
};

} // namespace gpflow

#endif
