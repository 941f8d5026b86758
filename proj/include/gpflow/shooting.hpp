#ifndef GPFLOW_SHOOTING_HPP
#define GPFLOW_SHOOTING_HPP

#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

namespace gpflow {

/** A point (u(0), u_x(0)) in the shooting plane. */
struct InitialPair {
    double u0 = 0.0;
    double v0 = 0.0;
    bool finite() const;
};

/** Sampled (x, u, v, gamma) trajectory of the profile system
 *      gamma_x = u,   u_x = v,   v_x = x u - 2 u^3,
 *  integrated from x = 0 outward in both directions with classical RK4
 *  and stored on a uniform grid of spacing `step`.
 */
struct ProfileSolution {
    std::vector<double> x;
    std::vector<double> u;
    std::vector<double> v;
    std::vector<double> gamma;
    double step = 0.0; // spacing of the stored samples
    InitialPair pair;
    /** First x at which the forward tail was zeroed, NaN when no clamp fired. */
    double clamp_x = std::numeric_limits<double>::quiet_NaN();

    std::size_t size() const { return x.size(); }
    std::size_t index_of_zero() const; // index of the x = 0 node
    bool clamped() const { return clamp_x == clamp_x; }
};

enum class BlowupSign { PlusInfinity, MinusInfinity, Undecided };

struct BlowupVerdict {
    BlowupSign sign = BlowupSign::Undecided;
    /** First x at which the trajectory committed to a sign, absent if undecided. */
    std::optional<double> x_escape;
};

struct ShootOptions {
    double dx = 1e-5;         // RK4 step
    double store_dx = 1e-3;   // stored sample spacing (rounded to a multiple of dx)
    /** Hard escape bound on |u|. */
    double escape_threshold = 10.0;
    /** The cubic term saturates runaway growth into a sign-locked oscillation
     *  around +-sqrt(x/2) long before |u| reaches the escape bound, so a
     *  trajectory is also classified once |u| > capture_threshold with
     *  v^2/2 - x u^2/2 + u^4/2 < 0: it is then trapped in one well of the
     *  (deepening) double-well potential and its sign is irreversible. */
    double capture_threshold = 2.0;
    /** Forward decay clamp. Double-precision roundoff re-seeds the growing
     *  mode, so a decayed solution eventually turns around; once x >
     *  tail_guard and both |u| and |v| have fallen below this level, u and v
     *  are zeroed from the subsequent minimum of |u| onward (gamma stays
     *  frozen). Set to 0 to disable. */
    double tail_clamp = 3e-7;
    double tail_guard = 2.0;
    /** Test hook: integrate u_xx = x u without the cubic term. */
    bool include_cubic = true;
    int max_bisection_iter = 200;
};

/** Integrates the profile system over [x_min, x_max] (two sweeps from 0).
 *  A sweep aborts early when the blow-up rule fires; the returned grid
 *  covers what was integrated. Throws NonFinite if a state component becomes
 *  NaN/Inf first. */
ProfileSolution integrate_profile(InitialPair pair, double x_min, double x_max,
                                  const ShootOptions& opts = {});

/** Forward sweep only; PlusInfinity/MinusInfinity when the blow-up rule
 *  fires before x_max, Undecided otherwise. */
BlowupVerdict classify_blowup(InitialPair pair, double x_max, const ShootOptions& opts = {});

/** Bisection for the admissible u_x(0) at fixed u(0). The endpoints must
 *  classify to opposite decided signs (BadBracket otherwise). Returns the
 *  bracket midpoint once the bracket width is <= tol or the doubles are
 *  exhausted. */
double find_admissible_v0(double u0, double v_lo, double v_hi, double tol, double x_max,
                          const ShootOptions& opts = {});

/** Continuation tracing of the admissible curve: each sample reuses the
 *  previous solution as bracket seed (half-width from the previous step's
 *  v0 movement, doubled up to 20 times until the endpoint verdicts
 *  differ). */
std::vector<InitialPair> trace_admissible_curve(const std::vector<double>& u0_samples,
                                                double seed_lo, double seed_hi, double tol,
                                                double x_max, const ShootOptions& opts = {});

struct RasterCell {
    InitialPair pair;
    BlowupVerdict verdict;
    bool non_finite = false; // NonFinite recorded as Undecided-with-flag
};

/** Per-cell verdicts over a rectangle of initial data. Cells are independent
 *  pure computations. */
std::vector<RasterCell> classify_region(double u0_min, double u0_max, std::size_t nu,
                                        double v0_min, double v0_max, std::size_t nv,
                                        double x_max, const ShootOptions& opts = {});

} // namespace gpflow

#endif
