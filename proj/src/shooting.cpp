#include "gpflow/shooting.hpp"

#include "gpflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

namespace gpflow {

namespace {

struct State {
    double g, u, v;
};

struct Deriv {
    double g, u, v;
};

inline Deriv rhs(double x, const State& s, bool cubic) {
    const double nl = cubic ? -2.0 * s.u * s.u * s.u : 0.0;
    return {s.u, s.v, x * s.u + nl};
}

inline State advance(const State& s, double h, const Deriv& d) {
    return {s.g + h * d.g, s.u + h * d.u, s.v + h * d.v};
}

inline bool finite_state(const State& s) {
    return std::isfinite(s.g) && std::isfinite(s.u) && std::isfinite(s.v);
}

/** One classical RK4 step from x with signed step h. */
inline State rk4_step(double x, const State& s, double h, bool cubic) {
    const Deriv k1 = rhs(x, s, cubic);
    const Deriv k2 = rhs(x + h / 2, advance(s, h / 2, k1), cubic);
    const Deriv k3 = rhs(x + h / 2, advance(s, h / 2, k2), cubic);
    const Deriv k4 = rhs(x + h, advance(s, h, k3), cubic);
    return {s.g + h / 6 * (k1.g + 2 * k2.g + 2 * k3.g + k4.g),
            s.u + h / 6 * (k1.u + 2 * k2.u + 2 * k3.u + k4.u),
            s.v + h / 6 * (k1.v + 2 * k2.v + 2 * k3.v + k4.v)};
}

/** Blow-up rule for the forward sweep; sign != 0 once committed. */
inline int committed_sign(double x, const State& s, const ShootOptions& o) {
    const double au = std::fabs(s.u);
    if (au > o.escape_threshold) return s.u > 0 ? 1 : -1;
    if (au > o.capture_threshold) {
        const double u2 = s.u * s.u;
        const double well = 0.5 * s.v * s.v - 0.5 * x * u2 + 0.5 * u2 * u2;
        if (well < 0.0) return s.u > 0 ? 1 : -1;
    }
    return 0;
}

std::string pair_str(InitialPair p) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "(u0=%.17g, v0=%.17g)", p.u0, p.v0);
    return buf;
}

struct SweepResult {
    std::vector<double> u, v, gamma; // one entry per stored node, starting after x=0
    bool aborted = false;
    double x_stop = 0.0;   // where the blow-up rule fired (if aborted)
    double clamp_x = std::numeric_limits<double>::quiet_NaN();
};

/** Integrates from x=0 toward x_end (either sign), storing every `stride`
 *  steps. Escape checks and the decay clamp apply to the forward direction
 *  only; the backward (oscillatory) direction carries NonFinite guards. */
SweepResult sweep(InitialPair pair, double x_end, long stride, const ShootOptions& o) {
    const bool forward = x_end > 0;
    const double h = forward ? o.dx : -o.dx;
    const long nsteps = std::llround(std::fabs(x_end) / o.dx);
    SweepResult out;
    out.u.reserve(nsteps / stride + 1);
    State s{0.0, pair.u0, pair.v0};
    bool clamped = false;
    // Once |u| has decayed below tail_clamp, roundoff re-seeds the growing
    // mode sooner or later; the sweep cuts u and v to zero at the minimum of
    // |u| (where the re-grown contamination first outweighs the decay).
    bool armed = false;
    double prev_au = 0.0;
    for (long i = 0; i < nsteps; ++i) {
        const double x = static_cast<double>(i) * h;
        if (!clamped) {
            s = rk4_step(x, s, h, o.include_cubic);
            if (!finite_state(s))
                throw NonFinite("integrate_profile: non-finite state at x=" +
                                std::to_string(x + h) + " for " + pair_str(pair) +
                                " (dx too large?)");
            if (forward) {
                const double xn = x + h;
                if (int sg = committed_sign(xn, s, o); sg != 0) {
                    // keep the committed sample, then stop the sweep
                    if ((i + 1) % stride == 0) {
                        out.gamma.push_back(s.g);
                        out.u.push_back(s.u);
                        out.v.push_back(s.v);
                    }
                    out.aborted = true;
                    out.x_stop = xn;
                    return out;
                }
                if (o.tail_clamp > 0 && xn > o.tail_guard) {
                    const double au = std::fabs(s.u);
                    if (armed && au > prev_au) {
                        clamped = true;
                        out.clamp_x = xn;
                        s.u = 0.0;
                        s.v = 0.0;
                    } else if (au < o.tail_clamp && std::fabs(s.v) < o.tail_clamp) {
                        // |v| small too: a genuine decay tail, not a zero crossing
                        armed = true;
                    }
                    prev_au = au;
                }
            }
        }
        if ((i + 1) % stride == 0) {
            out.gamma.push_back(s.g);
            out.u.push_back(s.u);
            out.v.push_back(s.v);
        }
    }
    return out;
}

} // namespace

bool InitialPair::finite() const { return std::isfinite(u0) && std::isfinite(v0); }

std::size_t ProfileSolution::index_of_zero() const {
    for (std::size_t i = 0; i < x.size(); ++i)
        if (x[i] == 0.0) return i;
    throw NodeMissing("ProfileSolution: x = 0 is not a stored node");
}

ProfileSolution integrate_profile(InitialPair pair, double x_min, double x_max,
                                  const ShootOptions& opts) {
    if (!pair.finite()) throw ConfigError("integrate_profile: non-finite initial pair");
    if (!(opts.dx > 0)) throw ConfigError("integrate_profile: dx must be positive");
    if (!(x_min <= 0.0 && 0.0 <= x_max))
        throw ConfigError("integrate_profile: range must contain x = 0");

    const long stride = std::max<long>(1, std::llround(opts.store_dx / opts.dx));
    const double hs = stride * opts.dx;

    SweepResult fwd = x_max > 0 ? sweep(pair, x_max, stride, opts) : SweepResult{};
    SweepResult bwd = x_min < 0 ? sweep(pair, x_min, stride, opts) : SweepResult{};

    ProfileSolution prof;
    prof.pair = pair;
    prof.step = hs;
    prof.clamp_x = fwd.clamp_x;
    const std::size_t nb = bwd.u.size(), nf = fwd.u.size();
    prof.x.resize(nb + 1 + nf);
    prof.u.resize(nb + 1 + nf);
    prof.v.resize(nb + 1 + nf);
    prof.gamma.resize(nb + 1 + nf);
    for (std::size_t k = 0; k < nb; ++k) {
        const std::size_t i = nb - 1 - k; // backward samples stored outward
        prof.x[i] = -static_cast<double>(k + 1) * hs;
        prof.u[i] = bwd.u[k];
        prof.v[i] = bwd.v[k];
        prof.gamma[i] = bwd.gamma[k];
    }
    prof.x[nb] = 0.0;
    prof.u[nb] = pair.u0;
    prof.v[nb] = pair.v0;
    prof.gamma[nb] = 0.0;
    for (std::size_t k = 0; k < nf; ++k) {
        prof.x[nb + 1 + k] = static_cast<double>(k + 1) * hs;
        prof.u[nb + 1 + k] = fwd.u[k];
        prof.v[nb + 1 + k] = fwd.v[k];
        prof.gamma[nb + 1 + k] = fwd.gamma[k];
    }
    return prof;
}

BlowupVerdict classify_blowup(InitialPair pair, double x_max, const ShootOptions& opts) {
    if (!pair.finite()) throw ConfigError("classify_blowup: non-finite initial pair");
    if (!(x_max > 0)) throw ConfigError("classify_blowup: x_max must be positive");
    const long nsteps = std::llround(x_max / opts.dx);
    State s{0.0, pair.u0, pair.v0};
    for (long i = 0; i < nsteps; ++i) {
        const double x = static_cast<double>(i) * opts.dx;
        s = rk4_step(x, s, opts.dx, opts.include_cubic);
        if (!finite_state(s))
            throw NonFinite("classify_blowup: non-finite state at x=" +
                            std::to_string(x + opts.dx) + " for " + pair_str(pair));
        const double xn = x + opts.dx;
        if (int sg = committed_sign(xn, s, opts); sg != 0)
            return {sg > 0 ? BlowupSign::PlusInfinity : BlowupSign::MinusInfinity, xn};
    }
    return {BlowupSign::Undecided, std::nullopt};
}

double find_admissible_v0(double u0, double v_lo, double v_hi, double tol, double x_max,
                          const ShootOptions& opts) {
    if (v_lo > v_hi) std::swap(v_lo, v_hi);
    const BlowupVerdict lo = classify_blowup({u0, v_lo}, x_max, opts);
    const BlowupVerdict hi = classify_blowup({u0, v_hi}, x_max, opts);
    if (lo.sign == BlowupSign::Undecided || hi.sign == BlowupSign::Undecided || lo.sign == hi.sign)
        throw BadBracket("find_admissible_v0: endpoints of [" + std::to_string(v_lo) + ", " +
                         std::to_string(v_hi) + "] do not classify to opposite signs at u0=" +
                         std::to_string(u0));
    const BlowupSign sign_lo = lo.sign;
    for (int it = 0; it < opts.max_bisection_iter; ++it) {
        if (v_hi - v_lo <= tol) return 0.5 * (v_lo + v_hi);
        const double mid = 0.5 * (v_lo + v_hi);
        if (mid == v_lo || mid == v_hi) return mid; // doubles exhausted
        const BlowupVerdict vm = classify_blowup({u0, mid}, x_max, opts);
        // a trajectory that never commits is indistinguishable from the
        // admissible one at this x_max
        if (vm.sign == BlowupSign::Undecided) return mid;
        if (vm.sign == sign_lo)
            v_lo = mid;
        else
            v_hi = mid;
    }
    throw NoConvergence("find_admissible_v0: iteration cap reached at u0=" + std::to_string(u0));
}

namespace {

/** Expands [c-w, c+w] geometrically until the verdicts differ. */
std::pair<double, double> expand_bracket(double u0, double center, double w, double x_max,
                                         const ShootOptions& opts) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        const double lo = center - w, hi = center + w;
        const BlowupVerdict a = classify_blowup({u0, lo}, x_max, opts);
        const BlowupVerdict b = classify_blowup({u0, hi}, x_max, opts);
        if (a.sign != BlowupSign::Undecided && b.sign != BlowupSign::Undecided && a.sign != b.sign)
            return {lo, hi};
        w *= 2.0;
    }
    throw BadBracket("trace_admissible_curve: no sign change found around v0=" +
                     std::to_string(center) + " at u0=" + std::to_string(u0));
}

} // namespace

std::vector<InitialPair> trace_admissible_curve(const std::vector<double>& u0_samples,
                                                double seed_lo, double seed_hi, double tol,
                                                double x_max, const ShootOptions& opts) {
    std::vector<InitialPair> out;
    out.reserve(u0_samples.size());
    bool have_prev = false;
    double prev_v0 = 0.0;
    double last_delta = 0.0; // v0 movement of the previous continuation step
    for (double u0 : u0_samples) {
        double lo, hi;
        try {
            if (!have_prev) {
                std::tie(lo, hi) =
                    expand_bracket(u0, 0.5 * (seed_lo + seed_hi), 0.5 * (seed_hi - seed_lo),
                                   x_max, opts);
            } else {
                const double w0 =
                    std::max({10.0 * std::max(tol, 1e-15), 1.5 * last_delta, 1e-6});
                std::tie(lo, hi) = expand_bracket(u0, prev_v0, w0, x_max, opts);
            }
            const double v0 = find_admissible_v0(u0, lo, hi, tol, x_max, opts);
            out.push_back({u0, v0});
            if (have_prev) last_delta = std::fabs(v0 - prev_v0);
            prev_v0 = v0;
            have_prev = true;
        } catch (const BadBracket& e) {
            throw BadBracket("trace_admissible_curve: failed at u0=" + std::to_string(u0) +
                             ": " + e.what());
        }
    }
    return out;
}

std::vector<RasterCell> classify_region(double u0_min, double u0_max, std::size_t nu,
                                        double v0_min, double v0_max, std::size_t nv,
                                        double x_max, const ShootOptions& opts) {
    if (nu == 0 || nv == 0) throw ConfigError("classify_region: grid counts must be positive");
    std::vector<RasterCell> cells;
    cells.reserve(nu * nv);
    for (std::size_t i = 0; i < nu; ++i) {
        const double u0 = nu == 1 ? u0_min : u0_min + (u0_max - u0_min) * i / double(nu - 1);
        for (std::size_t j = 0; j < nv; ++j) {
            const double v0 = nv == 1 ? v0_min : v0_min + (v0_max - v0_min) * j / double(nv - 1);
            RasterCell cell;
            cell.pair = {u0, v0};
            try {
                cell.verdict = classify_blowup(cell.pair, x_max, opts);
            } catch (const NonFinite&) {
                cell.verdict = {BlowupSign::Undecided, std::nullopt};
                cell.non_finite = true;
            }
            cells.push_back(cell);
        }
    }
    return cells;
}

} // namespace gpflow
