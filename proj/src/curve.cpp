#include "gpflow/curve.hpp"

#include "gpflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gpflow {

namespace {

// 15-point Kronrod rule with embedded 7-point Gauss (QUADPACK dqk15).
constexpr double kronrod_x[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769, 0.741531185599394,
    0.586087235467691, 0.405845151377397, 0.207784955007898, 0.0};
constexpr double kronrod_w[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728};
constexpr double gauss_w[4] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469};

template <class F>
std::pair<double, double> gk15(const F& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    double resk = kronrod_w[7] * f(c);
    double resg = gauss_w[3] * f(c);
    for (int i = 0; i < 7; ++i) {
        const double fv = f(c - h * kronrod_x[i]) + f(c + h * kronrod_x[i]);
        resk += kronrod_w[i] * fv;
        if (i % 2 == 1) resg += gauss_w[i / 2] * fv;
    }
    return {resk * h, std::fabs(resk - resg) * h};
}

template <class F>
double adaptive_gk(const F& f, double a, double b, double tol, int depth = 0) {
    const auto [val, err] = gk15(f, a, b);
    if (err <= tol || depth >= 48) return val;
    const double c = 0.5 * (a + b);
    return adaptive_gk(f, a, c, 0.5 * tol, depth + 1) +
           adaptive_gk(f, c, b, 0.5 * tol, depth + 1);
}

} // namespace

CurveSamples reconstruct_curve(const AngleProfile& prof, double s_star, cplx z_star) {
    prof.validate();
    const std::size_t n = prof.n;
    const double L = prof.length();
    const double ds = prof.ds();

    std::vector<cplx> g(n);
    const cplx e_minus = std::polar(1.0, prof.theta_minus);
    const cplx e_plus = std::polar(1.0, prof.theta_plus);
    const cplx ramp_step = (e_plus - e_minus) / L;
    for (std::size_t j = 0; j < n; ++j) {
        const double sigma = static_cast<double>(j) * ds;
        g[j] = std::polar(1.0, prof.theta[j]) - (e_minus + sigma * ramp_step);
    }

    Fft fft(n);
    std::vector<cplx> gh(n);
    fft.forward(g, gh);
    const cplx mean = gh[0];
    const double two_pi_over_L = 2.0 * M_PI / L;
    gh[0] = 0.0;
    for (std::size_t m = 1; m < n; ++m) {
        const double k = two_pi_over_L * static_cast<double>(Fft::mode_xi(m, n));
        gh[m] /= cplx(0.0, k);
    }
    std::vector<cplx> w(n);
    fft.inverse(gh, w);
    const cplx w0 = w[0];

    CurveSamples curve;
    curve.s_a = prof.s_a;
    curve.s_b = prof.s_b;
    curve.t = prof.t;
    curve.z.resize(n + 1);
    curve.tangent.resize(n + 1);
    for (std::size_t j = 0; j < n; ++j) {
        const double sigma = static_cast<double>(j) * ds;
        const cplx ramp_int = e_minus * sigma + ramp_step * (0.5 * sigma * sigma);
        curve.z[j] = ramp_int + mean * sigma + (w[j] - w0);
        curve.tangent[j] = std::polar(1.0, prof.theta[j]);
    }
    curve.z[n] = e_minus * L + ramp_step * (0.5 * L * L) + mean * L; // w wraps to w0
    curve.tangent[n] = std::polar(1.0, prof.theta[n]);

    const double js = (s_star - prof.s_a) / ds;
    const auto j_star = static_cast<std::size_t>(std::llround(js));
    if (j_star > n || std::fabs(js - std::round(js)) > 1e-6)
        throw NodeMissing("reconstruct_curve: anchor s is not a grid node");
    const cplx shift = z_star - curve.z[j_star];
    for (cplx& zj : curve.z) zj += shift;
    return curve;
}

cplx anchor_z0(double t, InitialPair pair, cplx z_s_at_0) {
    if (!(t > 0)) throw ConfigError("anchor_z0: t must be positive");
    const double scale = -2.0 * std::cbrt(3.0 * t);
    return scale * (cplx(0.0, 1.0) * pair.v0 + pair.u0 * pair.u0) * z_s_at_0;
}

double bump_psi(double x, const ClosureParams& p) {
    if (x <= p.alpha || x >= 1.0) return 0.0;
    return std::exp(-p.beta / ((x - p.alpha) * (1.0 - x)));
}

double bump_primitive(double s, const ClosureParams& p) {
    if (!(p.alpha > 0.0 && p.alpha < 1.0) || !(p.beta > 0.0))
        throw ConfigError("bump_primitive: alpha must lie in (0,1) and beta be positive");
    s = std::clamp(s, 0.0, 1.0);
    if (s <= p.alpha) return 0.0;
    return adaptive_gk([&](double x) { return bump_psi(x, p); }, p.alpha, s, 1e-13);
}

AngleProfile extend_theta_with_loop(const AngleProfile& prof, const ClosureParams& p) {
    prof.validate();
    if (std::fabs(prof.theta.back()) > 1e-12)
        throw BadProfile("extend_theta_with_loop: theta(s_b) must be 0");

    const std::size_t n = prof.n;
    const std::size_t n_new = 4 * n;
    const double rise = 2.0 * M_PI - (prof.theta_plus - prof.theta_minus);

    // cumulative primitive of the bump at tau_j = (j - N)/(3N), j = N..4N;
    // each grid interval is integrated with one Kronrod panel (the integrand
    // is smooth and the panels are ~1e-5 wide, so the panel error is far
    // below roundoff).
    std::vector<double> psi_cum(3 * n + 1);
    psi_cum[0] = 0.0;
    const double inv3n = 1.0 / static_cast<double>(3 * n);
    for (std::size_t i = 0; i < 3 * n; ++i) {
        const double a = static_cast<double>(i) * inv3n;
        const double b = static_cast<double>(i + 1) * inv3n;
        psi_cum[i + 1] = psi_cum[i] + gk15([&](double x) { return bump_psi(x, p); }, a, b).first;
    }
    const double psi_total = psi_cum.back();
    if (!(psi_total > 0.0))
        throw ConfigError("extend_theta_with_loop: degenerate bump (Psi(1) = 0)");

    AngleProfile ext;
    ext.s_a = prof.s_a;
    ext.s_b = prof.s_b + 3.0 * (prof.s_b - prof.s_a);
    ext.n = n_new;
    ext.t = prof.t;
    ext.pair = prof.pair;
    ext.theta_minus = prof.theta_minus;
    ext.theta_plus = prof.theta_minus + 2.0 * M_PI;
    ext.theta.resize(n_new + 1);
    std::copy(prof.theta.begin(), prof.theta.end(), ext.theta.begin());
    const double scale = rise / psi_total;
    for (std::size_t j = 1; j <= 3 * n; ++j) ext.theta[n + j] = scale * psi_cum[j];
    ext.theta[n_new] = ext.theta_plus; // exact 2 pi total turn
    return ext;
}

cplx closure_endpoint(const AngleProfile& prof, const ClosureParams& p,
                      std::vector<ClosureTrial>* log) {
    AngleProfile ext = extend_theta_with_loop(prof, p);
    // align the left tangent with the real axis
    const double rot = ext.theta_minus;
    for (double& th : ext.theta) th -= rot;
    ext.theta_plus -= rot;
    ext.theta_minus = 0.0;
    ext.theta.front() = 0.0;
    CurveSamples curve = reconstruct_curve(ext, ext.s_a, cplx(0.0));
    const cplx endpoint = curve.z.back() - curve.z.front();
    if (log) log->push_back({p.alpha, p.beta, endpoint});
    return endpoint;
}

double closure_beta_for_alpha(const AngleProfile& prof, double alpha, double beta_lo,
                              double beta_hi, double imag_tol_abs, int max_iter,
                              std::vector<ClosureTrial>* log) {
    double f_lo = closure_endpoint(prof, {alpha, beta_lo}, log).imag();
    double f_hi = closure_endpoint(prof, {alpha, beta_hi}, log).imag();
    if (f_lo == 0.0) return beta_lo;
    if (f_hi == 0.0) return beta_hi;
    if ((f_lo > 0) == (f_hi > 0))
        throw BadBracket("close_curve: inner beta bracket [" + std::to_string(beta_lo) + ", " +
                         std::to_string(beta_hi) + "] has no Im sign change at alpha = " +
                         std::to_string(alpha));
    for (int it = 0; it < max_iter; ++it) {
        const double mid = 0.5 * (beta_lo + beta_hi);
        if (mid == beta_lo || mid == beta_hi) return mid;
        const double f_mid = closure_endpoint(prof, {alpha, mid}, log).imag();
        if (std::fabs(f_mid) <= imag_tol_abs) return mid;
        if ((f_mid > 0) == (f_lo > 0)) {
            beta_lo = mid;
            f_lo = f_mid;
        } else {
            beta_hi = mid;
        }
    }
    throw NoConvergence("close_curve: inner beta bisection hit the iteration cap at alpha = " +
                        std::to_string(alpha));
}

ClosureResult close_curve(const AngleProfile& prof, const ClosureOptions& opts) {
    const double closed_length = 4.0 * prof.length();
    const double imag_tol = opts.imag_tol_rel * closed_length;
    const double real_tol = opts.real_tol_rel * closed_length;

    ClosureResult res;
    auto real_at = [&](double alpha) -> std::pair<double, double> {
        const double beta = closure_beta_for_alpha(prof, alpha, opts.beta_lo, opts.beta_hi,
                                                   imag_tol, opts.max_iter, &res.trials);
        return {closure_endpoint(prof, {alpha, beta}, nullptr).real(), beta};
    };

    double a_lo = opts.alpha_lo, a_hi = opts.alpha_hi;
    auto [r_lo, b_lo] = real_at(a_lo);
    auto [r_hi, b_hi] = real_at(a_hi);
    if ((r_lo > 0) == (r_hi > 0))
        throw BadBracket("close_curve: outer alpha bracket [" + std::to_string(a_lo) + ", " +
                         std::to_string(a_hi) + "] has no Re sign change");

    double alpha = a_lo, beta = b_lo, re = r_lo;
    for (int it = 0; it < opts.max_iter; ++it) {
        const double mid = 0.5 * (a_lo + a_hi);
        if (mid == a_lo || mid == a_hi) break;
        auto [r_mid, b_mid] = real_at(mid);
        alpha = mid;
        beta = b_mid;
        re = r_mid;
        if (std::fabs(r_mid) <= real_tol) break;
        if ((r_mid > 0) == (r_lo > 0)) {
            a_lo = mid;
            r_lo = r_mid;
        } else {
            a_hi = mid;
        }
    }
    if (std::fabs(re) > real_tol)
        throw NoConvergence("close_curve: outer alpha bisection did not reach tolerance");

    res.params = {alpha, beta};
    res.closed = extend_theta_with_loop(prof, res.params);
    res.residual = closure_endpoint(prof, res.params, nullptr);
    return res;
}

double enclosed_area(const CurveSamples& curve) {
    const std::size_t n = curve.n();
    const double ds = curve.ds();
    double acc = 0.0;
    for (std::size_t j = 0; j <= n; ++j) {
        const double w = (j == 0 || j == n) ? 0.5 : 1.0;
        const double x = curve.z[j].real(), y = curve.z[j].imag();
        acc += w * (x * curve.tangent[j].imag() - y * curve.tangent[j].real());
    }
    return 0.5 * acc * ds;
}

cplx closure_gap(const CurveSamples& curve) { return curve.z.back() - curve.z.front(); }

PointTracker::PointTracker(const AngleProfile& initial, double s0, cplx z0)
    : s0_(s0), z_(z0) {
    const double js = (s0 - initial.s_a) / initial.ds();
    const auto j = static_cast<std::size_t>(std::llround(js));
    if (j > initial.n || std::fabs(js - std::round(js)) > 1e-6)
        throw NodeMissing("PointTracker: s0 is not a grid node");
    theta_ = initial.theta[j];
    samples_.push_back({initial.t, theta_, z_});
}

PointTracker::Rhs PointTracker::field_rhs(const SpectralState& state,
                                          std::span<const cplx> modes) const {
    const std::size_t n = state.n;
    cplx d1 = 0.0, d2 = 0.0, d3 = 0.0;
    const double two_pi_over_L = 2.0 * M_PI / state.L;
    for (std::size_t m = 0; m < n; ++m) {
        const double k = two_pi_over_L * static_cast<double>(Fft::mode_xi(m, n));
        const cplx ik(0.0, k);
        const cplx base = modes[m] * phase_[m];
        d1 += ik * base;
        d2 += ik * ik * base;
        d3 += ik * ik * ik * base;
    }
    const double slope = (state.theta_plus - state.theta_minus) / state.L;
    Rhs r;
    r.theta_s = d1.real() + slope;
    r.theta_ss = d2.real();
    const double theta_sss = d3.real();
    r.theta_t = -theta_sss - 0.5 * r.theta_s * r.theta_s * r.theta_s;
    return r;
}

void PointTracker::on_step(const SpectralState& state, double dt, std::span<const cplx> stage_a,
                           std::span<const cplx> stage_b, std::span<const cplx> stage_c) {
    if (!phase_ready_) {
        phase_.resize(state.n);
        const double frac = (s0_ - state.s_a) / state.L;
        for (std::size_t m = 0; m < state.n; ++m) {
            const double xi = static_cast<double>(Fft::mode_xi(m, state.n));
            phase_[m] = std::polar(1.0, 2.0 * M_PI * xi * frac);
        }
        phase_ready_ = true;
    }

    auto z_rate = [](const Rhs& r, double theta) {
        return -(cplx(0.0, r.theta_ss) + 0.5 * r.theta_s * r.theta_s) * std::polar(1.0, theta);
    };

    const Rhs f1 = field_rhs(state, state.modes);
    const cplx g1 = z_rate(f1, theta_);
    const Rhs f2 = field_rhs(state, stage_a);
    const cplx g2 = z_rate(f2, theta_ + 0.5 * dt * f1.theta_t);
    const Rhs f3 = field_rhs(state, stage_b);
    const cplx g3 = z_rate(f3, theta_ + 0.5 * dt * f2.theta_t);
    const Rhs f4 = field_rhs(state, stage_c);
    const cplx g4 = z_rate(f4, theta_ + dt * f3.theta_t);

    theta_ += dt / 6.0 * (f1.theta_t + 2.0 * f2.theta_t + 2.0 * f3.theta_t + f4.theta_t);
    z_ += dt / 6.0 * (g1 + 2.0 * g2 + 2.0 * g3 + g4);
    samples_.push_back({state.t + dt, theta_, z_});
}

} // namespace gpflow
