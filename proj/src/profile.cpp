#include "gpflow/profile.hpp"

#include "gpflow/errors.hpp"
#include "gpflow/fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace gpflow {

namespace {

constexpr double cbrt3 = 1.4422495703074083; // 3^(1/3)

bool is_power_of_two(std::size_t n) { return n != 0 && (n & (n - 1)) == 0; }

/** Four-point (cubic Lagrange) interpolation on a uniform grid. */
class CubicInterp {
public:
    CubicInterp(std::span<const double> y, double x0, double h) : y_(y), x0_(x0), h_(h) {}

    double operator()(double x) const {
        const auto n = static_cast<long>(y_.size());
        double xi = (x - x0_) / h_;
        long i = static_cast<long>(std::floor(xi));
        i = std::clamp(i, 1l, n - 3);
        const double t = xi - static_cast<double>(i);
        const double ym1 = y_[i - 1], y0 = y_[i], y1 = y_[i + 1], y2 = y_[i + 2];
        return ym1 * (-t * (t - 1) * (t - 2) / 6) + y0 * ((t * t - 1) * (t - 2) / 2) +
               y1 * (-t * (t + 1) * (t - 2) / 2) + y2 * (t * (t * t - 1) / 6);
    }

private:
    std::span<const double> y_;
    double x0_, h_;
};

} // namespace

std::size_t AngleProfile::index_of_s0() const {
    const double j = -s_a / ds();
    const auto j0 = static_cast<std::size_t>(std::llround(j));
    if (j0 > n || std::fabs(s_at(j0)) > 1e-9 * std::max(1.0, std::fabs(s_a)))
        throw NodeMissing("AngleProfile: s = 0 is not a grid node");
    return j0;
}

void AngleProfile::validate() const {
    if (!is_power_of_two(n)) throw BadCount("AngleProfile: N must be a power of two");
    if (theta.size() != n + 1) throw BadProfile("AngleProfile: sample count is not N + 1");
    if (theta.front() != theta_minus || theta.back() != theta_plus)
        throw BadProfile("AngleProfile: endpoint values do not match theta_minus/theta_plus");
    if (!(s_b > s_a)) throw BadProfile("AngleProfile: empty s-domain");
}

WorkingTheta theta_from_profile(const ProfileSolution& prof, std::size_t n1) {
    if (prof.size() < 4) throw BadProfile("theta_from_profile: trajectory too short");
    if (n1 < 8) throw ConfigError("theta_from_profile: working grid too coarse");
    if (std::fabs(prof.u.back()) > 1e-9)
        throw NotAdmissible("theta_from_profile: |u| = " + std::to_string(prof.u.back()) +
                            " at the right end; the trajectory did not decay");

    const double x_min = prof.x.front(), x_max = prof.x.back();
    WorkingTheta wt;
    wt.pair = prof.pair;
    wt.s_a = cbrt3 * x_min;
    wt.s_b = cbrt3 * x_max;
    wt.ds = (wt.s_b - wt.s_a) / static_cast<double>(n1);

    // s = 0 has to be a working-grid node
    {
        const double j0 = -wt.s_a / wt.ds;
        if (std::fabs(j0 - std::round(j0)) > 1e-6)
            throw ConfigError("theta_from_profile: s = 0 does not land on the working grid");
    }

    const CubicInterp gamma_at(prof.gamma, x_min, prof.step);
    const CubicInterp u_at(prof.u, x_min, prof.step);
    const double gamma_end = prof.gamma.back();

    wt.s.resize(n1 + 1);
    wt.theta.resize(n1 + 1);
    wt.k.resize(n1 + 1);
    for (std::size_t j = 0; j <= n1; ++j) {
        const double s = wt.s_a + static_cast<double>(j) * wt.ds;
        const double x = s / cbrt3;
        wt.s[j] = s;
        wt.theta[j] = 2.0 * (gamma_at(x) - gamma_end); // theta(s_b) = 0
        wt.k[j] = 2.0 / cbrt3 * u_at(x);
    }
    wt.theta.back() = 0.0;
    return wt;
}

ThetaMinusEstimate estimate_theta_minus(std::span<const double> s,
                                        std::span<const double> theta) {
    if (s.size() != theta.size() || s.size() < 3)
        throw ConfigError("estimate_theta_minus: malformed grid");
    ThetaMinusEstimate est;
    bool have_max = false, have_min = false;
    for (std::size_t j = 1; j + 1 < theta.size() && !(have_max && have_min); ++j) {
        if (!have_max && theta[j] > theta[j - 1] && theta[j] > theta[j + 1]) {
            est.first_max = {j, s[j], theta[j]};
            have_max = true;
        }
        if (!have_min && theta[j] < theta[j - 1] && theta[j] < theta[j + 1]) {
            est.first_min = {j, s[j], theta[j]};
            have_min = true;
        }
    }
    if (!have_max || !have_min)
        throw NoExtrema("estimate_theta_minus: no interior extrema (domain too short?)");
    est.theta_minus = 0.5 * (est.first_max.theta + est.first_min.theta);
    return est;
}

JointInfo find_joint(const WorkingTheta& wt, const ThetaMinusEstimate& est) {
    for (std::size_t j = est.first_min.index + 1; j < wt.size(); ++j) {
        if (wt.theta[j] > est.theta_minus && wt.k[j] > 0.0)
            return {wt.s[j], wt.theta[j], wt.k[j], j + 1};
    }
    throw NoJoint("find_joint: no node after the first minimum with theta > theta_minus "
                  "and k > 0");
}

void append_exponential_tail(WorkingTheta& wt, const JointInfo& joint, double theta_minus) {
    const double gap = joint.theta_at_joint - theta_minus;
    if (!(gap > 0.0) || !(joint.k_at_joint > 0.0))
        throw BadProfile("append_exponential_tail: joint does not sit above theta_minus "
                         "with positive curvature");
    const double rate = joint.k_at_joint / gap;
    for (std::size_t j = 0; j < wt.size() && wt.s[j] <= joint.s_joint; ++j) {
        const double e = std::exp(rate * (wt.s[j] - joint.s_joint));
        wt.theta[j] = theta_minus + gap * e;
        wt.k[j] = joint.k_at_joint * e;
    }
}

AngleProfile assemble_grid(const WorkingTheta& wt, double theta_minus, std::size_t target_n,
                           std::size_t pad_left, std::size_t pad_right) {
    if (!is_power_of_two(target_n))
        throw BadCount("assemble_grid: N = " + std::to_string(target_n) +
                       " is not a power of two");
    const std::size_t n1 = wt.size() - 1;
    if (pad_left + pad_right + n1 != target_n)
        throw BadCount("assemble_grid: pads (" + std::to_string(pad_left) + ", " +
                       std::to_string(pad_right) + ") + " + std::to_string(n1) +
                       " working intervals != N = " + std::to_string(target_n));

    AngleProfile prof;
    prof.n = target_n;
    prof.pair = wt.pair;
    prof.t = 1.0;
    prof.theta_minus = theta_minus;
    prof.theta_plus = wt.theta.back();
    prof.s_a = wt.s_a - static_cast<double>(pad_left) * wt.ds;
    prof.s_b = wt.s_b + static_cast<double>(pad_right) * wt.ds;
    prof.theta.assign(target_n + 1, 0.0);
    for (std::size_t j = 0; j < pad_left; ++j) prof.theta[j] = theta_minus;
    for (std::size_t j = 0; j <= n1; ++j) prof.theta[pad_left + j] = wt.theta[j];
    for (std::size_t j = pad_left + n1 + 1; j <= target_n; ++j) prof.theta[j] = prof.theta_plus;
    prof.theta.front() = prof.theta_minus;
    prof.theta.back() = prof.theta_plus;
    return prof;
}

namespace {

/** Periodization theta - ramp - theta_minus on the first N nodes. */
std::vector<cplx> periodize(const AngleProfile& p) {
    std::vector<cplx> out(p.n);
    const double slope = (p.theta_plus - p.theta_minus) / p.length();
    const double ds = p.ds();
    for (std::size_t j = 0; j < p.n; ++j)
        out[j] = p.theta[j] - slope * (static_cast<double>(j) * ds) - p.theta_minus;
    return out;
}

} // namespace

void spectral_filter(AngleProfile& prof) {
    prof.validate();
    const std::size_t n = prof.n;
    Fft fft(n);
    std::vector<cplx> field = periodize(prof);
    std::vector<cplx> modes(n);
    fft.forward(field, modes);
    for (std::size_t m = 0; m < n; ++m) {
        const double xi = std::fabs(static_cast<double>(Fft::mode_xi(m, n)));
        modes[m] *= std::exp(-10.0 * std::pow(2.5 * xi / static_cast<double>(n), 25.0));
    }
    fft.inverse(modes, field);
    const double slope = prof.ramp_slope();
    const double ds = prof.ds();
    for (std::size_t j = 0; j < n; ++j)
        prof.theta[j] = field[j].real() + slope * (static_cast<double>(j) * ds) + prof.theta_minus;
    prof.theta[0] = prof.theta_minus;  // re-pin
    prof.theta[n] = prof.theta_plus;
}

std::vector<double> theta_s_from_theta(const AngleProfile& prof) {
    prof.validate();
    const std::size_t n = prof.n;
    Fft fft(n);
    std::vector<cplx> field = periodize(prof);
    std::vector<cplx> modes(n);
    fft.forward(field, modes);
    const double two_pi_over_L = 2.0 * M_PI / prof.length();
    for (std::size_t m = 0; m < n; ++m) {
        const double k = two_pi_over_L * static_cast<double>(Fft::mode_xi(m, n));
        modes[m] *= cplx(0.0, k);
    }
    fft.inverse(modes, field);
    const double slope = prof.ramp_slope();
    std::vector<double> k(n + 1);
    for (std::size_t j = 0; j < n; ++j) k[j] = field[j].real() + slope;
    k[n] = k[0]; // the periodization repeats at s_b
    return k;
}

BuildResult build_angle_profile(const ProfileSolution& prof, const BuildOptions& opts) {
    BuildResult res;
    std::size_t n1 = opts.n1;
    if (n1 == 0) {
        const double span = prof.x.back() - prof.x.front();
        n1 = static_cast<std::size_t>(std::llround(span / 0.05));
    }
    res.raw = theta_from_profile(prof, n1);
    res.estimate = estimate_theta_minus(res.raw.s, res.raw.theta);
    res.joint = find_joint(res.raw, res.estimate);
    res.corrected = res.raw;
    append_exponential_tail(res.corrected, res.joint, res.estimate.theta_minus);
    res.profile = assemble_grid(res.corrected, res.estimate.theta_minus, opts.target_n,
                                opts.pad_left, opts.pad_right);
    spectral_filter(res.profile);

    res.k_ode.assign(opts.target_n + 1, 0.0);
    for (std::size_t j = 0; j < res.corrected.size(); ++j)
        res.k_ode[opts.pad_left + j] = res.corrected.k[j];
    return res;
}

} // namespace gpflow
