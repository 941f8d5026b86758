#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpflow/errors.hpp"
#include "gpflow/experiments.hpp"
#include "gpflow/profile.hpp"
#include "gpflow/shooting.hpp"

using namespace gpflow;

namespace {

const ProfileSolution& reference_trajectory() {
    static const ProfileSolution prof =
        integrate_profile(reference_pair, -80.0, 20.0, ShootOptions{});
    return prof;
}

const BuildResult& reference_build() {
    static const BuildResult res = [] {
        BuildOptions opts; // defaults are the small reference configuration
        return build_angle_profile(reference_trajectory(), opts);
    }();
    return res;
}

AngleProfile ramp_profile(std::size_t n, double sa, double sb, double th_minus,
                          double th_plus) {
    AngleProfile p;
    p.s_a = sa;
    p.s_b = sb;
    p.n = n;
    p.theta_minus = th_minus;
    p.theta_plus = th_plus;
    p.theta.resize(n + 1);
    for (std::size_t j = 0; j <= n; ++j)
        p.theta[j] = th_minus + (th_plus - th_minus) * static_cast<double>(j) /
                                    static_cast<double>(n);
    p.theta.front() = th_minus;
    p.theta.back() = th_plus;
    return p;
}

} // namespace

TEST_CASE("working grid covers the scaled domain") {
    const WorkingTheta wt = theta_from_profile(reference_trajectory(), 2000);
    CHECK(wt.s_a == doctest::Approx(-115.38).epsilon(1e-4));
    CHECK(wt.s_b == doctest::Approx(28.845).epsilon(1e-4));
    CHECK(wt.ds == doctest::Approx(0.07211).epsilon(1e-4));
    CHECK(wt.theta.back() == 0.0); // normalization theta(s_b) = 0
    // s = 0 lands on node 1600 (counting from 0)
    CHECK(std::fabs(wt.s[1600]) < 1e-9);
}

TEST_CASE("zero trajectory maps to the zero angle") {
    ShootOptions o;
    o.dx = 1e-3;
    const ProfileSolution zero = integrate_profile({0.0, 0.0}, -40.0, 10.0, o);
    const WorkingTheta wt = theta_from_profile(zero, 1000);
    for (double th : wt.theta) CHECK(th == 0.0);
}

TEST_CASE("non-decaying trajectories are rejected") {
    ShootOptions o;
    o.tail_clamp = 0.0; // no decay clamp: the unstable mode regrows
    const ProfileSolution prof = integrate_profile({0.024, -0.018}, -10.0, 20.0, o);
    CHECK_THROWS_AS(theta_from_profile(prof, 1000), NotAdmissible);
}

TEST_CASE("first extrema and the boundary estimate match the reference values") {
    const ThetaMinusEstimate est = reference_build().estimate;
    CHECK(est.first_max.s == doctest::Approx(-115.31).epsilon(1e-4));
    CHECK(std::fabs(est.first_max.theta - (-2.8403)) < 1e-3);
    CHECK(est.first_max.s < est.first_min.s);
    CHECK(std::fabs(est.first_min.s - (-114.80)) < 0.01);
    CHECK(std::fabs(est.first_min.theta - (-3.0191)) < 1e-3);
    CHECK(std::fabs(est.theta_minus - (-2.9297)) < 1e-3);
    // the resulting curvature integral estimate
    CHECK(std::fabs(-est.theta_minus - 2.9294) < 1e-3);
}

TEST_CASE("estimate is the centerline of a shifted oscillation") {
    const double c = 0.37;
    std::vector<double> s(3000), th(3000);
    for (std::size_t j = 0; j < s.size(); ++j) {
        s[j] = -20.0 + 0.01 * static_cast<double>(j);
        th[j] = c + std::sin(s[j]);
    }
    const ThetaMinusEstimate est = estimate_theta_minus(s, th);
    CHECK(std::fabs(est.theta_minus - c) < 3e-3);
}

TEST_CASE("monotone data has no extrema") {
    std::vector<double> s{0, 1, 2, 3, 4}, th{0, 1, 2, 3, 4};
    CHECK_THROWS_AS(estimate_theta_minus(s, th), NoExtrema);
}

TEST_CASE("joint node matches the reference configuration") {
    const JointInfo joint = reference_build().joint;
    CHECK(joint.node == 13); // nodes counted from 1; s_13 ~ -114.51
    CHECK(std::fabs(joint.s_joint - (-114.51)) < 5e-3);
    CHECK(std::fabs(joint.theta_at_joint - (-2.9150)) < 1e-3);
    CHECK(std::fabs(joint.k_at_joint - 0.5479) < 1e-3);
}

TEST_CASE("joint on synthetic data is the first node past the minimum") {
    WorkingTheta wt;
    wt.s_a = 0.0;
    wt.s_b = 4.0;
    wt.ds = 1.0;
    wt.s = {0, 1, 2, 3, 4};
    wt.theta = {0.5, -1.0, 0.2, 0.4, 0.6}; // min at node 1, rising after
    wt.k = {1, 1, 1, 1, 1};
    ThetaMinusEstimate est;
    est.theta_minus = 0.0;
    est.first_min = {1, 1.0, -1.0};
    const JointInfo joint = find_joint(wt, est);
    CHECK(joint.node == 3); // node index 2, 1-based 3
    CHECK(joint.s_joint == 2.0);
}

TEST_CASE("exponential tail meets the joint with first-order contact") {
    BuildResult res = reference_build();
    const JointInfo& joint = res.joint;
    const WorkingTheta& cor = res.corrected;
    const double th_minus = res.estimate.theta_minus;
    const std::size_t j = joint.node - 1;
    CHECK(cor.theta[j] == doctest::Approx(joint.theta_at_joint).epsilon(1e-12));
    // one-sided difference on the tail side approaches k(s_joint)
    const double d = (cor.theta[j] - cor.theta[j - 1]) / cor.ds;
    CHECK(std::fabs(d - joint.k_at_joint) < 0.05 * joint.k_at_joint);
    // the formula itself, evaluated independently at the left end
    const double gap = joint.theta_at_joint - th_minus;
    const double expected =
        th_minus + gap * std::exp(joint.k_at_joint * (cor.s[0] - joint.s_joint) / gap);
    CHECK(cor.theta[0] == doctest::Approx(expected).epsilon(1e-12));
    // monotone approach to theta_minus
    for (std::size_t i = 1; i <= j; ++i) {
        CHECK(cor.theta[i] > cor.theta[i - 1] - 1e-15);
        CHECK(cor.theta[i] >= th_minus);
    }
}

TEST_CASE("assembled grid matches the small reference configuration") {
    const AngleProfile& prof = reference_build().profile;
    CHECK(prof.n == 4096);
    CHECK(prof.s_a == doctest::Approx(-226.14).epsilon(1e-4));
    CHECK(prof.s_b == doctest::Approx(69.23).epsilon(1e-4));
    CHECK(prof.ds() == doctest::Approx(0.07211).epsilon(1e-4));
    CHECK(prof.theta.front() == prof.theta_minus);
    CHECK(prof.theta.back() == prof.theta_plus);
    CHECK(prof.theta_plus == 0.0);
    CHECK_NOTHROW(prof.index_of_s0());
}

TEST_CASE("assembly validates counts") {
    const WorkingTheta wt = theta_from_profile(reference_trajectory(), 2000);
    CHECK_THROWS_AS(assemble_grid(wt, -2.9, 4095, 1536, 560), BadCount);
    CHECK_THROWS_AS(assemble_grid(wt, -2.9, 4096, 1500, 560), BadCount);
}

TEST_CASE("padding a constant stays constant") {
    WorkingTheta wt;
    wt.s_a = 0.0;
    wt.s_b = 2.0;
    wt.ds = 1.0;
    wt.s = {0, 1, 2};
    wt.theta = {0.7, 0.7, 0.7};
    wt.k = {0, 0, 0};
    const AngleProfile prof = assemble_grid(wt, 0.7, 8, 3, 3);
    for (double th : prof.theta) CHECK(th == 0.7);
    CHECK(prof.theta_plus == 0.7);
}

TEST_CASE("filter multiplier endpoints") {
    // xi = 0: untouched; |xi| = N/2: suppressed by exp(-10 * 1.25^25)
    double exponent = 10.0;
    for (int i = 0; i < 25; ++i) exponent *= 1.25;
    CHECK(exponent == doctest::Approx(2646.978).epsilon(1e-6));
    CHECK(std::exp(-exponent) == 0.0); // underflows
    const double direct = 10.0 * std::pow(2.5 * 2048.0 / 4096.0, 25.0);
    CHECK(direct == doctest::Approx(exponent).epsilon(1e-12));
}

TEST_CASE("filter preserves the mean and the endpoints") {
    AngleProfile prof = reference_build().profile; // already filtered once
    double mean_before = 0.0;
    const double slope = prof.ramp_slope();
    for (std::size_t j = 0; j < prof.n; ++j)
        mean_before += prof.theta[j] - slope * (prof.s_at(j) - prof.s_a) - prof.theta_minus;
    AngleProfile twice = prof;
    spectral_filter(twice);
    double mean_after = 0.0;
    for (std::size_t j = 0; j < twice.n; ++j)
        mean_after += twice.theta[j] - slope * (twice.s_at(j) - twice.s_a) - twice.theta_minus;
    CHECK(mean_after / static_cast<double>(prof.n) ==
          doctest::Approx(mean_before / static_cast<double>(prof.n)).epsilon(1e-11));
    CHECK(twice.theta.front() == prof.theta_minus);
    CHECK(twice.theta.back() == prof.theta_plus);
}

TEST_CASE("filtering twice moves the field less than filtering once") {
    const BuildResult res = reference_build();
    // rebuild the unfiltered assembled profile
    AngleProfile once = assemble_grid(res.corrected, res.estimate.theta_minus, 4096, 1536, 560);
    AngleProfile raw = once;
    spectral_filter(once);
    AngleProfile twice = once;
    spectral_filter(twice);
    double d1 = 0.0, d2 = 0.0;
    for (std::size_t j = 0; j <= raw.n; ++j) {
        d1 = std::max(d1, std::fabs(once.theta[j] - raw.theta[j]));
        d2 = std::max(d2, std::fabs(twice.theta[j] - once.theta[j]));
    }
    CHECK(d2 <= d1);
}

TEST_CASE("spectral derivative of a pure ramp is its slope") {
    const AngleProfile ramp = ramp_profile(256, -3.0, 5.0, 0.25, 1.75);
    const std::vector<double> k = theta_s_from_theta(ramp);
    const double slope = ramp.ramp_slope();
    for (double kj : k) CHECK(kj == doctest::Approx(slope).epsilon(1e-12));
}

TEST_CASE("curvature integral is conserved by the discrete derivative") {
    const AngleProfile& prof = reference_build().profile;
    const std::vector<double> k = theta_s_from_theta(prof);
    double acc = 0.5 * (k.front() + k.back());
    for (std::size_t j = 1; j < prof.n; ++j) acc += k[j];
    acc *= prof.ds();
    CHECK(std::fabs(acc - (prof.theta_plus - prof.theta_minus)) < 1e-10);
}

TEST_CASE("derivative recovery against the trajectory curvature") {
    const BuildResult& res = reference_build();
    const std::vector<double> k_spec = theta_s_from_theta(res.profile);
    auto band_error = [&](double s_from) {
        double worst = 0.0;
        for (std::size_t j = 0; j <= res.profile.n; ++j)
            if (res.profile.s_at(j) >= s_from)
                worst = std::max(worst, std::fabs(k_spec[j] - res.k_ode[j]));
        return worst;
    };
    CHECK(band_error(-113.3) < 1e-3);
    CHECK(band_error(-110.6) < 1e-6);
    CHECK(band_error(-108.6) < 1e-8);
}
