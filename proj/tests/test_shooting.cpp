#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "gpflow/errors.hpp"
#include "gpflow/shooting.hpp"

using namespace gpflow;

namespace {

// Airy function values, frozen from 30-digit evaluations of Ai.
constexpr double airy_0 = 0.35502805388781723926;
constexpr double airy_prime_0 = -0.25881940379280679841;
constexpr double airy_5 = 1.0834442813607441735e-4;

ShootOptions fast_opts() {
    ShootOptions o;
    o.dx = 1e-4; // plenty for classification tests
    return o;
}

} // namespace

TEST_CASE("zero data stays identically zero") {
    ShootOptions o;
    o.dx = 1e-3;
    const ProfileSolution prof = integrate_profile({0.0, 0.0}, -20.0, 10.0, o);
    for (std::size_t i = 0; i < prof.size(); ++i) {
        CHECK(prof.u[i] == 0.0);
        CHECK(prof.gamma[i] == 0.0);
    }
    CHECK(prof.gamma[prof.index_of_zero()] == 0.0);
}

TEST_CASE("grid covers the requested range with uniform stored spacing") {
    ShootOptions o;
    o.dx = 1e-3;
    o.store_dx = 1e-2;
    const ProfileSolution prof = integrate_profile({0.1, 0.0}, -2.0, 1.0, o);
    CHECK(prof.x.front() == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(prof.x.back() == doctest::Approx(1.0).epsilon(1e-12));
    for (std::size_t i = 1; i < prof.size(); ++i)
        CHECK(prof.x[i] - prof.x[i - 1] == doctest::Approx(prof.step).epsilon(1e-12));
    CHECK(prof.u[prof.index_of_zero()] == 0.1);
}

TEST_CASE("admissible trajectory decays and is clamped to zero on the right") {
    // reference pair; |u| < 1e-12 for x >= 9.204 (identically zero past the clamp)
    const ProfileSolution prof = integrate_profile({0.72, 1.1601860809647328}, -80.0, 20.0);
    CHECK(prof.x.back() == doctest::Approx(20.0).epsilon(1e-12));
    CHECK(prof.clamped());
    CHECK(prof.clamp_x < 9.204);
    for (std::size_t i = 0; i < prof.size(); ++i)
        if (prof.x[i] >= 9.204) CHECK(std::fabs(prof.u[i]) < 1e-12);
}

TEST_CASE("blow-up side aborts the forward sweep early") {
    const ProfileSolution prof = integrate_profile({0.024, -0.018}, 0.0, 20.0);
    CHECK(prof.x.back() < 20.0);
    CHECK(prof.u.back() < 0.0); // committed to the negative well
}

TEST_CASE("classification matches the published bracket") {
    CHECK(classify_blowup({0.024, -0.017}, 20.0).sign == BlowupSign::PlusInfinity);
    CHECK(classify_blowup({0.024, -0.018}, 20.0).sign == BlowupSign::MinusInfinity);
    const BlowupVerdict zero = classify_blowup({0.0, 0.0}, 20.0);
    CHECK(zero.sign == BlowupSign::Undecided);
    CHECK(!zero.x_escape.has_value());
    CHECK(classify_blowup({0.024, -0.018}, 20.0).x_escape.has_value());
}

TEST_CASE("bisection recovers the admissible datum at u0 = 0.024") {
    const double v0 = find_admissible_v0(0.024, -0.018, -0.017, 1e-10, 20.0);
    CHECK(std::fabs(v0 + 0.0174881944) < 1e-9);
}

TEST_CASE("bisection recovers the admissible datum at u0 = 0.72") {
    const double v0 = find_admissible_v0(0.72, 1.16, 1.1602, 1e-12, 20.0);
    CHECK(std::fabs(v0 - 1.1601860809647328) < 1e-12);
}

TEST_CASE("bisection through the origin returns zero") {
    const double v0 = find_admissible_v0(0.0, -1.0, 1.0, 1e-10, 20.0, fast_opts());
    CHECK(std::fabs(v0) <= 1e-10);
}

TEST_CASE("bad brackets are rejected") {
    CHECK_THROWS_AS(find_admissible_v0(0.024, -0.017, -0.016, 1e-10, 20.0, fast_opts()),
                    BadBracket);
    // both endpoints undecided: the zero solution bracket collapsed to nothing
    CHECK_THROWS_AS(find_admissible_v0(0.0, -1e-300, 1e-300, 1e-310, 20.0, fast_opts()),
                    BadBracket);
}

TEST_CASE("verdicts flip sign exactly once along the published v0 window") {
    const double lo = -0.018, hi = -0.017;
    int flips = 0;
    BlowupSign prev = BlowupSign::Undecided;
    for (int i = 0; i <= 10; ++i) {
        const double v0 = lo + (hi - lo) * i / 10.0;
        const BlowupSign s = classify_blowup({0.024, v0}, 20.0, fast_opts()).sign;
        REQUIRE(s != BlowupSign::Undecided);
        if (i > 0 && s != prev) ++flips;
        prev = s;
    }
    CHECK(flips == 1);
}

TEST_CASE("oddness: negating the pair negates the trajectory exactly") {
    ShootOptions o;
    o.dx = 1e-4;
    const ProfileSolution a = integrate_profile({0.3, -0.2}, -10.0, 4.0, o);
    const ProfileSolution b = integrate_profile({-0.3, 0.2}, -10.0, 4.0, o);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a.u[i] == -b.u[i]);
        CHECK(a.v[i] == -b.v[i]);
        CHECK(a.gamma[i] == -b.gamma[i]);
    }
}

TEST_CASE("gamma is the running integral of u") {
    ShootOptions o;
    o.dx = 1e-4;
    o.store_dx = 1e-3;
    const ProfileSolution prof = integrate_profile({0.5, 0.3}, -5.0, 2.0, o);
    // centered differences of gamma reproduce u to O(step^2)
    double worst = 0.0;
    for (std::size_t i = 1; i + 1 < prof.size(); ++i) {
        const double du = (prof.gamma[i + 1] - prof.gamma[i - 1]) / (2.0 * prof.step);
        worst = std::max(worst, std::fabs(du - prof.u[i]));
    }
    CHECK(worst < 5.0 * prof.step * prof.step);
}

TEST_CASE("RK4 order on the linear Airy equation") {
    // With the cubic dropped, (u0, v0) = (Ai(0), Ai'(0)) follows the decaying
    // Airy function; halving dx shrinks the terminal error ~16x.
    auto terminal_error = [](double dx) {
        ShootOptions o;
        o.dx = dx;
        o.store_dx = dx;
        o.include_cubic = false;
        o.tail_clamp = 0.0;
        const ProfileSolution prof = integrate_profile({airy_0, airy_prime_0}, 0.0, 5.0, o);
        return std::fabs(prof.u.back() - airy_5);
    };
    const double e1 = terminal_error(0.02);
    const double e2 = terminal_error(0.01);
    CHECK(e1 / e2 > 12.0);
    CHECK(e1 / e2 < 20.0);
}

TEST_CASE("non-finite states are reported, not propagated") {
    ShootOptions o;
    o.dx = 2.0; // absurd step: RK4 overflows through the cubic term
    o.escape_threshold = 1e300;
    o.capture_threshold = 1e300;
    CHECK_THROWS_AS(integrate_profile({5.0, 5.0}, 0.0, 400.0, o), NonFinite);
}

TEST_CASE("continuation traces the admissible curve through the origin") {
    ShootOptions o;
    o.dx = 1e-4;
    const std::vector<double> samples{0.0, 0.012, 0.024};
    const auto pairs = trace_admissible_curve(samples, -0.1, 0.1, 1e-10, 20.0, o);
    REQUIRE(pairs.size() == 3);
    CHECK(std::fabs(pairs[0].v0) <= 1e-9);
    CHECK(pairs[2].v0 == doctest::Approx(-0.01748819).epsilon(1e-4));
}

TEST_CASE("tracing the mirrored sample lands on the mirrored datum") {
    // oddness of the equation: if u solves, so does -u
    ShootOptions o;
    o.dx = 1e-4;
    const auto pairs = trace_admissible_curve({-0.024}, -0.1, 0.1, 1e-10, 20.0, o);
    REQUIRE(pairs.size() == 1);
    CHECK(std::fabs(pairs[0].v0 - 0.0174881944) < 1e-7);
}

TEST_CASE("raster verdicts are antisymmetric") {
    ShootOptions o;
    o.dx = 1e-3;
    const auto cells = classify_region(-0.5, 0.5, 10, -0.8, 0.8, 10, 12.0, o);
    REQUIRE(cells.size() == 100);
    auto find_cell = [&](double u0, double v0) -> const RasterCell& {
        for (const auto& c : cells)
            if (std::fabs(c.pair.u0 - u0) < 1e-12 && std::fabs(c.pair.v0 - v0) < 1e-12)
                return c;
        REQUIRE(false);
        return cells.front();
    };
    for (const auto& c : cells) {
        const RasterCell& m = find_cell(-c.pair.u0, -c.pair.v0);
        if (c.verdict.sign == BlowupSign::PlusInfinity)
            CHECK(m.verdict.sign == BlowupSign::MinusInfinity);
        else if (c.verdict.sign == BlowupSign::MinusInfinity)
            CHECK(m.verdict.sign == BlowupSign::PlusInfinity);
        else
            CHECK(m.verdict.sign == BlowupSign::Undecided);
    }
    CHECK(find_cell(0.5, -0.8).verdict.sign != BlowupSign::Undecided);
}
