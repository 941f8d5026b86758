#include "gpflow/evolver.hpp"

#include "gpflow/errors.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <string>

namespace gpflow {

void EvolutionConfig::validate(double t_start) const {
    if (dt == 0.0) throw ConfigError("EvolutionConfig: dt must be nonzero");
    if (!(t_end > 0.0)) throw ConfigError("EvolutionConfig: t_end must be positive");
    if (t_end != t_start && (t_end - t_start) * dt < 0.0)
        throw ConfigError("EvolutionConfig: sign(dt) must match sign(t_end - t_start)");
    if (observe_every == 0) throw ConfigError("EvolutionConfig: observer cadence must be >= 1");
}

SpectralState make_spectral_state(const AngleProfile& prof) {
    prof.validate();
    SpectralState st;
    st.t = prof.t;
    st.s_a = prof.s_a;
    st.L = prof.length();
    st.theta_minus = prof.theta_minus;
    st.theta_plus = prof.theta_plus;
    st.n = prof.n;
    st.pair = prof.pair;
    const double slope = prof.ramp_slope();
    const double ds = prof.ds();
    std::vector<cplx> field(prof.n);
    for (std::size_t j = 0; j < prof.n; ++j)
        field[j] = prof.theta[j] - slope * (static_cast<double>(j) * ds) - prof.theta_minus;
    st.modes.resize(prof.n);
    Fft fft(prof.n);
    fft.forward(field, st.modes);
    return st;
}

AngleProfile to_angle_profile(const SpectralState& state) {
    Fft fft(state.n);
    std::vector<cplx> field(state.n);
    fft.inverse(state.modes, field);
    AngleProfile prof;
    prof.s_a = state.s_a;
    prof.s_b = state.s_a + state.L;
    prof.n = state.n;
    prof.theta_minus = state.theta_minus;
    prof.theta_plus = state.theta_plus;
    prof.t = state.t;
    prof.pair = state.pair;
    const double slope = (state.theta_plus - state.theta_minus) / state.L;
    const double ds = state.L / static_cast<double>(state.n);
    prof.theta.resize(state.n + 1);
    for (std::size_t j = 0; j < state.n; ++j)
        prof.theta[j] =
            field[j].real() + slope * (static_cast<double>(j) * ds) + state.theta_minus;
    prof.theta[0] = state.theta_minus;
    prof.theta[state.n] = state.theta_plus;
    return prof;
}

Evolver::Evolver(const AngleProfile& initial)
    : state_(make_spectral_state(initial)), fft_(initial.n) {
    for (const cplx& m : state_.modes) initial_peak_ = std::max(initial_peak_, std::abs(m));
    const std::size_t n = state_.n;
    w1_.resize(n); w2_.resize(n);
    ka_.resize(n); kb_.resize(n); kc_.resize(n); kd_.resize(n);
    ya_.resize(n); yb_.resize(n); yc_.resize(n);
}

Evolver::Evolver(SpectralState state) : state_(std::move(state)), fft_(state_.n) {
    for (const cplx& m : state_.modes) initial_peak_ = std::max(initial_peak_, std::abs(m));
    const std::size_t n = state_.n;
    w1_.resize(n); w2_.resize(n);
    ka_.resize(n); kb_.resize(n); kc_.resize(n); kd_.resize(n);
    ya_.resize(n); yb_.resize(n); yc_.resize(n);
}

void Evolver::prepare_multipliers(double dt) const {
    if (dt == cached_dt_ && !e_full_.empty()) return;
    const std::size_t n = state_.n;
    e_full_.resize(n);
    e_half_.resize(n);
    const double two_pi_over_L = 2.0 * M_PI / state_.L;
    for (std::size_t m = 0; m < n; ++m) {
        const double k = two_pi_over_L * static_cast<double>(Fft::mode_xi(m, n));
        // -dt (i k)^3 = i dt k^3
        const double phase = dt * k * k * k;
        e_full_[m] = std::polar(1.0, phase);
        e_half_[m] = std::polar(1.0, 0.5 * phase);
    }
    cached_dt_ = dt;
}

void Evolver::nonlinear(std::span<const cplx> modes_in, std::span<cplx> out) const {
    const std::size_t n = state_.n;
    const double two_pi_over_L = 2.0 * M_PI / state_.L;
    for (std::size_t m = 0; m < n; ++m) {
        const double k = two_pi_over_L * static_cast<double>(Fft::mode_xi(m, n));
        w1_[m] = modes_in[m] * cplx(0.0, k);
    }
    fft_.inverse(w1_, w2_);
    const double slope = (state_.theta_plus - state_.theta_minus) / state_.L;
    for (std::size_t j = 0; j < n; ++j) {
        const cplx g = w2_[j] + slope;
        w2_[j] = g * g * g;
    }
    fft_.forward(w2_, out);
    for (std::size_t m = 0; m < n; ++m) out[m] *= -0.5;
}

void Evolver::project_real_and_pin() {
    fft_.inverse(state_.modes, w1_);
    pre_pin_endpoint_ = std::abs(w1_[0]);
    for (std::size_t j = 0; j < state_.n; ++j) w1_[j] = cplx(w1_[j].real(), 0.0);
    w1_[0] = 0.0; // s_a and s_b coincide on the periodic grid
    fft_.forward(w1_, state_.modes);
}

void Evolver::step(double dt, const StepHooks& hooks) {
    if (dt == 0.0) throw ConfigError("Evolver::step: dt must be nonzero");
    prepare_multipliers(dt);
    const std::size_t n = state_.n;
    auto& th = state_.modes;

    if (hooks.zero_nonlinear) {
        std::fill(ka_.begin(), ka_.end(), cplx(0.0));
        std::fill(kb_.begin(), kb_.end(), cplx(0.0));
        std::fill(kc_.begin(), kc_.end(), cplx(0.0));
        std::fill(kd_.begin(), kd_.end(), cplx(0.0));
        for (std::size_t m = 0; m < n; ++m) {
            ya_[m] = e_half_[m] * th[m];
            yb_[m] = e_half_[m] * th[m];
            yc_[m] = e_full_[m] * th[m];
        }
    } else {
        nonlinear(th, ka_);
        for (std::size_t m = 0; m < n; ++m) ya_[m] = e_half_[m] * (th[m] + 0.5 * dt * ka_[m]);
        nonlinear(ya_, kb_);
        for (std::size_t m = 0; m < n; ++m) yb_[m] = e_half_[m] * th[m] + 0.5 * dt * kb_[m];
        nonlinear(yb_, kc_);
        for (std::size_t m = 0; m < n; ++m)
            yc_[m] = e_full_[m] * th[m] + dt * e_half_[m] * kc_[m];
        nonlinear(yc_, kd_);
    }

    if (hooks.stages) hooks.stages->on_step(state_, dt, ya_, yb_, yc_);

    for (std::size_t m = 0; m < n; ++m)
        th[m] = e_full_[m] * th[m] +
                dt / 6.0 *
                    (e_full_[m] * ka_[m] + 2.0 * e_half_[m] * (kb_[m] + kc_[m]) + kd_[m]);
    state_.t += dt;
    project_real_and_pin();
}

AngleProfile Evolver::snapshot() const { return to_angle_profile(state_); }

std::vector<double> Evolver::curvature() const {
    const std::size_t n = state_.n;
    const double two_pi_over_L = 2.0 * M_PI / state_.L;
    for (std::size_t m = 0; m < n; ++m) {
        const double k = two_pi_over_L * static_cast<double>(Fft::mode_xi(m, n));
        w1_[m] = state_.modes[m] * cplx(0.0, k);
    }
    fft_.inverse(w1_, w2_);
    const double slope = (state_.theta_plus - state_.theta_minus) / state_.L;
    std::vector<double> k(n + 1);
    for (std::size_t j = 0; j < n; ++j) k[j] = w2_[j].real() + slope;
    k[n] = k[0];
    return k;
}

void nonlinear_rhs(std::span<const cplx> modes, double L, double theta_plus,
                   double theta_minus, std::span<cplx> out) {
    SpectralState st;
    st.n = modes.size();
    st.L = L;
    st.theta_minus = theta_minus;
    st.theta_plus = theta_plus;
    st.modes.assign(modes.begin(), modes.end());
    Evolver ev(std::move(st));
    ev.nonlinear(modes, out);
}

void step_rk4_if(SpectralState& state, double dt, const StepHooks& hooks) {
    Evolver ev(std::move(state));
    ev.step(dt, hooks);
    state = std::move(ev.state());
}

void enforce_real_and_pin(SpectralState& state) {
    Evolver ev(std::move(state));
    ev.project_real_and_pin();
    state = std::move(ev.state());
}

std::vector<std::pair<double, AngleProfile>>
evolve(const AngleProfile& initial, const EvolutionConfig& config,
       const std::function<void(const Evolver&)>& observer) {
    config.validate(initial.t);

    const double t0 = initial.t;
    const long n_total = std::llround((config.t_end - t0) / config.dt);

    // map snapshot times to nearest step indices
    std::multimap<long, double> snap_steps;
    for (double ts : config.snapshot_times) {
        long idx = std::llround((ts - t0) / config.dt);
        idx = std::clamp(idx, 0l, n_total);
        snap_steps.emplace(idx, ts);
    }

    std::vector<std::pair<double, AngleProfile>> snapshots;
    Evolver ev(initial);
    StepHooks hooks;
    hooks.stages = config.stages;

    auto emit_snapshots = [&](long step_idx) {
        auto [lo, hi] = snap_steps.equal_range(step_idx);
        for (auto it = lo; it != hi; ++it)
            snapshots.emplace_back(ev.state().t, ev.snapshot());
    };

    if (observer) observer(ev);
    emit_snapshots(0);

    const double overflow = config.overflow_factor * std::max(ev.initial_peak(), 1e-300);
    for (long i = 1; i <= n_total; ++i) {
        ev.step(config.dt, hooks);
        double peak = 0.0;
        for (const cplx& m : ev.state().modes) peak = std::max(peak, std::abs(m));
        if (peak > overflow)
            throw Instability("evolve: mode magnitude " + std::to_string(peak) +
                                  " exceeded the overflow bound at t = " +
                                  std::to_string(ev.state().t),
                              ev.state().t);
        if (observer &&
            (i % static_cast<long>(config.observe_every) == 0 || i == n_total))
            observer(ev);
        emit_snapshots(i);
    }
    return snapshots;
}

} // namespace gpflow
