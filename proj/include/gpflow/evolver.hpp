#ifndef GPFLOW_EVOLVER_HPP
#define GPFLOW_EVOLVER_HPP

#include <complex>
#include <functional>
#include <memory>
#include <span>
#include <utility>
#include <vector>

#include "gpflow/fft.hpp"
#include "gpflow/profile.hpp"

namespace gpflow {

/** Fourier coefficients of the periodized angle plus domain metadata.
 *  theta_plus - theta_minus is stored metadata and never mutated by
 *  stepping, so the curvature integral is conserved exactly. */
struct SpectralState {
    std::vector<cplx> modes; // size N, FFTW slot order
    double t = 1.0;
    double s_a = 0.0;
    double L = 0.0;
    double theta_minus = 0.0;
    double theta_plus = 0.0;
    std::size_t n = 0;
    InitialPair pair;
};

SpectralState make_spectral_state(const AngleProfile& prof);
AngleProfile to_angle_profile(const SpectralState& state);

/** Receives the four RK4 stage spectra of every time step; the stages
 *  approximate the solution at t, t+dt/2, t+dt/2 and t+dt. Used to advance
 *  point-tracking ODEs on the same cadence as the field. */
class StageObserver {
public:
    virtual ~StageObserver() = default;
    virtual void on_step(const SpectralState& state, double dt,
                         std::span<const cplx> stage_a, std::span<const cplx> stage_b,
                         std::span<const cplx> stage_c) = 0;
};

struct StepHooks {
    bool zero_nonlinear = false;   // test hook: drop the nonlinear stage outputs
    StageObserver* stages = nullptr;
};

struct EvolutionConfig {
    double dt = -5e-5;             // negative for backward evolution
    double t_end = 1e-2;
    std::vector<double> snapshot_times;
    std::size_t observe_every = 20;
    double overflow_factor = 1e6;  // Instability above this multiple of the initial peak
    StageObserver* stages = nullptr;

    void validate(double t_start = 1.0) const;
};

/** Integrating-factor RK4 stepper for the periodized angle equation
 *
 *      theta~_t = -theta~_sss - (theta~_s + (theta+ - theta-)/L)^3 / 2
 *
 *  in Fourier space, with the dispersive multiplier absorbed exactly by
 *  exp[+-dt (2 pi i xi / L)^3]. Every step ends with a projection onto real
 *  fields and re-pinning of the boundary node. */
class Evolver {
public:
    explicit Evolver(const AngleProfile& initial);
    explicit Evolver(SpectralState state);

    const SpectralState& state() const { return state_; }
    SpectralState& state() { return state_; }

    void step(double dt, const StepHooks& hooks = {});

    /** De-periodized angle at the current time. */
    AngleProfile snapshot() const;
    /** Curvature on the N+1 nodes at the current time. */
    std::vector<double> curvature() const;
    /** Boundary-node value |theta~(s_a)| recorded just before the last pin. */
    double pre_pin_endpoint() const { return pre_pin_endpoint_; }

    /** -1/2 [ (theta~_s + ramp)^3 ]^ of an arbitrary spectrum. */
    void nonlinear(std::span<const cplx> modes_in, std::span<cplx> out) const;
    /** Projection onto real fields plus boundary pinning. */
    void project_real_and_pin();

    double initial_peak() const { return initial_peak_; }

private:
    void prepare_multipliers(double dt) const;

    SpectralState state_;
    Fft fft_;
    double initial_peak_ = 0.0;
    double pre_pin_endpoint_ = 0.0;
    mutable double cached_dt_ = 0.0;
    mutable std::vector<cplx> e_full_, e_half_;
    // scratch
    mutable std::vector<cplx> w1_, w2_;
    std::vector<cplx> ka_, kb_, kc_, kd_, ya_, yb_, yc_;
};

/** Convenience wrappers mirroring the stepper surface (tests, small sizes). */
void nonlinear_rhs(std::span<const cplx> modes, double L, double theta_plus,
                   double theta_minus, std::span<cplx> out);
void step_rk4_if(SpectralState& state, double dt, const StepHooks& hooks = {});
void enforce_real_and_pin(SpectralState& state);

/** Runs the stepper from the profile's time to t_end, emitting snapshots at
 *  the nearest step times and invoking the observer every
 *  `observe_every` steps (plus the first and last). */
std::vector<std::pair<double, AngleProfile>>
evolve(const AngleProfile& initial, const EvolutionConfig& config,
       const std::function<void(const Evolver&)>& observer = {});

} // namespace gpflow

#endif
