#ifndef GPFLOW_PROFILE_HPP
#define GPFLOW_PROFILE_HPP

#include <cstddef>
#include <span>
#include <vector>

#include "gpflow/shooting.hpp"

namespace gpflow {

/** Angle field sampled on a uniform grid of N+1 nodes (N a power of two),
 *  with the boundary values held exactly at the endpoints. The associated
 *  periodization theta - ramp - theta_minus vanishes at both ends. */
struct AngleProfile {
    double s_a = 0.0;
    double s_b = 0.0;
    std::size_t n = 0;                // N; theta has N+1 samples
    double theta_minus = 0.0;
    double theta_plus = 0.0;
    double t = 1.0;
    std::vector<double> theta;
    InitialPair pair;                 // provenance

    double length() const { return s_b - s_a; }
    double ds() const { return length() / static_cast<double>(n); }
    double ramp_slope() const { return (theta_plus - theta_minus) / length(); }
    double s_at(std::size_t j) const { return s_a + static_cast<double>(j) * ds(); }
    /** Node index with s = 0 (NodeMissing if absent). */
    std::size_t index_of_s0() const;
    void validate() const; // throws BadProfile / BadCount on broken invariants
};

/** Angle and curvature on the working grid laid over [3^{1/3} x_min, 3^{1/3} x_max]:
 *  s = 3^{1/3} x, theta(s) = 2 gamma(s 3^{-1/3}) normalized to theta(s_b) = 0,
 *  k(s) = 2 3^{-1/3} u(s 3^{-1/3}). */
struct WorkingTheta {
    double s_a = 0.0;
    double s_b = 0.0;
    double ds = 0.0;
    std::vector<double> s;
    std::vector<double> theta;
    std::vector<double> k;
    InitialPair pair;

    std::size_t size() const { return s.size(); }
};

struct ExtremumInfo {
    std::size_t index = 0;
    double s = 0.0;
    double theta = 0.0;
};

struct ThetaMinusEstimate {
    double theta_minus = 0.0;
    ExtremumInfo first_max;
    ExtremumInfo first_min;
};

struct JointInfo {
    double s_joint = 0.0;
    double theta_at_joint = 0.0;
    double k_at_joint = 0.0;
    /** Node number on the working grid, counting the first node as 1. */
    std::size_t node = 0;
};

/** Samples the trajectory onto a working grid of n1+1 nodes (cubic
 *  interpolation of gamma and u). Requires the forward decay to have
 *  reached |u| <= 1e-9 at the right end (NotAdmissible otherwise) and
 *  s = 0 to land on a grid node. */
WorkingTheta theta_from_profile(const ProfileSolution& prof, std::size_t n1);

/** theta(-inf) estimated as the mean of the first interior local maximum and
 *  minimum of theta (scanning from the left). */
ThetaMinusEstimate estimate_theta_minus(std::span<const double> s, std::span<const double> theta);

/** First node after the first-minimum node with theta > theta_minus and k > 0. */
JointInfo find_joint(const WorkingTheta& wt, const ThetaMinusEstimate& est);

/** Replaces theta (and k) for s <= s_joint by the exponential that meets the
 *  joint with first-order contact and tends to theta_minus. */
void append_exponential_tail(WorkingTheta& wt, const JointInfo& joint, double theta_minus);

/** Extends the working grid by pad_left constant nodes theta_minus on the
 *  left and pad_right constant nodes theta_plus = 0 on the right, keeping
 *  the spacing; pad_left + n1 + pad_right must equal target_n (a power of
 *  two). */
AngleProfile assemble_grid(const WorkingTheta& wt, double theta_minus, std::size_t target_n,
                           std::size_t pad_left, std::size_t pad_right);

/** Smooth spectral filter exp[-10 (2.5 |xi| / N)^25] applied to the
 *  periodization, endpoints re-pinned afterwards. */
void spectral_filter(AngleProfile& prof);

/** Curvature k = theta_s on the N+1 nodes: spectral derivative of the
 *  periodization plus the constant ramp slope. */
std::vector<double> theta_s_from_theta(const AngleProfile& prof);

struct BuildOptions {
    std::size_t n1 = 0;      // 0: derive from the x-range at spacing 0.05
    std::size_t target_n = 4096;
    std::size_t pad_left = 1536;
    std::size_t pad_right = 560;
};

struct BuildResult {
    AngleProfile profile;        // final, filtered
    WorkingTheta raw;            // working-grid samples before the correction
    WorkingTheta corrected;      // after the exponential tail
    ThetaMinusEstimate estimate;
    JointInfo joint;
    std::vector<double> k_ode;   // trajectory curvature carried to the padded grid (0 in pads)
};

/** Full construction pipeline: working grid, theta_minus, joint, tail,
 *  padding, filter. */
BuildResult build_angle_profile(const ProfileSolution& prof, const BuildOptions& opts);

} // namespace gpflow

#endif
