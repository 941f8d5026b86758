#ifndef GPFLOW_IO_HPP
#define GPFLOW_IO_HPP

#include <filesystem>
#include <string>
#include <vector>

#include "gpflow/curve.hpp"
#include "gpflow/diagnostics.hpp"
#include "gpflow/profile.hpp"
#include "gpflow/shooting.hpp"

namespace gpflow::io {

/** Shortest round-trip decimal form (17 significant digits). */
std::string format_double(double v);

/** Angle-profile artifact: one '#'-prefixed JSON header line, then a CSV
 *  body `s,theta`. The same format carries evolution snapshots (t in the
 *  header). */
void write_profile(const std::filesystem::path& path, const AngleProfile& prof);
AngleProfile read_profile(const std::filesystem::path& path);

/** Curve file: '#'-prefixed JSON header (t, anchor, gap, area), body
 *  `s,re_z,im_z`. */
void write_curve(const std::filesystem::path& path, const CurveSamples& curve);

/** `x,u,v,gamma` rows of a trajectory. */
void write_trajectory(const std::filesystem::path& path, const ProfileSolution& prof);

/** `u0,v0` rows. */
void write_pairs(const std::filesystem::path& path, const std::vector<InitialPair>& pairs);
std::vector<InitialPair> read_pairs(const std::filesystem::path& path);

/** `u0,v0,verdict` rows; verdict is 1 / -1 / 0, and 9 for cells whose
 *  integration went non-finite. */
void write_raster(const std::filesystem::path& path, const std::vector<RasterCell>& cells);

/** `u0,v0,integral` rows (nan for non-admissible rows). */
void write_scan(const std::filesystem::path& path, const std::vector<IntegralScanRow>& rows);

/** `t,energy,k0,k0_exact,closure_error,area,support_width`; optional fields
 *  left empty when absent. */
void write_diagnostics(const std::filesystem::path& path,
                       const std::vector<DiagnosticsRecord>& records);

/** `t,theta,re_z,im_z` rows of a tracked point. */
void write_track(const std::filesystem::path& path,
                 const std::vector<PointTracker::Sample>& samples);

} // namespace gpflow::io

#endif
