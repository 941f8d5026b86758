#ifndef GPFLOW_EXPERIMENTS_HPP
#define GPFLOW_EXPERIMENTS_HPP

#include <cstddef>
#include <string>

#include "gpflow/profile.hpp"
#include "gpflow/shooting.hpp"

namespace gpflow {

/** Bundled reference run configurations. All share the admissible pair
 *  (0.72, 1.1601860809647328), working spacing 0.05 in x, and the decay
 *  cutoff on the right; they differ in how far the oscillatory left side is
 *  integrated and in the padded grid size. */
struct ExperimentPreset {
    const char* name;
    double x_min;
    double x_max;
    std::size_t n1;
    std::size_t target_n;
    std::size_t pad_left;
    std::size_t pad_right;
};

inline constexpr InitialPair reference_pair{0.72, 1.1601860809647328};

inline constexpr ExperimentPreset preset_small{"small", -80.0, 20.0, 2000, 4096, 1536, 560};
inline constexpr ExperimentPreset preset_medium{"medium", -400.0, 20.0, 8400, 16384, 4096, 3888};
inline constexpr ExperimentPreset preset_large{"large", -800.0, 20.0, 16400, 32768, 8193, 8175};

const ExperimentPreset* find_preset(const std::string& name);

/** Integrates the reference pair over the preset range and builds the
 *  filtered angle profile. */
BuildResult build_preset_profile(const ExperimentPreset& preset,
                                 InitialPair pair = reference_pair,
                                 const ShootOptions& shoot = {});

} // namespace gpflow

#endif
