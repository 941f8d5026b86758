#include "gpflow/experiments.hpp"

namespace gpflow {

const ExperimentPreset* find_preset(const std::string& name) {
    if (name == preset_small.name) return &preset_small;
    if (name == preset_medium.name) return &preset_medium;
    if (name == preset_large.name) return &preset_large;
    return nullptr;
}

BuildResult build_preset_profile(const ExperimentPreset& preset, InitialPair pair,
                                 const ShootOptions& shoot) {
    const ProfileSolution traj = integrate_profile(pair, preset.x_min, preset.x_max, shoot);
    BuildOptions opts;
    opts.n1 = preset.n1;
    opts.target_n = preset.target_n;
    opts.pad_left = preset.pad_left;
    opts.pad_right = preset.pad_right;
    return build_angle_profile(traj, opts);
}

} // namespace gpflow
