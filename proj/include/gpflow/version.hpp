#ifndef GPFLOW_VERSION_HPP
#define GPFLOW_VERSION_HPP

namespace gpflow {

inline constexpr const char* version_string = "0.1.0";

} // namespace gpflow

#endif
