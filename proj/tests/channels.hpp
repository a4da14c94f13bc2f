#pragma once

// Reference channels shared by the test suites.

#include <cmath>

#include "biquant/likelihood.hpp"

namespace biquant::testing {

// p0 = p1 = 1/2, phi0 = N(-1, 1), phi1 = N(1, 1).
inline ChannelSpec example1() {
    return {Prior(0.5), DensityModel::normal(-1.0, 1.0), DensityModel::normal(1.0, 1.0)};
}

// p0 = p1 = 1/2, phi0 = N(-1, sqrt 5), phi1 = N(1, 1).
inline ChannelSpec example2() {
    return {Prior(0.5), DensityModel::normal(-1.0, std::sqrt(5.0)),
            DensityModel::normal(1.0, 1.0)};
}

// Three-component mixture against a wide Gaussian.
inline ChannelSpec fig5() {
    return {Prior(0.5),
            DensityModel({{0.0, std::sqrt(0.3), 0.3},
                          {-3.0, std::sqrt(0.2), 0.4},
                          {3.0, std::sqrt(0.1), 0.3}}),
            DensityModel::normal(-2.0, 3.0)};
}

inline ChannelSpec identical() {
    return {Prior(0.5), DensityModel::normal(0.0, 1.0), DensityModel::normal(0.0, 1.0)};
}

} // namespace biquant::testing
