#pragma once

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace cohesive {

/// Volume of the unit ball: omega_1 = 2, omega_2 = pi, omega_3 = 4pi/3.
inline double unit_ball_volume(int dim) {
    switch (dim) {
    case 1: return 2.0;
    case 2: return std::numbers::pi;
    case 3: return 4.0 * std::numbers::pi / 3.0;
    default: throw std::invalid_argument("unit_ball_volume: dim must be 1, 2 or 3");
    }
}

struct RootNotFound : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidSpec : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct NonConverged : std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace cohesive
