#ifndef OPTOLEVER_CONSTANTS_HPP
#define OPTOLEVER_CONSTANTS_HPP

#include <numbers>

namespace optolever {

// SI physical constants (CODATA 2018). Complex amplitudes follow the
// exp(+i*phase) convention with phase = w*t - k*z - k*r^2/(2R) + (l+m+1)*gouy.
struct Constants
{
    static constexpr double speed_of_light = 299792458.0;        // m/s, exact
    static constexpr double hbar = 1.054571817e-34;              // J*s
    static constexpr double pi = std::numbers::pi;
};

inline constexpr double kSpeedOfLight = Constants::speed_of_light;
inline constexpr double kHbar = Constants::hbar;
inline constexpr double kPi = Constants::pi;

inline constexpr const char* kToolVersion = "1.0.0";

// Hz -> rad/s
constexpr double angular_frequency(double frequency_hz) { return 2.0 * kPi * frequency_hz; }

} // namespace optolever

#endif // OPTOLEVER_CONSTANTS_HPP
