#ifndef OPTOLEVER_SPECTRUM_HPP
#define OPTOLEVER_SPECTRUM_HPP

#include <cmath>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "optolever/errors.hpp"

namespace optolever {

enum class GridScale
{
    log,
    linear,
};

/// Ascending frequency grid in Hz, endpoints included.
inline std::vector<double> frequency_grid(double f_min, double f_max, int n_points, GridScale scale)
{
    if (!(std::isfinite(f_min) && std::isfinite(f_max) && f_min > 0.0 && f_min < f_max))
        throw InvalidArgument("frequency grid requires 0 < f_min < f_max");
    if (n_points < 2)
        throw InvalidArgument("frequency grid requires at least 2 points");
    std::vector<double> f(n_points);
    for (int i = 0; i < n_points; ++i) {
        const double t = static_cast<double>(i) / (n_points - 1);
        f[i] = scale == GridScale::log ? f_min * std::pow(f_max / f_min, t) : f_min + t * (f_max - f_min);
    }
    f.front() = f_min;
    f.back() = f_max;
    return f;
}

/// One-sided noise PSD per channel on a frequency grid. Units are rad^2/Hz
/// for the rotation channel and m^2/Hz for the translation channel.
struct NoiseSpectrum
{
    std::vector<double> frequencies;  // Hz
    std::vector<double> total;
    std::vector<double> sensing;
    std::vector<double> backaction;
    std::vector<double> sql;
    std::string config_fingerprint;
    // Largest relative gap between the closed-form total and the quadrature
    // pipeline total over the grid.
    double max_pipeline_discrepancy = 0.0;
};

/// 64-bit FNV-1a, hex encoded. Stable across platforms, unlike std::hash.
inline std::string fnv1a_hex(std::string_view text)
{
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (const unsigned char c : text) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    static constexpr char digits[] = "0123456789abcdef";
    std::string out(16, '0');
    for (int i = 15; i >= 0; --i, h >>= 4)
        out[i] = digits[h & 0xf];
    return out;
}

} // namespace optolever

#endif // OPTOLEVER_SPECTRUM_HPP
