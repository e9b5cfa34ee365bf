#ifndef OPTOLEVER_TESTS_ORACLES_HPP
#define OPTOLEVER_TESTS_ORACLES_HPP

// Test-only reference computations. Nothing here calls into the library's
// mode or noise code; only SI constants are shared.

#include <cmath>
#include <complex>

#include "optolever/constants.hpp"

namespace oracle {

inline constexpr double kPi = 3.14159265358979323846;

struct Beam
{
    double wavelength;
    double waist;
    double k() const { return 2.0 * kPi / wavelength; }
    double z0() const { return 0.5 * k() * waist * waist; }
};

// Fundamental mode in its own frame, exp(+i phase) convention, time factor dropped.
inline std::complex<double> fundamental_field(const Beam& b, double x, double y, double z)
{
    const double z0 = b.z0();
    const double w = b.waist * std::sqrt(1.0 + (z / z0) * (z / z0));
    const double inv_r = z / (z * z + z0 * z0);
    const double r2 = x * x + y * y;
    const double phase = -b.k() * z - b.k() * r2 * inv_r / 2.0 + std::atan(z / z0);
    return std::sqrt(2.0 / (kPi * w * w)) * std::exp(-r2 / (w * w)) * std::polar(1.0, phase);
}

// u_10 and u_00 at the waist plane, written out explicitly (H_1(s) = 2s).
inline double waist_u00(const Beam& b, double x, double y)
{
    return std::sqrt(2.0 / (kPi * b.waist * b.waist)) * std::exp(-(x * x + y * y) / (b.waist * b.waist));
}

inline double waist_u10(const Beam& b, double x, double y) { return waist_u00(b, x, y) * 2.0 * x / b.waist; }

// Coefficient ratio c10/c00 of a fundamental beam displaced by dx and tilted
// by dtheta (rotated frame z = cos z' + sin x', x = -sin z' + cos x' + dx),
// projected onto the waist-plane modes by direct 2D quadrature.
inline std::complex<double> shifted_beam_f10(const Beam& b, double dx, double dtheta, int n = 401,
                                             double half_width_in_waists = 8.0)
{
    const double half = half_width_in_waists * b.waist;
    const double h = 2.0 * half / (n - 1);
    const double c = std::cos(dtheta);
    const double s = std::sin(dtheta);
    std::complex<double> c00{}, c10{};
    for (int i = 0; i < n; ++i) {
        const double x = -half + i * h;
        const double zp = -s * (x - dx);
        const double xp = c * (x - dx);
        for (int j = 0; j < n; ++j) {
            const double y = -half + j * h;
            const std::complex<double> field = fundamental_field(b, xp, y, zp);
            c00 += waist_u00(b, x, y) * field;
            c10 += waist_u10(b, x, y) * field;
        }
    }
    return c10 / c00;
}

// Straight transcriptions of the closed forms, for frozen-value checks.
inline double kappa0(double power, double wavelength, double mass, double f_hz)
{
    const double c = optolever::kSpeedOfLight;
    const double omega0 = 2.0 * kPi * c / wavelength;
    const double omega = 2.0 * kPi * f_hz;
    return 8.0 * power * omega0 / (mass * c * c * omega * omega);
}

inline double sql(double mass_or_inertia, double f_hz)
{
    const double omega = 2.0 * kPi * f_hz;
    return std::sqrt(2.0 * optolever::kHbar / (mass_or_inertia * omega * omega));
}

inline double kappa1_simplified(double power, double wavelength, double width_at_mirror, double inertia, double f_hz)
{
    const double c = optolever::kSpeedOfLight;
    const double omega0 = 2.0 * kPi * c / wavelength;
    const double omega = 2.0 * kPi * f_hz;
    return 2.0 * power * omega0 * width_at_mirror * width_at_mirror / (inertia * c * c * omega * omega);
}

// (sql^2 / 2 kappa) [(cot a - kappa)^2 + 1]
inline double homodyne_psd(double kappa, double sql_value, double angle)
{
    const double d = 1.0 / std::tan(angle) - kappa;
    return sql_value * sql_value / (2.0 * kappa) * (d * d + 1.0);
}

} // namespace oracle

#endif // OPTOLEVER_TESTS_ORACLES_HPP
