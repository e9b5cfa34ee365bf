#ifndef OPTOLEVER_GAUSSIAN_BEAM_HPP
#define OPTOLEVER_GAUSSIAN_BEAM_HPP

#include <cmath>
#include <iostream>
#include <string>

#include "optolever/constants.hpp"
#include "optolever/errors.hpp"

namespace optolever {

// Fundamental Gaussian beam in its own frame: z is measured from the waist.
// Geometry is fixed by the carrier wavelength and the waist radius.
class BeamParams
{
public:
    BeamParams(double wavelength, double waist_radius)
        : wavelength_(wavelength), waist_radius_(waist_radius)
    {
        if (!(std::isfinite(wavelength) && wavelength > 0.0))
            throw InvalidArgument("beam wavelength must be positive and finite");
        if (!(std::isfinite(waist_radius) && waist_radius > 0.0))
            throw InvalidArgument("beam waist radius must be positive and finite");
        if (waist_radius < 10.0 * wavelength)
            std::clog << "warning: waist radius " << waist_radius << " m is below 10 wavelengths; "
                      << "paraxial approximation is marginal\n";
    }

    double wavelength() const { return wavelength_; }
    double waist_radius() const { return waist_radius_; }
    double wavenumber() const { return 2.0 * kPi / wavelength_; }
    double carrier_angular_frequency() const { return kSpeedOfLight * wavenumber(); }
    double rayleigh_range() const { return 0.5 * wavenumber() * waist_radius_ * waist_radius_; }
    // alpha_0 = 2/(k w0), the far-field divergence half-angle.
    double waist_divergence() const { return 2.0 / (wavenumber() * waist_radius_); }

    friend bool operator==(const BeamParams&, const BeamParams&) = default;

private:
    double wavelength_;
    double waist_radius_;
};

/// Gouy phase arctan(z/z0), in (-pi/2, pi/2).
inline double gouy_phase(const BeamParams& beam, double z)
{
    return std::atan(z / beam.rayleigh_range());
}

/// Gouy phase accumulated propagating from z_from to z_to.
///
/// Evaluated as atan2(z0*(z_to - z_from), z0^2 + z_from*z_to), which equals
/// gouy_phase(z_to) - gouy_phase(z_from) without the cancellation of
/// differencing two arctangents near +-pi/2.
inline double gouy_phase_between(const BeamParams& beam, double z_from, double z_to)
{
    const double z0 = beam.rayleigh_range();
    return std::atan2(z0 * (z_to - z_from), z0 * z0 + z_from * z_to);
}

inline double beam_width(const BeamParams& beam, double z)
{
    const double r = z / beam.rayleigh_range();
    return beam.waist_radius() * std::sqrt(1.0 + r * r);
}

/// Wavefront curvature 1/R(z) = z/(z^2 + z0^2). Zero at the waist.
inline double curvature(const BeamParams& beam, double z)
{
    const double z0 = beam.rayleigh_range();
    return z / (z * z + z0 * z0);
}

/// R(z) = z + z0^2/z. Throws SingularCurvature at the waist (flat wavefront).
inline double radius_of_curvature(const BeamParams& beam, double z)
{
    if (z == 0.0)
        throw SingularCurvature("radius of curvature is infinite at the beam waist");
    return 1.0 / curvature(beam, z);
}

/// alpha(z) = 2/(k w(z)); alpha(z) * w(z) = 2/k for every z.
inline double divergence(const BeamParams& beam, double z)
{
    return 2.0 / (beam.wavenumber() * beam_width(beam, z));
}

} // namespace optolever

#endif // OPTOLEVER_GAUSSIAN_BEAM_HPP
