#ifndef OPTOLEVER_TRANSLATION_HPP
#define OPTOLEVER_TRANSLATION_HPP

#include <cmath>

#include "optolever/constants.hpp"
#include "optolever/errors.hpp"
#include "optolever/quadrature_field.hpp"

// Single-bounce free-mass mirror probed by the fundamental mode: the
// translational benchmark for the optical-lever channel.

namespace optolever {

struct TranslationSetup
{
    double laser_power = 0.0;                // W
    double carrier_angular_frequency = 0.0;  // rad/s
    double mirror_mass = 0.0;                // kg

    void validate() const
    {
        if (!(laser_power > 0.0 && carrier_angular_frequency > 0.0 && mirror_mass > 0.0))
            throw InvalidArgument("translation setup requires positive power, carrier frequency and mass");
    }

    // Carrier amplitude A = sqrt(2 P / (hbar w0)).
    double carrier_amplitude() const { return std::sqrt(2.0 * laser_power / (kHbar * carrier_angular_frequency)); }
};

namespace detail {

inline void require_positive_omega(double omega)
{
    if (!(std::isfinite(omega) && omega > 0.0))
        throw InvalidArgument("sideband angular frequency must be positive and finite");
}

} // namespace detail

/// kappa_0 = 8 P w0 / (m c^2 Omega^2).
inline double kappa0(const TranslationSetup& setup, double omega)
{
    detail::require_positive_omega(omega);
    setup.validate();
    return 8.0 * setup.laser_power * setup.carrier_angular_frequency
           / (setup.mirror_mass * kSpeedOfLight * kSpeedOfLight * omega * omega);
}

/// z_SQL = sqrt(2 hbar / (m Omega^2)), in m/sqrt(Hz).
inline double z_sql(const TranslationSetup& setup, double omega)
{
    detail::require_positive_omega(omega);
    setup.validate();
    return std::sqrt(2.0 * kHbar / (setup.mirror_mass * omega * omega));
}

/// Input-output relation of the reflected fundamental mode.
inline TwoPhotonTransfer translation_io(const TranslationSetup& setup, double omega)
{
    TwoPhotonTransfer t = ponderomotive(kappa0(setup, omega));
    t.label = "translation";
    return t;
}

/// (z_SQL^2 / 2 kappa0) [(cot eta - kappa0)^2 + 1].
inline double translation_noise_psd_closed_form(double kappa, double sql, double eta)
{
    if (!(eta > 0.0 && eta < kPi))
        throw DegenerateReadout("homodyne angle must lie in (0, pi)");
    const double d = std::cos(eta) / std::sin(eta) - kappa;
    return sql * sql / (2.0 * kappa) * (d * d + 1.0);
}

/// Displacement-referred noise PSD (m^2/Hz) for homodyne angle eta, from the
/// quadrature pipeline: ponderomotive transfer, homodyne projection, vacuum
/// PSD, then division by the squared signal gain.
inline double translation_noise_psd(const TranslationSetup& setup, double omega, double eta)
{
    const Readout r = homodyne_readout(translation_io(setup, omega), eta);
    const double sql = z_sql(setup, omega);
    return output_noise_psd(r.noise_gain) / (r.signal_gain * r.signal_gain) * sql * sql;
}

} // namespace optolever

#endif // OPTOLEVER_TRANSLATION_HPP
