#ifndef OPTOLEVER_ROTATION_HPP
#define OPTOLEVER_ROTATION_HPP

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "optolever/constants.hpp"
#include "optolever/csv.hpp"
#include "optolever/errors.hpp"
#include "optolever/gaussian_beam.hpp"
#include "optolever/hg_modes.hpp"
#include "optolever/quadrature_field.hpp"
#include "optolever/spectrum.hpp"
#include "optolever/translation.hpp"

// Optical lever: a fundamental-mode beam reflects off a freely rotating,
// mode-matched mirror and the transverse displacement of the reflected beam
// is read out downstream. Positions are signed coordinates in the reflected
// beam's frame (waist at z = 0); the incident-frame mirror position is the
// negation of mirror_z.

namespace optolever {

struct LeverConfig
{
    BeamParams beam;
    double laser_power = 0.0;                 // W
    double mirror_inertia = 0.0;              // kg m^2
    std::optional<double> mirror_mass;        // kg, only for translation comparisons
    double mirror_z = 0.0;                    // m
    double detect_z = 0.0;                    // m

    // Everything except the detector position.
    void validate_source() const
    {
        if (!(std::isfinite(laser_power) && laser_power > 0.0))
            throw InvalidArgument("laser power must be positive");
        if (!(std::isfinite(mirror_inertia) && mirror_inertia > 0.0))
            throw InvalidArgument("mirror moment of inertia must be positive");
        if (mirror_mass && !(std::isfinite(*mirror_mass) && *mirror_mass > 0.0))
            throw InvalidArgument("mirror mass must be positive");
        if (!std::isfinite(mirror_z))
            throw InvalidArgument("mirror position must be finite");
    }

    void validate() const
    {
        validate_source();
        if (!std::isfinite(detect_z))
            throw InvalidArgument("detector position must be finite");
        if (!(detect_z > mirror_z))
            throw InvalidArgument("detector must sit downstream of the mirror (detect_z > mirror_z)");
    }

    TranslationSetup translation_setup() const
    {
        if (!mirror_mass)
            throw InvalidArgument("translation channel needs a mirror mass");
        return {laser_power, beam.carrier_angular_frequency(), *mirror_mass};
    }
};

/// Same setup with a different detector position.
inline LeverConfig with_detect_z(LeverConfig config, double detect_z)
{
    config.detect_z = detect_z;
    return config;
}

inline std::string config_fingerprint(const LeverConfig& c)
{
    std::string text = csv::format_number(c.beam.wavelength()) + ";" + csv::format_number(c.beam.waist_radius())
                       + ";" + csv::format_number(c.laser_power) + ";" + csv::format_number(c.mirror_inertia) + ";"
                       + (c.mirror_mass ? csv::format_number(*c.mirror_mass) : "-") + ";"
                       + csv::format_number(c.mirror_z) + ";" + csv::format_number(c.detect_z);
    return fnv1a_hex(text);
}

/// psi = gouy(detect_z) - gouy(mirror_z), in (0, pi) for a valid config.
inline double gouy_separation(const LeverConfig& config)
{
    return gouy_phase_between(config.beam, config.mirror_z, config.detect_z);
}

/// cot(psi) from positions, (z0^2 + Z1 Zm) / (z0 (Zm - Z1)).
inline double cot_gouy_separation(const LeverConfig& config)
{
    const double z0 = config.beam.rayleigh_range();
    return (z0 * z0 + config.mirror_z * config.detect_z) / (z0 * (config.detect_z - config.mirror_z));
}

/// kappa_1 = 4 P w(Z1) / (I c Omega^2 alpha(Z1)).
inline double kappa1(const LeverConfig& config, double omega)
{
    detail::require_positive_omega(omega);
    const double w = beam_width(config.beam, config.mirror_z);
    const double alpha = divergence(config.beam, config.mirror_z);
    return 4.0 * config.laser_power * w / (config.mirror_inertia * kSpeedOfLight * omega * omega * alpha);
}

/// kappa_1 * Omega^2 = 2 P w0 w(Z1)^2 / (I c^2), independent of frequency.
inline double kappa1_coefficient(const LeverConfig& config)
{
    const double w = beam_width(config.beam, config.mirror_z);
    return 2.0 * config.laser_power * config.beam.carrier_angular_frequency() * w * w
           / (config.mirror_inertia * kSpeedOfLight * kSpeedOfLight);
}

/// theta_SQL = sqrt(2 hbar / (I Omega^2)), rad/sqrt(Hz).
inline double theta_sql(double inertia, double omega)
{
    if (!(std::isfinite(inertia) && inertia > 0.0))
        throw InvalidArgument("moment of inertia must be positive");
    detail::require_positive_omega(omega);
    return std::sqrt(2.0 * kHbar / (inertia * omega * omega));
}

/// Mirror tilt per unit a1 quadrature of the incident 10 mode:
/// hbar w0 A w(Z1) / (c I Omega^2), with A = sqrt(2 P / (hbar w0)).
inline double torque_response(const LeverConfig& config, double omega)
{
    detail::require_positive_omega(omega);
    const double w0 = config.beam.carrier_angular_frequency();
    const double amplitude = std::sqrt(2.0 * config.laser_power / (kHbar * w0));
    return kHbar * w0 * amplitude * beam_width(config.beam, config.mirror_z)
           / (kSpeedOfLight * config.mirror_inertia * omega * omega);
}

/// Reflected 10-mode quadratures at the mirror (reflected frame) in terms of
/// the incident 10-mode quadratures at the mirror (incident frame).
inline TwoPhotonTransfer rotation_io(const LeverConfig& config, double omega)
{
    TwoPhotonTransfer t = ponderomotive(kappa1(config, omega));
    t.label = "rotation";
    return t;
}

struct RotationNoise
{
    double total = 0.0;       // rad^2/Hz
    double sensing = 0.0;     // shot-noise analogue
    double backaction = 0.0;  // radiation torque noise
};

/// (sql^2 / 2 kappa) [(cot psi - kappa)^2 + 1], split into its two terms.
inline RotationNoise rotation_noise_closed_form(double kappa, double sql, double cot_psi)
{
    const double scale = sql * sql / (2.0 * kappa);
    const double d = cot_psi - kappa;
    const double backaction = scale * d * d;
    return {scale + backaction, scale, backaction};
}

inline RotationNoise rotation_noise_psd(const LeverConfig& config, double omega)
{
    config.validate();
    const double psi = gouy_separation(config);
    if (!(psi > 0.0 && psi < kPi))
        throw DegenerateReadout("Gouy separation must lie in (0, pi)");
    return rotation_noise_closed_form(kappa1(config, omega), theta_sql(config.mirror_inertia, omega),
                                      cot_gouy_separation(config));
}

/// Reflection, propagation of the 10 mode from mirror to detector, then the
/// displacement quadrature (first component) at the detector.
inline TwoPhotonTransfer rotation_pipeline(const LeverConfig& config, double omega)
{
    return compose(gouy_transfer(config.beam, kMode10, config.mirror_z, config.detect_z), rotation_io(config, omega));
}

/// Total PSD from the quadrature pipeline, normalized by the signal gain.
inline double rotation_noise_psd_pipeline(const LeverConfig& config, double omega)
{
    config.validate();
    const Readout r = quadrature_readout(rotation_pipeline(config, omega), {1.0, 0.0});
    if (r.signal_gain == 0.0)
        throw DegenerateReadout("displacement readout carries no tilt signal at this detector position");
    const double sql = theta_sql(config.mirror_inertia, omega);
    return output_noise_psd(r.noise_gain) / (r.signal_gain * r.signal_gain) * sql * sql;
}

inline double relative_difference(double a, double b)
{
    const double scale = std::max(std::abs(a), std::abs(b));
    return scale == 0.0 ? 0.0 : std::abs(a - b) / scale;
}

/// Rotation-channel noise budget on a frequency grid (Hz).
inline NoiseSpectrum budget(const LeverConfig& config, const std::vector<double>& frequencies_hz)
{
    config.validate();
    NoiseSpectrum s;
    s.config_fingerprint = config_fingerprint(config);
    s.frequencies = frequencies_hz;
    for (const double f : frequencies_hz) {
        const double omega = angular_frequency(f);
        const RotationNoise n = rotation_noise_psd(config, omega);
        const double sql = theta_sql(config.mirror_inertia, omega);
        s.total.push_back(n.total);
        s.sensing.push_back(n.sensing);
        s.backaction.push_back(n.backaction);
        s.sql.push_back(sql * sql);
        s.max_pipeline_discrepancy =
            std::max(s.max_pipeline_discrepancy, relative_difference(n.total, rotation_noise_psd_pipeline(config, omega)));
    }
    return s;
}

inline NoiseSpectrum budget(const LeverConfig& config, double f_min, double f_max, int n_points, GridScale scale)
{
    return budget(config, frequency_grid(f_min, f_max, n_points, scale));
}

/// Translation-channel budget (m^2/Hz) for homodyne angle eta.
inline NoiseSpectrum translation_budget(const LeverConfig& config, const std::vector<double>& frequencies_hz,
                                        double eta)
{
    config.validate();
    const TranslationSetup setup = config.translation_setup();
    NoiseSpectrum s;
    s.config_fingerprint = config_fingerprint(config);
    s.frequencies = frequencies_hz;
    const double cot_eta = std::cos(eta) / std::sin(eta);
    for (const double f : frequencies_hz) {
        const double omega = angular_frequency(f);
        const double k = kappa0(setup, omega);
        const double sql = z_sql(setup, omega);
        const RotationNoise n = rotation_noise_closed_form(k, sql, cot_eta);
        s.total.push_back(translation_noise_psd_closed_form(k, sql, eta));
        s.sensing.push_back(n.sensing);
        s.backaction.push_back(n.backaction);
        s.sql.push_back(sql * sql);
        s.max_pipeline_discrepancy = std::max(s.max_pipeline_discrepancy,
                                              relative_difference(s.total.back(), translation_noise_psd(setup, omega, eta)));
    }
    return s;
}

} // namespace optolever

#endif // OPTOLEVER_ROTATION_HPP
