#ifndef OPTOLEVER_MC_VALIDATOR_HPP
#define OPTOLEVER_MC_VALIDATOR_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <span>
#include <vector>

#include "optolever/constants.hpp"
#include "optolever/errors.hpp"
#include "optolever/quadrature_field.hpp"
#include "optolever/rotation.hpp"

// Monte Carlo oracle for the analytic spectra. Each frequency bin is sampled
// independently: vacuum quadratures are drawn as complex circular Gaussians
// with unit mean power and pushed through the transfer, and the readout power
// is averaged.

namespace optolever {

inline constexpr int kMinMcSamples = 1000;
inline constexpr double kMcZThreshold = 5.0;
inline constexpr std::size_t kMaxMcPoints = 100;
inline constexpr const char* kMcRngName = "mt19937_64/splitmix64";

/// SplitMix64 finalizer; derives independent sub-seeds from (seed, stream).
constexpr std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream)
{
    return splitmix64(splitmix64(seed) ^ splitmix64(stream + 0x632be59bd9b4e019ULL));
}

struct PsdEstimate
{
    double estimate = 0.0;
    double standard_error = 0.0;
};

/// Sample mean and standard error of |v^T M a|^2 over n vacuum draws.
inline PsdEstimate simulate_psd(const TwoPhotonTransfer& transfer, const Vec2& readout, int n_samples,
                                std::uint64_t seed)
{
    if (n_samples < kMinMcSamples)
        throw InvalidArgument("Monte Carlo needs at least 1000 samples");
    if (readout[0] == 0.0 && readout[1] == 0.0)
        return {};

    std::mt19937_64 rng(seed);
    // E|a|^2 = 1 split evenly between real and imaginary parts.
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    double mean = 0.0;
    double m2 = 0.0;
    for (int i = 0; i < n_samples; ++i) {
        const Vec2 a_re{normal(rng), normal(rng)};
        const Vec2 a_im{normal(rng), normal(rng)};
        const double y_re = dot(readout, transfer.matrix * a_re);
        const double y_im = dot(readout, transfer.matrix * a_im);
        const double p = y_re * y_re + y_im * y_im;
        // Welford update
        const double delta = p - mean;
        mean += delta / (i + 1);
        m2 += delta * (p - mean);
    }
    const double variance = m2 / (n_samples - 1);
    return {mean, std::sqrt(variance / n_samples)};
}

struct McReport
{
    std::vector<double> frequencies;  // Hz
    std::vector<double> estimated_psd;
    std::vector<double> analytic_psd;
    std::vector<double> standard_error;
    std::vector<double> z_scores;
    int n_samples = 0;
    std::uint64_t seed = 0;
    double threshold = kMcZThreshold;
    bool pass = false;

    double max_abs_z() const
    {
        double m = 0.0;
        for (const double z : z_scores)
            m = std::max(m, std::abs(z));
        return m;
    }
};

/// Monte Carlo estimate (rad^2/Hz) of the rotation-channel total PSD per
/// frequency. Frequency i uses sub-seed derive_seed(seed, i).
inline McReport estimate_budget(const LeverConfig& config, const std::vector<double>& frequencies_hz, int n_samples,
                                std::uint64_t seed)
{
    config.validate();
    if (frequencies_hz.empty() || frequencies_hz.size() > kMaxMcPoints)
        throw InvalidArgument("Monte Carlo validation takes between 1 and 100 frequencies");
    McReport r;
    r.frequencies = frequencies_hz;
    r.n_samples = n_samples;
    r.seed = seed;
    for (std::size_t i = 0; i < frequencies_hz.size(); ++i) {
        const double omega = angular_frequency(frequencies_hz[i]);
        const TwoPhotonTransfer t = rotation_pipeline(config, omega);
        const Readout readout = quadrature_readout(t, {1.0, 0.0});
        if (readout.signal_gain == 0.0)
            throw DegenerateReadout("displacement readout carries no tilt signal");
        const double sql = theta_sql(config.mirror_inertia, omega);
        const double to_angle = sql * sql / (readout.signal_gain * readout.signal_gain);
        const PsdEstimate e = simulate_psd(t, {1.0, 0.0}, n_samples, derive_seed(seed, i));
        r.estimated_psd.push_back(e.estimate * to_angle);
        r.standard_error.push_back(e.standard_error * to_angle);
    }
    return r;
}

/// Score estimates against an analytic spectrum; pass iff every |z| <= threshold.
inline void assess(McReport& report, std::span<const double> analytic, double threshold = kMcZThreshold)
{
    if (analytic.size() != report.estimated_psd.size())
        throw InvalidArgument("analytic spectrum length does not match the Monte Carlo grid");
    report.analytic_psd.assign(analytic.begin(), analytic.end());
    report.z_scores.clear();
    report.threshold = threshold;
    for (std::size_t i = 0; i < analytic.size(); ++i) {
        const double se = report.standard_error[i];
        const double diff = report.estimated_psd[i] - analytic[i];
        report.z_scores.push_back(se > 0.0 ? diff / se : (diff == 0.0 ? 0.0 : std::numeric_limits<double>::infinity()));
    }
    report.pass = report.max_abs_z() <= threshold;
}

/// Monte Carlo check of the rotation budget against the closed form.
inline McReport validate_budget(const LeverConfig& config, const std::vector<double>& frequencies_hz, int n_samples,
                                std::uint64_t seed)
{
    McReport report = estimate_budget(config, frequencies_hz, n_samples, seed);
    std::vector<double> analytic;
    for (const double f : frequencies_hz)
        analytic.push_back(rotation_noise_psd(config, angular_frequency(f)).total);
    assess(report, analytic);
    return report;
}

} // namespace optolever

#endif // OPTOLEVER_MC_VALIDATOR_HPP
