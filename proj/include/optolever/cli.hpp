#ifndef OPTOLEVER_CLI_HPP
#define OPTOLEVER_CLI_HPP

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "optolever/config.hpp"
#include "optolever/csv.hpp"
#include "optolever/design_solver.hpp"
#include "optolever/hg_modes.hpp"
#include "optolever/mc_validator.hpp"
#include "optolever/rotation.hpp"

namespace optolever::cli {

enum class Subcommand
{
    budget,
    sweep,
    solve,
    validate,
    modes,
};

inline std::optional<Subcommand> parse_subcommand(std::string_view name)
{
    if (name == "budget") return Subcommand::budget;
    if (name == "sweep") return Subcommand::sweep;
    if (name == "solve") return Subcommand::solve;
    if (name == "validate") return Subcommand::validate;
    if (name == "modes") return Subcommand::modes;
    return std::nullopt;
}

inline const char* to_string(Subcommand s)
{
    switch (s) {
    case Subcommand::budget: return "budget";
    case Subcommand::sweep: return "sweep";
    case Subcommand::solve: return "solve";
    case Subcommand::validate: return "validate";
    case Subcommand::modes: return "modes";
    }
    return "?";
}

struct RunOptions
{
    std::optional<std::string> target;  // solve: position | frequency | psi
    std::optional<double> freq_hz;
    std::uint64_t seed = 42;
    int samples = 100000;
    int max_order = 3;
};

enum ExitCode : int
{
    kExitOk = 0,
    kExitValidationFailed = 1,
    kExitUsage = 2,
    kExitNoSolution = 3,
    kExitDomainError = 4,
};

struct Streams
{
    std::ostream& csv;      // CSV payload
    std::ostream& console;  // summaries
    std::ostream& diag;     // errors and warnings
};

namespace detail {

inline void write_preamble(std::ostream& out, Subcommand sub, const RunConfig& cfg, const std::string& extra = {})
{
    std::string text = std::string("optolever ") + kToolVersion + " subcommand=" + to_string(sub)
                       + " config_fingerprint=" + config_fingerprint(cfg.lever);
    if (!extra.empty())
        text += " " + extra;
    csv::write_comment(out, text);
}

inline double require_freq(const RunOptions& opts)
{
    if (!opts.freq_hz)
        throw InvalidArgument("this subcommand needs --freq-hz");
    if (!(*opts.freq_hz > 0.0))
        throw InvalidArgument("--freq-hz must be positive");
    return *opts.freq_hz;
}

inline void require_rotation(const RunConfig& cfg, Subcommand sub)
{
    if (cfg.channel != Channel::rotation)
        throw InvalidArgument(std::string(to_string(sub)) + " supports only channel = rotation");
}

inline int run_budget(const RunConfig& cfg, const Streams& io)
{
    const bool rot = cfg.channel == Channel::rotation;
    // Translation channel is read out in the phase quadrature.
    const NoiseSpectrum s = rot ? budget(cfg.lever, cfg.grid()) : translation_budget(cfg.lever, cfg.grid(), kPi / 2.0);
    const std::string unit = rot ? (cfg.asd ? "rad_rthz" : "rad2_hz") : (cfg.asd ? "m_rthz" : "m2_hz");
    const std::string kind = cfg.asd ? "asd_" : "psd_";
    write_preamble(io.csv, Subcommand::budget, cfg, std::string("channel=") + (rot ? "rotation" : "translation"));
    csv::write_row(io.csv, std::vector<std::string>{"freq_hz", kind + "total_" + unit, kind + "sensing_" + unit,
                                                    kind + "backaction_" + unit, kind + "sql_" + unit});
    const auto tr = [&](double v) { return cfg.asd ? std::sqrt(v) : v; };
    for (std::size_t i = 0; i < s.frequencies.size(); ++i)
        csv::write_row(io.csv, std::vector<double>{s.frequencies[i], tr(s.total[i]), tr(s.sensing[i]),
                                                   tr(s.backaction[i]), tr(s.sql[i])});
    return kExitOk;
}

// Gouy separations reachable downstream of the mirror: (0, pi/2 - gouy(Z1)).
inline int run_sweep(const RunConfig& cfg, const RunOptions& opts, const Streams& io)
{
    require_rotation(cfg, Subcommand::sweep);
    const double f = require_freq(opts);
    const double omega = angular_frequency(f);
    const BeamParams& beam = cfg.lever.beam;
    const double gouy_mirror = gouy_phase(beam, cfg.lever.mirror_z);
    const double psi_max = kPi / 2.0 - gouy_mirror;
    const double kappa = kappa1(cfg.lever, omega);
    const double sql = theta_sql(cfg.lever.mirror_inertia, omega);

    write_preamble(io.csv, Subcommand::sweep, cfg, "freq_hz=" + csv::format_number(f));
    csv::write_row(io.csv, std::vector<std::string>{"psi_rad", "detect_z_m", "kappa1", "psd_total_rad2_hz",
                                                    "psd_sensing_rad2_hz", "psd_backaction_rad2_hz",
                                                    "psd_sql_rad2_hz"});
    for (int i = 0; i < cfg.n_points; ++i) {
        const double psi = psi_max * (i + 1) / (cfg.n_points + 1);
        const double detect_z = beam.rayleigh_range() * std::tan(gouy_mirror + psi);
        const RotationNoise n = rotation_noise_closed_form(kappa, sql, std::cos(psi) / std::sin(psi));
        csv::write_row(io.csv, std::vector<double>{psi, detect_z, kappa, n.total, n.sensing, n.backaction, sql * sql});
    }
    return kExitOk;
}

inline int run_solve(const RunConfig& cfg, const RunOptions& opts, const Streams& io)
{
    require_rotation(cfg, Subcommand::solve);
    const std::string target = opts.target.value_or("");
    double f = 0.0;
    double detect_z = cfg.lever.detect_z;
    double psi = 0.0;
    double residual = 0.0;

    if (target == "position") {
        f = require_freq(opts);
        const DetectPositionSolution s = solve_detect_position(cfg.lever, angular_frequency(f));
        detect_z = s.detect_z;
        psi = s.psi;
        residual = s.residual / s.kappa;
    } else if (target == "frequency") {
        const CancellationFrequency s = solve_cancellation_frequency(cfg.lever);
        f = s.omega / (2.0 * kPi);
        psi = gouy_separation(cfg.lever);
        residual = s.residual / s.cot_psi;
    } else if (target == "psi") {
        f = require_freq(opts);
        const OptimalPsi s = optimal_psi(cfg.lever, angular_frequency(f));
        psi = s.psi;
        residual = std::abs(s.psi_numeric - s.psi);
        try {
            detect_z = solve_detect_position(cfg.lever, angular_frequency(f)).detect_z;
        } catch (const NoPhysicalSolution&) {
            detect_z = std::numeric_limits<double>::quiet_NaN();
            io.diag << "warning: optimal Gouy separation is not reachable downstream of the mirror\n";
        }
    } else {
        throw InvalidArgument("solve needs --target position|frequency|psi");
    }

    const double omega = angular_frequency(f);
    const double kappa = kappa1(cfg.lever, omega);
    const double sql = theta_sql(cfg.lever.mirror_inertia, omega);
    const RotationNoise n = std::isfinite(detect_z)
                                ? rotation_noise_psd(with_detect_z(cfg.lever, detect_z), omega)
                                : rotation_noise_closed_form(kappa, sql, std::cos(psi) / std::sin(psi));

    write_preamble(io.csv, Subcommand::solve, cfg, "target=" + target);
    csv::write_row(io.csv, std::vector<std::string>{"target", "freq_hz", "detect_z_m", "psi_rad", "kappa1",
                                                    "psd_total_rad2_hz", "psd_backaction_rad2_hz", "psd_sql_rad2_hz",
                                                    "residual"});
    std::vector<std::string> row{target};
    for (const double v : {f, detect_z, psi, kappa, n.total, n.backaction, sql * sql, residual})
        row.push_back(csv::format_number(v));
    csv::write_row(io.csv, row);
    return kExitOk;
}

inline int run_validate(const RunConfig& cfg, const RunOptions& opts, const Streams& io)
{
    require_rotation(cfg, Subcommand::validate);
    const McReport r = validate_budget(cfg.lever, cfg.grid(), opts.samples, opts.seed);
    write_preamble(io.csv, Subcommand::validate, cfg,
                   "seed=" + std::to_string(r.seed) + " n_samples=" + std::to_string(r.n_samples)
                       + " rng=" + kMcRngName + " threshold=" + csv::format_number(r.threshold));
    csv::write_row(io.csv, std::vector<std::string>{"freq_hz", "estimated_psd_rad2_hz", "analytic_psd_rad2_hz",
                                                    "standard_error_rad2_hz", "z_score"});
    for (std::size_t i = 0; i < r.frequencies.size(); ++i)
        csv::write_row(io.csv, std::vector<double>{r.frequencies[i], r.estimated_psd[i], r.analytic_psd[i],
                                                   r.standard_error[i], r.z_scores[i]});
    io.csv.flush();
    std::ostringstream summary;
    summary << (r.pass ? "PASS" : "FAIL") << ": " << r.frequencies.size() << " frequencies, max |z| = "
            << csv::format_number(r.max_abs_z()) << " (threshold " << r.threshold << ")";
    if (&io.csv == &io.console)
        csv::write_comment(io.console, summary.str());
    else
        io.console << summary.str() << '\n';
    return r.pass ? kExitOk : kExitValidationFailed;
}

inline int run_modes(const RunConfig& cfg, const RunOptions& opts, const Streams& io)
{
    const std::vector<ModeIndex> modes = modes_up_to(opts.max_order);
    const double z = cfg.lever.mirror_z;
    const auto m = overlap_matrix(cfg.lever.beam, modes, z);
    write_preamble(io.csv, Subcommand::modes, cfg, "z_m=" + csv::format_number(z));
    csv::write_row(io.csv, std::vector<std::string>{"l_a", "m_a", "l_b", "m_b", "overlap"});
    for (std::size_t i = 0; i < modes.size(); ++i)
        for (std::size_t j = 0; j < modes.size(); ++j) {
            csv::write_row(io.csv, std::vector<std::string>{std::to_string(modes[i].l()), std::to_string(modes[i].m()),
                                                            std::to_string(modes[j].l()), std::to_string(modes[j].m()),
                                                            csv::format_number(m[i][j])});
        }
    return kExitOk;
}

} // namespace detail

/// Execute one subcommand. Errors are reported on io.diag and mapped to exit codes.
inline int run(Subcommand sub, const RunConfig& cfg, const RunOptions& opts, const Streams& io)
{
    try {
        switch (sub) {
        case Subcommand::budget: return detail::run_budget(cfg, io);
        case Subcommand::sweep: return detail::run_sweep(cfg, opts, io);
        case Subcommand::solve: return detail::run_solve(cfg, opts, io);
        case Subcommand::validate: return detail::run_validate(cfg, opts, io);
        case Subcommand::modes: return detail::run_modes(cfg, opts, io);
        }
    } catch (const NoPhysicalSolution& e) {
        io.diag << "error: " << e.what() << '\n';
        return kExitNoSolution;
    } catch (const NoCancellation& e) {
        io.diag << "error: " << e.what() << '\n';
        return kExitNoSolution;
    } catch (const InvalidArgument& e) {
        io.diag << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        io.diag << "error: " << e.what() << '\n';
        return kExitDomainError;
    }
    return kExitUsage;
}

} // namespace optolever::cli

#endif // OPTOLEVER_CLI_HPP
