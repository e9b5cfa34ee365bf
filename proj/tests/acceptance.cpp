// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include <sys/wait.h>

#include "csv_reader.hpp"
#include "optolever/csv.hpp"
#include "optolever/optolever.hpp"
#include "oracles.hpp"

using namespace optolever;

namespace {

struct Outcome
{
    bool pass = false;
    std::string detail;
};

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", v);
    return buf;
}

const BeamParams kBeam(1064e-9, 1e-3);

LeverConfig reference_lever()
{
    return {kBeam, 1.0, 1e-10, 1e-3, -kBeam.rayleigh_range(), 0.0};
}

// 1. Overlap matrix for l+m <= 3 is the identity within 1e-6, in under 10 s.
Outcome orthonormality()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto modes = modes_up_to(3);
    double worst = 0.0;
    for (const double z : {0.0, -2.0, 7.5}) {
        const auto m = overlap_matrix(kBeam, modes, z);
        for (std::size_t i = 0; i < modes.size(); ++i)
            for (std::size_t j = 0; j < modes.size(); ++j)
                worst = std::max(worst, std::abs(m[i][j] - (i == j ? 1.0 : 0.0)));
    }
    const double elapsed = seconds_since(t0);
    return {worst <= 1e-6 && elapsed < 10.0, "max |O - I| = " + fmt(worst) + ", " + fmt(elapsed) + " s"};
}

// 2. Brute-force projection of a shifted or tilted beam matches the first-order coefficient.
Outcome displaced_decomposition()
{
    const oracle::Beam ob{kBeam.wavelength(), kBeam.waist_radius()};
    const double w0 = kBeam.waist_radius();
    const double a0 = kBeam.waist_divergence();
    double worst_margin = 0.0;  // relative error / tolerance
    for (const double ratio : {1e-4, 1e-3, 1e-2}) {
        const double tol = std::max(1e-3, 2.0 * ratio);
        const std::complex<double> shift = oracle::shifted_beam_f10(ob, ratio * w0, 0.0);
        const std::complex<double> shift_lib = decompose_displaced(kBeam, {ratio * w0, 0.0, 0.0}).coefficient(kMode10);
        worst_margin = std::max(worst_margin, std::abs(shift - shift_lib) / std::abs(shift_lib) / tol);
        const std::complex<double> tilt = oracle::shifted_beam_f10(ob, 0.0, ratio * a0);
        const std::complex<double> tilt_lib = decompose_displaced(kBeam, {0.0, ratio * a0, 0.0}).coefficient(kMode10);
        worst_margin = std::max(worst_margin, std::abs(tilt - tilt_lib) / std::abs(tilt_lib) / tol);
    }
    return {worst_margin <= 1.0, "worst relative error / tolerance = " + fmt(worst_margin)};
}

// 3. Random chains of shears and Gouy rotations stay symplectic. The absolute
// bound is scored on 10^4 chains of up to 8 stages with kappa <= 1, where the
// entries are O(1). Rounding in M^T J M grows as eps * |M|^2, so a second set
// of 10^4 chains with kappa up to 1e3 is scored relative to |M|^2.
Outcome symplectic()
{
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> wide(-3.0, 3.0);
    std::uniform_real_distribution<double> narrow(-3.0, 0.0);
    std::uniform_real_distribution<double> z(-20.0, 20.0);
    std::uniform_int_distribution<int> len(1, 8);
    const double z0 = kBeam.rayleigh_range();
    const auto chain = [&](std::uniform_real_distribution<double>& log_kappa) {
        TwoPhotonTransfer t{Mat2::identity(), {0.0, 0.0}, "id"};
        for (int k = len(rng); k > 0; --k) {
            t = compose(ponderomotive(std::pow(10.0, log_kappa(rng))), t);
            t = compose(gouy_transfer(kBeam, kMode10, z(rng) * z0, z(rng) * z0), t);
        }
        return t.matrix;
    };
    double worst = 0.0;
    double worst_scaled = 0.0;
    for (int i = 0; i < 10000; ++i) {
        worst = std::max(worst, symplectic_deviation(chain(narrow)));
        const Mat2 m = chain(wide);
        const double n = std::max({std::abs(m.m11), std::abs(m.m12), std::abs(m.m21), std::abs(m.m22)});
        worst_scaled = std::max(worst_scaled, symplectic_deviation(m) / (n * n));
    }
    return {worst <= 1e-12 && worst_scaled <= 1e-12,
            "max |M^T J M - J| = " + fmt(worst) + " (kappa <= 1); scaled by |M|^2 = " + fmt(worst_scaled)
                + " (kappa <= 1e3)"};
}

// 4. Phase-quadrature readout never beats the SQL; equality at kappa = 1.
Outcome sql_bound()
{
    const double sql = 1.0;
    double min_ratio = 1e300;
    for (int i = 0; i < 1000; ++i) {
        const double kappa = std::pow(10.0, -3.0 + 6.0 * i / 999.0);
        min_ratio = std::min(min_ratio, rotation_noise_closed_form(kappa, sql, 0.0).total / (sql * sql));
    }
    const double at_one = rotation_noise_closed_form(1.0, sql, 0.0).total;
    return {min_ratio >= 1.0 - 1e-12 && std::abs(at_one - 1.0) <= 1e-12,
            "min S/theta_SQL^2 = " + csv::format_number(min_ratio) + ", at kappa=1: " + csv::format_number(at_one)};
}

// 5. Solver output cancels backaction and reaches sql^2 / (2 kappa).
Outcome backaction_cancellation()
{
    double worst_residual = 0.0;
    double worst_psd = 0.0;
    bool beats_sql = true;
    int solved = 0;
    const LeverConfig c = reference_lever();
    for (int i = 0; i < 60; ++i) {
        const double f = std::pow(10.0, -1.0 + 3.0 * i / 59.0);
        const double omega = angular_frequency(f);
        DetectPositionSolution s;
        try {
            s = solve_detect_position(c, omega);
        } catch (const NoPhysicalSolution&) {
            continue;
        }
        ++solved;
        const LeverConfig at = with_detect_z(c, s.detect_z);
        const double kappa = kappa1(at, omega);
        worst_residual = std::max(worst_residual, std::abs(kappa - cot_gouy_separation(at)) / kappa);
        const double sql = theta_sql(at.mirror_inertia, omega);
        const double total = rotation_noise_psd(at, omega).total;
        worst_psd = std::max(worst_psd, relative_difference(total, sql * sql / (2.0 * kappa)));
        if (kappa > 0.5 && !(total < sql * sql))
            beats_sql = false;
    }
    return {solved >= 30 && worst_residual <= 1e-10 && worst_psd <= 1e-9 && beats_sql,
            std::to_string(solved) + " solved; residual " + fmt(worst_residual) + ", psd error " + fmt(worst_psd)
                + (beats_sql ? ", below SQL where kappa > 1/2" : ", SQL NOT beaten")};
}

// 6. Rotation and translation spectra share one functional form.
Outcome cross_form()
{
    std::mt19937_64 rng(6);
    std::uniform_real_distribution<double> lk(-3.0, 3.0);
    std::uniform_real_distribution<double> angle(1e-3, kPi - 1e-3);
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double kappa = std::pow(10.0, lk(rng));
        const double sql = 1e-18 * std::pow(10.0, lk(rng));
        const double psi = angle(rng);
        const double rot = rotation_noise_closed_form(kappa, sql, std::cos(psi) / std::sin(psi)).total;
        worst = std::max(worst, relative_difference(rot, translation_noise_psd_closed_form(kappa, sql, psi)));
    }
    return {worst <= 1e-12, "max relative difference = " + fmt(worst)};
}

// 7. Closed form agrees with the composed quadrature pipeline at every budget point.
Outcome pipeline()
{
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> z(-30.0, 30.0);
    const double z0 = kBeam.rayleigh_range();
    double worst = budget(reference_lever(), 0.1, 100.0, 50, GridScale::log).max_pipeline_discrepancy;
    for (int i = 0; i < 100; ++i) {
        double a = z(rng), b = z(rng);
        if (a > b)
            std::swap(a, b);
        const LeverConfig c{kBeam, 1.0, 1e-10, std::nullopt, a * z0, b * z0};
        worst = std::max(worst, budget(c, 0.01, 1000.0, 50, GridScale::log).max_pipeline_discrepancy);
    }
    return {worst <= 1e-12, "max relative difference = " + fmt(worst) + " over 101 budgets"};
}

// 8. Monte Carlo agrees with the analytic spectrum, deterministically and quickly.
Outcome monte_carlo()
{
    const auto t0 = std::chrono::steady_clock::now();
    const auto grid = frequency_grid(0.1, 100.0, 20, GridScale::log);
    const McReport a = validate_budget(reference_lever(), grid, 100000, 42);
    const double elapsed = seconds_since(t0);
    const McReport b = validate_budget(reference_lever(), grid, 100000, 42);
    const bool same = a.estimated_psd == b.estimated_psd && a.standard_error == b.standard_error;
    return {a.pass && a.max_abs_z() <= 5.0 && same && elapsed < 60.0,
            "max |z| = " + fmt(a.max_abs_z()) + (same ? ", deterministic" : ", NOT deterministic") + ", "
                + fmt(elapsed) + " s"};
}

int run_cli(const std::string& args)
{
    const std::string cmd = std::string(OPTOLEVER_CLI_PATH) + " " + args;
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

// 9. CLI budget: sql column has log-log slope -2; total >= sql at psi = pi/2.
Outcome cli_end_to_end()
{
    const auto dir = std::filesystem::temp_directory_path() / "optolever_acceptance";
    std::filesystem::create_directories(dir);
    const std::string reference = std::string(OPTOLEVER_SOURCE_DIR) + "/configs/reference.cfg";
    const std::string out = (dir / "budget.csv").string();
    if (run_cli("budget --config " + reference + " --out " + out) != 0)
        return {false, "budget subcommand failed"};
    const auto t = csvtest::parse(csvtest::read_file(out));
    const auto f = t.numbers("freq_hz");
    const auto sql = t.numbers("psd_sql_rad2_hz");

    // Least-squares slope of log(sql) against log(f).
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        mx += std::log(f[i]);
        my += std::log(sql[i]);
    }
    mx /= f.size();
    my /= f.size();
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < f.size(); ++i) {
        sxy += (std::log(f[i]) - mx) * (std::log(sql[i]) - my);
        sxx += (std::log(f[i]) - mx) * (std::log(f[i]) - mx);
    }
    const double slope = sxy / sxx;

    // psi = pi/2 needs mirror_z * detect_z = -z0^2: mirror at -1 m, detector at z0^2.
    const double z0 = BeamParams(1.064e-6, 1.0e-3).rayleigh_range();
    std::string text = csvtest::read_file(reference);
    std::string quarter;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            if (line.rfind("mirror_z_m", 0) == 0)
                line = "mirror_z_m = -1";
            else if (line.rfind("detect_z_m", 0) == 0)
                line = "detect_z_m = " + csv::format_number(z0 * z0);
            else if (line.rfind("f_min_hz", 0) == 0)
                line = "f_min_hz = 0.01";
            else if (line.rfind("f_max_hz", 0) == 0)
                line = "f_max_hz = 1000";
            else if (line.rfind("n_points", 0) == 0)
                line = "n_points = 100";
            quarter += line + "\n";
        }
    }
    const std::string quarter_cfg = (dir / "quarter.cfg").string();
    std::ofstream(quarter_cfg) << quarter;
    const std::string quarter_out = (dir / "quarter.csv").string();
    if (run_cli("budget --config " + quarter_cfg + " --out " + quarter_out) != 0)
        return {false, "budget on psi = pi/2 config failed"};
    const auto q = csvtest::parse(csvtest::read_file(quarter_out));
    double min_ratio = 1e300;
    for (std::size_t i = 0; i < q.rows.size(); ++i)
        min_ratio = std::min(min_ratio, q.number(i, "psd_total_rad2_hz") / q.number(i, "psd_sql_rad2_hz"));
    std::filesystem::remove_all(dir);

    return {std::abs(slope + 2.0) <= 1e-6 && min_ratio >= 1.0 - 1e-12 && t.rows.size() == 50,
            "sql slope = " + csv::format_number(slope) + ", min total/sql at psi=pi/2 = "
                + csv::format_number(min_ratio)};
}

} // namespace

int main()
{
    const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria{
        {"HG orthonormality", orthonormality},
        {"displaced-beam decomposition", displaced_decomposition},
        {"symplectic preservation", symplectic},
        {"SQL bound", sql_bound},
        {"backaction cancellation", backaction_cancellation},
        {"cross-form identity", cross_form},
        {"closed form vs pipeline", pipeline},
        {"Monte Carlo oracle", monte_carlo},
        {"CLI end-to-end", cli_end_to_end},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failures += o.pass ? 0 : 1;
        std::printf("criterion %zu %-30s %s  (%s)\n", i + 1, criteria[i].first, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
    return failures == 0 ? 0 : 1;
}
