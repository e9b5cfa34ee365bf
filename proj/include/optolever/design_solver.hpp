#ifndef OPTOLEVER_DESIGN_SOLVER_HPP
#define OPTOLEVER_DESIGN_SOLVER_HPP

#include <cmath>
#include <cstdint>
#include <string>

#include <boost/math/tools/roots.hpp>

#include "optolever/errors.hpp"
#include "optolever/gaussian_beam.hpp"
#include "optolever/rotation.hpp"

// Inverse problems for radiation torque cancellation, cot(psi) = kappa_1.
// Closed forms are the primary results; the iterative searches only confirm them.

namespace optolever {

inline constexpr double kCancellationResidualTolerance = 1e-10;  // relative to kappa_1 / cot(psi)
inline constexpr double kFrequencyAgreementTolerance = 1e-9;
inline constexpr double kPsiAgreementTolerance = 1e-8;

/// Golden-section minimization of a unimodal function on [lo, hi].
template <typename F>
double golden_section_minimize(F&& f, double lo, double hi, double x_tolerance, int max_iter = 500)
{
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = hi - inv_phi * (hi - lo);
    double d = lo + inv_phi * (hi - lo);
    double fc = f(c);
    double fd = f(d);
    for (int i = 0; i < max_iter && hi - lo > x_tolerance; ++i) {
        if (fc < fd) {
            hi = d;
            d = c;
            fd = fc;
            c = hi - inv_phi * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + inv_phi * (hi - lo);
            fd = f(d);
        }
    }
    return 0.5 * (lo + hi);
}

struct DetectPositionSolution
{
    double detect_z = 0.0;   // m
    double psi = 0.0;        // rad, in (0, pi/2)
    double kappa = 0.0;      // kappa_1 at the target frequency
    double residual = 0.0;   // |kappa_1 - cot(psi)| at detect_z
};

/// Detector position that cancels radiation torque noise at omega_star.
///
/// The detect_z already in `config` is ignored. The required Gouy separation
/// is psi* = arccot(kappa_1) and the position follows from
/// Zm = z0 tan(gouy(Z1) + psi*) = z0 (z0 + kappa Z1) / (kappa z0 - Z1).
/// Throws NoPhysicalSolution when gouy(Z1) + psi* >= pi/2, i.e. the phase is
/// not reachable by forward propagation.
inline DetectPositionSolution solve_detect_position(const LeverConfig& config, double omega_star)
{
    config.validate_source();
    const double kappa = kappa1(config, omega_star);
    const double z0 = config.beam.rayleigh_range();
    const double z1 = config.mirror_z;
    const double denominator = kappa * z0 - z1;
    if (!(denominator > 0.0))
        throw NoPhysicalSolution("required Gouy separation arccot(" + std::to_string(kappa)
                                 + ") is not reachable downstream of the mirror");

    DetectPositionSolution out;
    out.kappa = kappa;
    out.detect_z = z0 * (z0 + kappa * z1) / denominator;
    if (!std::isfinite(out.detect_z) || !(out.detect_z > z1))
        throw NoPhysicalSolution("cancelling detector position is not finite");
    const LeverConfig solved = with_detect_z(config, out.detect_z);
    out.psi = gouy_separation(solved);
    out.residual = std::abs(kappa - cot_gouy_separation(solved));
    if (out.residual > kCancellationResidualTolerance * kappa)
        throw VerificationFailed("detector position residual " + std::to_string(out.residual / kappa)
                                 + " exceeds tolerance");
    return out;
}

struct CancellationFrequency
{
    double omega = 0.0;            // rad/s, closed form
    double omega_bisection = 0.0;  // rad/s, bracketed root of kappa_1 - cot(psi)
    double cot_psi = 0.0;
    double residual = 0.0;         // |kappa_1(omega) - cot(psi)|
};

/// Sideband frequency at which the configured detector cancels radiation
/// torque noise: omega* = sqrt(C / cot(psi)) with kappa_1 = C / omega^2.
inline CancellationFrequency solve_cancellation_frequency(const LeverConfig& config)
{
    config.validate();
    const double cot_psi = cot_gouy_separation(config);
    if (!(cot_psi > 0.0))
        throw NoCancellation("Gouy separation is at least pi/2; kappa_1 > 0 can never equal cot(psi)");

    CancellationFrequency out;
    out.cot_psi = cot_psi;
    out.omega = std::sqrt(kappa1_coefficient(config) / cot_psi);
    out.residual = std::abs(kappa1(config, out.omega) - cot_psi);

    const auto g = [&](double omega) { return kappa1(config, omega) - cot_psi; };
    std::uintmax_t max_iter = 200;
    const auto bracket = boost::math::tools::bisect(g, out.omega / 10.0, 10.0 * out.omega,
                                                    boost::math::tools::eps_tolerance<double>(50), max_iter);
    out.omega_bisection = 0.5 * (bracket.first + bracket.second);

    if (out.residual > kCancellationResidualTolerance * cot_psi)
        throw VerificationFailed("cancellation frequency residual exceeds tolerance");
    if (relative_difference(out.omega, out.omega_bisection) > kFrequencyAgreementTolerance)
        throw VerificationFailed("bisection disagrees with closed-form cancellation frequency");
    return out;
}

struct OptimalPsi
{
    double psi = 0.0;          // rad, arccot(kappa_1)
    double psd = 0.0;          // rad^2/Hz, sql^2 / (2 kappa_1)
    double psi_numeric = 0.0;  // golden-section minimizer
};

/// Gouy separation minimizing the total noise at omega.
///
/// The search runs on the backaction term alone; the sensing term does not
/// depend on psi, and the backaction term has an exact zero so the minimum
/// is resolvable far below sqrt(machine epsilon).
inline OptimalPsi optimal_psi(const LeverConfig& config, double omega)
{
    const double kappa = kappa1(config, omega);
    const double sql = theta_sql(config.mirror_inertia, omega);
    OptimalPsi out;
    out.psi = std::atan2(1.0, kappa);
    out.psd = sql * sql / (2.0 * kappa);

    const auto backaction = [&](double psi) {
        const double d = std::cos(psi) / std::sin(psi) - kappa;
        return d * d;
    };
    out.psi_numeric = golden_section_minimize(backaction, 1e-9, kPi - 1e-9, 1e-12);
    if (std::abs(out.psi_numeric - out.psi) > kPsiAgreementTolerance)
        throw VerificationFailed("golden-section minimizer disagrees with arccot(kappa_1)");
    return out;
}

} // namespace optolever

#endif // OPTOLEVER_DESIGN_SOLVER_HPP
