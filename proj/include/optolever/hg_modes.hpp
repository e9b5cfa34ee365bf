#ifndef OPTOLEVER_HG_MODES_HPP
#define OPTOLEVER_HG_MODES_HPP

#include <cmath>
#include <complex>
#include <compare>
#include <map>
#include <string>
#include <vector>

#include "optolever/errors.hpp"
#include "optolever/gaussian_beam.hpp"

namespace optolever {

inline constexpr int kMaxHermiteOrder = 12;
inline constexpr int kMaxModeOrder = 6;

/// Hermite-Gaussian mode label (l along x, m along y).
class ModeIndex
{
public:
    constexpr ModeIndex(int l, int m) : l_(l), m_(m)
    {
        if (l < 0 || m < 0)
            throw InvalidArgument("mode indices must be non-negative");
        if (l + m > kMaxModeOrder)
            throw InvalidArgument("mode order l+m=" + std::to_string(l + m) + " exceeds supported maximum "
                                  + std::to_string(kMaxModeOrder));
    }

    constexpr int l() const { return l_; }
    constexpr int m() const { return m_; }
    constexpr int order() const { return l_ + m_; }

    friend constexpr auto operator<=>(const ModeIndex&, const ModeIndex&) = default;

    std::string to_string() const { return std::to_string(l_) + std::to_string(m_); }

private:
    int l_;
    int m_;
};

inline constexpr ModeIndex kMode00{0, 0};
inline constexpr ModeIndex kMode10{1, 0};

/// All modes with l+m <= max_order, ordered by total order then by l descending.
inline std::vector<ModeIndex> modes_up_to(int max_order)
{
    if (max_order < 0 || max_order > kMaxModeOrder)
        throw InvalidArgument("max mode order out of range");
    std::vector<ModeIndex> out;
    for (int n = 0; n <= max_order; ++n)
        for (int l = n; l >= 0; --l)
            out.emplace_back(l, n - l);
    return out;
}

/// Physicists' Hermite polynomial H_n(x), n <= 12.
inline double hermite(int n, double x)
{
    if (n < 0 || n > kMaxHermiteOrder)
        throw InvalidArgument("Hermite order " + std::to_string(n) + " outside [0, "
                              + std::to_string(kMaxHermiteOrder) + "]");
    double h_prev = 1.0;
    if (n == 0)
        return h_prev;
    double h = 2.0 * x;
    for (int k = 1; k < n; ++k) {
        const double next = 2.0 * x * h - 2.0 * k * h_prev;
        h_prev = h;
        h = next;
    }
    return h;
}

namespace detail {

inline double factorial(int n)
{
    double f = 1.0;
    for (int k = 2; k <= n; ++k)
        f *= k;
    return f;
}

// One-dimensional factor of u_lm: u_lm(x, y) = hg_factor(l, x) * hg_factor(m, y).
inline double hg_factor(int n, double x, double width)
{
    const double norm = std::sqrt(std::sqrt(2.0 / kPi) / width) / std::sqrt(std::ldexp(factorial(n), n));
    return norm * std::exp(-x * x / (width * width)) * hermite(n, std::sqrt(2.0) * x / width);
}

} // namespace detail

/// Real transverse envelope u_lm(x, y, z) in 1/m.
inline double mode_amplitude(const BeamParams& beam, ModeIndex idx, double x, double y, double z)
{
    const double w = beam_width(beam, z);
    return detail::hg_factor(idx.l(), x, w) * detail::hg_factor(idx.m(), y, w);
}

inline constexpr int kOverlapPointsPerAxis = 200;
inline constexpr double kOverlapHalfWidthInBeamWidths = 6.0;
inline constexpr double kOverlapConvergenceTolerance = 1e-7;

namespace detail {

// Trapezoid tensor rule over [-L, L]^2 with n points per axis. The integrand
// is Gaussian-damped, so the endpoint weights are irrelevant at L = 6w.
inline double overlap_on_grid(ModeIndex a, ModeIndex b, double width, int n)
{
    const double half = kOverlapHalfWidthInBeamWidths * width;
    const double h = 2.0 * half / (n - 1);
    std::vector<double> fx(n), fy(n);
    for (int i = 0; i < n; ++i) {
        const double x = -half + i * h;
        const double wgt = (i == 0 || i == n - 1) ? 0.5 : 1.0;
        fx[i] = wgt * hg_factor(a.l(), x, width) * hg_factor(b.l(), x, width);
        fy[i] = wgt * hg_factor(a.m(), x, width) * hg_factor(b.m(), x, width);
    }
    double sum = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            sum += fx[i] * fy[j];
    return sum * h * h;
}

} // namespace detail

/// Numerical overlap integral of u_a * u_b over the transverse plane at z.
///
/// Uses a 200-point-per-axis tensor trapezoid rule over +-6 w(z), then one
/// refinement (spacing halved). Throws QuadratureNotConverged when the two
/// differ by more than 1e-7; returns the refined value.
inline double overlap(const BeamParams& beam, ModeIndex a, ModeIndex b, double z)
{
    const double w = beam_width(beam, z);
    const double coarse = detail::overlap_on_grid(a, b, w, kOverlapPointsPerAxis);
    const double fine = detail::overlap_on_grid(a, b, w, 2 * kOverlapPointsPerAxis - 1);
    if (std::abs(fine - coarse) > kOverlapConvergenceTolerance)
        throw QuadratureNotConverged("overlap " + a.to_string() + "/" + b.to_string()
                                     + " changed by more than 1e-7 under refinement");
    return fine;
}

/// Row-major overlap matrix over the given modes.
inline std::vector<std::vector<double>> overlap_matrix(const BeamParams& beam, const std::vector<ModeIndex>& modes,
                                                       double z)
{
    const std::size_t n = modes.size();
    std::vector<std::vector<double>> out(n, std::vector<double>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            out[i][j] = out[j][i] = overlap(beam, modes[i], modes[j], z);
    return out;
}

/// Transverse displacement and tilt of a beam, interpreted at reference_z:
/// delta_x is the offset at reference_z, delta_theta the tilt relative to
/// the line from the centre of curvature to that point.
struct DisplacementTilt
{
    double delta_x = 0.0;      // m
    double delta_theta = 0.0;  // rad
    double reference_z = 0.0;  // m
};

inline constexpr double kSmallSignalBound = 0.1;

inline void check_small_signal(const BeamParams& beam, const DisplacementTilt& dt)
{
    const double x_ratio = std::abs(dt.delta_x) / beam_width(beam, dt.reference_z);
    const double t_ratio = std::abs(dt.delta_theta) / divergence(beam, dt.reference_z);
    if (!(x_ratio < kSmallSignalBound))
        throw SmallSignalViolation("|delta_x|/w = " + std::to_string(x_ratio) + " is not below 0.1");
    if (!(t_ratio < kSmallSignalBound))
        throw SmallSignalViolation("|delta_theta|/alpha = " + std::to_string(t_ratio) + " is not below 0.1");
}

struct ModeDecomposition
{
    enum class Convention
    {
        normalized,   // sum |f_lm|^2 = 1
        first_order,  // f_00 = 1, small perturbative f_10; unnormalized
    };

    double reference_z = 0.0;  // modes referred so they share phase here
    Convention convention = Convention::normalized;
    std::map<ModeIndex, std::complex<double>> coefficients;

    std::complex<double> coefficient(ModeIndex idx) const
    {
        const auto it = coefficients.find(idx);
        return it == coefficients.end() ? std::complex<double>{} : it->second;
    }

    double norm_squared() const
    {
        double s = 0.0;
        for (const auto& [idx, f] : coefficients)
            s += std::norm(f);
        return s;
    }
};

/// First-order decomposition of a displaced/tilted fundamental beam:
/// f_00 = 1, f_10 = delta_x/w(Z) + i*delta_theta/alpha(Z), referred to Z.
inline ModeDecomposition decompose_displaced(const BeamParams& beam, const DisplacementTilt& dt)
{
    check_small_signal(beam, dt);
    ModeDecomposition out;
    out.reference_z = dt.reference_z;
    out.convention = ModeDecomposition::Convention::first_order;
    out.coefficients[kMode00] = 1.0;
    out.coefficients[kMode10] = {dt.delta_x / beam_width(beam, dt.reference_z),
                                 dt.delta_theta / divergence(beam, dt.reference_z)};
    return out;
}

namespace detail {

// (dx, dtheta) at z  ->  (dx, dtheta) at the waist. Unit determinant.
inline DisplacementTilt to_waist(const BeamParams& beam, const DisplacementTilt& dt)
{
    const double z = dt.reference_z;
    const double c = curvature(beam, z);
    return {dt.delta_x * (1.0 - z * c) + z * dt.delta_theta, dt.delta_theta - c * dt.delta_x, 0.0};
}

inline DisplacementTilt from_waist(const BeamParams& beam, const DisplacementTilt& waist, double z)
{
    const double c = curvature(beam, z);
    return {waist.delta_x - z * waist.delta_theta, c * waist.delta_x + (1.0 - z * c) * waist.delta_theta, z};
}

} // namespace detail

/// Re-express a displacement/tilt pair at a different reference position.
inline DisplacementTilt reference_transform(const BeamParams& beam, const DisplacementTilt& dt, double new_z)
{
    check_small_signal(beam, dt);
    const DisplacementTilt out =
        new_z == dt.reference_z ? dt : detail::from_waist(beam, detail::to_waist(beam, dt), new_z);
    check_small_signal(beam, out);
    return out;
}

} // namespace optolever

#endif // OPTOLEVER_HG_MODES_HPP
