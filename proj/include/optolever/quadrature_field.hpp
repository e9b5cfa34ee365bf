#ifndef OPTOLEVER_QUADRATURE_FIELD_HPP
#define OPTOLEVER_QUADRATURE_FIELD_HPP

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include "optolever/errors.hpp"
#include "optolever/gaussian_beam.hpp"
#include "optolever/hg_modes.hpp"

// Two-photon quadrature algebra at a single sideband frequency. Fields are
// represented only through real 2x2 transfer matrices acting on (a1, a2)
// and through PSD quadratic forms; vacuum inputs have unit one-sided PSD
// per quadrature and no cross-correlation.

namespace optolever {

using Vec2 = std::array<double, 2>;

struct Mat2
{
    double m11 = 1.0, m12 = 0.0;
    double m21 = 0.0, m22 = 1.0;

    static constexpr Mat2 identity() { return {}; }

    constexpr double determinant() const { return m11 * m22 - m12 * m21; }
    constexpr Mat2 transposed() const { return {m11, m21, m12, m22}; }

    friend constexpr Mat2 operator*(const Mat2& a, const Mat2& b)
    {
        return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
                a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
    }

    friend constexpr Vec2 operator*(const Mat2& a, const Vec2& v)
    {
        return {a.m11 * v[0] + a.m12 * v[1], a.m21 * v[0] + a.m22 * v[1]};
    }

    friend constexpr bool operator==(const Mat2&, const Mat2&) = default;
};

constexpr double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

// Row vector times matrix: v^T M.
constexpr Vec2 row_times(const Vec2& v, const Mat2& m)
{
    return {v[0] * m.m11 + v[1] * m.m21, v[0] * m.m12 + v[1] * m.m22};
}

/// Symplectic form J = [[0, 1], [-1, 0]].
inline constexpr Mat2 kSymplecticForm{0.0, 1.0, -1.0, 0.0};

/// max |M^T J M - J| over the four entries.
inline double symplectic_deviation(const Mat2& m)
{
    const Mat2 d = m.transposed() * kSymplecticForm * m;
    return std::max({std::abs(d.m11 - kSymplecticForm.m11), std::abs(d.m12 - kSymplecticForm.m12),
                     std::abs(d.m21 - kSymplecticForm.m21), std::abs(d.m22 - kSymplecticForm.m22)});
}

/// Quadrature rotation by angle: (a1, a2) -> (cos a1 + sin a2, -sin a1 + cos a2).
inline Mat2 quadrature_rotation(double angle)
{
    const double c = std::cos(angle);
    const double s = std::sin(angle);
    return {c, s, -s, c};
}

/// Quadrature amplitudes of one mode at one sideband frequency, referred to
/// the mode-shared phase at reference_z.
struct QuadratureVector
{
    double a1 = 0.0;
    double a2 = 0.0;
    ModeIndex mode = kMode00;
    double reference_z = 0.0;
};

/// Re-refer the quadratures to new_z: rotation by (l+m)*(gouy(new_z) - gouy(reference_z)).
inline QuadratureVector gouy_rotate(const QuadratureVector& q, const BeamParams& beam, double new_z)
{
    const double angle = q.mode.order() * gouy_phase_between(beam, q.reference_z, new_z);
    const Vec2 r = quadrature_rotation(angle) * Vec2{q.a1, q.a2};
    return {r[0], r[1], q.mode, new_z};
}

/// Frequency-domain input-output relation b = M a + signal_gain * s, where s
/// is an external signal normalized to its standard quantum limit.
struct TwoPhotonTransfer
{
    Mat2 matrix;
    Vec2 signal_gain{0.0, 0.0};
    std::string label;
};

/// `outer` applied after `inner`.
inline TwoPhotonTransfer compose(const TwoPhotonTransfer& outer, const TwoPhotonTransfer& inner)
{
    const Vec2 carried = outer.matrix * inner.signal_gain;
    return {outer.matrix * inner.matrix,
            {carried[0] + outer.signal_gain[0], carried[1] + outer.signal_gain[1]},
            outer.label + " * " + inner.label};
}

/// Radiation-pressure shear: b1 = a1, b2 = -kappa a1 + a2 + sqrt(2 kappa) s.
inline TwoPhotonTransfer ponderomotive(double kappa)
{
    if (!(std::isfinite(kappa) && kappa >= 0.0))
        throw InvalidArgument("ponderomotive coupling must be finite and non-negative");
    return {{1.0, 0.0, -kappa, 1.0}, {0.0, std::sqrt(2.0 * kappa)}, "ponderomotive"};
}

/// Free propagation of mode `mode` from z_from to z_to as a quadrature transfer.
inline TwoPhotonTransfer gouy_transfer(const BeamParams& beam, ModeIndex mode, double z_from, double z_to)
{
    return {quadrature_rotation(mode.order() * gouy_phase_between(beam, z_from, z_to)), {0.0, 0.0}, "gouy"};
}

struct Readout
{
    Vec2 noise_gain;     // v^T M
    double signal_gain;  // v . signal_gain
};

/// Project a transfer onto an arbitrary readout vector.
inline Readout quadrature_readout(const TwoPhotonTransfer& t, const Vec2& readout)
{
    return {row_times(readout, t.matrix), dot(readout, t.signal_gain)};
}

/// Homodyne readout b1 cos(angle) + b2 sin(angle), angle in (0, pi).
///
/// The second term is b2, not b1: a b1-only combination carries no signal
/// and does not reproduce the homodyne noise formula.
inline Readout homodyne_readout(const TwoPhotonTransfer& t, double angle)
{
    if (!(angle > 0.0 && angle < kPi))
        throw DegenerateReadout("homodyne angle must lie in (0, pi); got " + std::to_string(angle));
    return quadrature_readout(t, {std::cos(angle), std::sin(angle)});
}

/// One-sided PSD matrix of a quadrature pair.
struct PsdMatrix
{
    double s11 = 1.0, s12 = 0.0;
    double s21 = 0.0, s22 = 1.0;

    static constexpr PsdMatrix vacuum() { return {}; }

    bool is_positive_semidefinite(double tol = 0.0) const
    {
        const double det = s11 * s22 - s12 * s21;
        return std::abs(s12 - s21) <= tol && s11 >= -tol && s22 >= -tol && det >= -tol;
    }
};

/// v^T S v.
inline double output_noise_psd(const Vec2& noise_gain, const PsdMatrix& input = PsdMatrix::vacuum())
{
    const double v1 = noise_gain[0];
    const double v2 = noise_gain[1];
    return input.s11 * v1 * v1 + (input.s12 + input.s21) * v1 * v2 + input.s22 * v2 * v2;
}

} // namespace optolever

#endif // OPTOLEVER_QUADRATURE_FIELD_HPP
