#pragma once

#include <cmath>
#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "qconv/detail/fft.hpp"
#include "qconv/field.hpp"
#include "qconv/quaternion.hpp"

namespace qconv {

enum class direction { forward, inverse };

namespace detail {

/// table[k] = e^{sign * mu * 2 pi k / n}, k in [0, n).
inline std::vector<Quaternion> twiddles(const Root& mu, std::size_t n, double sign)
{
    std::vector<Quaternion> table(n);
    for (std::size_t k = 0; k < n; ++k)
        table[k] = exp_angle(mu, sign * 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(n));
    return table;
}

/// out[u] = sum_x table[x u mod n] * in[x], exponential on the left.
inline void direct_left_pass(std::span<const Quaternion> in, std::span<Quaternion> out,
                             const std::vector<Quaternion>& table)
{
    const std::size_t n = in.size();
    for (std::size_t u = 0; u < n; ++u) {
        Quaternion acc;
        for (std::size_t x = 0; x < n; ++x)
            acc += table[(x * u) % n] * in[x];
        out[u] = acc;
    }
}

/// Applies a 1-D pass along both axes in the given order, then scales.
template <typename RowPass, typename ColumnPass>
QField separable(const QField& f, RowPass&& along_axis2, ColumnPass&& along_axis1, bool axis2_first, double scale)
{
    const std::size_t n1 = f.n1(), n2 = f.n2();
    QField tmp(n1, n2), out(n1, n2);

    auto rows = [&](const QField& src, QField& dst) {
        parallel_for(n1, n2 * n2, [&](std::size_t m) { along_axis2(src.row(m), dst.row(m)); });
    };
    auto cols = [&](const QField& src, QField& dst) {
        parallel_for(n2, n1 * n1, [&](std::size_t n) {
            std::vector<Quaternion> in(n1), res(n1);
            for (std::size_t m = 0; m < n1; ++m)
                in[m] = src(m, n);
            along_axis1(std::span<const Quaternion>(in), std::span<Quaternion>(res));
            for (std::size_t m = 0; m < n1; ++m)
                dst(m, n) = res[m];
        });
    };

    if (axis2_first) {
        rows(f, tmp);
        cols(tmp, out);
    } else {
        cols(f, tmp);
        rows(tmp, out);
    }
    out *= scale;
    return out;
}

/// Unit pure quaternion perpendicular to mu.
inline Quaternion perpendicular_unit(const Root& mu)
{
    const Quaternion& m = mu.value();
    const double ax = std::abs(m.x), ay = std::abs(m.y), az = std::abs(m.z);
    Quaternion e = (ax <= ay && ax <= az) ? Quaternion::i() : (ay <= az ? Quaternion::j() : Quaternion::k());
    e -= vector_dot(e, m) * m;
    return e / norm(e);
}

/// Left-exponential 1-D transform h(u) = sum_x e^{sign mu 2 pi x u / n} q(x).
///
/// With beta a unit pure quaternion perpendicular to mu, the commuting part of
/// q lies in span{1, mu} and is transformed as a complex sequence with the
/// same sign. The anticommuting part equals beta * w with w in span{1, mu};
/// pulling the exponential through beta flips its sign, so w is transformed
/// at the conjugate frequency.
class left_fft_pass {
public:
    left_fft_pass(const Root& mu, fft_sign sign) : mu_(mu), beta_(perpendicular_unit(mu)), sign_(sign) {}

    void operator()(std::span<const Quaternion> in, std::span<Quaternion> out) const
    {
        const std::size_t n = in.size();
        std::vector<cplx> z(n), w(n), zt(n), wt(n);
        const Quaternion& m = mu_.value();
        for (std::size_t x = 0; x < n; ++x) {
            const Quaternion c = commuting_part(in[x], mu_, commutation::commuting);
            const Quaternion a = commuting_part(in[x], mu_, commutation::anticommuting);
            const Quaternion aw = -(beta_ * a);
            z[x] = {c.w, vector_dot(c, m)};
            w[x] = {aw.w, vector_dot(aw, m)};
        }
        const fft_sign flipped = sign_ == fft_sign::negative ? fft_sign::positive : fft_sign::negative;
        fft(z, zt, sign_);
        fft(w, wt, flipped);
        for (std::size_t u = 0; u < n; ++u) {
            const Quaternion commuting = Quaternion(zt[u].real()) + zt[u].imag() * m;
            const Quaternion anticommuting = Quaternion(wt[u].real()) + wt[u].imag() * m;
            out[u] = commuting + beta_ * anticommuting;
        }
    }

private:
    Root mu_;
    Quaternion beta_;
    fft_sign sign_;
};

inline double unitary_scale(const QField& f) { return 1.0 / std::sqrt(static_cast<double>(f.size())); }

} // namespace detail

/// Left quaternion Fourier transform on the cyclic grid:
///
///   F(u1, u2) = C^{-1} sum_x e^{-mu 2 pi x1 u1 / n1} e^{-nu 2 pi x2 u2 / n2} f(x1, x2),
///
/// with C = sqrt(n1 n2). DC sits at (0, 0). Evaluated as two direct 1-D sums.
inline QField dft_left(const QField& f, const RootPair& roots)
{
    const auto e_mu = detail::twiddles(roots.mu(), f.n1(), -1.0);
    const auto e_nu = detail::twiddles(roots.nu(), f.n2(), -1.0);
    return detail::separable(
        f, [&](auto in, auto out) { detail::direct_left_pass(in, out, e_nu); },
        [&](auto in, auto out) { detail::direct_left_pass(in, out, e_mu); }, true, detail::unitary_scale(f));
}

/// Inverse of dft_left: C^{-1} sum_x e^{nu 2 pi x2 y2 / n2} e^{mu 2 pi x1 y1 / n1} F(x).
inline QField idft_left(const QField& spectrum, const RootPair& roots)
{
    const auto e_mu = detail::twiddles(roots.mu(), spectrum.n1(), 1.0);
    const auto e_nu = detail::twiddles(roots.nu(), spectrum.n2(), 1.0);
    return detail::separable(
        spectrum, [&](auto in, auto out) { detail::direct_left_pass(in, out, e_nu); },
        [&](auto in, auto out) { detail::direct_left_pass(in, out, e_mu); }, false,
        detail::unitary_scale(spectrum));
}

/// True when fast_qft takes the FFT route for this shape.
inline bool fast_path_applies(const QField& f)
{
    return detail::is_power_of_two(f.n1()) && detail::is_power_of_two(f.n2());
}

/// Same result as dft_left / idft_left. Power-of-two grids are factored into
/// per-axis complex FFTs; other sizes use the direct evaluation.
inline QField fast_qft(const QField& f, const RootPair& roots, direction dir)
{
    if (!fast_path_applies(f))
        return dir == direction::forward ? dft_left(f, roots) : idft_left(f, roots);

    using detail::fft_sign;
    const fft_sign sign = dir == direction::forward ? fft_sign::negative : fft_sign::positive;
    const detail::left_fft_pass along_mu(roots.mu(), sign);
    const detail::left_fft_pass along_nu(roots.nu(), sign);
    // Forward: nu acts first (innermost), mu outermost. Inverse: the reverse.
    return detail::separable(f, along_nu, along_mu, dir == direction::forward, detail::unitary_scale(f));
}

/// Transform used internally by the convolution code.
inline QField qft(const QField& f, const RootPair& roots, direction dir = direction::forward)
{
    return fast_qft(f, roots, dir);
}

} // namespace qconv
