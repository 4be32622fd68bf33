#pragma once

#include <cmath>
#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "qconv/detail/fft.hpp"
#include "qconv/field.hpp"
#include "qconv/qft.hpp"
#include "qconv/terms.hpp"

namespace qconv {

/// (f * g)(x) = sum_y f(y) g(x - y), cyclic, f always on the left.
inline QField classical_convolve(const QField& f, const QField& g)
{
    require_same_shape(f, g);
    const std::size_t n1 = f.n1(), n2 = f.n2();
    QField out(n1, n2);
    detail::parallel_for(n1, n2 * n1 * n2, [&](std::size_t x1) {
        for (std::size_t x2 = 0; x2 < n2; ++x2) {
            Quaternion acc;
            for (std::size_t y1 = 0; y1 < n1; ++y1) {
                const std::size_t d1 = (x1 + n1 - y1) % n1;
                for (std::size_t y2 = 0; y2 < n2; ++y2)
                    acc += f(y1, y2) * g(d1, (x2 + n2 - y2) % n2);
            }
            out(x1, x2) = acc;
        }
    });
    return out;
}

/// (f star g)(y) = sum_x f(x) g(x + y), cyclic.
inline QField cross_correlate(const QField& f, const QField& g)
{
    require_same_shape(f, g);
    const std::size_t n1 = f.n1(), n2 = f.n2();
    QField out(n1, n2);
    detail::parallel_for(n1, n2 * n1 * n2, [&](std::size_t y1) {
        for (std::size_t y2 = 0; y2 < n2; ++y2) {
            Quaternion acc;
            for (std::size_t x1 = 0; x1 < n1; ++x1) {
                const std::size_t s1 = (x1 + y1) % n1;
                for (std::size_t x2 = 0; x2 < n2; ++x2)
                    acc += f(x1, x2) * g(s1, (x2 + y2) % n2);
            }
            out(y1, y2) = acc;
        }
    });
    return out;
}

/// sqrt(n1 n2), the discrete counterpart of the continuous 2 pi.
inline double mustard_scale(const QField& f) { return std::sqrt(static_cast<double>(f.size())); }

/// f *_{mu,nu} g = sqrt(n1 n2) F^{-1}( F(f) F(g) ), so F(f *M g) = sqrt(n1 n2) F(f) F(g).
inline QField mustard_convolve(const QField& f, const QField& g, const RootPair& roots)
{
    require_same_shape(f, g);
    QField product = pointwise_product(qft(f, roots), qft(g, roots));
    return mustard_scale(f) * qft(product, roots, direction::inverse);
}

/// How an expansion over Mustard convolutions is evaluated.
enum class spectral_mode {
    naive,       ///< one mustard_convolve per term
    cached,      ///< shared forward spectra, one inverse transform per term
    accumulated, ///< shared forward spectra, single inverse transform of the summed spectrum
};

/// sum_t w_t op(c_t f^phi_t, d_t g^psi_t), accumulated in table order.
template <typename BinaryOp>
QField evaluate_expansion(std::span<const resolved_term> terms, const QField& f, const QField& g, BinaryOp&& op)
{
    require_same_shape(f, g);
    QField acc(f.n1(), f.n2());
    for (const auto& t : terms) {
        QField lhs = left_multiply(t.f_coeff, reflect(f, t.f_reflect));
        QField rhs = left_multiply(t.g_coeff, reflect(g, t.g_reflect));
        acc += t.weight * op(lhs, rhs);
    }
    return acc;
}

/// Each term's weighted contribution, for auditing an expansion term by term.
template <typename BinaryOp>
std::vector<QField> term_contributions(std::span<const resolved_term> terms, const QField& f, const QField& g,
                                       BinaryOp&& op)
{
    std::vector<QField> out;
    out.reserve(terms.size());
    for (const auto& t : terms)
        out.push_back(evaluate_expansion(std::span(&t, 1), f, g, op));
    return out;
}

namespace detail {

/// Forward spectra of c * h for each distinct left-coefficient c. A reflected
/// input has the reflected spectrum, F(h^phi) = F(h)^phi, so reflections cost
/// no transform.
class spectrum_cache {
public:
    spectrum_cache(const QField& h, const RootPair& roots) : h_(h), roots_(roots) {}

    QField get(const Quaternion& coeff, ReflectionIndex phi)
    {
        return reflect(base(coeff), phi);
    }

    std::size_t transforms() const { return entries_.size(); }

private:
    const QField& base(const Quaternion& coeff)
    {
        for (const auto& [c, spectrum] : entries_)
            if (c == coeff)
                return spectrum;
        entries_.emplace_back(coeff, qft(left_multiply(coeff, h_), roots_));
        return entries_.back().second;
    }

    const QField& h_;
    RootPair roots_;
    std::vector<std::pair<Quaternion, QField>> entries_;
};

/// sum_t w_t F(f-side_t) F(g-side_t).
inline QField accumulate_spectra(std::span<const resolved_term> terms, const QField& f, const QField& g,
                                 const RootPair& roots)
{
    spectrum_cache fs(f, roots), gs(g, roots);
    QField acc(f.n1(), f.n2());
    for (const auto& t : terms)
        acc += t.weight * pointwise_product(fs.get(t.f_coeff, t.f_reflect), gs.get(t.g_coeff, t.g_reflect));
    return acc;
}

} // namespace detail

/// sum_t w_t (c_t f^phi_t) *_{mu,nu} (d_t g^psi_t).
inline QField evaluate_mustard_expansion(std::span<const resolved_term> terms, const QField& f, const QField& g,
                                         const RootPair& roots, spectral_mode mode = spectral_mode::cached)
{
    require_same_shape(f, g);
    switch (mode) {
    case spectral_mode::naive:
        return evaluate_expansion(terms, f, g,
                                  [&](const QField& a, const QField& b) { return mustard_convolve(a, b, roots); });
    case spectral_mode::cached: {
        detail::spectrum_cache fs(f, roots), gs(g, roots);
        QField acc(f.n1(), f.n2());
        const double scale = mustard_scale(f);
        for (const auto& t : terms) {
            QField product =
                pointwise_product(fs.get(t.f_coeff, t.f_reflect), gs.get(t.g_coeff, t.g_reflect));
            acc += (t.weight * scale) * qft(product, roots, direction::inverse);
        }
        return acc;
    }
    case spectral_mode::accumulated:
        return mustard_scale(f) * qft(detail::accumulate_spectra(terms, f, g, roots), roots, direction::inverse);
    }
    return QField(f.n1(), f.n2());
}

inline QField evaluate_mustard_expansion(const std::vector<term>& table, const QField& f, const QField& g,
                                         const RootPair& roots, spectral_mode mode = spectral_mode::cached)
{
    const auto resolved = resolve(table, roots);
    return evaluate_mustard_expansion(std::span<const resolved_term>(resolved), f, g, roots, mode);
}

/// sqrt(n1 n2) sum_t w_t F(c_t f^phi_t) F(d_t g^psi_t).
inline QField evaluate_spectral_expansion(std::span<const resolved_term> terms, const QField& f, const QField& g,
                                          const RootPair& roots)
{
    require_same_shape(f, g);
    return mustard_scale(f) * detail::accumulate_spectra(terms, f, g, roots);
}

/// Mustard convolution evaluated through 32 classical convolutions.
inline QField mustard_via_classical(const QField& f, const QField& g, const RootPair& roots)
{
    const auto resolved = resolve(mustard_from_classical_terms(), roots);
    return evaluate_expansion(std::span<const resolved_term>(resolved), f, g, classical_convolve);
}

/// Classical convolution from four Mustard convolutions with the single root mu.
inline QField classical_via_mustard_equal(const QField& f, const QField& g, const Root& mu,
                                          spectral_mode mode = spectral_mode::cached)
{
    return evaluate_mustard_expansion(classical_from_mustard_equal_terms(), f, g, RootPair(mu, mu), mode);
}

inline void require_perpendicular(const RootPair& roots)
{
    if (!roots.perpendicular())
        throw error(errc::roots_not_perpendicular,
                    "anticommutator " + std::to_string(roots.a()) + " exceeds 1e-12; use the general expansion");
}

/// Classical convolution from 16 Mustard convolutions. Requires |a| <= 1e-12.
inline QField classical_via_mustard_perp(const QField& f, const QField& g, const RootPair& roots,
                                         spectral_mode mode = spectral_mode::cached)
{
    require_same_shape(f, g);
    require_perpendicular(roots);
    return evaluate_mustard_expansion(classical_from_mustard_perp_terms(), f, g, roots, mode);
}

/// Classical convolution from 40 Mustard convolutions, any root pair.
inline QField classical_via_mustard_general(const QField& f, const QField& g, const RootPair& roots,
                                            spectral_mode mode = spectral_mode::cached)
{
    return evaluate_mustard_expansion(classical_from_mustard_general_terms(), f, g, roots, mode);
}

/// F(f * g) as sqrt(n1 n2) / 4 times 16 spectral products. Requires |a| <= 1e-12.
inline QField convolution_spectrum(const QField& f, const QField& g, const RootPair& roots)
{
    require_same_shape(f, g);
    require_perpendicular(roots);
    const auto resolved = resolve(convolution_spectrum_terms(), roots);
    return evaluate_spectral_expansion(resolved, f, g, roots);
}

/// F(f star g) as sqrt(n1 n2) / 4 times 16 spectral products. Requires |a| <= 1e-12.
inline QField correlation_spectrum(const QField& f, const QField& g, const RootPair& roots)
{
    require_same_shape(f, g);
    require_perpendicular(roots);
    const auto resolved = resolve(correlation_spectrum_terms(), roots);
    return evaluate_spectral_expansion(resolved, f, g, roots);
}

} // namespace qconv
