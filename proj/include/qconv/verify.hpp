#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "qconv/conv.hpp"
#include "qconv/field.hpp"
#include "qconv/qft.hpp"
#include "qconv/quaternion.hpp"
#include "qconv/random.hpp"
#include "qconv/terms.hpp"

namespace qconv {

inline const std::vector<std::string>& verify_suites()
{
    static const std::vector<std::string> names{"algebra", "qft",   "thm21", "thm31",
                                                "thm32",   "thm41", "thm51", "thm52"};
    return names;
}

/// Test-harness hook: scales one term's weight inside one suite's expansion.
struct term_corruption {
    std::string suite;
    std::size_t index = 0;
    double scale = 1.5;
};

struct verify_options {
    std::string suite = "all";
    std::uint64_t seed = 42;
    std::size_t size = 8;
    double tolerance = 1e-9;
    std::size_t instances = 5;
    std::optional<term_corruption> corrupt;
};

/// Worst error of one identity across all drawn instances.
struct identity_check {
    std::string suite;
    std::string identity;
    double max_error = 0.0;
    /// Term most likely responsible when an expansion fails.
    std::string culprit;
};

/// Index of the term whose contribution best explains `residual` in the
/// least-squares sense; ties go to the lowest index.
inline std::size_t locate_term(const QField& residual, const std::vector<QField>& contributions)
{
    auto dot = [](const QField& a, const QField& b) {
        double s = 0.0;
        for (std::size_t t = 0; t < a.size(); ++t) {
            const Quaternion &p = a.data()[t], &q = b.data()[t];
            s += p.w * q.w + p.x * q.x + p.y * q.y + p.z * q.z;
        }
        return s;
    };
    const double rr = dot(residual, residual);
    std::size_t best = 0;
    double best_left = rr;
    for (std::size_t k = 0; k < contributions.size(); ++k) {
        const double tt = dot(contributions[k], contributions[k]);
        if (tt <= 0.0)
            continue;
        const double rt = dot(residual, contributions[k]);
        const double left = rr - rt * rt / tt;
        if (left < best_left * (1.0 - 1e-9)) {
            best_left = left;
            best = k;
        }
    }
    return best;
}

namespace detail {

class verifier {
public:
    explicit verifier(const verify_options& opt) : opt_(opt), rng_(opt.seed) {}

    std::vector<identity_check> run()
    {
        for (const auto& name : verify_suites()) {
            if (opt_.suite != "all" && opt_.suite != name)
                continue;
            if (name == "algebra")
                algebra();
            else if (name == "qft")
                transform();
            else if (name == "thm21")
                thm21();
            else if (name == "thm31")
                thm31();
            else if (name == "thm32")
                thm32();
            else if (name == "thm41")
                thm41();
            else if (name == "thm51")
                thm51();
            else if (name == "thm52")
                thm52();
        }
        return std::move(results_);
    }

private:
    void record(const std::string& suite, const std::string& identity, double err, std::string culprit = {})
    {
        for (auto& r : results_) {
            if (r.suite == suite && r.identity == identity) {
                if (err > r.max_error || std::isnan(err)) {
                    r.max_error = err;
                    if (!culprit.empty())
                        r.culprit = std::move(culprit);
                }
                return;
            }
        }
        results_.push_back({suite, identity, err, std::move(culprit)});
    }

    std::size_t n() const { return std::max<std::size_t>(1, opt_.size); }

    std::vector<resolved_term> resolved(const std::string& suite, const std::vector<term>& table,
                                        const RootPair& roots) const
    {
        auto out = resolve(table, roots);
        if (opt_.corrupt && opt_.corrupt->suite == suite && opt_.corrupt->index < out.size())
            out[opt_.corrupt->index].weight *= opt_.corrupt->scale;
        return out;
    }

    /// Checks value == reference; on failure names the term that best explains the residual.
    template <typename BinaryOp>
    void expansion(const std::string& suite, const std::string& identity, const std::vector<term>& table,
                   const std::vector<resolved_term>& terms, const QField& value, const QField& reference,
                   const QField& f, const QField& g, BinaryOp&& op, const char* op_symbol)
    {
        const double err = max_abs_diff(value, reference);
        std::string culprit;
        if (!(err <= opt_.tolerance)) {
            const auto parts = term_contributions(std::span<const resolved_term>(terms), f, g, op);
            const std::size_t k = locate_term(value - reference, parts);
            culprit = "term #" + std::to_string(k) + " " + label(table[k], op_symbol);
        }
        record(suite, identity, err, std::move(culprit));
    }

    void algebra()
    {
        const std::string s = "algebra";
        const Quaternion i = Quaternion::i(), j = Quaternion::j(), k = Quaternion::k();
        record(s, "basis relations i^2 = j^2 = k^2 = ijk = -1",
               std::max({norm(i * i + 1.0), norm(j * j + 1.0), norm(k * k + 1.0), norm(i * j * k + 1.0)}));
        for (std::size_t t = 0; t < opt_.instances; ++t) {
            const Quaternion p = rng_.quaternion(), q = rng_.quaternion(), r = rng_.quaternion();
            record(s, "associativity", norm((p * q) * r - p * (q * r)));
            record(s, "distributivity", norm(p * (q + r) - (p * q + p * r)));
            record(s, "norm multiplicativity", std::abs(norm(p * q) - norm(p) * norm(q)));

            const Root mu = rng_.root(), nu = rng_.root();
            const double a = anticommutator(mu, nu);
            const Quaternion m = mu, v = nu;
            record(s, "root squares to -1", norm(m * m + 1.0));
            record(s, "anticommutator is real", norm(vector_part(m * v + v * m)) + std::abs(scalar_part(m * v + v * m) - a));

            const Quaternion minus = commuting_part(m, nu, commutation::commuting);
            const Quaternion plus = commuting_part(m, nu, commutation::anticommuting);
            record(s, "split squares mu+^2 + mu-^2 = -1", norm(plus * plus + minus * minus + 1.0));
            record(s, "split anticommute mu+mu- + mu-mu+ = 0", norm(plus * minus + minus * plus));
            record(s, "explicit split mu- = -(a/2) nu, mu+ = mu + (a/2) nu",
                   std::max(norm(minus + (a / 2) * v), norm(plus - (m + (a / 2) * v))));

            const double theta = 2.0 * std::numbers::pi * rng_.symmetric();
            const Quaternion qm = commuting_part(q, mu, commutation::commuting);
            const Quaternion qp = commuting_part(q, mu, commutation::anticommuting);
            record(s, "exponential commutation q(+-) e^{theta mu} = e^{-+theta mu} q(+-)",
                   std::max(norm(qm * exp_angle(mu, theta) - exp_angle(mu, theta) * qm),
                            norm(qp * exp_angle(mu, theta) - exp_angle(mu, -theta) * qp)));

            const Quaternion e = exp_angle(nu, -theta);
            for (int jj = 0; jj < 2; ++jj) {
                const double sgn = jj == 0 ? 1.0 : -1.0;
                const Quaternion part = commuting_part(e, mu, static_cast<commutation>(jj));
                const Quaternion formula = 0.5 * (exp_angle(nu, -theta) + sgn * exp_angle(nu, theta) +
                                                  (a / 2) * sgn * exp_angle(mu, theta) -
                                                  (a / 2) * sgn * exp_angle(mu, -theta));
                record(s, "commuting part of e^{-nu theta}, general a", norm(part - formula));
            }

            const Root perp = rng_.perpendicular_root(mu);
            const Quaternion ep = exp_angle(perp, -theta);
            record(s, "commuting part of e^{-nu theta}, a = 0",
                   std::max(norm(commuting_part(ep, mu, commutation::commuting) - std::cos(theta)),
                            norm(commuting_part(ep, mu, commutation::anticommuting) +
                                 std::sin(theta) * perp.value())));

            record(s, "single swap",
                   norm(m * exp_angle(nu, -theta) -
                        (exp_angle(nu, theta) * (m + (a / 2) * v) - exp_angle(nu, -theta) * ((a / 2) * v))));

            const double theta2 = 2.0 * std::numbers::pi * rng_.symmetric();
            const Quaternion lhs = v * m * exp_angle(mu, -theta) * exp_angle(nu, -theta2);
            const Quaternion rhs = exp_angle(mu, theta) * exp_angle(nu, theta2) * (v * m - a / 2) +
                                   exp_angle(mu, -theta) * exp_angle(nu, -theta2) * (a / 2);
            record(s, "double swap", norm(lhs - rhs));
        }
    }

    void transform()
    {
        const std::string s = "qft";
        for (std::size_t t = 0; t < opt_.instances; ++t) {
            const QField f = rng_.field(n(), n());
            const QField g = rng_.field(n(), n());
            const RootPair roots = rng_.root_pair();
            const QField F = dft_left(f, roots);

            record(s, "round trip idft(dft(f)) = f", max_abs_diff(idft_left(F, roots), f));
            record(s, "fast path matches direct",
                   std::max(max_abs_diff(fast_qft(f, roots, direction::forward), F),
                            max_abs_diff(fast_qft(f, roots, direction::inverse), idft_left(f, roots))));
            const double ef = energy(f);
            record(s, "parseval (relative)", std::abs(energy(F) - ef) / std::max(ef, 1e-300));

            const double alpha = rng_.symmetric(), beta = rng_.symmetric();
            record(s, "real linearity",
                   max_abs_diff(dft_left(alpha * f + beta * g, roots), alpha * F + beta * dft_left(g, roots)));

            for (int p1 = 0; p1 < 2; ++p1) {
                for (int p2 = 0; p2 < 2; ++p2) {
                    const RootPair flipped(p1 ? -roots.mu() : roots.mu(), p2 ? -roots.nu() : roots.nu());
                    record(s, "change of signs",
                           max_abs_diff(dft_left(f, flipped), dft_left(reflect(f, {p1, p2}), roots)));
                }
            }

            const RootPair perp = rng_.perpendicular_pair();
            const QField Fp = dft_left(g, perp);
            for (int kk = 0; kk < 2; ++kk) {
                for (int ll = 0; ll < 2; ++ll) {
                    Quaternion c = 1.0;
                    if (kk)
                        c = c * perp.mu().value();
                    if (ll)
                        c = c * perp.nu().value();
                    record(s, "root passing, anticommuting roots",
                           max_abs_diff(left_multiply(c, Fp), dft_left(left_multiply(c, reflect(g, {ll, kk})), perp)));
                }
            }

            root_passing_general(g, roots);
        }
    }

    void root_passing_general(const QField& g, const RootPair& roots)
    {
        const std::string s = "qft";
        const double a = roots.a();
        const Quaternion mu = roots.mu(), nu = roots.nu();
        auto F = [&](const Quaternion& c, ReflectionIndex phi) { return dft_left(left_multiply(c, reflect(g, phi)), roots); };
        const QField G = dft_left(g, roots);

        const QField mu_rhs = F(mu, {0, 1}) + (a / 2) * F(nu, {0, 1}) - (a / 2) * F(nu, {0, 0});
        record(s, "root passing general: mu F(g)", max_abs_diff(left_multiply(mu, G), mu_rhs));

        const QField nu_rhs = F(nu, {1, 0}) + (a / 2) * F(mu, {1, 1}) - (a / 2) * F(mu, {0, 1}) +
                              (a * a / 4) * (F(nu, {1, 1}) - F(nu, {1, 0}) - F(nu, {0, 1}) + F(nu, {0, 0}));
        record(s, "root passing general: nu F(g)", max_abs_diff(left_multiply(nu, G), nu_rhs));

        const QField nm_rhs = F(nu * mu, {1, 1}) - (a / 2) * F(1.0, {1, 1}) + (a / 2) * F(1.0, {0, 0});
        record(s, "root passing general: nu mu F(g)", max_abs_diff(left_multiply(nu * mu, G), nm_rhs));

        const QField mn_rhs = F(mu * nu, {1, 1}) - (a / 2) * F(1.0, {1, 1}) + (a / 2) * F(1.0, {0, 0});
        record(s, "root passing general: mu nu F(g)", max_abs_diff(left_multiply(mu * nu, G), mn_rhs));
    }

    void mustard_checks(const std::string& identity, const RootPair& roots)
    {
        const std::string s = "thm21";
        const QField f = rng_.field(n(), n()), g = rng_.field(n(), n());
        const auto table = mustard_from_classical_terms();
        const auto terms = resolved(s, table, roots);
        const QField value = evaluate_expansion(std::span<const resolved_term>(terms), f, g, classical_convolve);
        expansion(s, identity, table, terms, value, mustard_convolve(f, g, roots), f, g, classical_convolve, "*");
    }

    void thm21()
    {
        const std::string s = "thm21";
        for (std::size_t t = 0; t < opt_.instances; ++t) {
            mustard_checks("mustard via classical, general roots", rng_.root_pair());
            const RootPair perp = rng_.perpendicular_pair();
            mustard_checks("mustard via classical, perpendicular roots", perp);
            const Root mu = rng_.root();
            mustard_checks("mustard via classical, equal roots", RootPair(mu, mu));

            const QField f = rng_.field(n(), n()), g = rng_.field(n(), n());
            const auto a_block = resolve(select_block(mustard_from_classical_terms(), 1), perp);
            record(s, "a-block vanishes for perpendicular roots",
                   max_abs(evaluate_expansion(std::span<const resolved_term>(a_block), f, g, classical_convolve)));
        }
    }

    template <typename Reference>
    void mustard_expansion(const std::string& suite, const std::string& identity, const std::vector<term>& table,
                           const RootPair& roots, Reference&& reference)
    {
        const QField f = rng_.field(n(), n()), g = rng_.field(n(), n());
        const auto terms = resolved(suite, table, roots);
        const QField value = evaluate_mustard_expansion(std::span<const resolved_term>(terms), f, g, roots);
        auto op = [&](const QField& x, const QField& y) { return mustard_convolve(x, y, roots); };
        expansion(suite, identity, table, terms, value, reference(f, g), f, g, op, "*M");
    }

    void thm31()
    {
        for (std::size_t t = 0; t < opt_.instances; ++t) {
            const Root mu = rng_.root();
            mustard_expansion("thm31", "classical via Mustard, equal roots", classical_from_mustard_equal_terms(),
                              RootPair(mu, mu), classical_convolve);
        }
    }

    void thm32()
    {
        for (std::size_t t = 0; t < opt_.instances; ++t)
            mustard_expansion("thm32", "classical via Mustard, perpendicular roots",
                              classical_from_mustard_perp_terms(), rng_.perpendicular_pair(), classical_convolve);
    }

    void thm41()
    {
        const std::string s = "thm41";
        for (std::size_t t = 0; t < opt_.instances; ++t) {
            mustard_expansion(s, "classical via Mustard, general roots", classical_from_mustard_general_terms(),
                              rng_.root_pair(), classical_convolve);

            const RootPair perp = rng_.perpendicular_pair();
            const QField f = rng_.field(n(), n()), g = rng_.field(n(), n());
            record(s, "reduces to perpendicular expansion at a = 0",
                   max_abs_diff(classical_via_mustard_general(f, g, perp), classical_via_mustard_perp(f, g, perp)));

            const RootPair roots = rng_.root_pair();
            const QField even = rng_.field(n(), n());
            const QField g_even = 0.5 * (even + reflect(even, {0, 1}));
            const auto a2 = resolve(select_block(classical_from_mustard_general_terms(), 2), roots);
            record(s, "a^2 block vanishes for g even in x2",
                   max_abs(evaluate_mustard_expansion(std::span<const resolved_term>(a2), f, g_even, roots)));
        }
    }

    template <typename Reference>
    void spectral_expansion(const std::string& suite, const std::string& identity, const std::vector<term>& table,
                            Reference&& reference)
    {
        const RootPair roots = rng_.perpendicular_pair();
        const QField f = rng_.field(n(), n()), g = rng_.field(n(), n());
        const auto terms = resolved(suite, table, roots);
        const QField value = evaluate_spectral_expansion(std::span<const resolved_term>(terms), f, g, roots);
        auto op = [&](const QField& x, const QField& y) {
            return mustard_scale(x) * pointwise_product(qft(x, roots), qft(y, roots));
        };
        expansion(suite, identity, table, terms, value, dft_left(reference(f, g), roots), f, g, op, "x");
    }

    void thm51()
    {
        for (std::size_t t = 0; t < opt_.instances; ++t)
            spectral_expansion("thm51", "spectrum of classical convolution", convolution_spectrum_terms(),
                               classical_convolve);
    }

    void thm52()
    {
        const std::string s = "thm52";
        for (std::size_t t = 0; t < opt_.instances; ++t) {
            spectral_expansion(s, "spectrum of cross-correlation", correlation_spectrum_terms(), cross_correlate);
            const QField f = rng_.field(n(), n()), g = rng_.field(n(), n());
            record(s, "correlation as convolution f star g = f^(1,1) * g",
                   max_abs_diff(cross_correlate(f, g), classical_convolve(reflect(f, {1, 1}), g)));
        }
    }

    verify_options opt_;
    field_rng rng_;
    std::vector<identity_check> results_;
};

} // namespace detail

/// Runs the selected identity suites on seeded random data.
inline std::vector<identity_check> run_verify(const verify_options& options)
{
    return detail::verifier(options).run();
}

inline bool all_within(const std::vector<identity_check>& checks, double tolerance)
{
    return std::all_of(checks.begin(), checks.end(), [&](const identity_check& c) { return c.max_error <= tolerance; });
}

} // namespace qconv
