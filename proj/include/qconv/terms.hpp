#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "qconv/field.hpp"
#include "qconv/quaternion.hpp"

namespace qconv {

/// Quaternion left-coefficients appearing in the expansions.
enum class factor { one, mu, nu, mu_nu, nu_mu };

inline const char* to_string(factor c)
{
    switch (c) {
    case factor::one: return "";
    case factor::mu: return "mu ";
    case factor::nu: return "nu ";
    case factor::mu_nu: return "mu nu ";
    case factor::nu_mu: return "nu mu ";
    }
    return "?";
}

/// One summand  sign * a^a_power / denominator * (f_coeff f^f_reflect) op (g_coeff g^g_reflect).
struct term {
    int sign;
    int denominator;
    int a_power;
    factor f_coeff;
    ReflectionIndex f_reflect;
    factor g_coeff;
    ReflectionIndex g_reflect;
};

inline std::string label(const term& t, const char* op = "*")
{
    std::string weight = t.sign < 0 ? "-" : "+";
    weight += t.a_power == 0 ? "1" : (t.a_power == 1 ? "a" : "a^" + std::to_string(t.a_power));
    weight += "/" + std::to_string(t.denominator);
    return weight + " (" + to_string(t.f_coeff) + "f^" + to_string(t.f_reflect) + ") " + op + " (" +
           to_string(t.g_coeff) + "g^" + to_string(t.g_reflect) + ")";
}

namespace detail {

/// Four terms sharing f-side data, with g reflected by (0,0), (0,1), (1,0), (1,1) in turn.
struct block {
    int denominator;
    int a_power;
    factor f_coeff;
    ReflectionIndex f_reflect;
    factor g_coeff;
    std::array<int, 4> signs;
};

inline constexpr std::array<ReflectionIndex, 4> g_reflections{{{0, 0}, {0, 1}, {1, 0}, {1, 1}}};

template <std::size_t N>
std::vector<term> expand(const std::array<block, N>& blocks)
{
    std::vector<term> out;
    out.reserve(4 * N);
    for (const auto& b : blocks)
        for (std::size_t k = 0; k < 4; ++k)
            out.push_back({b.signs[k], b.denominator, b.a_power, b.f_coeff, b.f_reflect, b.g_coeff, g_reflections[k]});
    return out;
}

inline constexpr ReflectionIndex id{0, 0};
inline constexpr ReflectionIndex flip2{0, 1};
inline constexpr ReflectionIndex flip1{1, 0};
inline constexpr ReflectionIndex flip12{1, 1};

} // namespace detail

/// Mustard convolution as a sum of classical convolutions (32 terms).
inline std::vector<term> mustard_from_classical_terms()
{
    using enum factor;
    using namespace detail;
    return expand(std::array<block, 8>{{
        {4, 0, one, id, one, {+1, +1, +1, +1}},
        {4, 0, nu, id, nu, {-1, +1, -1, +1}},
        {4, 0, mu, flip2, mu, {-1, -1, +1, +1}},
        {8, 0, mu_nu, flip2, mu_nu, {-1, +1, +1, -1}},
        {8, 0, nu_mu, flip2, mu_nu, {+1, -1, -1, +1}},
        {8, 1, one, id, mu_nu, {+1, -1, -1, +1}},
        {8, 1, nu, id, mu, {+1, +1, -1, -1}},
        {8, 1, nu, flip2, mu, {-1, -1, +1, +1}},
    }});
}

/// Classical convolution from Mustard convolutions with a single root (mu = nu).
inline std::vector<term> classical_from_mustard_equal_terms()
{
    using enum factor;
    using namespace detail;
    return {
        {+1, 2, 0, one, id, one, id},
        {-1, 2, 0, mu, id, mu, id},
        {+1, 2, 0, one, id, one, flip12},
        {+1, 2, 0, mu, id, mu, flip12},
    };
}

/// Classical convolution from Mustard convolutions, anticommuting roots (16 terms).
inline std::vector<term> classical_from_mustard_perp_terms()
{
    using enum factor;
    using namespace detail;
    return expand(std::array<block, 4>{{
        {4, 0, one, id, one, {+1, +1, +1, +1}},
        {4, 0, nu, id, nu, {-1, +1, -1, +1}},
        {4, 0, mu, flip2, mu, {-1, -1, +1, +1}},
        {4, 0, nu_mu, flip2, mu_nu, {+1, -1, -1, +1}},
    }});
}

/// Classical convolution from Mustard convolutions, arbitrary roots with {mu, nu} = a (40 terms).
/// The last 1/4 block pairs mu nu on f with nu mu on g.
inline std::vector<term> classical_from_mustard_general_terms()
{
    using enum factor;
    using namespace detail;
    return expand(std::array<block, 10>{{
        {4, 0, one, id, one, {+1, +1, +1, +1}},
        {4, 0, nu, id, nu, {-1, +1, -1, +1}},
        {4, 0, mu, flip2, mu, {-1, -1, +1, +1}},
        {4, 0, mu_nu, flip2, nu_mu, {+1, -1, -1, +1}},
        {8, 1, one, id, mu_nu, {-1, +1, +1, -1}},
        {8, 1, nu, id, mu, {+1, +1, -1, -1}},
        {8, 1, one, flip2, mu_nu, {+1, -1, -1, +1}},
        {8, 1, nu, flip2, mu, {-1, -1, +1, +1}},
        {8, 2, one, id, one, {+1, -1, -1, +1}},
        {8, 2, one, flip2, one, {-1, +1, +1, -1}},
    }});
}

/// Spectrum of the classical convolution, anticommuting roots. Weights are
/// relative to sqrt(n1 n2); each term is F(f-side) F(g-side).
inline std::vector<term> convolution_spectrum_terms() { return classical_from_mustard_perp_terms(); }

/// Spectrum of the cross-correlation, anticommuting roots.
inline std::vector<term> correlation_spectrum_terms()
{
    using enum factor;
    using namespace detail;
    return expand(std::array<block, 4>{{
        {4, 0, one, flip12, one, {+1, +1, +1, +1}},
        {4, 0, nu, flip12, nu, {-1, +1, -1, +1}},
        {4, 0, mu, flip1, mu, {-1, -1, +1, +1}},
        {4, 0, nu_mu, flip1, mu_nu, {+1, -1, -1, +1}},
    }});
}

/// A term with its weight and coefficients evaluated for a concrete root pair.
struct resolved_term {
    double weight;
    Quaternion f_coeff;
    ReflectionIndex f_reflect;
    Quaternion g_coeff;
    ReflectionIndex g_reflect;
};

inline Quaternion resolve(factor c, const RootPair& roots)
{
    switch (c) {
    case factor::one: return 1.0;
    case factor::mu: return roots.mu().value();
    case factor::nu: return roots.nu().value();
    case factor::mu_nu: return roots.mu_nu();
    case factor::nu_mu: return roots.nu_mu();
    }
    return 1.0;
}

inline double weight(const term& t, double a)
{
    double w = static_cast<double>(t.sign) / static_cast<double>(t.denominator);
    for (int p = 0; p < t.a_power; ++p)
        w *= a;
    return w;
}

inline resolved_term resolve(const term& t, const RootPair& roots)
{
    return {weight(t, roots.a()), resolve(t.f_coeff, roots), t.f_reflect, resolve(t.g_coeff, roots), t.g_reflect};
}

inline std::vector<resolved_term> resolve(const std::vector<term>& table, const RootPair& roots)
{
    std::vector<resolved_term> out;
    out.reserve(table.size());
    for (const auto& t : table)
        out.push_back(resolve(t, roots));
    return out;
}

/// Terms whose a-power matches.
inline std::vector<term> select_block(const std::vector<term>& table, int a_power)
{
    std::vector<term> out;
    for (const auto& t : table)
        if (t.a_power == a_power)
            out.push_back(t);
    return out;
}

namespace detail {

/// Writes c = r u with u a unit quaternion whose first non-negligible component is positive.
inline std::pair<double, Quaternion> canonical_direction(const Quaternion& c)
{
    double r = norm(c);
    Quaternion u = c / r;
    const std::array<double, 4> comps{u.w, u.x, u.y, u.z};
    for (double v : comps) {
        if (std::abs(v) > 1e-9) {
            if (v < 0) {
                u = -u;
                r = -r;
            }
            break;
        }
    }
    return {r, u};
}

inline bool close(const Quaternion& a, const Quaternion& b, double tol) { return norm(a - b) <= tol; }

} // namespace detail

/// Number of independent summands left after merging terms that differ only
/// by a real factor in their coefficients and dropping zero weights.
inline std::size_t effective_term_count(const std::vector<term>& table, const RootPair& roots, double tol = 1e-12)
{
    struct group {
        Quaternion uf;
        ReflectionIndex pf;
        Quaternion ug;
        ReflectionIndex pg;
        double weight;
    };
    std::vector<group> groups;
    for (const auto& t : resolve(table, roots)) {
        if (std::abs(t.weight) <= tol)
            continue;
        const auto [rf, uf] = detail::canonical_direction(t.f_coeff);
        const auto [rg, ug] = detail::canonical_direction(t.g_coeff);
        const double w = t.weight * rf * rg;
        bool merged = false;
        for (auto& g : groups) {
            if (g.pf == t.f_reflect && g.pg == t.g_reflect && detail::close(g.uf, uf, 1e-9) &&
                detail::close(g.ug, ug, 1e-9)) {
                g.weight += w;
                merged = true;
                break;
            }
        }
        if (!merged)
            groups.push_back({uf, t.f_reflect, ug, t.g_reflect, w});
    }
    std::size_t count = 0;
    for (const auto& g : groups)
        if (std::abs(g.weight) > tol)
            ++count;
    return count;
}

} // namespace qconv
