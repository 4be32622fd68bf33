#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>

#include "qconv/field.hpp"
#include "qconv/quaternion.hpp"

namespace qconv {

/// Seeded generator for test fields and roots. Uses mt19937_64 with explicit
/// uniform and Box-Muller mappings so draws are identical across standard
/// library implementations.
class field_rng {
public:
    explicit field_rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform in [0, 1).
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    /// Uniform in [-1, 1).
    double symmetric() { return 2.0 * unit() - 1.0; }

    double normal()
    {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = unit();
        while (u1 <= 0.0)
            u1 = unit();
        const double u2 = unit();
        const double r = std::sqrt(-2.0 * std::log(u1));
        spare_ = r * std::sin(2.0 * std::numbers::pi * u2);
        has_spare_ = true;
        return r * std::cos(2.0 * std::numbers::pi * u2);
    }

    Quaternion quaternion() { return {symmetric(), symmetric(), symmetric(), symmetric()}; }

    /// Components uniform in [-1, 1].
    QField field(std::size_t n1, std::size_t n2)
    {
        QField f(n1, n2);
        for (auto& q : f.data())
            q = quaternion();
        return f;
    }

    QField pure_field(std::size_t n1, std::size_t n2)
    {
        QField f(n1, n2);
        for (auto& q : f.data())
            q = {0.0, symmetric(), symmetric(), symmetric()};
        return f;
    }

    QField real_field(std::size_t n1, std::size_t n2)
    {
        QField f(n1, n2);
        for (auto& q : f.data())
            q = symmetric();
        return f;
    }

    /// Uniform on the unit 2-sphere.
    Root root()
    {
        for (;;) {
            const double b = normal(), c = normal(), d = normal();
            if (b * b + c * c + d * d > 1e-12)
                return make_root(b, c, d);
        }
    }

    /// Uniform on the great circle perpendicular to mu.
    Root perpendicular_root(const Root& mu)
    {
        for (;;) {
            Quaternion v{0.0, normal(), normal(), normal()};
            v -= vector_dot(v, mu) * mu.value();
            if (norm(v) > 1e-6) {
                v = v / norm(v);
                // A second projection pushes the dot product to rounding level.
                v -= vector_dot(v, mu) * mu.value();
                return make_root(v);
            }
        }
    }

    /// Root at the given angle from mu, in a random plane through mu.
    Root root_at_angle(const Root& mu, double angle)
    {
        const Root perp = perpendicular_root(mu);
        const Quaternion v = std::cos(angle) * mu.value() + std::sin(angle) * perp.value();
        return make_root(v);
    }

    RootPair root_pair() { return RootPair(root(), root()); }

    RootPair perpendicular_pair()
    {
        const Root mu = root();
        return RootPair(mu, perpendicular_root(mu));
    }

private:
    std::mt19937_64 engine_;
    bool has_spare_ = false;
    double spare_ = 0.0;
};

} // namespace qconv
