#pragma once

#include <cassert>
#include <cmath>
#include <ostream>

#include "qconv/error.hpp"

namespace qconv {

/// Real quaternion w + x i + y j + z k.
struct Quaternion {
    double w = 0.0;
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double w_, double x_, double y_, double z_) : w(w_), x(x_), y(y_), z(z_) {}
    // Real scalars embed as w.
    constexpr Quaternion(double real) : w(real) {}

    static constexpr Quaternion i() { return {0.0, 1.0, 0.0, 0.0}; }
    static constexpr Quaternion j() { return {0.0, 0.0, 1.0, 0.0}; }
    static constexpr Quaternion k() { return {0.0, 0.0, 0.0, 1.0}; }

    constexpr Quaternion& operator+=(const Quaternion& o)
    {
        w += o.w;
        x += o.x;
        y += o.y;
        z += o.z;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o)
    {
        w -= o.w;
        x -= o.x;
        y -= o.y;
        z -= o.z;
        return *this;
    }
    constexpr Quaternion& operator*=(double s)
    {
        w *= s;
        x *= s;
        y *= s;
        z *= s;
        return *this;
    }

    friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Hamilton product, written out term by term.
constexpr Quaternion mul(const Quaternion& q1, const Quaternion& q2)
{
    return {
        q1.w * q2.w - q1.x * q2.x - q1.y * q2.y - q1.z * q2.z,
        q1.w * q2.x + q1.x * q2.w + q1.y * q2.z - q1.z * q2.y,
        q1.w * q2.y - q1.x * q2.z + q1.y * q2.w + q1.z * q2.x,
        q1.w * q2.z + q1.x * q2.y - q1.y * q2.x + q1.z * q2.w,
    };
}

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.w, -a.x, -a.y, -a.z}; }
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return mul(a, b); }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

constexpr double scalar_part(const Quaternion& q) { return q.w; }
constexpr Quaternion vector_part(const Quaternion& q) { return {0.0, q.x, q.y, q.z}; }
constexpr Quaternion conj(const Quaternion& q) { return {q.w, -q.x, -q.y, -q.z}; }

constexpr double norm2(const Quaternion& q) { return q.w * q.w + q.x * q.x + q.y * q.y + q.z * q.z; }
inline double norm(const Quaternion& q) { return std::sqrt(norm2(q)); }

/// Euclidean dot product of the vector parts.
constexpr double vector_dot(const Quaternion& a, const Quaternion& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q)
{
    return os << '(' << q.w << ", " << q.x << ", " << q.y << ", " << q.z << ')';
}

/// Unit pure quaternion, i.e. a square root of -1.
class Root {
public:
    /// Defaults to i.
    constexpr Root() : q_(Quaternion::i()) {}

    constexpr const Quaternion& value() const { return q_; }
    constexpr operator const Quaternion&() const { return q_; }

    constexpr Root operator-() const { return Root(-q_); }

    friend constexpr bool operator==(const Root&, const Root&) = default;

    friend Root make_root(double b, double c, double d);

private:
    constexpr explicit Root(const Quaternion& q) : q_(q) {}

    Quaternion q_;
};

/// Normalizes (b, c, d) onto the unit sphere of pure quaternions.
inline Root make_root(double b, double c, double d)
{
    const double n = std::sqrt(b * b + c * c + d * d);
    if (!(n >= 1e-300))
        throw error(errc::zero_vector, "root direction has zero length");
    return Root(Quaternion{0.0, b / n, c / n, d / n});
}

/// Uses only the vector part of q.
inline Root make_root(const Quaternion& q) { return make_root(q.x, q.y, q.z); }

/// {mu, nu} = mu nu + nu mu. Always real for roots of -1; equals -2 (mu . nu).
inline double anticommutator(const Root& mu, const Root& nu)
{
    [[maybe_unused]] const Quaternion full = mu.value() * nu.value() + nu.value() * mu.value();
    assert(norm(vector_part(full)) <= 1e-14);
    return -2.0 * vector_dot(mu, nu);
}

/// Ordered root pair (mu, nu) of a left transform with its cached anticommutator.
class RootPair {
public:
    RootPair() : RootPair(Root{}, Root{}) {}
    RootPair(const Root& mu, const Root& nu) : mu_(mu), nu_(nu), a_(anticommutator(mu, nu)) {}

    const Root& mu() const { return mu_; }
    const Root& nu() const { return nu_; }
    double a() const { return a_; }

    Quaternion mu_nu() const { return mu_.value() * nu_.value(); }
    Quaternion nu_mu() const { return nu_.value() * mu_.value(); }

    bool perpendicular(double tol = 1e-12) const { return std::abs(a_) <= tol; }

private:
    Root mu_;
    Root nu_;
    double a_;
};

enum class commutation : int { commuting = 0, anticommuting = 1 };

/// q_{c^j(mu)} = (q - (-1)^j mu q mu) / 2. The commuting part commutes with mu,
/// the anticommuting part anticommutes with it, and the two sum to q.
inline Quaternion commuting_part(const Quaternion& q, const Root& mu, commutation j)
{
    const Quaternion sandwich = mu.value() * q * mu.value();
    return j == commutation::commuting ? (q - sandwich) * 0.5 : (q + sandwich) * 0.5;
}

/// e^{mu theta} = cos(theta) + mu sin(theta).
inline Quaternion exp_angle(const Root& mu, double theta)
{
    const double s = std::sin(theta);
    const Quaternion& m = mu.value();
    return {std::cos(theta), m.x * s, m.y * s, m.z * s};
}

} // namespace qconv
