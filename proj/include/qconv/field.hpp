#pragma once

#include <algorithm>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "qconv/error.hpp"
#include "qconv/quaternion.hpp"

namespace qconv {

/// Row-major n1 x n2 grid of quaternions on the cyclic group Z_n1 x Z_n2.
/// Index m runs along axis 1 (rows), n along axis 2 (columns).
class QField {
public:
    QField() : QField(1, 1) {}

    QField(std::size_t n1, std::size_t n2, const Quaternion& fill = {})
        : n1_(n1), n2_(n2), data_(checked_size(n1, n2), fill)
    {
    }

    QField(std::size_t n1, std::size_t n2, std::vector<Quaternion> data)
        : n1_(n1), n2_(n2), data_(std::move(data))
    {
        if (data_.size() != checked_size(n1, n2))
            throw error(errc::shape_mismatch, "payload does not match " + std::to_string(n1) + "x" + std::to_string(n2));
    }

    static QField delta(std::size_t n1, std::size_t n2, const Quaternion& value = 1.0)
    {
        QField f(n1, n2);
        f(0, 0) = value;
        return f;
    }

    std::size_t n1() const { return n1_; }
    std::size_t n2() const { return n2_; }
    std::size_t size() const { return data_.size(); }

    Quaternion& operator()(std::size_t m, std::size_t n) { return data_[m * n2_ + n]; }
    const Quaternion& operator()(std::size_t m, std::size_t n) const { return data_[m * n2_ + n]; }

    std::span<Quaternion> data() { return data_; }
    std::span<const Quaternion> data() const { return data_; }

    std::span<Quaternion> row(std::size_t m) { return std::span(data_).subspan(m * n2_, n2_); }
    std::span<const Quaternion> row(std::size_t m) const { return std::span(data_).subspan(m * n2_, n2_); }

    bool same_shape(const QField& o) const { return n1_ == o.n1_ && n2_ == o.n2_; }

    QField& operator+=(const QField& o)
    {
        require_same_shape(*this, o);
        for (std::size_t t = 0; t < data_.size(); ++t)
            data_[t] += o.data_[t];
        return *this;
    }
    QField& operator-=(const QField& o)
    {
        require_same_shape(*this, o);
        for (std::size_t t = 0; t < data_.size(); ++t)
            data_[t] -= o.data_[t];
        return *this;
    }
    QField& operator*=(double s)
    {
        for (auto& q : data_)
            q *= s;
        return *this;
    }

    friend bool operator==(const QField&, const QField&) = default;

    friend void require_same_shape(const QField& a, const QField& b)
    {
        if (!a.same_shape(b))
            throw error(errc::shape_mismatch, std::to_string(a.n1_) + "x" + std::to_string(a.n2_) + " vs " +
                                                  std::to_string(b.n1_) + "x" + std::to_string(b.n2_));
    }

private:
    static std::size_t checked_size(std::size_t n1, std::size_t n2)
    {
        if (n1 == 0 || n2 == 0)
            throw error(errc::shape_mismatch, "grid dimensions must be positive");
        return n1 * n2;
    }

    std::size_t n1_;
    std::size_t n2_;
    std::vector<Quaternion> data_;
};

inline QField operator+(QField a, const QField& b) { return a += b; }
inline QField operator-(QField a, const QField& b) { return a -= b; }
inline QField operator*(QField a, double s) { return a *= s; }
inline QField operator*(double s, QField a) { return a *= s; }

/// Sign flips of the arguments: phi = (phi1, phi2) in {0,1}^2.
struct ReflectionIndex {
    int phi1 = 0;
    int phi2 = 0;

    friend constexpr bool operator==(const ReflectionIndex&, const ReflectionIndex&) = default;
};

inline std::string to_string(ReflectionIndex phi)
{
    return "(" + std::to_string(phi.phi1) + "," + std::to_string(phi.phi2) + ")";
}

/// Sample (m, n) of the result is sample ((-1)^phi1 m mod n1, (-1)^phi2 n mod n2) of f.
/// On even grids indices 0 and n/2 are fixed points.
inline QField reflect(const QField& f, ReflectionIndex phi)
{
    const std::size_t n1 = f.n1(), n2 = f.n2();
    QField out(n1, n2);
    for (std::size_t m = 0; m < n1; ++m) {
        const std::size_t sm = phi.phi1 ? (n1 - m) % n1 : m;
        for (std::size_t n = 0; n < n2; ++n) {
            const std::size_t sn = phi.phi2 ? (n2 - n) % n2 : n;
            out(m, n) = f(sm, sn);
        }
    }
    return out;
}

/// c * f(x), coefficient on the left.
inline QField left_multiply(const Quaternion& c, QField f)
{
    for (auto& q : f.data())
        q = c * q;
    return f;
}

/// Pointwise product F(u) G(u), F on the left.
inline QField pointwise_product(const QField& a, const QField& b)
{
    require_same_shape(a, b);
    QField out(a.n1(), a.n2());
    for (std::size_t t = 0; t < a.size(); ++t)
        out.data()[t] = a.data()[t] * b.data()[t];
    return out;
}

/// max over samples of |a(x) - b(x)|.
inline double max_abs_diff(const QField& a, const QField& b)
{
    require_same_shape(a, b);
    double worst = 0.0;
    for (std::size_t t = 0; t < a.size(); ++t)
        worst = std::max(worst, norm(a.data()[t] - b.data()[t]));
    return worst;
}

inline double max_abs(const QField& a)
{
    double worst = 0.0;
    for (const auto& q : a.data())
        worst = std::max(worst, norm(q));
    return worst;
}

/// Sum of |f(x)|^2.
inline double energy(const QField& a)
{
    double s = 0.0;
    for (const auto& q : a.data())
        s += norm2(q);
    return s;
}

} // namespace qconv
