#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qconv/error.hpp"
#include "qconv/quaternion.hpp"
#include "qconv/random.hpp"
#include "test_util.hpp"

using namespace qconv;
using testutil::quat_near;

namespace {

const Quaternion I = Quaternion::i(), J = Quaternion::j(), K = Quaternion::k();

} // namespace

TEST(Quaternion, BasisProducts)
{
    EXPECT_EQ(I * J, K);
    EXPECT_EQ(J * I, -K);
    EXPECT_EQ(J * K, I);
    EXPECT_EQ(K * J, -I);
    EXPECT_EQ(K * I, J);
    EXPECT_EQ(I * K, -J);
    EXPECT_EQ(I * I, Quaternion(-1.0));
    EXPECT_EQ(J * J, Quaternion(-1.0));
    EXPECT_EQ(K * K, Quaternion(-1.0));
    EXPECT_EQ(I * J * K, Quaternion(-1.0));
}

TEST(Quaternion, ProductExamples)
{
    const Quaternion q{0.5, -1.25, 2.0, 3.5};
    EXPECT_EQ(q * Quaternion(1.0), q);
    EXPECT_EQ(Quaternion(1.0) * q, q);
    EXPECT_EQ((Quaternion{1, 1, 0, 0}) * (Quaternion{1, 0, 1, 0}), (Quaternion{1, 1, 1, 1}));
}

TEST(Quaternion, ProductMatchesMultiplicationTable)
{
    field_rng rng(7);
    for (int t = 0; t < 200; ++t) {
        const Quaternion p = rng.quaternion(), q = rng.quaternion();
        EXPECT_TRUE(quat_near(p * q, oracle::product(p, q), 1e-15));
    }
}

TEST(Quaternion, AlgebraLaws)
{
    field_rng rng(11);
    for (int t = 0; t < 500; ++t) {
        const Quaternion p = rng.quaternion(), q = rng.quaternion(), r = rng.quaternion();
        EXPECT_TRUE(quat_near((p * q) * r, p * (q * r), 1e-14));
        EXPECT_TRUE(quat_near(p * (q + r), p * q + p * r, 1e-14));
        EXPECT_TRUE(quat_near((p + q) * r, p * r + q * r, 1e-14));
        EXPECT_NEAR(norm(p * q), norm(p) * norm(q), 1e-14);
        EXPECT_TRUE(quat_near(conj(p * q), conj(q) * conj(p), 1e-15));
        EXPECT_TRUE(quat_near(conj(p) * p, Quaternion(norm2(p)), 1e-14));
    }
}

TEST(Quaternion, PartsAndConjugate)
{
    const Quaternion q{1, 2, 3, 4};
    EXPECT_EQ(scalar_part(q), 1.0);
    EXPECT_EQ(vector_part(q), (Quaternion{0, 2, 3, 4}));
    EXPECT_EQ(conj(q), (Quaternion{1, -2, -3, -4}));
    EXPECT_EQ(norm2(q), 30.0);
    EXPECT_EQ(conj(conj(q)), q);
    EXPECT_EQ(q, scalar_part(q) + vector_part(q));
}

TEST(Quaternion, Division)
{
    const Quaternion q{1, 2, 3, 4};
    EXPECT_TRUE(quat_near(q / 2.0, Quaternion{0.5, 1, 1.5, 2}, 0.0));
}

TEST(Root, NormalisesInput)
{
    EXPECT_EQ(make_root(1, 0, 0).value(), I);
    EXPECT_TRUE(quat_near(make_root(1, 1, 1).value(), Quaternion{0, 1, 1, 1} / std::sqrt(3.0), 1e-15));
    EXPECT_TRUE(quat_near(make_root(0, 0, 5).value(), K, 0.0));
    const Root r = make_root(3, -4, 12);
    EXPECT_NEAR(norm(r.value()), 1.0, 1e-15);
    EXPECT_EQ(r.value().w, 0.0);
}

TEST(Root, SquaresToMinusOne)
{
    field_rng rng(3);
    for (int t = 0; t < 100; ++t) {
        const Root r = rng.root();
        EXPECT_TRUE(quat_near(r.value() * r.value(), Quaternion(-1.0), 1e-15));
    }
}

TEST(Root, RejectsZeroVector)
{
    try {
        (void)make_root(0, 0, 0);
        FAIL() << "expected ZeroVector";
    } catch (const error& e) {
        EXPECT_EQ(e.code(), errc::zero_vector);
    }
    EXPECT_THROW((void)make_root(Quaternion{5, 0, 0, 0}), error);
}

TEST(Anticommutator, Examples)
{
    EXPECT_EQ(anticommutator(make_root(1, 0, 0), make_root(0, 1, 0)), 0.0);
    EXPECT_EQ(anticommutator(make_root(1, 0, 0), make_root(1, 0, 0)), -2.0);
    EXPECT_NEAR(anticommutator(make_root(1, 0, 0), make_root(1, 1, 0)), -std::sqrt(2.0), 1e-15);
    EXPECT_EQ(anticommutator(make_root(1, 0, 0), make_root(-1, 0, 0)), 2.0);
}

TEST(Anticommutator, IsRealAndBounded)
{
    field_rng rng(5);
    for (int t = 0; t < 300; ++t) {
        const RootPair p = rng.root_pair();
        const Quaternion s = p.mu_nu() + p.nu_mu();
        EXPECT_NEAR(norm(vector_part(s)), 0.0, 1e-14);
        EXPECT_NEAR(s.w, p.a(), 1e-15);
        EXPECT_LE(std::abs(p.a()), 2.0 + 1e-15);
        EXPECT_NEAR(p.a(), anticommutator(p.nu(), p.mu()), 1e-15);
    }
}

TEST(RootPair, PerpendicularFlag)
{
    EXPECT_TRUE(RootPair(make_root(1, 0, 0), make_root(0, 1, 0)).perpendicular());
    EXPECT_FALSE(RootPair(make_root(1, 0, 0), make_root(1, 1, 0)).perpendicular());
    field_rng rng(9);
    for (int t = 0; t < 100; ++t)
        EXPECT_TRUE(rng.perpendicular_pair().perpendicular());
}

TEST(CommutingPart, Examples)
{
    const Root i = make_root(1, 0, 0);
    const Quaternion q{1, 2, 3, 4};
    EXPECT_TRUE(quat_near(commuting_part(q, i, commutation::commuting), Quaternion{1, 2, 0, 0}, 1e-15));
    EXPECT_TRUE(quat_near(commuting_part(q, i, commutation::anticommuting), Quaternion{0, 0, 3, 4}, 1e-15));
    EXPECT_TRUE(quat_near(commuting_part(J, i, commutation::commuting), 0.0, 1e-15));
}

TEST(CommutingPart, SplitProperties)
{
    field_rng rng(13);
    for (int t = 0; t < 200; ++t) {
        const Root mu = rng.root();
        const Quaternion q = rng.quaternion();
        const Quaternion c = commuting_part(q, mu, commutation::commuting);
        const Quaternion a = commuting_part(q, mu, commutation::anticommuting);
        const Quaternion m = mu.value();
        EXPECT_TRUE(quat_near(c + a, q, 1e-15));
        EXPECT_TRUE(quat_near(m * c, c * m, 1e-14));
        EXPECT_TRUE(quat_near(m * a, -(a * m), 1e-14));
        EXPECT_TRUE(quat_near(commuting_part(c, mu, commutation::commuting), c, 1e-14));
        EXPECT_TRUE(quat_near(commuting_part(a, mu, commutation::commuting), 0.0, 1e-14));
    }
}

TEST(ExpAngle, Examples)
{
    const Root i = make_root(1, 0, 0);
    EXPECT_EQ(exp_angle(i, 0.0), Quaternion(1.0));
    EXPECT_TRUE(quat_near(exp_angle(i, std::numbers::pi / 2), I, 1e-15));
    EXPECT_TRUE(quat_near(exp_angle(i, std::numbers::pi), Quaternion(-1.0), 1e-15));
    const Root gray = make_root(1, 1, 1);
    EXPECT_TRUE(quat_near(exp_angle(gray, std::numbers::pi / 2), gray.value(), 1e-15));
}

TEST(ExpAngle, Properties)
{
    field_rng rng(17);
    for (int t = 0; t < 200; ++t) {
        const Root mu = rng.root();
        const double s = 4 * rng.symmetric(), u = 4 * rng.symmetric();
        EXPECT_NEAR(norm(exp_angle(mu, s)), 1.0, 1e-15);
        EXPECT_TRUE(quat_near(exp_angle(mu, s) * exp_angle(mu, u), exp_angle(mu, s + u), 1e-14));
        EXPECT_TRUE(quat_near(exp_angle(mu, -s), conj(exp_angle(mu, s)), 1e-15));
    }
}

TEST(ExpAngle, AnticommutingPartPassesWithSignFlip)
{
    field_rng rng(19);
    for (int t = 0; t < 200; ++t) {
        const Root mu = rng.root();
        const double theta = 3 * rng.symmetric();
        const Quaternion q = rng.quaternion();
        const Quaternion c = commuting_part(q, mu, commutation::commuting);
        const Quaternion a = commuting_part(q, mu, commutation::anticommuting);
        EXPECT_TRUE(quat_near(exp_angle(mu, theta) * c, c * exp_angle(mu, theta), 1e-14));
        EXPECT_TRUE(quat_near(exp_angle(mu, theta) * a, a * exp_angle(mu, -theta), 1e-14));
    }
}

TEST(Error, MessageCarriesCodeName)
{
    const error e(errc::roots_not_perpendicular, "details");
    EXPECT_EQ(e.code(), errc::roots_not_perpendicular);
    EXPECT_NE(std::string(e.what()).find("RootsNotPerpendicular"), std::string::npos);
    EXPECT_NE(std::string(e.what()).find("details"), std::string::npos);
}
