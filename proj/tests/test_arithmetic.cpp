#include "bianchi/arithmetic.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace bianchi;

namespace {

std::vector<long> const kSurvey = {-3,  -4,  -7,  -8,  -11, -15, -19, -20, -23, -24, -31, -35, -39, -40, -43, -47,
                                   -51, -52, -55, -56, -59, -67, -68, -71, -79, -83, -84, -87, -88, -91, -95};

Rational q(long n, long d = 1)
{
    Rational r(n, d);
    r.canonicalize();
    return r;
}

QuadInt random_quad(std::mt19937& rng, int bound)
{
    std::uniform_int_distribution<int> dist(-bound, bound);
    return {dist(rng), dist(rng)};
}

}  // namespace

TEST(Order, TraceAndNorm)
{
    Order m4 = Order::make(-4);
    EXPECT_EQ(m4.trace(), 0);
    EXPECT_EQ(m4.norm_omega(), 1);
    Order m3 = Order::make(-3);
    EXPECT_EQ(m3.trace(), 1);
    EXPECT_EQ(m3.norm_omega(), 1);
    Order m7 = Order::make(-7);
    EXPECT_EQ(m7.trace(), 1);
    EXPECT_EQ(m7.norm_omega(), 2);
}

TEST(Order, RejectsBadDiscriminants)
{
    EXPECT_THROW(Order::make(-5), std::invalid_argument);
    EXPECT_THROW(Order::make(-6), std::invalid_argument);
    EXPECT_THROW(Order::make(0), std::invalid_argument);
    EXPECT_THROW(Order::make(5), std::invalid_argument);
}

TEST(Order, FundamentalDiscriminants)
{
    for (long D : kSurvey) EXPECT_TRUE(is_fundamental_discriminant(D)) << D;
    EXPECT_FALSE(is_fundamental_discriminant(-12));
    EXPECT_FALSE(is_fundamental_discriminant(-16));
    EXPECT_FALSE(is_fundamental_discriminant(-27));
    EXPECT_FALSE(is_fundamental_discriminant(-5));
    // Exactly the 31 survey values above -100.
    std::vector<long> found;
    for (long D = -1; D > -100; --D) {
        if (is_fundamental_discriminant(D)) found.push_back(D);
    }
    EXPECT_EQ(found, kSurvey);
}

TEST(Norm, Examples)
{
    EXPECT_EQ(Order::make(-4).norm(QuadInt{1, 1}), 2);
    EXPECT_EQ(Order::make(-7).norm(QuadInt{0, 1}), 2);
    for (long D : {-3, -4, -23, -95}) EXPECT_EQ(Order::make(D).norm(QuadInt{0, 0}), 0);
}

TEST(Norm, Multiplicative)
{
    std::mt19937 rng(7);
    for (long D : kSurvey) {
        Order O = Order::make(D);
        for (int i = 0; i < 200; ++i) {
            QuadInt x = random_quad(rng, 50), y = random_quad(rng, 50);
            EXPECT_EQ(O.norm(O.mul(x, y)), O.norm(x) * O.norm(y));
            // Agrees with |x|^2 of the embedded point.
            EXPECT_EQ(Rational(O.norm(x)), O.norm(O.to_point(x)));
            if (!x.is_zero()) EXPECT_GT(O.norm(x), 0);
        }
    }
}

TEST(Units, Counts)
{
    EXPECT_EQ(Order::make(-20).units().size(), 2u);
    EXPECT_EQ(Order::make(-4).units().size(), 4u);
    EXPECT_EQ(Order::make(-3).units().size(), 6u);
    for (long D : {-3, -4, -7}) {
        Order O = Order::make(D);
        for (auto const& u : O.units()) EXPECT_EQ(O.norm(u), 1);
    }
}

TEST(IdealIndex, Examples)
{
    for (long D : {-3, -4, -20, -71}) {
        Order O = Order::make(D);
        EXPECT_EQ(O.ideal_index(1, 0), 1);
        EXPECT_EQ(O.ideal_index(2, 0), 4);
    }
    Order O = Order::make(-20);
    EXPECT_EQ(O.ideal_index(2, {1, 1}), 2);
}

TEST(IdealIndex, MatchesMinorOracle)
{
    std::mt19937 rng(11);
    for (long D : kSurvey) {
        Order O = Order::make(D);
        for (int i = 0; i < 100; ++i) {
            QuadInt c = random_quad(rng, 12), d = random_quad(rng, 12);
            if (c.is_zero() && d.is_zero()) continue;
            Integer idx = O.ideal_index(c, d);
            EXPECT_EQ(idx, oracle::ideal_index(O, c, d)) << D << ' ' << c << ' ' << d;
            if (!c.is_zero()) EXPECT_TRUE(O.norm(c) % idx == 0);
            if (!d.is_zero()) EXPECT_TRUE(O.norm(d) % idx == 0);
            for (auto const& u : O.units()) EXPECT_EQ(O.ideal_index(O.mul(u, c), O.mul(u, d)), idx);
        }
    }
}

TEST(Bezout, Witness)
{
    std::mt19937 rng(3);
    for (long D : {-4, -15, -23, -56}) {
        Order O = Order::make(D);
        int seen = 0;
        for (int i = 0; i < 300; ++i) {
            QuadInt c = random_quad(rng, 9), d = random_quad(rng, 9);
            if (c.is_zero() && d.is_zero()) continue;
            auto w = O.bezout(c, d);
            if (O.ideal_index(c, d) != 1) {
                EXPECT_FALSE(w);
                continue;
            }
            ASSERT_TRUE(w);
            EXPECT_EQ(O.mul(w->first, c) + O.mul(w->second, d), QuadInt(1));
            ++seen;
        }
        EXPECT_GT(seen, 0);
    }
}

TEST(ReduceModLattice, Examples)
{
    Order O = Order::make(-4);
    auto [p, lambda] = O.reduce_mod_lattice({q(3, 4), q(0)});
    EXPECT_EQ(p, (ExactPoint{q(-1, 4), q(0)}));
    EXPECT_EQ(lambda, QuadInt(1));
    auto [p0, l0] = O.reduce_mod_lattice({q(0), q(0)});
    EXPECT_EQ(p0, (ExactPoint{q(0), q(0)}));
    EXPECT_EQ(l0, QuadInt(0));

    // 1.25 * omega for D = -7 reduces by omega into the parallelogram.
    Order O7 = Order::make(-7);
    ExactPoint z = O7.mul(O7.to_point(QuadInt(0, 1)), ExactPoint{q(5, 4), q(0)});
    auto [r, l] = O7.reduce_mod_lattice(z);
    EXPECT_EQ(l, QuadInt(0, 1));
    auto [s, u] = O7.omega_coords(r);
    EXPECT_TRUE(s >= q(-1, 2) && s < q(1, 2));
    EXPECT_TRUE(u >= q(-1, 2) && u < q(1, 2));
}

TEST(ReduceModLattice, IdempotentAndIntegral)
{
    std::mt19937 rng(5);
    std::uniform_int_distribution<int> num(-200, 200), den(1, 17);
    for (long D : kSurvey) {
        Order O = Order::make(D);
        for (int i = 0; i < 100; ++i) {
            ExactPoint p{q(num(rng), den(rng)), q(num(rng), den(rng))};
            auto [r, lambda] = O.reduce_mod_lattice(p);
            EXPECT_EQ(p - r, O.to_point(lambda));
            auto [r2, l2] = O.reduce_mod_lattice(r);
            EXPECT_EQ(r2, r);
            EXPECT_EQ(l2, QuadInt(0));
            auto [s, u] = O.omega_coords(r);
            EXPECT_TRUE(s >= q(-1, 2) && s < q(1, 2));
            EXPECT_TRUE(u >= q(-1, 2) && u < q(1, 2));
        }
    }
}

TEST(ExactPoint, Distance)
{
    std::mt19937 rng(9);
    std::uniform_int_distribution<int> num(-30, 30), den(1, 9);
    for (long D : {-3, -23, -84}) {
        Order O = Order::make(D);
        for (int i = 0; i < 200; ++i) {
            ExactPoint a{q(num(rng), den(rng)), q(num(rng), den(rng))};
            ExactPoint b{q(num(rng), den(rng)), q(num(rng), den(rng))};
            EXPECT_EQ(O.dist2(a, b), O.dist2(b, a));
            EXPECT_GE(O.dist2(a, b), 0);
            EXPECT_EQ(O.dist2(a, b) == 0, a == b);
            EXPECT_EQ(O.dist2(a, a), 0);
        }
    }
}

TEST(FieldArithmetic, InverseAndDivide)
{
    std::mt19937 rng(13);
    for (long D : {-4, -7, -40}) {
        Order O = Order::make(D);
        for (int i = 0; i < 100; ++i) {
            QuadInt x = random_quad(rng, 20), y = random_quad(rng, 20);
            if (y.is_zero()) continue;
            QuadInt prod = O.mul(x, y);
            auto back = O.divide_exact(prod, y);
            ASSERT_TRUE(back);
            EXPECT_EQ(*back, x);
            EXPECT_EQ(O.divide(O.to_point(prod), O.to_point(y)), O.to_point(x));
        }
    }
}
