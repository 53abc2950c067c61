#include "bianchi/homology.hpp"
#include "bianchi/survey.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

using namespace bianchi;

namespace {

IntMatrix from_rows(std::vector<std::vector<long>> const& rows)
{
    IntMatrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) m(i, j) = rows[i][j];
    }
    return m;
}

oracle::Matrix to_oracle(IntMatrix const& m)
{
    oracle::Matrix out(m.rows(), std::vector<Integer>(m.cols()));
    for (size_t i = 0; i < m.rows(); ++i) {
        for (size_t j = 0; j < m.cols(); ++j) out[i][j] = m(i, j);
    }
    return out;
}

AbelianInvariants inv(long rank, std::vector<long> torsion)
{
    AbelianInvariants a;
    a.free_rank = rank;
    for (long t : torsion) a.torsion.emplace_back(t);
    return a;
}

Presentation pres(size_t gens, std::vector<std::pair<Word, int>> relators)
{
    Presentation p;
    for (size_t i = 0; i < gens; ++i) p.generators.push_back({"x" + std::to_string(i), GeneratorKind::Face, {}, -1, {}});
    for (auto& [w, n] : relators) p.relators.push_back({w, n, RelatorKind::Cycle});
    return p;
}

Presentation pgl(long D)
{
    return build_presentation(ford_domain(Order::make(D), GroupMode::PGL)).presentation;
}

// Same group with generators permuted and some inverted, relators and
// torsion words shuffled.
Presentation relabel(Presentation const& p, std::mt19937& rng)
{
    size_t n = p.generators.size();
    std::vector<int> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    std::vector<int> flip(n);
    std::bernoulli_distribution coin(0.5);
    for (auto& f : flip) f = coin(rng) ? -1 : 1;

    Presentation q = p;
    for (size_t i = 0; i < n; ++i) q.generators[static_cast<size_t>(perm[i])] = p.generators[i];
    auto map_word = [&](Word const& w) {
        Word out;
        for (auto const& l : w) out.push_back({perm[static_cast<size_t>(l.gen)], l.exp * flip[static_cast<size_t>(l.gen)]});
        return out;
    };
    for (auto& r : q.relators) r.word = map_word(r.word);
    for (auto& w : q.torsion_words) w = map_word(w);
    std::shuffle(q.relators.begin(), q.relators.end(), rng);
    std::shuffle(q.torsion_words.begin(), q.torsion_words.end(), rng);
    return q;
}

}  // namespace

TEST(Smith, Examples)
{
    auto s = smith_normal_form(from_rows({{2, 0}, {0, 3}}));
    EXPECT_EQ(s.S, from_rows({{1, 0}, {0, 6}}));
    auto z = smith_normal_form(IntMatrix(3, 2));
    EXPECT_EQ(z.S, IntMatrix(3, 2));
}

TEST(Smith, RandomMatchesMinorOracle)
{
    std::mt19937 rng(1234);
    std::uniform_int_distribution<int> entry(-9, 9), dim_r(1, 4), dim_c(1, 5), sparse(0, 3);
    for (int trial = 0; trial < 1000; ++trial) {
        size_t r = static_cast<size_t>(dim_r(rng)), c = static_cast<size_t>(dim_c(rng));
        IntMatrix A(r, c);
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < c; ++j) A(i, j) = sparse(rng) == 0 ? 0 : entry(rng);
        }
        auto sf = smith_normal_form(A);
        ASSERT_EQ(sf.U * A * sf.V, sf.S) << trial;
        EXPECT_EQ(abs(oracle::det(to_oracle(sf.U))), 1);
        EXPECT_EQ(abs(oracle::det(to_oracle(sf.V))), 1);
        auto expected = oracle::invariant_factors(to_oracle(A));
        for (size_t i = 0; i < r; ++i) {
            for (size_t j = 0; j < c; ++j) {
                if (i == j) {
                    EXPECT_EQ(sf.S(i, i), expected[i]) << trial << " entry " << i;
                } else {
                    EXPECT_EQ(sf.S(i, j), 0);
                }
            }
        }
    }
}

TEST(Smith, DeterminantMatchesCofactorExpansion)
{
    std::mt19937 rng(99);
    std::uniform_int_distribution<int> entry(-20, 20), dim(1, 5);
    for (int trial = 0; trial < 200; ++trial) {
        size_t n = static_cast<size_t>(dim(rng));
        IntMatrix A(n, n);
        for (size_t i = 0; i < n; ++i) {
            for (size_t j = 0; j < n; ++j) A(i, j) = entry(rng);
        }
        EXPECT_EQ(determinant(A), oracle::det(to_oracle(A)));
    }
}

TEST(Abelianization, SmallGroups)
{
    EXPECT_EQ(abelianization(pres(1, {{{{0, 1}}, 3}})), inv(0, {3}));
    EXPECT_EQ(abelianization(pres(2, {{{{0, 1}, {1, 1}, {0, -1}, {1, -1}}, 1}})), inv(2, {}));
    EXPECT_EQ(abelianization(pres(2, {{{{0, 2}}, 1}, {{{1, 4}}, 1}})), inv(0, {2, 4}));
    EXPECT_EQ(abelianization(pres(2, {{{{0, 2}}, 1}, {{{1, 3}}, 1}})), inv(0, {6}));
}

TEST(Invariants, Strings)
{
    EXPECT_EQ(to_string(inv(0, {})), "0");
    EXPECT_EQ(to_string(inv(1, {})), "Z");
    EXPECT_EQ(to_string(inv(2, {})), "Z^2");
    EXPECT_EQ(to_string(inv(0, {2})), "Z/2");
    EXPECT_EQ(to_string(inv(0, {2, 2, 2})), "(Z/2)^3");
    EXPECT_EQ(to_string(inv(1, {2})), "Z + Z/2");
    for (auto const& a : {inv(0, {}), inv(3, {}), inv(1, {2, 2}), inv(0, {2, 6}), inv(2, {3})}) {
        EXPECT_EQ(parse_invariants(to_string(a)), a);
    }
    // Non-canonical input is normalized.
    EXPECT_EQ(parse_invariants("Z/2 + Z/3"), inv(0, {6}));
    EXPECT_THROW(parse_invariants("Q"), std::invalid_argument);
}

TEST(Invariants, Json)
{
    EXPECT_EQ(invariants_json(-88, GroupMode::PGL, inv(0, {2, 2, 2})),
              R"({"D":-88,"mode":"pgl","rank":0,"torsion":["2","2","2"]})");
}

TEST(TorsionFreeH1, TableValues)
{
    EXPECT_TRUE(torsion_free_h1(pgl(-7)).trivial());
    EXPECT_EQ(torsion_free_h1(pgl(-40)), inv(0, {2}));
    EXPECT_EQ(torsion_free_h1(pgl(-88)), inv(0, {2, 2, 2}));
    EXPECT_EQ(torsion_free_h1(pgl(-84)), inv(1, {}));
}

TEST(TorsionFreeH1, RelabelingInvariance)
{
    std::mt19937 rng(42);
    for (long D : {-15, -40, -67, -84}) {
        for (auto mode : {GroupMode::PSL, GroupMode::PGL}) {
            auto p = build_presentation(ford_domain(Order::make(D), mode)).presentation;
            auto h = torsion_free_h1(p);
            auto a = abelianization(p);
            for (int round = 0; round < 5; ++round) {
                auto q = relabel(p, rng);
                EXPECT_EQ(torsion_free_h1(q), h) << D;
                EXPECT_EQ(abelianization(q), a) << D;
            }
        }
    }
}

TEST(CuspidalDefect, Examples)
{
    EXPECT_EQ(cuspidal_defect(-23, inv(3, {}), 3), 0);
    EXPECT_EQ(cuspidal_defect(-3, inv(0, {}), 1), 0);
    EXPECT_EQ(cuspidal_defect(-4, inv(0, {2}), 1), 0);
    EXPECT_THROW(cuspidal_defect(-23, inv(2, {}), 3), std::logic_error);

    auto ford = ford_domain(Order::make(-35), GroupMode::PSL);
    auto ps = build_presentation(ford);
    long cusps = static_cast<long>(cusp_orbits(ford, ps.pairings).count);
    EXPECT_EQ(cuspidal_defect(-35, abelianization(ps.presentation), cusps), 1);
}
