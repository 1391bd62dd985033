#include "oracles.hpp"

#include "treeinv/morph.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <functional>

using namespace treeinv;
using oracle::linear_extensions;
using oracle::parents;
using oracle::surjections_bruteforce;

namespace {

const char *eight_leaf_tree = "(((L L) ((L L) L)) (L (L (L L))))";

std::vector<PlanarTree> all_trees_up_to(unsigned vertices)
{
    return enumerate_general(DegreeSet::parse("1.."), vertices);
}

std::vector<long> coefficients(const Series<RationalRing> &s, unsigned from, unsigned to)
{
    std::vector<long> out;
    for (unsigned n = from; n <= to; ++n)
        out.push_back(s.x_coefficient(n).get_num().get_si());
    return out;
}
/// Sum over vertices of their depth: each vertex is comparable to each ancestor.
unsigned long comparable_pairs(const PlanarTree &t, unsigned depth = 0)
{
    unsigned long s = depth;
    for (const auto &c : t.children)
        s += comparable_pairs(c, depth + 1);
    return s;
}

} // namespace

TEST(MorphCount, SmallExamples)
{
    auto leaf = PlanarTree::leaf();
    EXPECT_EQ(count_bruteforce(leaf, 2, true), 1);
    EXPECT_EQ(count_bruteforce(leaf, 2, false), 2);
    auto path = parse_tree("(L)");
    EXPECT_EQ(count_bruteforce(path, 2, false), 3);
    EXPECT_EQ(gamma_recursive(path, 2, false), 3);
    EXPECT_EQ(count_bruteforce(parse_tree(eight_leaf_tree), 2, true), 29);
    EXPECT_THROW(count_bruteforce(parse_tree(eight_leaf_tree), 3, false), SizeGuardError);
}

TEST(MorphCount, EightLeafTreeChains)
{
    auto t = parse_tree(eight_leaf_tree);
    auto at = [&](const char *a) { return subtree_at(t, Address::parse(a)); };
    EXPECT_EQ(gamma_recursive(t, 2, true), 29);
    EXPECT_EQ(gamma_recursive(t, 2, false), 1289);
    std::vector<std::pair<const char *, long>> restricted{{"11", 2}, {"121", 2}, {"222", 2}, {"12", 3},
                                                          {"22", 3}, {"1", 7},   {"2", 4}};
    for (const auto &[a, v] : restricted)
        EXPECT_EQ(gamma_recursive(at(a), 2, true), v) << a;
    std::vector<std::pair<const char *, long>> all{{"11", 5}, {"121", 5}, {"222", 5}, {"12", 11},
                                                   {"22", 11}, {"1", 56}, {"2", 23}};
    for (const auto &[a, v] : all)
        EXPECT_EQ(gamma_recursive(at(a), 2, false), v) << a;
    EXPECT_EQ(gamma_recursive(PlanarTree::leaf(), 5, false), 5);
    EXPECT_EQ(gamma_recursive(PlanarTree::leaf(), 5, true), 1);
}

TEST(MorphCount, RecursionEqualsBruteForce)
{
    for (const auto &t : all_trees_up_to(8))
        for (unsigned m : {1u, 2u, 3u})
            for (bool r : {false, true})
                EXPECT_EQ(gamma_recursive(t, m, r), count_bruteforce(t, m, r)) << format_tree(t) << " m=" << m;
}

TEST(MorphGf, BinaryFamily)
{
    auto fam = TreeFamily::regular(2);
    EXPECT_EQ(coefficients(morphism_gf(fam, 2, true, 8), 1, 8),
              (std::vector<long>{1, 2, 6, 21, 80, 322, 1348, 5814}));
    EXPECT_EQ(coefficients(morphism_gf(fam, 2, false, 6), 1, 6), (std::vector<long>{2, 5, 22, 118, 706, 4530}));
}

TEST(MorphGf, AllTreesFamily)
{
    auto fam = TreeFamily::all();
    EXPECT_EQ(coefficients(morphism_gf(fam, 2, true, 8), 1, 8),
              (std::vector<long>{1, 2, 5, 15, 50, 178, 663, 2553}));
    EXPECT_EQ(coefficients(morphism_gf(fam, 2, false, 8), 1, 8),
              (std::vector<long>{2, 3, 9, 34, 145, 667, 3231, 16247}));
    EXPECT_EQ(coefficients(morphism_gf(fam, 1, true, 5), 1, 5), (std::vector<long>{1, 1, 2, 5, 14}));
    EXPECT_EQ(morphism_gf(fam, 1, true, 9), morphism_gf(fam, 1, false, 9));
}

TEST(MorphGf, MatchesSumOverEnumeratedTrees)
{
    const unsigned N = 7;
    for (unsigned m : {1u, 2u, 3u}) {
        for (bool r : {false, true}) {
            auto all = morphism_gf(TreeFamily::all(), m, r, N);
            std::vector<mpz_class> by_vertices(N + 1, 0);
            for (const auto &t : all_trees_up_to(N))
                by_vertices[vertex_count(t)] += gamma_recursive(t, m, r);
            for (unsigned n = 1; n <= N; ++n)
                EXPECT_EQ(all.x_coefficient(n), mpq_class(by_vertices[n])) << "m=" << m << " n=" << n;
            for (unsigned k : {2u, 3u}) {
                auto reg = morphism_gf(TreeFamily::regular(k), m, r, N);
                std::vector<mpz_class> by_leaves(N + 1, 0);
                for (const auto &t : enumerate_k_regular(k, N))
                    by_leaves[leaf_count(t)] += gamma_recursive(t, m, r);
                for (unsigned n = 1; n <= N; ++n)
                    EXPECT_EQ(reg.x_coefficient(n), mpq_class(by_leaves[n])) << "k=" << k << " n=" << n;
            }
        }
    }
}

TEST(MorphComparablePairs, AllTrees)
{
    auto a = comparable_pairs_gf(TreeFamily::all(), 11);
    std::vector<mpz_class> expected{1, 5, 22, 93, 386, 1586, 6476, 26333, 106762, 431910};
    EXPECT_EQ(std::vector<mpz_class>(a.begin() + 2, a.end()), expected);
    // Direct pair counting over enumerated trees.
    std::vector<unsigned long> direct(8, 0);
    for (const auto &t : all_trees_up_to(7))
        direct[vertex_count(t)] += comparable_pairs(t);
    for (unsigned n = 1; n <= 7; ++n)
        EXPECT_EQ(a[n], direct[n]) << n;
    EXPECT_EQ(direct[3], 5u);
}

TEST(MorphComparablePairs, RegularTrees)
{
    auto two = comparable_pairs_gf(TreeFamily::regular(2), 19);
    std::vector<long> halves;
    for (unsigned n = 3; n <= 19; n += 2) {
        EXPECT_EQ(two[n] % 2, 0);
        halves.push_back(mpz_class(two[n] / 2).get_si());
    }
    EXPECT_EQ(halves, (std::vector<long>{1, 6, 29, 130, 562, 2380, 9949, 41226, 169766}));
    auto three = comparable_pairs_gf(TreeFamily::regular(3), 22);
    std::vector<long> thirds;
    for (unsigned n = 4; n <= 22; n += 3)
        thirds.push_back(mpz_class(three[n] / 3).get_si());
    EXPECT_EQ(thirds, (std::vector<long>{1, 9, 69, 502, 3564, 24960, 173325}));
    for (unsigned k : {2u, 3u}) {
        auto a = comparable_pairs_gf(TreeFamily::regular(k), 9);
        std::vector<unsigned long> direct(10, 0);
        for (const auto &t : enumerate_k_regular(k, 9))
            if (vertex_count(t) <= 9)
                direct[vertex_count(t)] += comparable_pairs(t);
        for (unsigned n = 1; n <= 9; ++n)
            EXPECT_EQ(a[n], direct[n]) << "k=" << k << " n=" << n;
    }
}

TEST(MorphComparablePairs, ThreeRegularEighthTerm)
{
    auto three = comparable_pairs_gf(TreeFamily::regular(3), 25);
    EXPECT_EQ(three[25] / 3, 1196748);
}

TEST(MorphSurjective, EightLeafBinaryTree)
{
    auto t = parse_tree(eight_leaf_tree);
    EXPECT_EQ(surjective(t), 492011520);
    EXPECT_EQ(surjective(subtree_at(t, Address::parse("1"))), 896);
    EXPECT_EQ(surjective(subtree_at(t, Address::parse("2"))), 48);
    EXPECT_EQ(surjective(subtree_at(t, Address::parse("12"))), 8);
    EXPECT_EQ(surjective(subtree_at(t, Address::parse("22"))), 8);
    EXPECT_EQ(surjective(subtree_at(t, Address::parse("11"))), 2);
    EXPECT_EQ(surjective(parse_tree("(L)")), 1);
}

TEST(MorphSurjective, RecursionEqualsBruteForce)
{
    for (const auto &t : all_trees_up_to(6)) {
        EXPECT_EQ(surjective(t), surjections_bruteforce(t)) << format_tree(t);
        EXPECT_EQ(surjective(t), linear_extensions(t)) << format_tree(t);
    }
}

TEST(MorphSurjective, BinaryTotalsAreTangentNumbers)
{
    auto fam = TreeFamily::regular(2);
    EXPECT_EQ(surjective_total(fam, 1), 1);
    EXPECT_EQ(surjective_total(fam, 2), 0);
    EXPECT_EQ(surjective_total(fam, 3), 2);
    EXPECT_EQ(surjective_total(fam, 5), 16);
    EXPECT_EQ(surjective_total(fam, 7), 272);
    for (unsigned n = 1; n <= 9; ++n) {
        mpz_class s = 0;
        for (const auto &t : enumerate_k_regular(2, 5))
            if (vertex_count(t) == n)
                s += surjective(t);
        EXPECT_EQ(surjective_total(fam, n), s) << n;
    }
}

TEST(MorphSurjective, AllTreesTotalsAreDoubleFactorials)
{
    // (2n-3)!! = 1, 1, 3, 15, 105, 945, ...
    mpz_class df = 1;
    for (unsigned n = 2; n <= 9; ++n) {
        if (n > 2)
            df *= 2 * n - 3;
        EXPECT_EQ(surjective_total(TreeFamily::all(), n), df) << n;
    }
    mpz_class brute = 0;
    for (const auto &t : all_trees_up_to(5))
        if (vertex_count(t) == 5)
            brute += surjections_bruteforce(t);
    EXPECT_EQ(brute, 105);
    EXPECT_EQ(surjective_total(TreeFamily::regular(3), 4), 6);
}

TEST(MorphOrderPolynomial, Examples)
{
    EXPECT_EQ(order_polynomial(PlanarTree::leaf(), false), QPoly::variable());
    auto path = order_polynomial(parse_tree("(L)"), false);
    EXPECT_EQ(path, QPoly(std::vector<mpq_class>{0, mpq_class(1, 2), mpq_class(1, 2)}));
    EXPECT_EQ(path.evaluate(mpq_class(2)), 3);
    auto t = parse_tree(eight_leaf_tree);
    auto r = order_polynomial(t, true);
    EXPECT_EQ(r.evaluate(mpq_class(2)), 29);
    EXPECT_EQ(r.degree(), 8);
    EXPECT_EQ(order_polynomial(t, false).evaluate(mpq_class(2)), 1289);
}

TEST(MorphOrderPolynomial, AgreesWithBruteForceAndHasExpectedDegree)
{
    for (const auto &t : all_trees_up_to(6)) {
        unsigned v = vertex_count(t);
        auto p = order_polynomial(t, false);
        auto r = order_polynomial(t, true);
        EXPECT_EQ(p.degree(), static_cast<int>(v));
        EXPECT_EQ(r.degree(), static_cast<int>(interior_count(t)));
        for (unsigned m = 1; m <= v + 2; ++m) {
            if (v >= 6 && m > 7)
                continue;
            EXPECT_EQ(p.evaluate(mpq_class(m)), mpq_class(count_bruteforce(t, m, false)));
            EXPECT_EQ(r.evaluate(mpq_class(m)), mpq_class(count_bruteforce(t, m, true)));
        }
    }
}

TEST(MorphFamily, Parse)
{
    EXPECT_EQ(TreeFamily::parse("all").kind, TreeFamily::Kind::all_trees);
    EXPECT_EQ(TreeFamily::parse("k=3").k, 3u);
    EXPECT_EQ(TreeFamily::parse("2").format(), "k=2");
    EXPECT_EQ(TreeFamily::parse("k2").k, 2u);
    EXPECT_THROW(TreeFamily::parse("k=1"), InputError);
    EXPECT_THROW(TreeFamily::parse("binary"), InputError);
}
