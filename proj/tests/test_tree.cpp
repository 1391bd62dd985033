#include "treeinv/tree.hpp"

#include <gtest/gtest.h>

#include <set>

using namespace treeinv;

namespace {

const char *eight_leaf_tree = "(((L L) ((L L) L)) (L (L (L L))))";
const char *mixed_tree = "(((L) L) (L L (L L L L) L))";

std::vector<std::string> formatted(const std::vector<Address> &as)
{
    std::vector<std::string> out;
    for (const auto &a : as)
        out.push_back(a.format());
    return out;
}

/// Trees with n leaves, every interior arity k, by the recurrence
/// c(n) = sum over compositions of n into k positive parts of prod c(parts).
std::vector<unsigned long> regular_counts(unsigned k, unsigned max_leaves)
{
    std::vector<unsigned long> c(max_leaves + 1, 0);
    c[1] = 1;
    for (unsigned n = 2; n <= max_leaves; ++n) {
        // ways[j][s]: ordered j-tuples of trees with s leaves in total
        std::vector<std::vector<unsigned long>> ways(k + 1, std::vector<unsigned long>(n + 1, 0));
        ways[0][0] = 1;
        for (unsigned j = 1; j <= k; ++j)
            for (unsigned s = 0; s <= n; ++s)
                for (unsigned p = 1; p <= s && p < n; ++p)
                    ways[j][s] += ways[j - 1][s - p] * c[p];
        c[n] = ways[k][n];
    }
    return c;
}

} // namespace

TEST(TreeFormat, ParsesAndRoundTrips)
{
    EXPECT_TRUE(parse_tree("L").is_leaf());
    auto cherry = parse_tree("(L L)");
    EXPECT_EQ(cherry, PlanarTree::corolla(2));
    auto t = parse_tree("(((L L)((L L) L))(L (L (L L))))");
    EXPECT_EQ(format_tree(t), eight_leaf_tree);
    EXPECT_EQ(parse_tree(format_tree(t)), t);
}

TEST(TreeFormat, ReportsErrorPositions)
{
    try {
        parse_tree("(L L");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 0u);
    }
    try {
        parse_tree("(L X)");
        FAIL();
    } catch (const ParseError &e) {
        EXPECT_EQ(e.position(), 3u);
    }
    EXPECT_THROW(parse_tree("()"), ParseError);
    EXPECT_THROW(parse_tree("L L"), ParseError);
}

TEST(TreeStats, EightLeafBinaryTree)
{
    auto t = parse_tree(eight_leaf_tree);
    auto s = tree_stats(t);
    EXPECT_EQ(s.leaves, 9u);
    EXPECT_EQ(s.interior, 8u);
    EXPECT_EQ(s.vertices, 17u);
    EXPECT_EQ(s.principal.size(), 2u);
    EXPECT_EQ(formatted(interior_addresses(t)),
              (std::vector<std::string>{"e", "1", "11", "12", "121", "2", "22", "222"}));
    EXPECT_EQ(format_address_list(t), "e,1,11,12,121,2,22,222");
    EXPECT_EQ(parse_address_list("e,1,2,11,12,22,121,222", 2), t);
}

TEST(TreeStats, MixedTreeAddressOrder)
{
    auto t = parse_tree(mixed_tree);
    EXPECT_EQ(vertex_count(t), 14u);
    EXPECT_EQ(formatted(vertex_addresses(t)),
              (std::vector<std::string>{"e", "1", "11", "111", "12", "2", "21", "22", "23", "231", "232", "233",
                                        "234", "24"}));
}

TEST(TreeStats, TrivialTree)
{
    auto s = tree_stats(PlanarTree::leaf());
    EXPECT_EQ(s.leaves, 1u);
    EXPECT_EQ(s.interior, 0u);
    EXPECT_TRUE(s.principal.empty());
}

TEST(TreeStats, SubtreesAndInvalidAddresses)
{
    auto t = parse_tree(eight_leaf_tree);
    EXPECT_EQ(format_tree(subtree_at(t, Address::parse("12"))), "((L L) L)");
    EXPECT_EQ(format_tree(subtree_at(t, Address::parse("e"))), eight_leaf_tree);
    EXPECT_THROW(subtree_at(t, Address::parse("13")), InputError);
    EXPECT_THROW(subtree_at(t, Address::parse("1111")), InputError);
    EXPECT_EQ(Address::parse("1.12.3").format(), "1.12.3");
    EXPECT_THROW(Address::parse("10"), ParseError);
}

TEST(TreeAddressList, RejectsOrphansAndWideDigits)
{
    EXPECT_THROW(parse_address_list("e,11", 2), InputError);
    EXPECT_THROW(parse_address_list("e,3", 2), InputError);
    EXPECT_TRUE(parse_address_list("", 2).is_leaf());
}

TEST(TreeEnumerate, RegularCountsMatchRecurrence)
{
    for (unsigned k : {2u, 3u, 4u}) {
        auto expected = regular_counts(k, 9);
        auto trees = enumerate_k_regular(k, 9);
        std::vector<unsigned long> counts(10, 0);
        for (const auto &t : trees) {
            ASSERT_TRUE(is_k_regular(t, k));
            EXPECT_EQ(leaf_count(t), (k - 1) * interior_count(t) + 1);
            ++counts[leaf_count(t)];
        }
        for (unsigned n = 1; n <= 9; ++n)
            EXPECT_EQ(counts[n], expected[n]) << "k=" << k << " n=" << n;
        std::set<PlanarTree> unique(trees.begin(), trees.end());
        EXPECT_EQ(unique.size(), trees.size());
    }
}

TEST(TreeEnumerate, Examples)
{
    EXPECT_EQ(enumerate_k_regular(2, 1), std::vector<PlanarTree>{PlanarTree::leaf()});
    std::vector<unsigned> per(5, 0);
    for (const auto &t : enumerate_k_regular(2, 4))
        ++per[leaf_count(t)];
    EXPECT_EQ(per, (std::vector<unsigned>{0, 1, 1, 2, 5}));
    std::vector<unsigned> per3(6, 0);
    for (const auto &t : enumerate_k_regular(3, 5))
        ++per3[leaf_count(t)];
    EXPECT_EQ(per3, (std::vector<unsigned>{0, 1, 0, 1, 0, 3}));
}

TEST(TreeEnumerate, OrderIsByLeavesThenStructure)
{
    auto trees = enumerate_k_regular(2, 6);
    for (std::size_t i = 1; i < trees.size(); ++i) {
        unsigned a = leaf_count(trees[i - 1]), b = leaf_count(trees[i]);
        EXPECT_TRUE(a < b || (a == b && trees[i - 1] < trees[i]));
    }
}

TEST(TreeEnumerate, General)
{
    auto paths = enumerate_general(DegreeSet::parse("1"), 3);
    ASSERT_EQ(paths.size(), 3u);
    EXPECT_EQ(format_tree(paths[2]), "((L))");
    auto small = enumerate_general(DegreeSet::parse("2,3"), 4);
    std::vector<std::string> got;
    for (const auto &t : small)
        got.push_back(format_tree(t));
    EXPECT_EQ(got, (std::vector<std::string>{"L", "(L L)", "(L L L)"}));
    EXPECT_EQ(enumerate_general(DegreeSet::parse("2,3"), 5).size(), 5u);
    auto open = enumerate_general(DegreeSet::parse("2,3,..."), 3);
    EXPECT_EQ(open.size(), 2u);
    EXPECT_TRUE(DegreeSet::parse("2..").contains(40));
    EXPECT_FALSE(DegreeSet::parse("2..").contains(1));
}

TEST(TreeEnumerate, GeneralAllArities)
{
    // Plane trees by vertex count are Catalan numbers C(n-1).
    auto trees = enumerate_general(DegreeSet::parse("1.."), 8);
    std::vector<unsigned> per(9, 0);
    for (const auto &t : trees)
        ++per[vertex_count(t)];
    EXPECT_EQ(per, (std::vector<unsigned>{0, 1, 1, 2, 5, 14, 42, 132, 429}));
}

TEST(TreeAddresses, LexicographicEqualsDepthFirst)
{
    for (const auto &t : enumerate_general(DegreeSet::parse("1.."), 7)) {
        auto as = vertex_addresses(t);
        EXPECT_TRUE(std::is_sorted(as.begin(), as.end()));
        for (const auto &a : as)
            EXPECT_TRUE(is_valid_address(t, a));
    }
}
