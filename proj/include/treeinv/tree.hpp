#pragma once

// Finite rooted planar trees. The order of `children` is the planar
// structure; a vertex without children is a leaf.

#include "treeinv/errors.hpp"

#include <compare>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace treeinv {

struct PlanarTree {
    std::vector<PlanarTree> children;

    static PlanarTree leaf() { return {}; }
    static PlanarTree node(std::vector<PlanarTree> kids) { return PlanarTree{std::move(kids)}; }
    /// Root with `k` leaf children.
    static PlanarTree corolla(unsigned k) { return node(std::vector<PlanarTree>(k)); }

    bool is_leaf() const { return children.empty(); }
    unsigned arity() const { return static_cast<unsigned>(children.size()); }

    friend bool operator==(const PlanarTree &, const PlanarTree &) = default;
    /// Leaves first, then children compared lexicographically.
    friend std::strong_ordering operator<=>(const PlanarTree &a, const PlanarTree &b);
};

/// Sequence of 1-based sibling positions from the root.
struct Address {
    std::vector<unsigned> digits;

    bool is_root() const { return digits.empty(); }
    Address child(unsigned position) const
    {
        Address a = *this;
        a.digits.push_back(position);
        return a;
    }
    std::size_t length() const { return digits.size(); }

    friend bool operator==(const Address &, const Address &) = default;
    friend auto operator<=>(const Address &a, const Address &b) { return a.digits <=> b.digits; }

    /// "e" for the root; digits concatenated when all are below 10, dot-separated otherwise.
    std::string format() const;
    static Address parse(std::string_view text);
};

PlanarTree parse_tree(std::string_view text);
std::string format_tree(const PlanarTree &t);

unsigned leaf_count(const PlanarTree &t);
unsigned interior_count(const PlanarTree &t);
unsigned vertex_count(const PlanarTree &t);
unsigned height(const PlanarTree &t);
bool is_k_regular(const PlanarTree &t, unsigned k);

/// All vertex addresses in depth-first (= lexicographic) order.
std::vector<Address> vertex_addresses(const PlanarTree &t);
std::vector<Address> interior_addresses(const PlanarTree &t);
std::vector<Address> leaf_addresses(const PlanarTree &t);

/// Maximal subtree rooted at `a`; throws InputError for an invalid address.
const PlanarTree &subtree_at(const PlanarTree &t, const Address &a);
bool is_valid_address(const PlanarTree &t, const Address &a);

/// Principal subtrees in sibling order; empty for the trivial tree.
const std::vector<PlanarTree> &principal_subtrees(const PlanarTree &t);

struct TreeStats {
    unsigned leaves = 0;
    unsigned interior = 0;
    unsigned vertices = 0;
    std::vector<Address> addresses;
    std::vector<PlanarTree> principal;
};

TreeStats tree_stats(const PlanarTree &t);

/// k-regular tree from its interior addresses ("e,1,2,11"); every prefix of an
/// interior address must be interior and digits must be at most k.
PlanarTree tree_from_interior_addresses(const std::vector<Address> &interior, unsigned k);
PlanarTree parse_address_list(std::string_view text, unsigned k);
std::string format_address_list(const PlanarTree &t);

/// All k-regular trees with at most `max_leaves` leaves, ordered by leaf
/// count and then by tree order.
std::vector<PlanarTree> enumerate_k_regular(unsigned k, unsigned max_leaves);
/// k-regular trees with exactly `leaves` leaves, in tree order.
std::vector<PlanarTree> k_regular_with_leaves(unsigned k, unsigned leaves);

/// Allowed interior arities: a finite set plus an optional unbounded tail
/// {from, from+1, ...}.
struct DegreeSet {
    std::set<unsigned> finite;
    std::optional<unsigned> from;

    bool contains(unsigned k) const { return finite.count(k) > 0 || (from && k >= *from); }
    /// Members not exceeding `bound`.
    std::vector<unsigned> members_up_to(unsigned bound) const;
    bool empty() const { return finite.empty() && !from; }

    /// "2,3" or "2,3,..." (tail starts at the last listed value) or "2..".
    static DegreeSet parse(std::string_view text);
    std::string format() const;
};

/// All trees with at most `max_vertices` vertices whose interior arities lie
/// in K, ordered by vertex count and then by tree order.
std::vector<PlanarTree> enumerate_general(const DegreeSet &k, unsigned max_vertices);

} // namespace treeinv
