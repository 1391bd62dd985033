#pragma once

// Grafted trees (A; B_1, ..., B_d(A)) and the identities between signed
// sums of their partition functions.
//
// A grafted tree is stored as a marking of its skeleton: a monotone map
// from vertices to {1, 2} that sends every leaf to 2. A consists of the
// vertices marked 1 together with their sons; the B_j are the maximal
// subtrees hanging from the leaves of A, in leaf order.

#include "treeinv/errors.hpp"
#include "treeinv/series.hpp"
#include "treeinv/solve.hpp"
#include "treeinv/spin.hpp"
#include "treeinv/tree.hpp"

#include <json.hpp>

#include <optional>
#include <vector>

namespace treeinv {

struct GraftedTree {
    PlanarTree skeleton;
    /// Marks in depth-first vertex order (the order of vertex_addresses).
    std::vector<unsigned char> marking;

    friend bool operator==(const GraftedTree &, const GraftedTree &) = default;
};

struct GraftDecomposition {
    PlanarTree a;
    std::vector<PlanarTree> b;
};

/// All restricted monotone markings of a k-regular skeleton.
std::vector<GraftedTree> enumerate_grafted(const PlanarTree &t, unsigned k);

GraftDecomposition decompose(const GraftedTree &gt);

/// Checks monotonicity and that leaves carry mark 2.
bool is_restricted_monotone(const GraftedTree &gt);

nlohmann::json grafted_to_json(const GraftedTree &gt);
GraftedTree grafted_from_json(const nlohmann::json &j);

/// Z(A) (or Z_a(A)) with its i-th X replaced by Z~(B_i); computed
/// commutatively as X^(-d(A)) Z(A) prod_j Z~(B_j). The B-side uses the
/// complement of `b_model` when given, of `m` otherwise.
template <class Ring>
Series<Ring> z_grafted(const GraftedTree &gt, const SpinModel<Ring> &m, std::optional<std::size_t> restricted_to,
                       unsigned order, const SpinModel<Ring> *b_model = nullptr)
{
    GraftDecomposition d = decompose(gt);
    if (restricted_to && d.a.is_leaf())
        throw InputError("restricted grafted partition function needs a non-trivial A");
    SpinModel<Ring> mt = complement(b_model ? *b_model : m);
    Series<Ring> za = restricted_to ? restricted_partition(d.a, *restricted_to, m, order) : partition(d.a, m, order);
    unsigned shift = leaf_count(d.a);
    Series<Ring> acc(m.ring, order, m.grading);
    for (const auto &[mono, c] : za.terms()) {
        Monomial lowered = mono;
        lowered.x -= shift;
        acc.add_term(lowered, c);
    }
    for (const auto &b : d.b)
        acc = acc * partition(b, mt, order);
    return acc;
}

/// With a letter: sum over S'(T) of (-1)^d(A) Z_a(gt), plus Z~_a(T).
/// Without: sum over S(T) of (-1)^d(A) Z(gt). Both vanish.
template <class Ring>
Series<Ring> check_skeleton_sum(const PlanarTree &t, const SpinModel<Ring> &m, std::optional<std::size_t> letter)
{
    if (t.is_leaf())
        throw InputError("skeleton sums need a non-trivial tree");
    unsigned k = t.arity();
    if (!is_k_regular(t, k))
        throw InputError("skeleton is not regular");
    unsigned order = natural_order(t, m);
    Series<Ring> sum(m.ring, order, m.grading);
    for (const auto &gt : enumerate_grafted(t, k)) {
        GraftDecomposition d = decompose(gt);
        if (letter && d.a.is_leaf())
            continue;
        Series<Ring> z = z_grafted(gt, m, letter, order);
        sum += interior_count(d.a) % 2 == 0 ? z : -z;
    }
    if (letter)
        sum += restricted_partition(t, *letter, complement(m), order);
    return sum;
}

template <class Ring>
struct OracleSeries {
    Series<Ring> series;
    /// Coefficients of weighted degree up to this value are exact.
    unsigned sound_degree;
};

enum class OracleKind { g_by_enumeration, g_tilde_by_enumeration, composition_by_grafting };

/// Series assembled from explicit tree sums over all k-regular trees with at
/// most `max_leaves` leaves:
///   g  = -X + sum_a (-sum_T (-1)^d°(T) Z_a(T))
///   g~ = -X + sum_a sum_T (-1)^d(T) Z~_a(T)
///   g o g~ = -sum_gt (-1)^(d°(A) + sum_j d(B_j)) Z(gt)
/// The composition uses the complement of `b_model` on the B-side when given.
template <class Ring>
OracleSeries<Ring> signed_sum_oracle(const SpinModel<Ring> &m, unsigned max_leaves, OracleKind what,
                                     const SpinModel<Ring> *b_model = nullptr)
{
    if (max_leaves < 1)
        throw InputError("max_leaves must be at least 1");
    unsigned k = m.uniform_arity();
    unsigned order = max_leaves;
    Series<Ring> x = Series<Ring>::x(m.ring, order, m.grading);
    Series<Ring> out(m.ring, order, m.grading);
    auto trees = enumerate_k_regular(k, max_leaves);
    switch (what) {
    case OracleKind::g_by_enumeration:
        out = -x;
        for (const auto &t : trees) {
            if (t.is_leaf())
                continue;
            Series<Ring> z = partition(t, m, order);
            out += interior_count(t) % 2 == 0 ? -z : z;
        }
        break;
    case OracleKind::g_tilde_by_enumeration: {
        out = -x;
        SpinModel<Ring> mt = complement(m);
        for (const auto &t : trees) {
            if (t.is_leaf())
                continue;
            Series<Ring> z = partition(t, mt, order);
            out += leaf_count(t) % 2 == 0 ? z : -z;
        }
        break;
    }
    case OracleKind::composition_by_grafting:
        for (const auto &t : trees) {
            for (const auto &gt : enumerate_grafted(t, k)) {
                GraftDecomposition d = decompose(gt);
                unsigned parity = interior_count(d.a);
                for (const auto &b : d.b)
                    parity += leaf_count(b);
                Series<Ring> z = z_grafted(gt, m, std::nullopt, order, b_model);
                out += parity % 2 == 0 ? -z : z;
            }
        }
        break;
    }
    return {out, max_leaves};
}

} // namespace treeinv
