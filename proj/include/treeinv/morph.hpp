#pragma once

// Morphisms (order-preserving vertex labelings, child >= father) from rooted
// planar trees into the chain {1, ..., m}. A morphism is restricted when
// every leaf is labelled m.

#include "treeinv/poly.hpp"
#include "treeinv/series.hpp"
#include "treeinv/tree.hpp"

#include <gmpxx.h>

#include <string>
#include <vector>

namespace treeinv {

struct TreeFamily {
    enum class Kind { k_regular, all_trees };
    Kind kind = Kind::all_trees;
    unsigned k = 2;

    static TreeFamily regular(unsigned k) { return {Kind::k_regular, k}; }
    static TreeFamily all() { return {Kind::all_trees, 0}; }

    /// "all", "k=<k>", "k<k>" or "<k>".
    static TreeFamily parse(const std::string &text);
    std::string format() const;
};

/// Exhaustive enumeration; refuses (SizeGuardError) beyond 10^7 labelings.
mpz_class count_bruteforce(const PlanarTree &t, unsigned m, bool restricted);

/// Count by the root label: f_T(h) = prod_j sum_{h' >= h} f_{T_j}(h').
mpz_class gamma_recursive(const PlanarTree &t, unsigned m, bool restricted);

/// Generating function of morphism counts summed over a family; t marks
/// leaves for k-regular trees and vertices for all trees. Solved from
///   k-regular: y_m = c t + sum_{h<=m} y_h^k
///   all trees: y_m = c t + t sum_{h<=m} y_h / (1 - y_h)
/// with c = 1 (restricted) or m (unrestricted).
Series<RationalRing> morphism_gf(const TreeFamily &family, unsigned m, bool restricted, unsigned order);

/// Entry n is the number of unordered comparable vertex pairs summed over the
/// family's trees with n vertices (entries 0..order). Computed as dy/du at
/// u = 1 with u = 1 + eps, where y(t,u) = t + t F(y(tu,u)).
std::vector<mpz_class> comparable_pairs_gf(const TreeFamily &family, unsigned order);

/// Surjective morphisms onto {1, ..., |V|}:
///   sigma(T) = (n-1)! prod sigma(T_j) / n_j!.
mpz_class surjective(const PlanarTree &t);

/// Sum of sigma over the family's trees with n vertices. Binary trees use
///   alpha_n = (n-1)! sum_{k=1}^{n-2} alpha_k alpha_{n-1-k} / (k! (n-1-k)!),
/// other families sum over enumerated trees.
mpz_class surjective_total(const TreeFamily &family, unsigned n);

/// Count of (restricted) morphisms into {1, ..., m} as a polynomial in m.
QPoly order_polynomial(const PlanarTree &t, bool restricted);

} // namespace treeinv
