#pragma once

// Fixed-point solver for the mutually inverse series g and g~ of a spin
// model, identity verification, and series inversion through a tree model.
//
//   g_a  = Y_a (X - (M_1 V)_a) ... (X - (M_k V)_a),     V  = (g_b)_b
//   g~_a = Y_a (-X + (M~_1 V~)_a) ... (-X + (M~_k V~)_a), V~ = (g~_b)_b
//   g = -X + sum_a g_a,  g~ = -X + sum_a g~_a
//
// where k is the arity of a's block and M~ = 1 - M.

#include "treeinv/errors.hpp"
#include "treeinv/series.hpp"
#include "treeinv/spin.hpp"

#include <functional>
#include <stdexcept>
#include <vector>

namespace treeinv {

template <class Ring>
struct SeriesSystem {
    SpinModel<Ring> model;
    unsigned order;
    std::vector<Series<Ring>> g;
    std::vector<Series<Ring>> g_tilde;
    Series<Ring> g_total;
    Series<Ring> g_tilde_total;
};

template <class Ring>
using SweepObserver = std::function<void(unsigned sweep, const std::vector<Series<Ring>> &iterate)>;

namespace detail {

/// One sweep of the right-hand side. `sign` is +1 for g (factors X - MV)
/// and -1 for g~ (factors -X + MV).
template <class Ring>
std::vector<Series<Ring>> sweep(const SpinModel<Ring> &m, const std::vector<Series<Ring>> &v, unsigned order,
                                int sign)
{
    std::vector<Series<Ring>> next(m.size(), Series<Ring>(m.ring, order, m.grading));
    auto x = Series<Ring>::x(m.ring, order, m.grading);
    for (const auto &block : m.blocks) {
        for (std::size_t r = 0; r < block.letters.size(); ++r) {
            std::size_t a = block.letters[r];
            Series<Ring> acc = m.y_series(a, order);
            // Runs of equal matrix rows give equal factors, raised to a power at once.
            for (unsigned j = 0; j < block.arity && !acc.is_zero();) {
                unsigned run = 1;
                while (j + run < block.arity && block.matrices[j + run][r] == block.matrices[j][r])
                    ++run;
                Series<Ring> mv(m.ring, order, m.grading);
                for (std::size_t b = 0; b < m.size(); ++b)
                    if (!v[b].is_zero())
                        mv += v[b].scaled(block.matrices[j][r][b]);
                acc = acc * (sign > 0 ? x - mv : mv - x).power(run);
                j += run;
            }
            next[a] = std::move(acc);
        }
    }
    return next;
}

template <class Ring>
Series<Ring> total(const SpinModel<Ring> &m, const std::vector<Series<Ring>> &parts, unsigned order)
{
    Series<Ring> t = -Series<Ring>::x(m.ring, order, m.grading);
    for (const auto &p : parts)
        t += p;
    return t;
}

/// Y-weight of a letter as it enters the grading (0 for numeric Y).
template <class Ring>
unsigned letter_weight(const SpinModel<Ring> &m, std::size_t a)
{
    return m.y_values ? 0 : m.grading.weight_of(SpinModel<Ring>::y_name(m.alphabet[a]));
}

/// Bootstrap with progressive truncation. The zero vector is exact through
/// degree `exact`; if V is exact through d, one sweep is exact through
/// d + gain. Every iterate is stored truncated to its exact degree.
template <class Ring>
std::vector<Series<Ring>> bootstrap(const SpinModel<Ring> &m, unsigned order, int sign, unsigned exact, unsigned gain,
                                    const SweepObserver<Ring> &observer)
{
    std::vector<Series<Ring>> v(m.size(), Series<Ring>(m.ring, std::min(exact, order), m.grading));
    unsigned n = 0;
    while (exact < order) {
        exact = std::min(order, exact + gain);
        std::vector<Series<Ring>> lifted;
        lifted.reserve(v.size());
        for (const auto &s : v)
            lifted.push_back(s.with_order(exact));
        v = sweep(m, lifted, exact, sign);
        if (observer)
            observer(++n, v);
    }
    for (auto &s : v)
        s = s.with_order(order);
    return v;
}

} // namespace detail

/// Bootstrap for a uniform model of arity k >= 2; sweep n is exact modulo
/// X^(1+(n+1)(k-1)), so iteration stops once that exceeds the order.
template <class Ring>
SeriesSystem<Ring> solve_regular(const SpinModel<Ring> &m, unsigned order, const SweepObserver<Ring> &observer = {})
{
    unsigned k = m.uniform_arity();
    if (k < 2)
        throw InputError("solve_regular needs arity k >= 2");
    if (order < k)
        throw InputError("order " + std::to_string(order) + " is below the arity " + std::to_string(k));
    auto v = detail::bootstrap(m, order, +1, k - 1, k - 1, observer);
    auto vt = detail::bootstrap(complement(m), order, -1, k - 1, k - 1, {});
    SeriesSystem<Ring> s{m, order, v, vt, detail::total(m, v, order), detail::total(m, vt, order)};
    return s;
}

/// Solver for models with several arity blocks. Arity-1 letters need a
/// symbolic Y of positive weight, otherwise the recursion is ill-founded.
template <class Ring>
SeriesSystem<Ring> solve_general(const SpinModel<Ring> &m, unsigned order)
{
    m.validate();
    // g_a has valuation >= k_a + w_a; an error of degree e in V reappears at
    // degree >= e + k_a - 1 + w_a.
    unsigned exact = ~0u, gain = ~0u;
    for (const auto &b : m.blocks)
        for (std::size_t a : b.letters) {
            unsigned w = detail::letter_weight(m, a);
            exact = std::min(exact, b.arity + w - 1);
            gain = std::min(gain, b.arity - 1 + w);
        }
    if (gain == 0)
        throw InputError("arity 1 requires symbolic Y of positive weight");
    auto v = detail::bootstrap(m, order, +1, exact, gain, {});
    auto vt = detail::bootstrap(complement(m), order, -1, exact, gain, {});
    SeriesSystem<Ring> s{m, order, v, vt, detail::total(m, v, order), detail::total(m, vt, order)};
    return s;
}

template <class Ring>
struct Residuals {
    Series<Ring> left;  ///< g(g~(X)) - X
    Series<Ring> right; ///< g~(g(X)) - X

    bool verified() const { return left.is_zero() && right.is_zero(); }
};

template <class Ring>
Residuals<Ring> verify_identity(const SeriesSystem<Ring> &s)
{
    auto x = Series<Ring>::x(s.model.ring, s.order, s.model.grading);
    return {compose_in_x(s.g_total, s.g_tilde_total) - x, compose_in_x(s.g_tilde_total, s.g_total) - x};
}

/// Residuals of the defining equations, one per letter, for g and g~.
template <class Ring>
std::pair<std::vector<Series<Ring>>, std::vector<Series<Ring>>> equation_residuals(const SeriesSystem<Ring> &s)
{
    auto lhs = detail::sweep(s.model, s.g, s.order, +1);
    auto rhs = detail::sweep(complement(s.model), s.g_tilde, s.order, -1);
    std::vector<Series<Ring>> r1, r2;
    for (std::size_t a = 0; a < s.model.size(); ++a) {
        r1.push_back(s.g[a] - lhs[a]);
        r2.push_back(s.g_tilde[a] - rhs[a]);
    }
    return {r1, r2};
}

/// Details of an inversion through a tree model.
template <class Ring>
struct TreeInversion {
    typename Ring::value_type l;                   ///< beta_2 of the normalised series
    std::vector<typename Ring::value_type> c;      ///< c[k] for arity k (entries 0, 1 unused)
    SeriesSystem<Ring> system;                     ///< g_total equals the normalised series
    Series<Ring> inverse;
};

/// Inverts h = gamma_1 X + ... by normalising to f = h(-X/gamma_1) =
/// -X + sum beta_k X^k and realising f as g of a model with one letter per
/// arity k, Y = beta_2 and constant rows c_k/beta_2. The c_k solve a
/// triangular system; the inverse of h is then -g~(X)/gamma_1.
template <class Ring>
TreeInversion<Ring> invert_via_trees_detailed(const Series<Ring> &h)
{
    using V = typename Ring::value_type;
    h.require_univariate("invert_via_trees");
    const Ring &ring = h.ring();
    const unsigned N = h.order();
    if (!ring.is_zero(h.x_coefficient(0)))
        throw NotInvertibleError("series to invert has a constant term");
    V gamma1 = h.x_coefficient(1);
    if (!ring.is_unit(gamma1))
        throw NotInvertibleError("linear coefficient is not a unit");
    if (N < 2)
        throw InputError("inversion through trees needs order >= 2");
    V scale = -ring.inverse(gamma1);
    std::vector<V> beta(N + 1, ring.zero());
    {
        V p = ring.one();
        for (unsigned k = 1; k <= N; ++k) {
            p *= scale;
            beta[k] = h.x_coefficient(k) * p;
        }
    }
    V l = beta[2];
    if (!ring.is_unit(l))
        throw UnsupportedError("quadratic coefficient of the normalised series is not a unit");
    V l_inv = ring.inverse(l);

    // Target T = (f + X)/l = X^2 + sum_{k>=3} (beta_k/l) X^k.
    std::vector<V> t(N + 1, ring.zero());
    for (unsigned k = 2; k <= N; ++k)
        t[k] = beta[k] * l_inv;
    auto target = Series<Ring>::from_x_coefficients(ring, N, t);
    auto x = Series<Ring>::x(ring, N);

    // [X^n] sum_k (X - c_k T)^k = [X^n]T fixes c_{n-1}, which enters with
    // coefficient -(n-1).
    std::vector<V> c(N + 1, ring.zero());
    for (unsigned n = 3; n <= N; ++n) {
        Series<Ring> rhs(ring, n);
        auto tn = target.truncated(n);
        auto xn = x.truncated(n);
        for (unsigned k = 2; k <= n; ++k)
            rhs += (xn - tn.scaled(c[k])).power(k);
        V v = rhs.x_coefficient(n);
        V denom = ring.from_int(static_cast<long>(n - 1));
        if (!ring.is_unit(denom))
            throw NotInvertibleError("triangular system needs " + std::to_string(n - 1) + " to be invertible");
        c[n - 1] = (v - t[n]) * ring.inverse(denom);
    }

    SpinModel<Ring> m(ring);
    std::vector<V> ys;
    for (unsigned k = 2; k <= N; ++k) {
        m.alphabet.push_back("a" + std::to_string(k));
        ys.push_back(l);
    }
    for (unsigned k = 2; k <= N; ++k) {
        ArityBlock<Ring> b;
        b.arity = k;
        b.letters = {k - 2};
        V entry = c[k] * l_inv;
        b.matrices.assign(k, Matrix<Ring>{std::vector<V>(m.alphabet.size(), entry)});
        m.blocks.push_back(std::move(b));
    }
    m.y_values = ys;
    m.validate();
    auto system = solve_general(m, N);

    Series<Ring> f = Series<Ring>::from_x_coefficients(ring, N, beta);
    if (!(system.g_total == f))
        throw std::logic_error("tree model does not reproduce the normalised series");
    // h^{-1}(X) = -g~(X)/gamma_1 = scale * g~(X).
    Series<Ring> inverse = system.g_tilde_total.scaled(scale);
    return {l, c, std::move(system), std::move(inverse)};
}

template <class Ring>
Series<Ring> invert_via_trees(const Series<Ring> &h)
{
    return invert_via_trees_detailed(h).inverse;
}

template <class Ring>
nlohmann::json system_to_json(const SeriesSystem<Ring> &s)
{
    nlohmann::json g = nlohmann::json::object(), gt = nlohmann::json::object();
    for (std::size_t a = 0; a < s.model.size(); ++a) {
        g[s.model.alphabet[a]] = to_json(s.g[a]);
        gt[s.model.alphabet[a]] = to_json(s.g_tilde[a]);
    }
    return {{"order", s.order},
            {"g", g},
            {"g_tilde", gt},
            {"g_total", to_json(s.g_total)},
            {"g_tilde_total", to_json(s.g_tilde_total)}};
}

} // namespace treeinv
