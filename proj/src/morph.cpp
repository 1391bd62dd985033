#include "treeinv/morph.hpp"

#include <functional>

namespace treeinv {

namespace {

constexpr unsigned long kBruteForceLimit = 10'000'000;

using QSeries = Series<RationalRing>;
using DSeries = Series<DualRing>;

mpz_class factorial(unsigned n)
{
    mpz_class f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return f;
}

void require_family(const TreeFamily &f)
{
    if (f.kind == TreeFamily::Kind::k_regular && f.k < 2)
        throw InputError("k-regular family needs k >= 2");
}

/// Labelings by root label, entry h-1 for label h.
std::vector<mpz_class> by_root_label(const PlanarTree &t, unsigned m, bool restricted)
{
    std::vector<mpz_class> f(m, 0);
    if (t.is_leaf()) {
        for (unsigned h = 0; h < m; ++h)
            f[h] = (!restricted || h + 1 == m) ? 1 : 0;
        return f;
    }
    for (auto &v : f)
        v = 1;
    for (const auto &c : t.children) {
        auto g = by_root_label(c, m, restricted);
        mpz_class suffix = 0;
        for (unsigned h = m; h-- > 0;) {
            suffix += g[h];
            f[h] *= suffix;
        }
    }
    return f;
}

/// Smallest fixed point of y = step(y) reached from zero. Each step must fix
/// at least one more coefficient, so order + 2 steps always suffice.
template <class S>
S iterate_to_fixed_point(S y, const std::function<S(const S &)> &step, unsigned order)
{
    for (unsigned i = 0; i <= order + 2; ++i) {
        S next = step(y);
        if (next == y)
            return y;
        y = std::move(next);
    }
    throw std::logic_error("fixed-point iteration did not settle");
}

std::pair<mpz_class, unsigned> surjective_with_size(const PlanarTree &t)
{
    if (t.is_leaf())
        return {1, 1};
    mpz_class num = 1, den = 1;
    unsigned n = 1;
    for (const auto &c : t.children) {
        auto [s, nc] = surjective_with_size(c);
        num *= s;
        den *= factorial(nc);
        n += nc;
    }
    mpz_class r = factorial(n - 1) * num;
    mpz_divexact(r.get_mpz_t(), r.get_mpz_t(), den.get_mpz_t());
    return {r, n};
}

} // namespace

TreeFamily TreeFamily::parse(const std::string &text)
{
    if (text == "all")
        return all();
    std::string digits = text;
    if (text.rfind("k=", 0) == 0)
        digits = text.substr(2);
    else if (text.rfind('k', 0) == 0)
        digits = text.substr(1);
    if (digits.empty() || digits.find_first_not_of("0123456789") != std::string::npos || digits.size() > 3)
        throw InputError("tree family must be 'all', 'k=<k>' or 'k<k>', got '" + text + "'");
    TreeFamily f = regular(static_cast<unsigned>(std::stoul(digits)));
    require_family(f);
    return f;
}

std::string TreeFamily::format() const
{
    return kind == Kind::all_trees ? "all" : "k=" + std::to_string(k);
}

mpz_class count_bruteforce(const PlanarTree &t, unsigned m, bool restricted)
{
    std::vector<std::size_t> parent;
    std::vector<bool> leaf;
    std::function<void(const PlanarTree &, std::size_t)> walk = [&](const PlanarTree &s, std::size_t p) {
        std::size_t me = parent.size();
        parent.push_back(p);
        leaf.push_back(s.is_leaf());
        for (const auto &c : s.children)
            walk(c, me);
    };
    walk(t, static_cast<std::size_t>(-1));
    std::size_t n = parent.size();
    if (m == 0)
        return 0;
    mpz_class total;
    mpz_ui_pow_ui(total.get_mpz_t(), m, n);
    if (total > kBruteForceLimit)
        throw SizeGuardError("brute force would enumerate " + total.get_str() + " labelings (limit 10^7)");
    std::vector<unsigned> label(n, 1);
    mpz_class count = 0;
    for (;;) {
        bool ok = true;
        for (std::size_t v = 0; v < n && ok; ++v) {
            if (v > 0 && label[v] < label[parent[v]])
                ok = false;
            if (restricted && leaf[v] && label[v] != m)
                ok = false;
        }
        if (ok)
            ++count;
        std::size_t i = 0;
        while (i < n && ++label[i] > m)
            label[i++] = 1;
        if (i == n)
            return count;
    }
}

mpz_class gamma_recursive(const PlanarTree &t, unsigned m, bool restricted)
{
    mpz_class s = 0;
    for (const auto &v : by_root_label(t, m, restricted))
        s += v;
    return s;
}

Series<RationalRing> morphism_gf(const TreeFamily &family, unsigned m, bool restricted, unsigned order)
{
    require_family(family);
    if (m < 1 || order < 1)
        throw InputError("morphism_gf needs m >= 1 and order >= 1");
    RationalRing q;
    QSeries t = QSeries::x(q, order);
    QSeries one = QSeries::constant(q, order, q.one());
    auto f = [&](const QSeries &y) {
        if (family.kind == TreeFamily::Kind::k_regular)
            return y.power(family.k);
        return t * y * (one - y).reciprocal();
    };
    QSeries lower(q, order); // sum of F(y_j) for j < h
    QSeries y(q, order);
    for (unsigned h = 1; h <= m; ++h) {
        QSeries base = t.scaled(mpq_class(restricted ? 1 : h)) + lower;
        y = iterate_to_fixed_point<QSeries>(
            QSeries(q, order), [&](const QSeries &z) { return base + f(z); }, order);
        lower += f(y);
    }
    return y;
}

std::vector<mpz_class> comparable_pairs_gf(const TreeFamily &family, unsigned order)
{
    require_family(family);
    if (order < 2)
        throw InputError("comparable_pairs_gf needs order >= 2");
    DualRing d;
    DSeries t = DSeries::x(d, order);
    DSeries one = DSeries::constant(d, order, d.one());
    // y(tu, u) with u = 1 + eps: the t^n coefficient picks up a factor 1 + n eps.
    auto shifted = [&](const DSeries &y) {
        DSeries out(d, order);
        for (const auto &[mono, c] : y.terms())
            out.add_term(mono, c * Dual(1, mono.x));
        return out;
    };
    auto step = [&](const DSeries &y) {
        DSeries z = shifted(y);
        if (family.kind == TreeFamily::Kind::k_regular)
            return t + t * z.power(family.k);
        return t + t * z * (one - z).reciprocal();
    };
    DSeries y = iterate_to_fixed_point<DSeries>(DSeries(d, order), step, order);
    std::vector<mpz_class> out(order + 1, 0);
    for (unsigned n = 0; n <= order; ++n) {
        const mpq_class &e = y.x_coefficient(n).eps;
        if (e.get_den() != 1)
            throw std::logic_error("non-integral comparable-pair count");
        out[n] = e.get_num();
    }
    return out;
}

mpz_class surjective(const PlanarTree &t)
{
    return surjective_with_size(t).first;
}

mpz_class surjective_total(const TreeFamily &family, unsigned n)
{
    require_family(family);
    if (n == 0)
        return 0;
    if (family.kind == TreeFamily::Kind::k_regular && family.k == 2) {
        std::vector<mpz_class> alpha(n + 1, 0);
        alpha[1] = 1;
        for (unsigned j = 2; j <= n; ++j) {
            mpz_class s = 0;
            for (unsigned k = 1; k + 2 <= j; ++k) {
                mpz_class binom;
                mpz_bin_uiui(binom.get_mpz_t(), j - 1, k);
                s += binom * alpha[k] * alpha[j - 1 - k];
            }
            alpha[j] = s;
        }
        return alpha[n];
    }
    std::vector<PlanarTree> trees;
    if (family.kind == TreeFamily::Kind::k_regular) {
        if ((n - 1) % family.k != 0)
            return 0;
        trees = enumerate_k_regular(family.k, (n - 1) / family.k * (family.k - 1) + 1);
    } else {
        trees = enumerate_general(DegreeSet::parse("1.."), n);
    }
    mpz_class s = 0;
    for (const auto &t : trees)
        if (vertex_count(t) == n)
            s += surjective(t);
    return s;
}

QPoly order_polynomial(const PlanarTree &t, bool restricted)
{
    // Newton forward differences at m = 1..D+1: p(m) = sum_j (Delta^j p)(1) C(m-1, j).
    unsigned d = vertex_count(t);
    std::vector<mpz_class> diff;
    for (unsigned m = 1; m <= d + 1; ++m)
        diff.push_back(gamma_recursive(t, m, restricted));
    QPoly p, basis(1L);
    QPoly m_var = QPoly::variable();
    for (unsigned j = 0; j <= d; ++j) {
        p += basis.scaled(mpq_class(diff[0]));
        for (std::size_t i = 0; i + 1 < diff.size(); ++i)
            diff[i] = diff[i + 1] - diff[i];
        diff.pop_back();
        // C(m-1, j+1) = C(m-1, j) (m-1-j) / (j+1)
        basis = (basis * (m_var - QPoly(static_cast<long>(j + 1)))).scaled(mpq_class(1, j + 1));
    }
    return p;
}

} // namespace treeinv
