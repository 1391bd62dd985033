#pragma once

// Truncated power series in a distinguished variable X and commuting
// parameters Y_name, over one of the exact rings of ring.hpp.
//
// A series stores only monomials whose weighted degree is at most its
// order. Binary operations truncate to the smaller order.

#include "treeinv/errors.hpp"
#include "treeinv/ring.hpp"

#include <json.hpp>

#include <algorithm>
#include <compare>
#include <map>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace treeinv {

struct Monomial {
    unsigned x = 0;
    /// Sorted by name; exponents are positive.
    std::vector<std::pair<std::string, unsigned>> y;

    static Monomial x_power(unsigned k) { return Monomial{k, {}}; }

    unsigned y_degree() const
    {
        unsigned d = 0;
        for (const auto &[name, e] : y)
            d += e;
        return d;
    }

    friend bool operator==(const Monomial &, const Monomial &) = default;

    friend std::strong_ordering operator<=>(const Monomial &a, const Monomial &b)
    {
        if (auto c = a.x <=> b.x; c != 0)
            return c;
        if (auto c = a.y_degree() <=> b.y_degree(); c != 0)
            return c;
        return a.y <=> b.y;
    }

    friend Monomial operator*(const Monomial &a, const Monomial &b)
    {
        Monomial out{a.x + b.x, {}};
        out.y.reserve(a.y.size() + b.y.size());
        auto i = a.y.begin();
        auto j = b.y.begin();
        while (i != a.y.end() || j != b.y.end()) {
            if (j == b.y.end() || (i != a.y.end() && i->first < j->first))
                out.y.push_back(*i++);
            else if (i == a.y.end() || j->first < i->first)
                out.y.push_back(*j++);
            else {
                out.y.emplace_back(i->first, i->second + j->second);
                ++i;
                ++j;
            }
        }
        return out;
    }

    std::string format() const;
};

/// Weights of the variables. X always has weight 1; parameters default to
/// `y_weight` unless listed in `y_overrides`.
struct Grading {
    unsigned y_weight = 0;
    std::map<std::string, unsigned> y_overrides;

    unsigned weight_of(const std::string &name) const
    {
        auto it = y_overrides.find(name);
        return it == y_overrides.end() ? y_weight : it->second;
    }

    unsigned degree(const Monomial &m) const
    {
        unsigned d = m.x;
        for (const auto &[name, e] : m.y)
            d += weight_of(name) * e;
        return d;
    }

    friend bool operator==(const Grading &, const Grading &) = default;
};

template <class Ring>
class Series {
public:
    using value_type = typename Ring::value_type;
    using TermMap = std::map<Monomial, value_type>;

    Series(Ring ring, unsigned order, Grading grading = {})
        : ring_(std::move(ring)), order_(order), grading_(std::move(grading))
    {
    }

    static Series constant(const Ring &ring, unsigned order, const value_type &c, Grading grading = {})
    {
        return monomial(ring, order, Monomial{}, c, std::move(grading));
    }

    static Series x(const Ring &ring, unsigned order, Grading grading = {})
    {
        return monomial(ring, order, Monomial::x_power(1), ring.one(), std::move(grading));
    }

    static Series monomial(const Ring &ring, unsigned order, const Monomial &m, const value_type &c,
                           Grading grading = {})
    {
        Series s(ring, order, std::move(grading));
        s.add_term(m, c);
        return s;
    }

    /// Builds sum_k coeffs[k] X^k.
    static Series from_x_coefficients(const Ring &ring, unsigned order, const std::vector<value_type> &coeffs,
                                      Grading grading = {})
    {
        Series s(ring, order, std::move(grading));
        for (std::size_t k = 0; k < coeffs.size(); ++k)
            s.add_term(Monomial::x_power(static_cast<unsigned>(k)), coeffs[k]);
        return s;
    }

    const Ring &ring() const { return ring_; }
    unsigned order() const { return order_; }
    const Grading &grading() const { return grading_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    value_type coefficient(const Monomial &m) const
    {
        auto it = terms_.find(m);
        return it == terms_.end() ? ring_.zero() : it->second;
    }

    value_type x_coefficient(unsigned k) const { return coefficient(Monomial::x_power(k)); }

    /// Coefficients of X^0..X^order; requires the series to be free of parameters.
    std::vector<value_type> x_coefficients() const
    {
        require_univariate("x_coefficients");
        std::vector<value_type> out(order_ + 1, ring_.zero());
        for (const auto &[m, c] : terms_)
            out[m.x] = c;
        return out;
    }

    bool is_univariate() const
    {
        return std::all_of(terms_.begin(), terms_.end(), [](const auto &t) { return t.first.y.empty(); });
    }

    /// Smallest weighted degree of a stored term, or order+1 for zero.
    unsigned valuation() const
    {
        unsigned v = order_ + 1;
        for (const auto &[m, c] : terms_)
            v = std::min(v, grading_.degree(m));
        return v;
    }

    /// Adds c * m unless m lies above the truncation order.
    void add_term(const Monomial &m, const value_type &c)
    {
        if (grading_.degree(m) > order_ || ring_.is_zero(c))
            return;
        auto [it, inserted] = terms_.emplace(m, c);
        if (!inserted) {
            it->second += c;
            if (ring_.is_zero(it->second))
                terms_.erase(it);
        }
    }

    Series truncated(unsigned order) const
    {
        Series out(ring_, std::min(order, order_), grading_);
        for (const auto &[m, c] : terms_)
            if (grading_.degree(m) <= out.order_)
                out.terms_.emplace(m, c);
        return out;
    }

    /// Same terms under a new order; raising the order treats the missing
    /// coefficients as zero.
    Series with_order(unsigned order) const
    {
        if (order <= order_)
            return truncated(order);
        Series out = *this;
        out.order_ = order;
        return out;
    }

    Series scaled(const value_type &c) const
    {
        Series out(ring_, order_, grading_);
        if (ring_.is_zero(c))
            return out;
        for (const auto &[m, v] : terms_)
            out.add_term(m, v * c);
        return out;
    }

    friend Series operator+(const Series &a, const Series &b)
    {
        a.require_compatible(b);
        Series out = a.truncated(b.order_);
        for (const auto &[m, c] : b.terms_)
            out.add_term(m, c);
        return out;
    }

    friend Series operator-(const Series &a, const Series &b)
    {
        a.require_compatible(b);
        Series out = a.truncated(b.order_);
        for (const auto &[m, c] : b.terms_)
            out.add_term(m, -c);
        return out;
    }

    friend Series operator-(const Series &a)
    {
        Series out = a;
        for (auto &[m, c] : out.terms_)
            c = -c;
        return out;
    }

    friend Series operator*(const Series &a, const Series &b)
    {
        a.require_compatible(b);
        Series out(a.ring_, std::min(a.order_, b.order_), a.grading_);
        std::vector<std::pair<unsigned, const std::pair<const Monomial, value_type> *>> bt;
        bt.reserve(b.terms_.size());
        for (const auto &t : b.terms_)
            bt.emplace_back(b.grading_.degree(t.first), &t);
        if constexpr (std::is_same_v<value_type, mpq_class>) {
            // Clearing denominators first leaves one canonicalisation per
            // output term instead of one per partial product.
            auto common = [](const TermMap &t) {
                mpz_class l = 1;
                for (const auto &[m, c] : t)
                    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
                return l;
            };
            mpz_class la = common(a.terms_), lb = common(b.terms_);
            std::vector<mpz_class> nb;
            nb.reserve(bt.size());
            for (const auto &[db, tb] : bt)
                nb.push_back(tb->second.get_num() * (lb / tb->second.get_den()));
            std::map<Monomial, mpz_class> acc;
            for (const auto &[ma, ca] : a.terms_) {
                unsigned da = a.grading_.degree(ma);
                if (da > out.order_)
                    continue;
                mpz_class na = ca.get_num() * (la / ca.get_den());
                for (std::size_t j = 0; j < bt.size(); ++j) {
                    if (da + bt[j].first > out.order_)
                        continue;
                    mpz_addmul(acc[ma * bt[j].second->first].get_mpz_t(), na.get_mpz_t(), nb[j].get_mpz_t());
                }
            }
            mpz_class den = la * lb;
            for (auto &[m, n] : acc)
                if (n != 0) {
                    mpq_class q(n, den);
                    q.canonicalize();
                    out.terms_.emplace(m, std::move(q));
                }
        } else {
            for (const auto &[ma, ca] : a.terms_) {
                unsigned da = a.grading_.degree(ma);
                if (da > out.order_)
                    continue;
                for (const auto &[db, tb] : bt) {
                    if (da + db > out.order_)
                        continue;
                    out.add_term(ma * tb->first, ca * tb->second);
                }
            }
        }
        return out;
    }

    Series &operator+=(const Series &b) { return *this = *this + b; }
    Series &operator-=(const Series &b) { return *this = *this - b; }
    Series &operator*=(const Series &b) { return *this = *this * b; }

    /// Structural equality: same ring, order, grading and terms.
    friend bool operator==(const Series &a, const Series &b)
    {
        return a.ring_ == b.ring_ && a.order_ == b.order_ && a.grading_ == b.grading_ && a.terms_ == b.terms_;
    }

    /// True when a and b agree on every monomial of weighted degree <= degree.
    friend bool equal_through(const Series &a, const Series &b, unsigned degree)
    {
        a.require_compatible(b);
        Series d = a - b;
        return d.valuation() > degree;
    }

    /// Power by repeated squaring. Over Q the base is scaled to integer
    /// coefficients so that only the result is canonicalised.
    Series power(unsigned e) const
    {
        if constexpr (std::is_same_v<value_type, mpq_class>) {
            using IntTerms = std::map<Monomial, mpz_class>;
            auto mul = [&](const IntTerms &a, const IntTerms &b) {
                IntTerms out;
                for (const auto &[ma, ca] : a) {
                    unsigned da = grading_.degree(ma);
                    for (const auto &[mb, cb] : b)
                        if (da + grading_.degree(mb) <= order_)
                            mpz_addmul(out[ma * mb].get_mpz_t(), ca.get_mpz_t(), cb.get_mpz_t());
                }
                std::erase_if(out, [](const auto &t) { return t.second == 0; });
                return out;
            };
            mpz_class l = 1;
            for (const auto &[m, c] : terms_)
                mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
            IntTerms base, r{{Monomial{}, mpz_class(1)}};
            for (const auto &[m, c] : terms_)
                base.emplace(m, c.get_num() * (l / c.get_den()));
            for (unsigned k = e; k > 0; k >>= 1) {
                if (k & 1)
                    r = mul(r, base);
                if (k > 1)
                    base = mul(base, base);
            }
            mpz_class den;
            mpz_pow_ui(den.get_mpz_t(), l.get_mpz_t(), e);
            Series out(ring_, order_, grading_);
            for (auto &[m, n] : r) {
                mpq_class q(n, den);
                q.canonicalize();
                out.terms_.emplace(m, std::move(q));
            }
            return out;
        } else {
            Series r = constant(ring_, order_, ring_.one(), grading_), base = *this;
            for (unsigned k = e; k > 0; k >>= 1) {
                if (k & 1)
                    r = r * base;
                if (k > 1)
                    base = base * base;
            }
            return r;
        }
    }

    /// d/dX.
    Series derivative_x() const
    {
        Series out(ring_, order_ == 0 ? 0 : order_ - 1, grading_);
        for (const auto &[m, c] : terms_) {
            if (m.x == 0)
                continue;
            Monomial d = m;
            d.x -= 1;
            out.add_term(d, c * ring_.from_int(static_cast<long>(m.x)));
        }
        return out;
    }

    /// 1/f. The weighted-degree-0 part of f must be a unit constant.
    Series reciprocal() const
    {
        value_type c0 = coefficient(Monomial{});
        if (!ring_.is_unit(c0))
            throw NotInvertibleError("series constant term is not a unit");
        for (const auto &[m, c] : terms_)
            if (grading_.degree(m) == 0 && !(m == Monomial{}))
                throw NotInvertibleError("series has non-constant terms of weighted degree 0");
        value_type inv = ring_.inverse(c0);
        // 1/f = inv * sum_j u^j with u = 1 - inv*f of positive valuation.
        Series one = constant(ring_, order_, ring_.one(), grading_);
        Series u = one - scaled(inv);
        Series acc = one;
        for (unsigned j = 0; j < order_; ++j)
            acc = one + u * acc;
        return acc.scaled(inv);
    }

    /// Sum of c * x^k * prod y_name^e over all terms.
    template <class Lookup>
    value_type evaluate(const value_type &x_value, Lookup &&y_value) const
    {
        value_type total = ring_.zero();
        for (const auto &[m, c] : terms_) {
            value_type t = c;
            for (unsigned i = 0; i < m.x; ++i)
                t *= x_value;
            for (const auto &[name, e] : m.y) {
                value_type v = y_value(name);
                for (unsigned i = 0; i < e; ++i)
                    t *= v;
            }
            total += t;
        }
        return total;
    }

    std::string format() const
    {
        if (terms_.empty())
            return "0 + O(" + std::to_string(order_ + 1) + ")";
        std::string out;
        for (const auto &[m, c] : terms_) {
            if (!out.empty())
                out += " + ";
            std::string mono = m.format();
            out += "(" + ring_.format(c) + ")" + (mono.empty() ? "" : "*" + mono);
        }
        return out + " + O(" + std::to_string(order_ + 1) + ")";
    }

    void require_compatible(const Series &b) const
    {
        if (!(ring_ == b.ring_))
            throw InputError("ring mismatch between series operands");
        if (!(grading_ == b.grading_))
            throw InputError("grading mismatch between series operands");
    }

    void require_univariate(const char *what) const
    {
        if (!is_univariate())
            throw PreconditionError(std::string(what) + " requires a series without parameters");
    }

private:
    Ring ring_;
    unsigned order_;
    Grading grading_;
    TermMap terms_;
};

/// Substitutes h for X in f. Every term of h must have weighted degree >= 1.
template <class Ring>
Series<Ring> compose_in_x(const Series<Ring> &f, const Series<Ring> &h)
{
    f.require_compatible(h);
    for (const auto &[m, c] : h.terms())
        if (h.grading().degree(m) == 0)
            throw PreconditionError("inner series has a term of weighted degree 0");
    unsigned order = std::min(f.order(), h.order());
    Series<Ring> hh = h.truncated(order);
    // Group f by X exponent: f = sum_k f_k(Y) X^k.
    std::map<unsigned, Series<Ring>> by_power;
    for (const auto &[m, c] : f.terms()) {
        if (f.grading().degree(m) > order)
            continue;
        Monomial rest = m;
        rest.x = 0;
        auto it = by_power.try_emplace(m.x, f.ring(), order, f.grading()).first;
        it->second.add_term(rest, c);
    }
    Series<Ring> result(f.ring(), order, f.grading());
    Series<Ring> hp = Series<Ring>::constant(f.ring(), order, f.ring().one(), f.grading());
    unsigned current = 0;
    for (const auto &[k, coeff] : by_power) {
        while (current < k) {
            hp = hp * hh;
            ++current;
        }
        if (hp.is_zero())
            break;
        result += coeff * hp;
    }
    return result;
}

/// Compositional inverse of f = c1 X + O(X^2) by order-doubling Newton steps.
template <class Ring>
Series<Ring> revert_newton(const Series<Ring> &f)
{
    f.require_univariate("revert_newton");
    const Ring &ring = f.ring();
    unsigned N = f.order();
    if (!ring.is_zero(f.coefficient(Monomial{})))
        throw NotInvertibleError("series to revert has a constant term");
    auto c1 = f.x_coefficient(1);
    if (!ring.is_unit(c1))
        throw NotInvertibleError("linear coefficient is not a unit");
    auto inv = ring.inverse(c1);
    Series<Ring> h = Series<Ring>::x(ring, std::min(N, 1u), f.grading()).scaled(inv);
    unsigned p = 1;
    while (p < N) {
        p = std::min(2 * p, N);
        Series<Ring> fp = f.truncated(p);
        Series<Ring> hp(ring, p, f.grading());
        for (const auto &[m, c] : h.terms())
            hp.add_term(m, c);
        Series<Ring> x = Series<Ring>::x(ring, p, f.grading());
        Series<Ring> residual = compose_in_x(fp, hp) - x;
        Series<Ring> slope = compose_in_x(fp.derivative_x().truncated(p), hp);
        Series<Ring> slope_p(ring, p, f.grading());
        for (const auto &[m, c] : slope.terms())
            slope_p.add_term(m, c);
        h = hp - residual * slope_p.reciprocal();
    }
    return h;
}

template <class Ring>
nlohmann::json to_json(const Series<Ring> &s)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[m, c] : s.terms()) {
        nlohmann::json y = nlohmann::json::object();
        for (const auto &[name, e] : m.y)
            y[name] = e;
        terms.push_back({{"x", m.x}, {"y", y}, {"c", s.ring().format(c)}});
    }
    return {{"order", s.order()}, {"terms", terms}, {"ring", s.ring().describe()}};
}

template <class Ring>
Series<Ring> series_from_json(const Ring &ring, const nlohmann::json &j, Grading grading = {})
{
    try {
        Series<Ring> s(ring, j.at("order").template get<unsigned>(), std::move(grading));
        for (const auto &t : j.at("terms")) {
            Monomial m;
            m.x = t.value("x", 0u);
            if (t.contains("y")) {
                for (const auto &[name, e] : t.at("y").items()) {
                    unsigned ev = e.template get<unsigned>();
                    if (ev > 0)
                        m.y.emplace_back(name, ev);
                }
                std::sort(m.y.begin(), m.y.end());
            }
            const auto &c = t.at("c");
            s.add_term(m, c.is_string() ? ring.parse(c.template get<std::string>()) : ring.from_int(c.template get<long>()));
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed series JSON: ") + e.what());
    }
}

} // namespace treeinv
