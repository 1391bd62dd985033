#include "treeinv/nc.hpp"

#include <algorithm>
#include <sstream>

namespace treeinv {

namespace {

void guard(std::size_t terms)
{
    if (terms > kNcTermLimit)
        throw SizeGuardError("word series exceeds " + std::to_string(kNcTermLimit) + " terms");
}

} // namespace

unsigned x_degree(const Word &w)
{
    return static_cast<unsigned>(std::count(w.begin(), w.end(), 0u));
}

NCSeries::NCSeries(std::vector<std::string> alphabet, unsigned order) : alphabet_(std::move(alphabet)), order_(order)
{
}

NCSeries NCSeries::x(std::vector<std::string> alphabet, unsigned order)
{
    NCSeries s(std::move(alphabet), order);
    s.add_term(Word{0}, 1);
    return s;
}

NCSeries NCSeries::y(std::vector<std::string> alphabet, unsigned order, std::size_t spin)
{
    if (spin >= alphabet.size())
        throw InputError("spin index out of range");
    NCSeries s(std::move(alphabet), order);
    s.add_term(Word{static_cast<std::uint32_t>(spin + 1)}, 1);
    return s;
}

NCSeries NCSeries::constant(std::vector<std::string> alphabet, unsigned order, const mpq_class &c)
{
    NCSeries s(std::move(alphabet), order);
    s.add_term(Word{}, c);
    return s;
}

mpq_class NCSeries::coefficient(const Word &w) const
{
    auto it = terms_.find(w);
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void NCSeries::add_term(const Word &w, const mpq_class &c)
{
    for (auto l : w)
        if (l > alphabet_.size())
            throw InputError("word letter outside the alphabet");
    if (x_degree(w) > order_ || sgn(c) == 0)
        return;
    auto [it, inserted] = terms_.try_emplace(w, c);
    if (!inserted) {
        it->second += c;
        if (sgn(it->second) == 0)
            terms_.erase(it);
    }
}

NCSeries NCSeries::with_order(unsigned order) const
{
    NCSeries s(alphabet_, order);
    for (const auto &[w, c] : terms_)
        if (x_degree(w) <= order)
            s.terms_.emplace(w, c);
    return s;
}

NCSeries NCSeries::scaled(const mpq_class &c) const
{
    NCSeries s(alphabet_, order_);
    if (sgn(c) == 0)
        return s;
    for (const auto &[w, v] : terms_)
        s.terms_.emplace(w, v * c);
    return s;
}

void NCSeries::require_compatible(const NCSeries &b) const
{
    if (alphabet_ != b.alphabet_)
        throw InputError("word series over different alphabets");
}

NCSeries operator+(const NCSeries &a, const NCSeries &b)
{
    a.require_compatible(b);
    NCSeries s = a.with_order(std::min(a.order_, b.order_));
    for (const auto &[w, c] : b.terms_)
        s.add_term(w, c);
    return s;
}

NCSeries operator-(const NCSeries &a)
{
    return a.scaled(-1);
}

NCSeries operator-(const NCSeries &a, const NCSeries &b)
{
    return a + -b;
}

NCSeries operator*(const NCSeries &a, const NCSeries &b)
{
    a.require_compatible(b);
    NCSeries s(a.alphabet_, std::min(a.order_, b.order_));
    std::vector<std::pair<const Word *, unsigned>> right;
    for (const auto &[w, c] : b.terms_)
        right.emplace_back(&w, x_degree(w));
    for (const auto &[u, cu] : a.terms_) {
        unsigned du = x_degree(u);
        if (du > s.order_)
            continue;
        for (const auto &[w, dw] : right) {
            if (du + dw > s.order_)
                continue;
            Word uw = u;
            uw.insert(uw.end(), w->begin(), w->end());
            s.add_term(uw, cu * b.terms_.at(*w));
        }
        guard(s.terms_.size());
    }
    return s;
}

bool operator==(const NCSeries &a, const NCSeries &b)
{
    return a.alphabet_ == b.alphabet_ && a.order_ == b.order_ && a.terms_ == b.terms_;
}

std::string NCSeries::format_word(const Word &w) const
{
    if (w.empty())
        return "1";
    std::string out;
    for (auto l : w) {
        if (!out.empty())
            out += ' ';
        out += l == 0 ? "X" : "Y" + alphabet_.at(l - 1);
    }
    return out;
}

Word NCSeries::parse_word(const std::string &text) const
{
    std::istringstream in(text);
    std::string token;
    Word w;
    bool one = false;
    while (in >> token) {
        if (token == "1") {
            one = true;
        } else if (token == "X") {
            w.push_back(0);
        } else if (token.size() > 1 && token[0] == 'Y') {
            auto it = std::find(alphabet_.begin(), alphabet_.end(), token.substr(1));
            if (it == alphabet_.end())
                throw ParseError("unknown letter '" + token + "'", 0);
            w.push_back(static_cast<std::uint32_t>(it - alphabet_.begin() + 1));
        } else {
            throw ParseError("unknown letter '" + token + "'", 0);
        }
    }
    if (one && !w.empty())
        throw ParseError("'1' stands alone for the empty word", 0);
    if (!one && w.empty())
        throw ParseError("empty word text", 0);
    return w;
}

std::string NCSeries::format() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    for (const auto &[w, c] : terms_) {
        bool neg = sgn(c) < 0;
        mpq_class m = neg ? mpq_class(-c) : c;
        if (out.empty())
            out += neg ? "-" : "";
        else
            out += neg ? " - " : " + ";
        if (w.empty())
            out += m.get_str();
        else
            out += (m == 1 ? "" : m.get_str() + "*") + format_word(w);
    }
    return out;
}

nlohmann::json nc_to_json(const NCSeries &s)
{
    nlohmann::json terms = nlohmann::json::array();
    for (const auto &[w, c] : s.terms())
        terms.push_back({s.format_word(w), c.get_str()});
    return {{"alphabet", s.alphabet()}, {"order", s.order()}, {"terms", terms}};
}

NCSeries nc_from_json(const nlohmann::json &j)
{
    try {
        NCSeries s(j.at("alphabet").get<std::vector<std::string>>(), j.at("order").get<unsigned>());
        for (const auto &t : j.at("terms")) {
            if (!t.is_array() || t.size() != 2)
                throw InputError("each term is a [word, coefficient] pair");
            s.add_term(s.parse_word(t[0].get<std::string>()), parse_rational(t[1].get<std::string>()));
        }
        return s;
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed word series JSON: ") + e.what());
    }
}

NCSeries nc_compose(const NCSeries &f, const NCSeries &h)
{
    if (f.alphabet() != h.alphabet())
        throw InputError("word series over different alphabets");
    for (const auto &[w, c] : h.terms())
        if (x_degree(w) == 0)
            throw PreconditionError("inner word series has a word of X-degree 0");
    unsigned order = std::min(f.order(), h.order());
    NCSeries out(f.alphabet(), order);
    for (const auto &[w, c] : f.terms()) {
        NCSeries acc = NCSeries::constant(f.alphabet(), order, c);
        for (auto l : w) {
            acc = acc * (l == 0 ? h : NCSeries::y(f.alphabet(), order, l - 1));
            if (acc.is_zero())
                break;
        }
        out += acc;
        guard(out.terms().size());
    }
    return out;
}

Series<RationalRing> abelianize(const NCSeries &s, const SpinModel<RationalRing> &m)
{
    if (s.alphabet() != m.alphabet)
        throw InputError("word series alphabet differs from the model's");
    Series<RationalRing> out(m.ring, s.order(), m.grading);
    for (const auto &[w, c] : s.terms()) {
        std::map<std::string, unsigned> powers;
        mpq_class coeff = c;
        unsigned x = 0;
        for (auto l : w) {
            if (l == 0)
                ++x;
            else if (m.y_values)
                coeff *= (*m.y_values)[l - 1];
            else
                ++powers[SpinModel<RationalRing>::y_name(m.alphabet[l - 1])];
        }
        Monomial mono{x, {powers.begin(), powers.end()}};
        if (m.grading.degree(mono) <= s.order())
            out.add_term(mono, coeff);
    }
    return out;
}

namespace {

/// One ordered sweep: Y_a (sX - s(M_1 V)_a) ... (sX - s(M_k V)_a), s = sign.
std::vector<NCSeries> nc_sweep(const SpinModel<RationalRing> &m, const std::vector<NCSeries> &v, unsigned order,
                               int sign)
{
    const auto &block = m.blocks.front();
    NCSeries x = NCSeries::x(m.alphabet, order);
    std::vector<NCSeries> next;
    for (std::size_t a = 0; a < m.size(); ++a) {
        NCSeries acc = NCSeries::y(m.alphabet, order, a);
        for (const auto &mat : block.matrices) {
            NCSeries mv(m.alphabet, order);
            for (std::size_t b = 0; b < m.size(); ++b)
                if (sgn(mat[a][b]) != 0)
                    mv += v[b].with_order(order).scaled(mat[a][b]);
            acc = acc * (sign > 0 ? x - mv : mv - x);
            if (acc.is_zero())
                break;
        }
        next.push_back(std::move(acc));
    }
    return next;
}

/// Progressive truncation as in the commutative solver: sweep n is exact
/// through X-degree (n + 1)(k - 1).
std::vector<NCSeries> nc_bootstrap(const SpinModel<RationalRing> &m, unsigned order, int sign)
{
    unsigned k = m.uniform_arity();
    unsigned exact = std::min(order, k - 1);
    std::vector<NCSeries> v(m.size(), NCSeries(m.alphabet, exact));
    while (exact < order) {
        exact = std::min(order, exact + k - 1);
        v = nc_sweep(m, v, exact, sign);
    }
    for (auto &s : v)
        s = s.with_order(order);
    return v;
}

NCSeries nc_total(const SpinModel<RationalRing> &m, const std::vector<NCSeries> &parts, unsigned order)
{
    NCSeries t = -NCSeries::x(m.alphabet, order);
    for (const auto &p : parts)
        t += p;
    return t;
}

} // namespace

NCSystem nc_solve_and_verify(const SpinModel<RationalRing> &m, unsigned order)
{
    m.validate();
    unsigned k = m.uniform_arity();
    if (k < 2)
        throw InputError("word-level solver needs arity k >= 2");
    if (order < k)
        throw InputError("order " + std::to_string(order) + " is below the arity " + std::to_string(k));
    // Words of g are k-ary planar trees with letter-labelled inner vertices:
    // Fuss-Catalan(k, i) |A|^i of them with i inner vertices.
    mpz_class words = 0;
    for (unsigned long i = 1; 1 + i * (k - 1) <= order; ++i) {
        mpz_class fc, pw;
        mpz_bin_uiui(fc.get_mpz_t(), k * i, i);
        fc /= (k - 1) * i + 1;
        mpz_ui_pow_ui(pw.get_mpz_t(), m.size(), i);
        words += fc * pw;
    }
    if (words > kNcTermLimit)
        throw SizeGuardError("word-level solution would hold " + words.get_str() + " words (limit " +
                             std::to_string(kNcTermLimit) + ")");
    NCSystem s{nc_bootstrap(m, order, +1), nc_bootstrap(complement(m), order, -1),
               NCSeries(m.alphabet, order), NCSeries(m.alphabet, order),
               NCSeries(m.alphabet, order), NCSeries(m.alphabet, order)};
    s.g_total = nc_total(m, s.g, order);
    s.g_tilde_total = nc_total(m, s.g_tilde, order);
    NCSeries x = NCSeries::x(m.alphabet, order);
    s.residual = nc_compose(s.g_total, s.g_tilde_total) - x;
    s.residual_tilde = nc_compose(s.g_tilde_total, s.g_total) - x;
    return s;
}

} // namespace treeinv
