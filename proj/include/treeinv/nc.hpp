#pragma once

// Series over the free monoid on X and the Y letters, with central rational
// coefficients, truncated by X-degree. Composition substitutes a series for
// each X letter in order; abelianization maps back to commutative series.

#include "treeinv/series.hpp"
#include "treeinv/spin.hpp"

#include <json.hpp>

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace treeinv {

/// Letter 0 is X; letter i + 1 is Y of spin i.
using Word = std::vector<std::uint32_t>;

/// Shorter words first, then lexicographic.
struct LengthLex {
    bool operator()(const Word &a, const Word &b) const
    {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    }
};

unsigned x_degree(const Word &w);

/// Stored-term limit for products and compositions.
constexpr std::size_t kNcTermLimit = 1'000'000;

class NCSeries {
public:
    using TermMap = std::map<Word, mpq_class, LengthLex>;

    NCSeries(std::vector<std::string> alphabet, unsigned order);

    static NCSeries x(std::vector<std::string> alphabet, unsigned order);
    static NCSeries y(std::vector<std::string> alphabet, unsigned order, std::size_t spin);
    static NCSeries constant(std::vector<std::string> alphabet, unsigned order, const mpq_class &c);

    const std::vector<std::string> &alphabet() const { return alphabet_; }
    unsigned order() const { return order_; }
    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    mpq_class coefficient(const Word &w) const;

    /// Adds c to the coefficient of w; words above the order are dropped.
    void add_term(const Word &w, const mpq_class &c);

    NCSeries with_order(unsigned order) const;
    NCSeries scaled(const mpq_class &c) const;

    friend NCSeries operator+(const NCSeries &a, const NCSeries &b);
    friend NCSeries operator-(const NCSeries &a, const NCSeries &b);
    friend NCSeries operator-(const NCSeries &a);
    /// Concatenation product; throws SizeGuardError past kNcTermLimit terms.
    friend NCSeries operator*(const NCSeries &a, const NCSeries &b);
    NCSeries &operator+=(const NCSeries &b) { return *this = *this + b; }
    friend bool operator==(const NCSeries &a, const NCSeries &b);

    std::string format_word(const Word &w) const;
    /// Parses "Ya X Yb X" (or "1" for the empty word).
    Word parse_word(const std::string &text) const;
    std::string format() const;

private:
    void require_compatible(const NCSeries &b) const;

    std::vector<std::string> alphabet_;
    unsigned order_;
    TermMap terms_;
};

/// {"alphabet": [...], "order": N, "terms": [["Ya X", "p/q"], ...]}.
nlohmann::json nc_to_json(const NCSeries &s);
NCSeries nc_from_json(const nlohmann::json &j);

/// f with every X replaced, in order, by a copy of h. Every word of h needs
/// X-degree >= 1.
NCSeries nc_compose(const NCSeries &f, const NCSeries &h);

/// Commutative image: X^j and Y letters become monomials of the model's
/// grading, or its numeric Y values when those are fixed.
Series<RationalRing> abelianize(const NCSeries &s, const SpinModel<RationalRing> &m);

struct NCSystem {
    std::vector<NCSeries> g;
    std::vector<NCSeries> g_tilde;
    NCSeries g_total;
    NCSeries g_tilde_total;
    NCSeries residual;       ///< g o g~ - X
    NCSeries residual_tilde; ///< g~ o g - X
};

/// Word-level solver for a uniform model of arity k >= 2 through X-degree
/// `order`, with both composition residuals.
NCSystem nc_solve_and_verify(const SpinModel<RationalRing> &m, unsigned order);

} // namespace treeinv
