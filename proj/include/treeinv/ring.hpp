#pragma once

// Exact coefficient rings for the series engine.
//
// Each ring is a small context object (`RationalRing`, `ModPRing`,
// `DualRing`, `ParamPolyRing`) paired with a value type that carries the
// arithmetic operators. Generic code constructs values only through the
// context (zero/one/from_int/parse) and combines them with operators.

#include "treeinv/errors.hpp"

#include <gmpxx.h>
#include <json.hpp>

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace treeinv {

mpq_class parse_rational(std::string_view text);

// ---------------------------------------------------------------------------
// Rationals

class RationalRing {
public:
    using value_type = mpq_class;

    value_type zero() const { return value_type(0); }
    value_type one() const { return value_type(1); }
    value_type from_int(long v) const { return value_type(v); }
    value_type from_rational(const mpq_class &q) const { return q; }
    bool is_zero(const value_type &v) const { return sgn(v) == 0; }
    bool is_unit(const value_type &v) const { return sgn(v) != 0; }
    value_type inverse(const value_type &v) const;
    std::string format(const value_type &v) const { return v.get_str(); }
    value_type parse(std::string_view text) const { return parse_rational(text); }
    nlohmann::json describe() const { return "rational"; }

    friend bool operator==(const RationalRing &, const RationalRing &) { return true; }
};

// ---------------------------------------------------------------------------
// Integers modulo a word-size prime

struct ModInt {
    std::uint64_t value = 0;
    std::uint64_t modulus = 0;

    friend bool operator==(const ModInt &a, const ModInt &b)
    {
        return a.value == b.value && a.modulus == b.modulus;
    }
};

ModInt operator+(const ModInt &a, const ModInt &b);
ModInt operator-(const ModInt &a, const ModInt &b);
ModInt operator*(const ModInt &a, const ModInt &b);
ModInt operator-(const ModInt &a);
inline ModInt &operator+=(ModInt &a, const ModInt &b) { return a = a + b; }
inline ModInt &operator-=(ModInt &a, const ModInt &b) { return a = a - b; }
inline ModInt &operator*=(ModInt &a, const ModInt &b) { return a = a * b; }

bool is_prime_u64(std::uint64_t n);

class ModPRing {
public:
    using value_type = ModInt;

    /// Throws InputError unless `p` is prime.
    explicit ModPRing(std::uint64_t p);

    std::uint64_t modulus() const { return p_; }
    value_type zero() const { return {0, p_}; }
    value_type one() const { return {1 % p_, p_}; }
    value_type from_int(long v) const;
    value_type from_rational(const mpq_class &q) const;
    bool is_zero(const value_type &v) const { return v.value == 0; }
    bool is_unit(const value_type &v) const { return v.value != 0; }
    value_type inverse(const value_type &v) const;
    std::string format(const value_type &v) const;
    value_type parse(std::string_view text) const;
    nlohmann::json describe() const { return {{"mod", p_}}; }

    friend bool operator==(const ModPRing &a, const ModPRing &b) { return a.p_ == b.p_; }

private:
    std::uint64_t p_;
};

// ---------------------------------------------------------------------------
// Dual rationals a + b*eps with eps^2 = 0

struct Dual {
    mpq_class re;
    mpq_class eps;

    Dual() = default;
    Dual(mpq_class a, mpq_class b) : re(std::move(a)), eps(std::move(b)) {}

    friend bool operator==(const Dual &a, const Dual &b) { return a.re == b.re && a.eps == b.eps; }
};

Dual operator+(const Dual &a, const Dual &b);
Dual operator-(const Dual &a, const Dual &b);
Dual operator*(const Dual &a, const Dual &b);
Dual operator-(const Dual &a);
inline Dual &operator+=(Dual &a, const Dual &b) { return a = a + b; }
inline Dual &operator-=(Dual &a, const Dual &b) { return a = a - b; }
inline Dual &operator*=(Dual &a, const Dual &b) { return a = a * b; }

class DualRing {
public:
    using value_type = Dual;

    value_type zero() const { return {0, 0}; }
    value_type one() const { return {1, 0}; }
    value_type epsilon() const { return {0, 1}; }
    value_type from_int(long v) const { return {v, 0}; }
    value_type from_rational(const mpq_class &q) const { return {q, 0}; }
    bool is_zero(const value_type &v) const { return sgn(v.re) == 0 && sgn(v.eps) == 0; }
    bool is_unit(const value_type &v) const { return sgn(v.re) != 0; }
    value_type inverse(const value_type &v) const;
    std::string format(const value_type &v) const;
    value_type parse(std::string_view text) const;
    nlohmann::json describe() const { return "dual"; }

    friend bool operator==(const DualRing &, const DualRing &) { return true; }
};

// ---------------------------------------------------------------------------
// Polynomials over the rationals in named parameters

class ParamPoly {
public:
    /// Sorted by name, exponents strictly positive.
    using Monomial = std::vector<std::pair<std::string, unsigned>>;
    using TermMap = std::map<Monomial, mpq_class>;

    ParamPoly() = default;
    ParamPoly(long c);
    ParamPoly(const mpq_class &c);
    static ParamPoly variable(const std::string &name);

    const TermMap &terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    bool is_constant() const;
    mpq_class constant_term() const;

    friend ParamPoly operator+(const ParamPoly &a, const ParamPoly &b);
    friend ParamPoly operator-(const ParamPoly &a, const ParamPoly &b);
    friend ParamPoly operator*(const ParamPoly &a, const ParamPoly &b);
    friend ParamPoly operator-(const ParamPoly &a);
    friend bool operator==(const ParamPoly &a, const ParamPoly &b) { return a.terms_ == b.terms_; }

    ParamPoly &operator+=(const ParamPoly &b) { return *this = *this + b; }
    ParamPoly &operator-=(const ParamPoly &b) { return *this = *this - b; }
    ParamPoly &operator*=(const ParamPoly &b) { return *this = *this * b; }

    std::string format() const;

private:
    void add_term(const Monomial &m, const mpq_class &c);
    TermMap terms_;
};

class ParamPolyRing {
public:
    using value_type = ParamPoly;

    value_type zero() const { return {}; }
    value_type one() const { return ParamPoly(1L); }
    value_type from_int(long v) const { return ParamPoly(v); }
    value_type from_rational(const mpq_class &q) const { return ParamPoly(q); }
    value_type variable(const std::string &name) const { return ParamPoly::variable(name); }
    bool is_zero(const value_type &v) const { return v.is_zero(); }
    /// Only nonzero constants are units.
    bool is_unit(const value_type &v) const { return v.is_constant() && !v.is_zero(); }
    value_type inverse(const value_type &v) const;
    std::string format(const value_type &v) const { return v.format(); }
    /// Accepts sums of products such as "2*a*b^2 - 1/2*c + (1-d)".
    value_type parse(std::string_view text) const;
    nlohmann::json describe() const { return "parameter-polynomial"; }

    friend bool operator==(const ParamPolyRing &, const ParamPolyRing &) { return true; }
};

} // namespace treeinv
