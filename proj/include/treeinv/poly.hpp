#pragma once

// Dense univariate polynomials over Z (mpz_class) or Q (mpq_class).
// Coefficients are stored in ascending order without trailing zeros.

#include "treeinv/errors.hpp"
#include "treeinv/expression.hpp"

#include <gmpxx.h>

#include <string>
#include <string_view>
#include <type_traits>
#include <utility>
#include <vector>

namespace treeinv {

template <class T>
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
    Poly(long constant) : c_{T(constant)} { trim(); }

    static Poly monomial(const T &c, unsigned degree)
    {
        std::vector<T> v(degree + 1, T(0));
        v[degree] = c;
        return Poly(std::move(v));
    }

    static Poly variable() { return monomial(T(1), 1); }

    /// -1 for the zero polynomial.
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    bool is_zero() const { return c_.empty(); }
    const std::vector<T> &coefficients() const { return c_; }
    T coefficient(std::size_t k) const { return k < c_.size() ? c_[k] : T(0); }
    const T &leading() const
    {
        if (c_.empty())
            throw PreconditionError("zero polynomial has no leading coefficient");
        return c_.back();
    }

    friend Poly operator+(const Poly &a, const Poly &b)
    {
        std::vector<T> v(std::max(a.c_.size(), b.c_.size()), T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i)
            v[i] += a.c_[i];
        for (std::size_t i = 0; i < b.c_.size(); ++i)
            v[i] += b.c_[i];
        return Poly(std::move(v));
    }

    friend Poly operator-(const Poly &a) { return a.scaled(T(-1)); }
    friend Poly operator-(const Poly &a, const Poly &b) { return a + (-b); }

    friend Poly operator*(const Poly &a, const Poly &b)
    {
        if (a.is_zero() || b.is_zero())
            return {};
        std::vector<T> v(a.c_.size() + b.c_.size() - 1, T(0));
        for (std::size_t i = 0; i < a.c_.size(); ++i) {
            if (sgn(a.c_[i]) == 0)
                continue;
            for (std::size_t j = 0; j < b.c_.size(); ++j) {
                if constexpr (std::is_same_v<T, mpz_class>)
                    mpz_addmul(v[i + j].get_mpz_t(), a.c_[i].get_mpz_t(), b.c_[j].get_mpz_t());
                else
                    v[i + j] += a.c_[i] * b.c_[j];
            }
        }
        return Poly(std::move(v));
    }

    Poly &operator+=(const Poly &b) { return *this = *this + b; }
    Poly &operator-=(const Poly &b) { return *this = *this - b; }
    Poly &operator*=(const Poly &b) { return *this = *this * b; }

    friend bool operator==(const Poly &, const Poly &) = default;

    Poly scaled(const T &s) const
    {
        std::vector<T> v = c_;
        for (auto &x : v)
            x *= s;
        return Poly(std::move(v));
    }

    Poly power(unsigned e) const
    {
        Poly r(1L), b = *this;
        for (; e > 0; e >>= 1) {
            if (e & 1)
                r *= b;
            if (e > 1)
                b *= b;
        }
        return r;
    }

    Poly derivative() const
    {
        std::vector<T> v;
        for (std::size_t i = 1; i < c_.size(); ++i)
            v.push_back(c_[i] * T(static_cast<long>(i)));
        return Poly(std::move(v));
    }

    /// Horner evaluation in any type that accepts T coefficients.
    template <class V>
    V evaluate(const V &x) const
    {
        V acc(0);
        for (std::size_t i = c_.size(); i-- > 0;)
            acc = acc * x + V(c_[i]);
        return acc;
    }

    std::string format(const std::string &var = "m") const
    {
        if (c_.empty())
            return "0";
        std::string out;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (sgn(c_[i]) == 0)
                continue;
            T a = abs(c_[i]);
            bool neg = sgn(c_[i]) < 0;
            if (out.empty())
                out += neg ? "-" : "";
            else
                out += neg ? " - " : " + ";
            bool unit = a == 1;
            if (i == 0 || !unit)
                out += a.get_str();
            if (i > 0) {
                if (!unit)
                    out += "*";
                out += var;
                if (i > 1)
                    out += "^" + std::to_string(i);
            }
        }
        return out;
    }

private:
    void trim()
    {
        while (!c_.empty() && sgn(c_.back()) == 0)
            c_.pop_back();
    }

    std::vector<T> c_;
};

using ZPoly = Poly<mpz_class>;
using QPoly = Poly<mpq_class>;

/// Quotient and remainder over Q.
std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b);

/// a / b over Z; throws PreconditionError unless b divides a exactly.
ZPoly divide_exact(const ZPoly &a, const ZPoly &b);

/// Monic greatest common divisor (zero only when both are zero).
QPoly gcd(const QPoly &a, const QPoly &b);

/// p / gcd(p, p'), made primitive with a positive leading coefficient.
ZPoly squarefree_part(const ZPoly &p);

/// Exact square root over Z with positive leading coefficient; throws
/// PreconditionError when a is not a perfect square.
ZPoly sqrt_exact(const ZPoly &a);

/// gcd of the coefficients (0 for the zero polynomial).
mpz_class content(const ZPoly &a);

ZPoly to_integer(const QPoly &a);
QPoly to_rational(const ZPoly &a);

/// Reads expressions such as "2*t^4 + 6*t^3 - 11*t^2 - 30*t - 4" or
/// "(t+1)^2*(t-3)" in the single variable `var`.
ZPoly parse_zpoly(std::string_view text, const std::string &var = "t");

/// First `keep` coefficients of a*b (ascending coefficient vectors over Z),
/// by Kronecker substitution into one big-integer product.
std::vector<mpz_class> kronecker_multiply(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b,
                                          std::size_t keep);

/// Determinant of a square matrix over Z[t] by Bareiss fraction-free
/// elimination (every division is exact).
ZPoly determinant(std::vector<std::vector<ZPoly>> m);

/// Resultant in y of two polynomials whose coefficients (ascending in y)
/// lie in Z[t], via the Sylvester matrix.
ZPoly resultant_y(const std::vector<ZPoly> &p, const std::vector<ZPoly> &q);

} // namespace treeinv
