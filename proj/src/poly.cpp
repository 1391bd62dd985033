#include "treeinv/poly.hpp"

#include <algorithm>

namespace treeinv {

namespace {

struct QPolyBuilder {
    std::string var;

    QPoly constant(const mpq_class &q) const { return QPoly(std::vector<mpq_class>{q}); }
    QPoly variable(std::string_view name, std::size_t pos) const
    {
        if (name != var)
            throw ParseError("unknown variable '" + std::string(name) + "'", pos);
        return QPoly::variable();
    }
    QPoly power(const QPoly &b, unsigned e) const { return b.power(e); }
};

} // namespace

std::pair<QPoly, QPoly> divmod(const QPoly &a, const QPoly &b)
{
    if (b.is_zero())
        throw NotInvertibleError("polynomial division by zero");
    std::vector<mpq_class> r = a.coefficients();
    int db = b.degree();
    if (a.degree() < db)
        return {QPoly{}, a};
    std::vector<mpq_class> q(a.degree() - db + 1);
    for (int i = a.degree(); i >= db; --i) {
        mpq_class f = r[i] / b.leading();
        q[i - db] = f;
        if (sgn(f) == 0)
            continue;
        for (int j = 0; j <= db; ++j)
            r[i - db + j] -= f * b.coefficient(j);
    }
    return {QPoly(std::move(q)), QPoly(std::move(r))};
}

ZPoly divide_exact(const ZPoly &a, const ZPoly &b)
{
    if (b.is_zero())
        throw NotInvertibleError("polynomial division by zero");
    if (a.is_zero())
        return {};
    int db = b.degree();
    if (a.degree() < db)
        throw PreconditionError("inexact polynomial division");
    std::vector<mpz_class> r = a.coefficients();
    std::vector<mpz_class> q(a.degree() - db + 1);
    const mpz_class &lead = b.leading();
    for (int i = a.degree(); i >= db; --i) {
        if (sgn(r[i]) == 0)
            continue;
        if (!mpz_divisible_p(r[i].get_mpz_t(), lead.get_mpz_t()))
            throw PreconditionError("inexact polynomial division");
        mpz_class f;
        mpz_divexact(f.get_mpz_t(), r[i].get_mpz_t(), lead.get_mpz_t());
        for (int j = 0; j <= db; ++j)
            mpz_submul(r[i - db + j].get_mpz_t(), f.get_mpz_t(), b.coefficients()[j].get_mpz_t());
        q[i - db] = std::move(f);
    }
    for (int i = 0; i < db; ++i)
        if (sgn(r[i]) != 0)
            throw PreconditionError("inexact polynomial division");
    return ZPoly(std::move(q));
}

QPoly gcd(const QPoly &a, const QPoly &b)
{
    QPoly x = a, y = b;
    while (!y.is_zero()) {
        QPoly r = divmod(x, y).second;
        x = std::move(y);
        y = std::move(r);
    }
    if (x.is_zero())
        return x;
    return x.scaled(mpq_class(1 / x.leading()));
}

namespace {

ZPoly primitive(const QPoly &p)
{
    mpz_class den = 1;
    for (const auto &c : p.coefficients())
        mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    ZPoly z = to_integer(p.scaled(mpq_class(den)));
    mpz_class g = content(z);
    if (sgn(z.leading()) < 0)
        g = -g;
    return divide_exact(z, ZPoly(std::vector<mpz_class>{g}));
}

} // namespace

ZPoly squarefree_part(const ZPoly &p)
{
    if (p.degree() <= 0)
        return p;
    QPoly q = to_rational(p);
    return primitive(divmod(q, gcd(q, q.derivative())).first);
}

ZPoly sqrt_exact(const ZPoly &a)
{
    if (a.is_zero())
        return {};
    if (a.degree() % 2 != 0 || sgn(a.leading()) < 0 || !mpz_perfect_square_p(a.leading().get_mpz_t()))
        throw PreconditionError("polynomial is not a perfect square");
    int n = a.degree() / 2;
    std::vector<mpz_class> s(n + 1);
    s[n] = sqrt(a.leading());
    mpz_class two_lead = 2 * s[n];
    // Coefficient n+k of s^2 is 2 s_n s_k plus products of already known s_i, s_j with i, j > k.
    for (int k = n - 1; k >= 0; --k) {
        mpz_class rest = a.coefficient(n + k);
        for (int i = k + 1; i < n; ++i) {
            int j = n + k - i;
            if (j > k && j < n)
                rest -= s[i] * s[j];
        }
        if (!mpz_divisible_p(rest.get_mpz_t(), two_lead.get_mpz_t()))
            throw PreconditionError("polynomial is not a perfect square");
        mpz_divexact(s[k].get_mpz_t(), rest.get_mpz_t(), two_lead.get_mpz_t());
    }
    ZPoly root(std::move(s));
    if (root * root != a)
        throw PreconditionError("polynomial is not a perfect square");
    return root;
}

mpz_class content(const ZPoly &a)
{
    mpz_class g = 0;
    for (const auto &c : a.coefficients())
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    return g;
}

ZPoly to_integer(const QPoly &a)
{
    std::vector<mpz_class> v;
    for (const auto &c : a.coefficients()) {
        if (c.get_den() != 1)
            throw InputError("polynomial has a non-integer coefficient " + c.get_str());
        v.push_back(c.get_num());
    }
    return ZPoly(std::move(v));
}

QPoly to_rational(const ZPoly &a)
{
    std::vector<mpq_class> v(a.coefficients().begin(), a.coefficients().end());
    return QPoly(std::move(v));
}

ZPoly parse_zpoly(std::string_view text, const std::string &var)
{
    return to_integer(read_expression<QPoly>(text, QPolyBuilder{var}));
}

std::vector<mpz_class> kronecker_multiply(const std::vector<mpz_class> &a, const std::vector<mpz_class> &b,
                                          std::size_t keep)
{
    keep = std::min(keep, a.empty() || b.empty() ? 0 : a.size() + b.size() - 1);
    std::vector<mpz_class> out(keep, 0);
    if (keep == 0)
        return out;
    auto max_bits = [](const std::vector<mpz_class> &v) {
        std::size_t bits = 1;
        for (const auto &x : v)
            bits = std::max(bits, mpz_sizeinbase(x.get_mpz_t(), 2));
        return bits;
    };
    std::size_t terms = std::min(a.size(), b.size());
    std::size_t slot_bits = max_bits(a) + max_bits(b) + mpz_sizeinbase(mpz_class(terms).get_mpz_t(), 2) + 2;
    std::size_t slot = (slot_bits + GMP_NUMB_BITS - 1) / GMP_NUMB_BITS;
    // Each coefficient occupies `slot` limbs, so packing is a limb copy; signed
    // inputs are packed as (positive part) - (negative part).
    auto pack_sign = [slot](const std::vector<mpz_class> &v, std::size_t n, int sign) {
        mpz_class z;
        mp_limb_t *limbs = mpz_limbs_write(z.get_mpz_t(), static_cast<mp_size_t>(n * slot));
        std::fill(limbs, limbs + n * slot, mp_limb_t(0));
        for (std::size_t i = 0; i < n; ++i) {
            if (sgn(v[i]) != sign)
                continue;
            std::size_t used = mpz_size(v[i].get_mpz_t());
            const mp_limb_t *src = mpz_limbs_read(v[i].get_mpz_t());
            std::copy(src, src + used, limbs + i * slot);
        }
        mpz_limbs_finish(z.get_mpz_t(), static_cast<mp_size_t>(n * slot));
        return z;
    };
    auto pack = [&](const std::vector<mpz_class> &v, std::size_t n) {
        mpz_class z = pack_sign(v, n, 1);
        mpz_class neg = pack_sign(v, n, -1);
        if (sgn(neg) != 0)
            z -= neg;
        return z;
    };
    std::size_t na = std::min(a.size(), keep), nb = std::min(b.size(), keep);
    mpz_class prod;
    if (&a == &b) {
        mpz_class za = pack(a, na);
        prod = za * za;
    } else {
        prod = pack(a, na) * pack(b, nb);
    }
    bool negative = sgn(prod) < 0;
    if (negative)
        prod = -prod;
    // Balanced digits base 2^(64 slot): a digit at or above half the base
    // stands for a negative coefficient and borrows one from the next digit.
    std::size_t total = mpz_size(prod.get_mpz_t());
    const mp_limb_t *limbs = mpz_limbs_read(prod.get_mpz_t());
    mpz_class base, half;
    mpz_setbit(base.get_mpz_t(), slot * GMP_NUMB_BITS);
    mpz_setbit(half.get_mpz_t(), slot * GMP_NUMB_BITS - 1);
    bool carry = false;
    for (std::size_t i = 0; i < keep; ++i) {
        std::size_t lo = i * slot;
        mpz_class &c = out[i];
        if (lo < total) {
            std::size_t n = std::min(slot, total - lo);
            mp_limb_t *dst = mpz_limbs_write(c.get_mpz_t(), static_cast<mp_size_t>(n));
            std::copy(limbs + lo, limbs + lo + n, dst);
            mpz_limbs_finish(c.get_mpz_t(), static_cast<mp_size_t>(n));
        }
        if (carry)
            c += 1;
        carry = c >= half;
        if (carry)
            c -= base;
        if (negative)
            c = -c;
    }
    return out;
}

ZPoly determinant(std::vector<std::vector<ZPoly>> m)
{
    std::size_t n = m.size();
    for (const auto &row : m)
        if (row.size() != n)
            throw InputError("determinant of a non-square matrix");
    if (n == 0)
        return ZPoly(1L);
    bool negate = false;
    ZPoly prev(1L);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero())
                ++p;
            if (p == n)
                return {};
            std::swap(m[k], m[p]);
            negate = !negate;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = divide_exact(m[k][k] * m[i][j] - m[i][k] * m[k][j], prev);
            m[i][k] = ZPoly{};
        }
        prev = m[k][k];
    }
    return negate ? -m[n - 1][n - 1] : m[n - 1][n - 1];
}

ZPoly resultant_y(const std::vector<ZPoly> &p, const std::vector<ZPoly> &q)
{
    auto degree = [](const std::vector<ZPoly> &f) {
        std::size_t d = f.size();
        while (d > 0 && f[d - 1].is_zero())
            --d;
        if (d == 0)
            throw InputError("resultant of a zero polynomial");
        return d - 1;
    };
    std::size_t dp = degree(p), dq = degree(q), n = dp + dq;
    if (n == 0)
        return ZPoly(1L);
    std::vector<std::vector<ZPoly>> s(n, std::vector<ZPoly>(n));
    for (std::size_t r = 0; r < dq; ++r)
        for (std::size_t i = 0; i <= dp; ++i)
            s[r][r + i] = p[dp - i];
    for (std::size_t r = 0; r < dp; ++r)
        for (std::size_t i = 0; i <= dq; ++i)
            s[dq + r][r + i] = q[dq - i];
    return determinant(std::move(s));
}

} // namespace treeinv
