#include "treeinv/ring.hpp"

#include "treeinv/expression.hpp"

#include <algorithm>
#include <cctype>

namespace treeinv {

namespace {

std::string_view trim(std::string_view s)
{
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front())))
        s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back())))
        s.remove_suffix(1);
    return s;
}

using u128 = unsigned __int128;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m)
{
    return static_cast<std::uint64_t>(static_cast<u128>(a) * b % m);
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e, std::uint64_t m)
{
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1)
            r = mulmod(r, a, m);
        a = mulmod(a, a, m);
        e >>= 1;
    }
    return r;
}

void check_same_modulus(const ModInt &a, const ModInt &b)
{
    if (a.modulus != b.modulus)
        throw InputError("ring mismatch: integers modulo " + std::to_string(a.modulus) + " and " +
                         std::to_string(b.modulus));
}

} // namespace

mpq_class parse_rational(std::string_view text)
{
    std::string s(trim(text));
    if (!s.empty() && s.front() == '+')
        s.erase(0, 1);
    if (s.empty())
        throw ParseError("empty rational", 0);
    std::size_t slash = s.find('/');
    auto valid_int = [](std::string_view part, bool allow_sign) {
        if (allow_sign && !part.empty() && part.front() == '-')
            part.remove_prefix(1);
        return !part.empty() &&
               std::all_of(part.begin(), part.end(), [](char c) { return std::isdigit(static_cast<unsigned char>(c)); });
    };
    if (slash == std::string::npos) {
        if (!valid_int(s, true))
            throw ParseError("malformed rational '" + s + "'", 0);
        return mpq_class(mpz_class(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    if (!valid_int(num, true))
        throw ParseError("malformed numerator in '" + s + "'", 0);
    if (!valid_int(den, false))
        throw ParseError("malformed denominator in '" + s + "'", slash + 1);
    mpz_class d(den);
    if (d == 0)
        throw ParseError("zero denominator in '" + s + "'", slash + 1);
    mpq_class q(mpz_class(num), d);
    q.canonicalize();
    return q;
}

mpq_class RationalRing::inverse(const mpq_class &v) const
{
    if (sgn(v) == 0)
        throw NotInvertibleError("division by zero rational");
    return 1 / v;
}

// ---------------------------------------------------------------------------

ModInt operator+(const ModInt &a, const ModInt &b)
{
    check_same_modulus(a, b);
    std::uint64_t s = a.value + b.value;
    if (s >= a.modulus || s < a.value)
        s -= a.modulus;
    return {s, a.modulus};
}

ModInt operator-(const ModInt &a, const ModInt &b)
{
    check_same_modulus(a, b);
    return {a.value >= b.value ? a.value - b.value : a.value + (a.modulus - b.value), a.modulus};
}

ModInt operator*(const ModInt &a, const ModInt &b)
{
    check_same_modulus(a, b);
    return {mulmod(a.value, b.value, a.modulus), a.modulus};
}

ModInt operator-(const ModInt &a)
{
    return {a.value == 0 ? 0 : a.modulus - a.value, a.modulus};
}

bool is_prime_u64(std::uint64_t n)
{
    if (n < 2)
        return false;
    for (std::uint64_t q : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % q == 0)
            return n == q;
    }
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // Deterministic witness set for 64-bit integers.
    for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        std::uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1)
            continue;
        bool composite = true;
        for (unsigned r = 1; r < s; ++r) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite)
            return false;
    }
    return true;
}

ModPRing::ModPRing(std::uint64_t p) : p_(p)
{
    if (!is_prime_u64(p))
        throw InputError("modulus " + std::to_string(p) + " is not prime");
}

ModInt ModPRing::from_int(long v) const
{
    std::uint64_t m = static_cast<std::uint64_t>(v < 0 ? -(v + 1) : v) % p_;
    if (v < 0)
        m = (p_ - 1 - m) % p_; // -(|v|) = -(m' + 1) handled without overflow
    return {m, p_};
}

ModInt ModPRing::from_rational(const mpq_class &q) const
{
    mpz_class pz;
    mpz_set_ui(pz.get_mpz_t(), 0);
    mpz_import(pz.get_mpz_t(), 1, 1, sizeof(std::uint64_t), 0, 0, &p_);
    mpz_class num = q.get_num() % pz;
    if (num < 0)
        num += pz;
    mpz_class den = q.get_den() % pz;
    if (den == 0)
        throw NotInvertibleError("denominator of " + q.get_str() + " vanishes modulo " + std::to_string(p_));
    auto to_u64 = [](const mpz_class &z) {
        std::uint64_t out = 0;
        mpz_export(&out, nullptr, -1, sizeof(std::uint64_t), 0, 0, z.get_mpz_t());
        return out;
    };
    ModInt n{to_u64(num), p_}, d{to_u64(den), p_};
    return n * inverse(d);
}

ModInt ModPRing::inverse(const ModInt &v) const
{
    if (v.modulus != p_)
        throw InputError("ring mismatch in inverse");
    if (v.value == 0)
        throw NotInvertibleError("zero is not invertible modulo " + std::to_string(p_));
    return {powmod(v.value, p_ - 2, p_), p_};
}

std::string ModPRing::format(const ModInt &v) const
{
    return std::to_string(v.value) + " mod " + std::to_string(p_);
}

ModInt ModPRing::parse(std::string_view text) const
{
    std::string_view s = trim(text);
    std::size_t at = s.find(" mod ");
    if (at != std::string_view::npos) {
        std::string_view modpart = trim(s.substr(at + 5));
        if (std::to_string(p_) != modpart)
            throw InputError("ring mismatch: value '" + std::string(s) + "' is not modulo " + std::to_string(p_));
        s = trim(s.substr(0, at));
    }
    return from_rational(parse_rational(s));
}

// ---------------------------------------------------------------------------

Dual operator+(const Dual &a, const Dual &b) { return {a.re + b.re, a.eps + b.eps}; }
Dual operator-(const Dual &a, const Dual &b) { return {a.re - b.re, a.eps - b.eps}; }
Dual operator*(const Dual &a, const Dual &b) { return {a.re * b.re, a.re * b.eps + a.eps * b.re}; }
Dual operator-(const Dual &a) { return {-a.re, -a.eps}; }

Dual DualRing::inverse(const Dual &v) const
{
    if (sgn(v.re) == 0)
        throw NotInvertibleError("dual number with zero real part is not invertible");
    mpq_class inv = 1 / v.re;
    return {inv, -v.eps * inv * inv};
}

std::string DualRing::format(const Dual &v) const
{
    if (sgn(v.eps) == 0)
        return v.re.get_str();
    mpq_class mag = abs(v.eps);
    return v.re.get_str() + (sgn(v.eps) < 0 ? "-" : "+") + mag.get_str() + "*eps";
}

Dual DualRing::parse(std::string_view text) const
{
    std::string_view s = trim(text);
    constexpr std::string_view suffix = "*eps";
    if (s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix) {
        std::string_view body = s.substr(0, s.size() - suffix.size());
        std::size_t split = std::string_view::npos;
        for (std::size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/') {
                split = i;
                break;
            }
        }
        if (split == std::string_view::npos)
            return {0, parse_rational(body)};
        return {parse_rational(body.substr(0, split)), parse_rational(body.substr(split))};
    }
    if (s == "eps")
        return epsilon();
    return {parse_rational(s), 0};
}

// ---------------------------------------------------------------------------

namespace {

ParamPoly::Monomial multiply_monomials(const ParamPoly::Monomial &a, const ParamPoly::Monomial &b)
{
    ParamPoly::Monomial out;
    out.reserve(a.size() + b.size());
    auto i = a.begin();
    auto j = b.begin();
    while (i != a.end() || j != b.end()) {
        if (j == b.end() || (i != a.end() && i->first < j->first))
            out.push_back(*i++);
        else if (i == a.end() || j->first < i->first)
            out.push_back(*j++);
        else {
            out.emplace_back(i->first, i->second + j->second);
            ++i;
            ++j;
        }
    }
    return out;
}

struct ParamPolyBuilder {
    ParamPoly constant(const mpq_class &q) const { return ParamPoly(q); }
    ParamPoly variable(std::string_view name, std::size_t) const { return ParamPoly::variable(std::string(name)); }
    ParamPoly power(const ParamPoly &b, unsigned e) const
    {
        ParamPoly r(1L);
        for (unsigned i = 0; i < e; ++i)
            r = r * b;
        return r;
    }
};

} // namespace

ParamPoly::ParamPoly(long c)
{
    if (c != 0)
        terms_.emplace(Monomial{}, mpq_class(c));
}

ParamPoly::ParamPoly(const mpq_class &c)
{
    if (sgn(c) != 0)
        terms_.emplace(Monomial{}, c);
}

ParamPoly ParamPoly::variable(const std::string &name)
{
    ParamPoly p;
    p.terms_.emplace(Monomial{{name, 1}}, mpq_class(1));
    return p;
}

bool ParamPoly::is_constant() const
{
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

mpq_class ParamPoly::constant_term() const
{
    auto it = terms_.find(Monomial{});
    return it == terms_.end() ? mpq_class(0) : it->second;
}

void ParamPoly::add_term(const Monomial &m, const mpq_class &c)
{
    auto [it, inserted] = terms_.emplace(m, c);
    if (!inserted)
        it->second += c;
    if (sgn(it->second) == 0)
        terms_.erase(it);
}

ParamPoly operator+(const ParamPoly &a, const ParamPoly &b)
{
    ParamPoly r = a;
    for (const auto &[m, c] : b.terms_)
        r.add_term(m, c);
    return r;
}

ParamPoly operator-(const ParamPoly &a, const ParamPoly &b)
{
    ParamPoly r = a;
    for (const auto &[m, c] : b.terms_)
        r.add_term(m, -c);
    return r;
}

ParamPoly operator*(const ParamPoly &a, const ParamPoly &b)
{
    ParamPoly r;
    for (const auto &[ma, ca] : a.terms_)
        for (const auto &[mb, cb] : b.terms_)
            r.add_term(multiply_monomials(ma, mb), ca * cb);
    return r;
}

ParamPoly operator-(const ParamPoly &a)
{
    ParamPoly r = a;
    for (auto &[m, c] : r.terms_)
        c = -c;
    return r;
}

std::string ParamPoly::format() const
{
    if (terms_.empty())
        return "0";
    std::string out;
    bool first = true;
    for (const auto &[m, c] : terms_) {
        mpq_class mag = abs(c);
        if (first)
            out += sgn(c) < 0 ? "-" : "";
        else
            out += sgn(c) < 0 ? " - " : " + ";
        first = false;
        std::string factors;
        for (const auto &[name, e] : m) {
            if (!factors.empty())
                factors += "*";
            factors += name;
            if (e > 1)
                factors += "^" + std::to_string(e);
        }
        if (factors.empty())
            out += mag.get_str();
        else if (mag == 1)
            out += factors;
        else
            out += mag.get_str() + "*" + factors;
    }
    return out;
}

ParamPoly ParamPolyRing::inverse(const ParamPoly &v) const
{
    if (!is_unit(v))
        throw NotInvertibleError("parameter polynomial '" + v.format() + "' is not a unit");
    return ParamPoly(mpq_class(1 / v.constant_term()));
}

ParamPoly ParamPolyRing::parse(std::string_view text) const
{
    return read_expression<ParamPoly>(text, ParamPolyBuilder{});
}

} // namespace treeinv
