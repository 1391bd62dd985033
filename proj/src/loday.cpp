#include "treeinv/loday.hpp"

#include <cmath>
#include <cstdint>
#include <stdexcept>

namespace treeinv {

namespace detail {
extern const char kLodayDataJson[];
}

namespace {

using QSeries = Series<RationalRing>;
using Coeffs = std::vector<mpz_class>;

std::uint64_t fnv1a64(const std::string &s)
{
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char ch : s) {
        h ^= ch;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string checksum_of(const nlohmann::json &doc)
{
    nlohmann::json body{{"curve", doc.at("curve")}, {"model", doc.at("model")}};
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(fnv1a64(body.dump())));
    return std::string("fnv1a64:") + buf;
}

mpz_class integer_from_json(const nlohmann::json &v)
{
    if (v.is_number_integer())
        return mpz_class(v.get<long>());
    if (!v.is_string())
        throw InputError("curve coefficients must be integers or strings, got " + v.dump());
    mpz_class z;
    const std::string s = v.get<std::string>();
    if (s.empty() || z.set_str(s, 10) != 0)
        throw InputError("malformed integer '" + s + "'");
    return z;
}

ZPoly poly_from_json(const nlohmann::json &j)
{
    if (!j.is_array())
        throw InputError("polynomial must be an array of coefficients, got " + j.dump());
    Coeffs c;
    for (const auto &v : j)
        c.push_back(integer_from_json(v));
    return ZPoly(std::move(c));
}

nlohmann::json poly_to_json(const ZPoly &p)
{
    nlohmann::json a = nlohmann::json::array();
    for (const auto &c : p.coefficients())
        a.push_back(c.get_str());
    return a;
}

QSeries poly_series(const ZPoly &p, unsigned order)
{
    QSeries s(RationalRing{}, order);
    for (std::size_t i = 0; i < p.coefficients().size() && i <= order; ++i)
        s.add_term(Monomial::x_power(static_cast<unsigned>(i)), mpq_class(p.coefficients()[i]));
    return s;
}

/// p(s) for a polynomial p and a series s, by Horner.
QSeries compose(const ZPoly &p, const QSeries &s)
{
    QSeries acc(RationalRing{}, s.order());
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * s + QSeries::constant(RationalRing{}, s.order(), mpq_class(p.coefficient(i)));
    return acc;
}

// Dense truncated power series over Z (optionally reduced mod M).

void reduce(Coeffs &v, const mpz_class &modulus)
{
    for (auto &x : v)
        mpz_mod(x.get_mpz_t(), x.get_mpz_t(), modulus.get_mpz_t());
}

/// First `keep` coefficients of p(t) * v(t) for a short polynomial p.
Coeffs times_poly(const ZPoly &p, const Coeffs &v, std::size_t keep)
{
    Coeffs out(keep, 0);
    const auto &pc = p.coefficients();
    for (std::size_t i = 0; i < pc.size() && i < keep; ++i) {
        if (sgn(pc[i]) == 0)
            continue;
        for (std::size_t j = 0; j < v.size() && i + j < keep; ++j)
            mpz_addmul(out[i + j].get_mpz_t(), pc[i].get_mpz_t(), v[j].get_mpz_t());
    }
    return out;
}

void add_into(Coeffs &acc, const Coeffs &v)
{
    for (std::size_t i = 0; i < v.size() && i < acc.size(); ++i)
        acc[i] += v[i];
}

/// P(y) and P_y(y) through t^(keep-1); reduced mod `modulus` when it is nonzero.
std::pair<Coeffs, Coeffs> evaluate_curve(const AlgebraicCurve &curve, const Coeffs &y, std::size_t keep,
                                         const mpz_class &modulus)
{
    bool modular = sgn(modulus) != 0;
    std::vector<Coeffs> pw(curve.c.size());
    pw[0] = Coeffs{1};
    if (pw.size() > 1)
        pw[1] = Coeffs(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(std::min(y.size(), keep)));
    for (std::size_t i = 2; i < pw.size(); ++i) {
        // Even powers by squaring keep the big products balanced.
        pw[i] = i % 2 == 0 ? kronecker_multiply(pw[i / 2], pw[i / 2], keep) : kronecker_multiply(pw[i - 1], pw[1], keep);
        if (modular)
            reduce(pw[i], modulus);
    }
    Coeffs p(keep, 0), py(keep, 0);
    for (std::size_t i = 0; i < curve.c.size(); ++i) {
        add_into(p, times_poly(curve.c[i], pw[i], keep));
        if (i > 0)
            add_into(py, times_poly(curve.c[i].scaled(mpz_class(static_cast<unsigned long>(i))), pw[i - 1], keep));
    }
    if (modular) {
        reduce(p, modulus);
        reduce(py, modulus);
    }
    return {std::move(p), std::move(py)};
}

bool all_zero(const Coeffs &v)
{
    for (const auto &x : v)
        if (sgn(x) != 0)
            return false;
    return true;
}

mpz_class derivative_at_origin(const AlgebraicCurve &curve, const mpz_class &y0)
{
    mpz_class d = 0, p = 1;
    for (std::size_t i = 1; i < curve.c.size(); ++i) {
        d += mpz_class(static_cast<unsigned long>(i)) * curve.c[i].coefficient(0) * p;
        p *= y0;
    }
    return d;
}

/// Newton iteration modulo M from a seed exact through t^s; returns the
/// symmetric residues of y through t^order. Needs gcd(P_y(y(0), 0), M) = 1.
Coeffs lift_modular(const AlgebraicCurve &curve, const Coeffs &seed, unsigned order, const mpz_class &modulus)
{
    mpz_class inv0;
    mpz_class py0 = derivative_at_origin(curve, seed[0]);
    mpz_invert(inv0.get_mpz_t(), py0.get_mpz_t(), modulus.get_mpz_t());
    Coeffs y = seed;
    reduce(y, modulus);
    Coeffs inv{inv0};
    std::size_t exact = seed.size() - 1, inv_exact = 0;
    while (exact < order) {
        std::size_t next = std::min<std::size_t>(2 * exact + 1, order);
        std::size_t keep = next + 1;
        y.resize(keep, 0);
        auto [p, py] = evaluate_curve(curve, y, keep, modulus);
        // 1/P_y(y) by its own Newton iteration: inv <- inv (2 - P_y inv).
        while (inv_exact < next) {
            std::size_t e = std::min(2 * inv_exact + 1, next);
            Coeffs w = kronecker_multiply(py, inv, e + 1);
            reduce(w, modulus);
            for (auto &x : w)
                x = -x;
            w[0] += 2;
            inv = kronecker_multiply(inv, w, e + 1);
            reduce(inv, modulus);
            inv_exact = e;
        }
        Coeffs delta = kronecker_multiply(p, inv, keep);
        for (std::size_t i = 0; i < keep; ++i) {
            y[i] -= i < delta.size() ? delta[i] : mpz_class(0);
            mpz_mod(y[i].get_mpz_t(), y[i].get_mpz_t(), modulus.get_mpz_t());
        }
        exact = next;
    }
    y.resize(order + 1, 0);
    mpz_class half = modulus / 2;
    for (auto &x : y)
        if (x > half)
            x -= modulus;
    return y;
}

} // namespace

std::vector<ZPoly> AlgebraicCurve::derivative_y() const
{
    std::vector<ZPoly> d;
    for (std::size_t i = 1; i < c.size(); ++i)
        d.push_back(c[i].scaled(mpz_class(static_cast<unsigned long>(i))));
    return d;
}

AlgebraicCurve curve_from_json(const nlohmann::json &j)
{
    try {
        AlgebraicCurve curve;
        const std::string var = j.value("variable", std::string("t"));
        for (const auto &p : j.at("c"))
            curve.c.push_back(poly_from_json(p));
        if (curve.c.size() < 2 || curve.c.back().is_zero())
            throw InputError("curve needs degree >= 1 in y with a nonzero leading coefficient");
        if (j.contains("discriminant_factors")) {
            const std::string suffix = "_factored";
            for (const auto &[key, v] : j.at("discriminant_factors").items()) {
                bool expr = key.size() > suffix.size() && key.compare(key.size() - suffix.size(), suffix.size(), suffix) == 0;
                if (expr)
                    curve.factors[key.substr(0, key.size() - suffix.size())] = parse_zpoly(v.get<std::string>(), var);
                else
                    curve.factors[key] = poly_from_json(v);
            }
        }
        return curve;
    } catch (const nlohmann::json::exception &e) {
        throw InputError(std::string("malformed curve JSON: ") + e.what());
    }
}

nlohmann::json curve_to_json(const AlgebraicCurve &curve)
{
    nlohmann::json c = nlohmann::json::array();
    for (const auto &p : curve.c)
        c.push_back(poly_to_json(p));
    nlohmann::json f = nlohmann::json::object();
    for (const auto &[name, p] : curve.factors)
        f[name] = poly_to_json(p);
    return {{"variable", "t"}, {"c", c}, {"discriminant_factors", f}};
}

const nlohmann::json &loday_data()
{
    static const nlohmann::json doc = [] {
        auto j = nlohmann::json::parse(detail::kLodayDataJson);
        if (j.at("checksum").get<std::string>() != checksum_of(j))
            throw std::logic_error("built-in curve data fails its checksum");
        return j;
    }();
    return doc;
}

SpinModel<RationalRing> loday_model()
{
    return model_from_json(RationalRing{}, loday_data().at("model"));
}

AlgebraicCurve loday_curve()
{
    return curve_from_json(loday_data().at("curve"));
}

SpinModel<RationalRing> loday_reduced_model()
{
    auto full = loday_model();
    std::size_t o = full.index_of("o"), n = full.index_of("N"), w = full.index_of("W");
    std::vector<std::size_t> kept;
    std::vector<std::string> alphabet;
    for (std::size_t i = 0; i < full.size(); ++i)
        if (i != n && i != w) {
            kept.push_back(i);
            alphabet.push_back(full.alphabet[i]);
        }
    // Columns N and W fold into column o; their rows drop out.
    std::vector<Matrix<RationalRing>> mats;
    for (const auto &m : full.blocks.front().matrices) {
        Matrix<RationalRing> r;
        for (std::size_t a : kept) {
            std::vector<mpq_class> row;
            for (std::size_t b : kept)
                row.push_back(b == o ? m[a][o] + m[a][n] + m[a][w] : m[a][b]);
            r.push_back(std::move(row));
        }
        mats.push_back(std::move(r));
    }
    return make_uniform_model(RationalRing{}, alphabet, mats,
                              std::optional<std::vector<mpq_class>>(std::vector<mpq_class>(kept.size(), 1)));
}

Series<RationalRing> loday_series(unsigned order)
{
    auto m = loday_model();
    auto sys = solve_regular(m, order);
    const auto &g = sys.g;
    if (g[m.index_of("N")] != g[m.index_of("o")] || g[m.index_of("W")] != g[m.index_of("o")])
        throw std::logic_error("g_o = g_N = g_W fails");
    return sys.g_total;
}

Series<RationalRing> loday_reduced_series(unsigned order)
{
    auto m = loday_reduced_model();
    auto sys = solve_regular(m, order);
    return sys.g_total + sys.g[m.index_of("o")].scaled(mpq_class(2));
}

Series<RationalRing> loday_tilde_series(unsigned order)
{
    return solve_regular(loday_model(), order).g_tilde_total;
}

Series<RationalRing> minpoly_check(const Series<RationalRing> &y, const AlgebraicCurve &curve)
{
    QSeries acc(RationalRing{}, y.order());
    for (std::size_t i = curve.c.size(); i-- > 0;)
        acc = acc * y + poly_series(curve.c[i], y.order());
    return acc;
}

Series<RationalRing> transposition_check(const Series<RationalRing> &y_tilde, const AlgebraicCurve &curve)
{
    unsigned order = y_tilde.order();
    QSeries u = QSeries::x(RationalRing{}, order);
    QSeries acc(RationalRing{}, order);
    for (std::size_t i = curve.c.size(); i-- > 0;)
        acc = acc * u + compose(curve.c[i], y_tilde);
    return acc;
}

DiscriminantReport discriminant_report(const AlgebraicCurve &curve)
{
    DiscriminantReport r;
    r.discriminant = divide_exact(resultant_y(curve.c, curve.derivative_y()), curve.c.back());
    for (const char *name : {"r1", "r2", "r3", "rinf"})
        if (!curve.factors.count(name))
            throw InputError(std::string("curve lacks discriminant factor ") + name);
    const auto &f = curve.factors;
    r.known_part = f.at("r1").power(2) * f.at("r2") * f.at("r3").power(2) * f.at("rinf");
    try {
        r.cofactor = divide_exact(r.discriminant, r.known_part);
        r.cofactor_root = sqrt_exact(*r.cofactor);
    } catch (const PreconditionError &) {
    }
    return r;
}

std::vector<mpz_class> lift_coefficients(const AlgebraicCurve &curve, const Series<RationalRing> &seed, unsigned order)
{
    if (!seed.is_univariate())
        throw InputError("seed must be a series in t alone");
    unsigned s = seed.order();
    Coeffs y0;
    for (unsigned n = 0; n <= s; ++n) {
        mpq_class q = seed.x_coefficient(n);
        if (q.get_den() != 1)
            throw UnsupportedError("seed coefficients must be integers");
        y0.push_back(q.get_num());
    }
    mpz_class py0 = derivative_at_origin(curve, y0[0]);
    if (sgn(py0) == 0)
        throw PreconditionError("P_y vanishes at the seed's constant term: not a simple branch");
    if (!all_zero(evaluate_curve(curve, y0, s + 1, 0).first))
        throw PreconditionError("seed does not satisfy the curve through its order");
    if (order <= s)
        return Coeffs(y0.begin(), y0.begin() + order + 1);

    // Bits per coefficient from the seed's growth, with headroom; a wrong
    // guess only costs a retry because the result is checked over Z.
    double rate = 1;
    for (unsigned n = 1; n <= s; ++n)
        if (sgn(y0[n]) != 0)
            rate = std::max(rate, static_cast<double>(mpz_sizeinbase(y0[n].get_mpz_t(), 2)) / n);
    auto bits = static_cast<unsigned long>(order * rate * 1.25) + 64;
    for (int failures = 0; failures < 8;) {
        mpz_class modulus, g;
        mpz_ui_pow_ui(modulus.get_mpz_t(), 2, bits);
        modulus += 1;
        mpz_gcd(g.get_mpz_t(), py0.get_mpz_t(), modulus.get_mpz_t());
        if (g != 1) {
            ++bits;
            continue;
        }
        Coeffs y = lift_modular(curve, y0, order, modulus);
        if (all_zero(evaluate_curve(curve, y, order + 1, 0).first))
            return y;
        ++failures;
        bits *= 2;
    }
    throw std::logic_error("Newton lift did not verify over Z");
}

Series<RationalRing> lift_from_curve(const AlgebraicCurve &curve, const Series<RationalRing> &seed, unsigned order)
{
    auto c = lift_coefficients(curve, seed, order);
    std::vector<mpq_class> q(c.begin(), c.end());
    return QSeries::from_x_coefficients(RationalRing{}, order, q);
}

} // namespace treeinv
