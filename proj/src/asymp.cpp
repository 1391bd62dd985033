#include "treeinv/asymp.hpp"

#include <boost/math/constants/constants.hpp>

#include <algorithm>
#include <cmath>

namespace treeinv {

namespace {

/// Guard digits carried beyond the requested precision.
constexpr unsigned kGuardDigits = 20;
/// Precision of the real-axis continuation in locate_singularity.
constexpr unsigned kTrackDigits = 50;

unsigned bits_for_digits(unsigned digits)
{
    return static_cast<unsigned>(std::ceil(digits * 3.3219280948873623)) + 8;
}

std::vector<QPoly> sturm_chain(const ZPoly &p)
{
    QPoly a = to_rational(p);
    if (gcd(a, a.derivative()).degree() > 0)
        throw PreconditionError("polynomial is not square-free; take squarefree_part first");
    std::vector<QPoly> chain{a, a.derivative()};
    while (chain.back().degree() > 0) {
        QPoly r = divmod(chain[chain.size() - 2], chain.back()).second;
        if (r.is_zero())
            break;
        chain.push_back(-r);
    }
    return chain;
}

int variations(const std::vector<QPoly> &chain, const mpq_class &x)
{
    int count = 0, last = 0;
    for (const auto &q : chain) {
        int s = sgn(q.evaluate(x));
        if (s == 0)
            continue;
        if (last != 0 && s != last)
            ++count;
        last = s;
    }
    return count;
}

/// Number of roots in (a, b].
int roots_between(const std::vector<QPoly> &chain, const mpq_class &a, const mpq_class &b)
{
    return variations(chain, a) - variations(chain, b);
}

RootInterval refine_with(const std::vector<QPoly> &chain, RootInterval iv, unsigned bits)
{
    mpq_class width(1);
    width /= mpq_class(mpz_class(1) << bits);
    while (iv.hi - iv.lo >= width) {
        mpq_class m = (iv.lo + iv.hi) / 2;
        if (sgn(chain.front().evaluate(m)) == 0)
            return {m, m};
        if (roots_between(chain, iv.lo, m) > 0)
            iv.hi = m;
        else
            iv.lo = m;
    }
    return iv;
}

BigFloat midpoint(const RootInterval &iv)
{
    return to_bigfloat(mpq_class((iv.lo + iv.hi) / 2));
}

BigFloat evaluate(const ZPoly &p, const BigFloat &x)
{
    BigFloat acc = 0;
    for (int i = p.degree(); i >= 0; --i)
        acc = acc * x + to_bigfloat(p.coefficient(i));
    return acc;
}

BigFloat evaluate(const std::vector<BigFloat> &c, const BigFloat &x)
{
    BigFloat acc = 0;
    for (std::size_t i = c.size(); i-- > 0;)
        acc = acc * x + c[i];
    return acc;
}

/// Real roots of a polynomial with BigFloat coefficients, ascending. Roots of
/// the derivative split the line into monotone pieces, each bisected.
std::vector<BigFloat> numeric_roots(std::vector<BigFloat> c)
{
    while (!c.empty() && c.back() == 0)
        c.pop_back();
    if (c.size() <= 1)
        return {};
    if (c.size() == 2)
        return {-c[0] / c[1]};
    std::vector<BigFloat> d;
    for (std::size_t i = 1; i < c.size(); ++i)
        d.push_back(c[i] * static_cast<long>(i));
    BigFloat bound = 1;
    for (std::size_t i = 0; i + 1 < c.size(); ++i)
        bound = std::max(bound, BigFloat(1 + abs(c[i] / c.back())));
    std::vector<BigFloat> points{-bound};
    for (auto &r : numeric_roots(d))
        points.push_back(r);
    points.push_back(bound);
    BigFloat eps = pow(BigFloat(10), -static_cast<long>(BigFloat::default_precision()));
    std::vector<BigFloat> roots;
    for (std::size_t i = 0; i + 1 < points.size(); ++i) {
        BigFloat a = points[i], b = points[i + 1];
        BigFloat fa = evaluate(c, a), fb = evaluate(c, b);
        if (fa == 0) {
            if (roots.empty() || roots.back() != a)
                roots.push_back(a);
            continue;
        }
        if (fb == 0 || (fa < 0) == (fb < 0))
            continue;
        for (int it = 0; it < 100000 && b - a > eps * (1 + abs(a)); ++it) {
            BigFloat m = (a + b) / 2;
            if (m == a || m == b)
                break;
            BigFloat fm = evaluate(c, m);
            if ((fm < 0) == (fa < 0))
                a = m, fa = fm;
            else
                b = m;
        }
        roots.push_back((a + b) / 2);
    }
    if (evaluate(c, points.back()) == 0)
        roots.push_back(points.back());
    return roots;
}

struct CurveValues {
    BigFloat p, py, pyy, pt;
};

CurveValues evaluate_curve(const AlgebraicCurve &curve, const BigFloat &y, const BigFloat &t)
{
    CurveValues v{0, 0, 0, 0};
    for (std::size_t i = curve.c.size(); i-- > 0;) {
        BigFloat ci = evaluate(curve.c[i], t);
        v.pyy = v.pyy * y + 2 * v.py;
        v.py = v.py * y + v.p;
        v.p = v.p * y + ci;
        v.pt = v.pt * y + evaluate(curve.c[i].derivative(), t);
    }
    return v;
}

struct Candidate {
    RootInterval interval;
    std::string factor;
    ZPoly poly;
};

/// Roots of the ramification factors (all but rinf) in [lo, hi].
std::vector<Candidate> ramification_roots(const AlgebraicCurve &curve, const mpq_class &lo, const mpq_class &hi)
{
    std::vector<Candidate> out;
    for (const auto &[name, f] : curve.factors) {
        if (name == "rinf")
            continue;
        ZPoly sf = squarefree_part(f);
        for (const auto &iv : isolate_real_roots(sf, lo, hi))
            out.push_back({iv, name, sf});
    }
    return out;
}

} // namespace

PrecisionScope::PrecisionScope(unsigned digits) : saved_(BigFloat::default_precision())
{
    BigFloat::default_precision(digits);
}

PrecisionScope::~PrecisionScope()
{
    BigFloat::default_precision(saved_);
}

BigFloat to_bigfloat(const mpq_class &q)
{
    BigFloat x;
    mpfr_set_q(x.backend().data(), q.get_mpq_t(), MPFR_RNDN);
    return x;
}

BigFloat to_bigfloat(const mpz_class &z)
{
    BigFloat x;
    mpfr_set_z(x.backend().data(), z.get_mpz_t(), MPFR_RNDN);
    return x;
}

std::string format_bigfloat(const BigFloat &x, unsigned digits)
{
    return x.str(static_cast<std::streamsize>(digits), std::ios_base::fmtflags(0));
}

std::vector<RootInterval> isolate_real_roots(const ZPoly &p, const mpq_class &lo, const mpq_class &hi)
{
    if (lo > hi)
        throw InputError("empty root interval");
    if (p.degree() <= 0) {
        if (p.is_zero())
            throw PreconditionError("the zero polynomial has no isolated roots");
        return {};
    }
    auto chain = sturm_chain(p);
    std::vector<RootInterval> out;
    if (sgn(chain.front().evaluate(lo)) == 0)
        out.push_back({lo, lo});
    std::vector<RootInterval> todo{{lo, hi}};
    while (!todo.empty()) {
        RootInterval iv = todo.back();
        todo.pop_back();
        int n = roots_between(chain, iv.lo, iv.hi);
        if (n == 0)
            continue;
        if (n == 1) {
            bool exact = sgn(chain.front().evaluate(iv.hi)) == 0;
            out.push_back(exact ? RootInterval{iv.hi, iv.hi} : iv);
            continue;
        }
        mpq_class m = (iv.lo + iv.hi) / 2;
        todo.push_back({iv.lo, m});
        todo.push_back({m, iv.hi});
    }
    std::sort(out.begin(), out.end(), [](const RootInterval &a, const RootInterval &b) { return a.hi < b.hi; });
    return out;
}

RootInterval refine_root(const ZPoly &p, RootInterval iv, unsigned bits)
{
    if (iv.lo == iv.hi)
        return iv;
    return refine_with(sturm_chain(p), iv, bits);
}

std::vector<BigFloat> real_roots(const ZPoly &p, const mpq_class &lo, const mpq_class &hi, unsigned digits)
{
    auto chain_ivs = isolate_real_roots(p, lo, hi);
    if (chain_ivs.empty())
        return {};
    auto chain = sturm_chain(p);
    PrecisionScope scope(digits + kGuardDigits);
    std::vector<BigFloat> out;
    for (const auto &iv : chain_ivs)
        out.push_back(midpoint(iv.lo == iv.hi ? iv : refine_with(chain, iv, bits_for_digits(digits + 2))));
    return out;
}

BranchPoint branch_point(const AlgebraicCurve &curve, const mpq_class &lo, const mpq_class &hi, unsigned digits)
{
    auto candidates = ramification_roots(curve, lo, hi);
    if (candidates.size() != 1)
        throw PreconditionError("interval holds " + std::to_string(candidates.size()) +
                                " ramification roots; exactly one is needed");
    const Candidate &cand = candidates.front();
    PrecisionScope scope(digits + kGuardDigits);
    BranchPoint bp;
    bp.digits = digits;
    bp.factor = cand.factor;
    bp.rho = midpoint(refine_root(cand.poly, cand.interval, bits_for_digits(digits + kGuardDigits)));

    // The double root is a simple root of P_y(., rho); pick the one on P = 0.
    std::vector<BigFloat> py;
    for (std::size_t i = 1; i < curve.c.size(); ++i)
        py.push_back(evaluate(curve.c[i], bp.rho) * static_cast<long>(i));
    BigFloat tolerance = pow(BigFloat(10), 8 - static_cast<long>(digits));
    std::optional<CurveValues> best;
    for (const auto &y : numeric_roots(py)) {
        CurveValues v = evaluate_curve(curve, y, bp.rho);
        if (!best || abs(v.p) < abs(best->p)) {
            best = v;
            bp.y_rho = y;
        }
    }
    if (!best || abs(best->p) > tolerance || abs(best->pyy) <= tolerance)
        throw PreconditionError("no real double root of P(y, rho)");
    bp.p_residual = abs(best->p);
    bp.py_residual = abs(best->py);
    bp.pyy = best->pyy;
    bp.gamma_sqrt_rho = sqrt(abs(2 * bp.rho * best->pt / best->pyy));
    bp.constant = bp.gamma_sqrt_rho / (2 * sqrt(boost::math::constants::pi<BigFloat>()));
    return bp;
}

BigFloat predict_coefficient(const BranchPoint &bp, unsigned n)
{
    if (n == 0)
        throw InputError("prediction needs n >= 1");
    PrecisionScope scope(bp.digits + kGuardDigits);
    BigFloat nn = static_cast<unsigned long>(n);
    BigFloat value = bp.constant * pow(abs(bp.rho), -nn) / (nn * sqrt(nn));
    return bp.rho < 0 && n % 2 == 1 ? BigFloat(-value) : value;
}

std::vector<RadiusEntry> radius_report(const AlgebraicCurve &curve, const mpq_class &lo, const mpq_class &hi,
                                       unsigned digits)
{
    std::vector<RadiusEntry> out;
    auto add = [&](const ZPoly &p, const std::string &factor, const std::string &note) {
        for (auto &t : real_roots(squarefree_part(p), lo, hi, digits))
            out.push_back({t, factor, note});
    };
    for (const auto &[name, f] : curve.factors)
        add(f, name, name == "rinf" ? "sheets tend to infinity" : "ramification");
    add(curve.c.back(), "c4", "leading coefficient vanishes");
    std::stable_sort(out.begin(), out.end(), [](const RadiusEntry &a, const RadiusEntry &b) {
        return abs(a.t) < abs(b.t);
    });
    return out;
}

SheetSingularity locate_singularity(const AlgebraicCurve &curve, const mpq_class &limit, const mpq_class &y0)
{
    if (sgn(limit) == 0)
        throw InputError("search limit must be nonzero");
    auto candidates = ramification_roots(curve, std::min(limit, mpq_class(0)), std::max(limit, mpq_class(0)));
    candidates.erase(std::remove_if(candidates.begin(), candidates.end(),
                                    [](const Candidate &c) { return c.interval.lo == 0 && c.interval.hi == 0; }),
                     candidates.end());
    PrecisionScope scope(kTrackDigits);
    // Refined far enough that each interval also excludes the other factors' roots.
    std::vector<std::pair<BigFloat, Candidate>> stops;
    for (auto c : candidates) {
        c.interval = refine_root(c.poly, c.interval, bits_for_digits(kTrackDigits));
        stops.emplace_back(midpoint(c.interval), c);
    }
    std::sort(stops.begin(), stops.end(), [](const auto &a, const auto &b) { return abs(a.first) < abs(b.first); });

    BigFloat t = 0, y = to_bigfloat(y0);
    CurveValues v = evaluate_curve(curve, y, t);
    BigFloat tiny = pow(BigFloat(10), -static_cast<long>(kTrackDigits) + 10);
    if (abs(v.p) > tiny || v.py == 0)
        throw PreconditionError("(y0, 0) is not a simple point of the curve");
    BigFloat step = BigFloat(1) / 1000;
    const BigFloat min_step = pow(BigFloat(10), -static_cast<long>(kTrackDigits) + 5);
    // Predictor-corrector continuation; a step is accepted only if Newton
    // lands well inside the local root separation |P_y / P_yy|.
    auto advance = [&](const BigFloat &target) {
        while (t != target) {
            BigFloat remaining = target - t;
            bool last = abs(remaining) <= step;
            BigFloat tn = last ? target : BigFloat(t + (remaining < 0 ? -step : step));
            CurveValues here = evaluate_curve(curve, y, t);
            BigFloat sep = here.pyy == 0 ? BigFloat(1) : BigFloat(abs(here.py / here.pyy));
            BigFloat pred = y - here.pt / here.py * (tn - t);
            BigFloat z = pred;
            bool converged = false;
            for (int k = 0; k < 8 && !converged; ++k) {
                CurveValues w = evaluate_curve(curve, z, tn);
                BigFloat d = w.p / w.py;
                z -= d;
                converged = abs(d) <= tiny * (1 + abs(z));
            }
            if (converged && abs(z - pred) <= sep / 10 && abs(z - y) <= sep / 2) {
                t = tn;
                y = z;
                step = std::min(BigFloat(step * 2), BigFloat(BigFloat(1) / 100));
            } else {
                step /= 2;
                if (step < min_step)
                    throw PreconditionError("continuation of the sheet stalled");
            }
        }
    };
    for (const auto &[root, cand] : stops) {
        advance(root * (1 - pow(BigFloat(10), -15)));
        CurveValues here = evaluate_curve(curve, y, t);
        if (abs(here.py / here.pyy) < (1 + abs(y)) / 100000)
            return {cand.interval, cand.factor};
    }
    throw PreconditionError("the sheet does not ramify between 0 and the search limit");
}

nlohmann::json asymptotics_report(const AlgebraicCurve &curve, unsigned digits, const mpq_class &limit,
                                  std::optional<unsigned> predict_n)
{
    auto s = locate_singularity(curve, limit);
    auto bp = branch_point(curve, s.interval.lo, s.interval.hi, digits);
    nlohmann::json table = nlohmann::json::array();
    for (const auto &e : radius_report(curve, std::min(limit, mpq_class(0)), std::max(limit, mpq_class(0)), digits))
        table.push_back({{"t", format_bigfloat(e.t, digits)}, {"factor", e.factor}, {"note", e.note}});
    nlohmann::json j{{"digits", digits},
                     {"factor", bp.factor},
                     {"rho", format_bigfloat(bp.rho, digits)},
                     {"y_rho", format_bigfloat(bp.y_rho, digits)},
                     {"gamma_sqrt_rho", format_bigfloat(bp.gamma_sqrt_rho, digits)},
                     {"constant", format_bigfloat(bp.constant, digits)},
                     {"table", table}};
    if (predict_n)
        j["prediction"] = {{"n", *predict_n}, {"value", format_bigfloat(predict_coefficient(bp, *predict_n), digits)}};
    return j;
}

} // namespace treeinv
