// One PASS/FAIL line per acceptance criterion; exit status 1 if any fails.
// Every tolerance and time budget is pinned here.

#include "generators.hpp"
#include "oracles.hpp"

#include "treeinv/asymp.hpp"
#include "treeinv/graft.hpp"
#include "treeinv/loday.hpp"
#include "treeinv/morph.hpp"
#include "treeinv/nc.hpp"
#include "treeinv/solve.hpp"

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>

using namespace treeinv;

namespace {

using QSeries = Series<RationalRing>;
const RationalRing Q;
const char *const kEightLeafTree = "(((L L)((L L) L))(L (L (L L))))";

struct Outcome {
    bool ok = true;
    std::string detail;

    void require(bool cond, const std::string &what)
    {
        if (!cond && ok) {
            ok = false;
            detail = what;
        }
    }
};

Matrix<RationalRing> mat(std::vector<std::vector<long>> rows)
{
    Matrix<RationalRing> m;
    for (const auto &r : rows)
        m.emplace_back(r.begin(), r.end());
    return m;
}

SpinModel<RationalRing> inverse_pair_model()
{
    return make_uniform_model(Q, {"1", "2"}, {mat({{1, 1}, {1, 2}}), mat({{2, -1}, {-1, 1}})},
                              std::vector<mpq_class>{1, 1});
}

/// Relative agreement of x with the decimal string ref to `digits` significant digits.
bool agrees(const BigFloat &x, const std::string &ref, unsigned digits)
{
    PrecisionScope scope(digits + 30);
    BigFloat r(ref);
    return abs(BigFloat(x) - r) <= abs(r) * pow(BigFloat(10), -static_cast<long>(digits));
}

std::vector<mpz_class> x_coefficients_z(const QSeries &s, unsigned from, unsigned to)
{
    std::vector<mpz_class> out;
    for (unsigned n = from; n <= to; ++n)
        out.push_back(s.x_coefficient(n).get_num());
    return out;
}

std::vector<mpz_class> zs(std::initializer_list<long> v)
{
    return {v.begin(), v.end()};
}

Outcome spin_example()
{
    Outcome o;
    auto m = inverse_pair_model();
    auto t = parse_tree(kEightLeafTree);
    unsigned order = natural_order(t, m);
    auto value = [&](const QSeries &z) {
        return z.evaluate(mpq_class(1), [](const std::string &) -> mpq_class { throw InputError("symbolic Y"); });
    };
    mpq_class z1 = value(restricted_partition(t, 0, m, order));
    mpq_class z2 = value(restricted_partition(t, 1, m, order));
    mpq_class z = value(partition(t, m, order));
    o.require(z1 == 25 && z2 == -24 && z == 1,
              "Z1=" + z1.get_str() + " Z2=" + z2.get_str() + " Z=" + z.get_str());
    o.detail = o.ok ? "Z1=25 Z2=-24 Z=1" : o.detail;
    return o;
}

Outcome theorem_random_models()
{
    Outcome o;
    const unsigned N = 10;
    gen::Source s(1001);
    int models = 0;
    for (unsigned k : {2u, 3u}) {
        for (int i = 0; i < 6; ++i) {
            auto m = gen::uniform_model(s, Q, k, 1 + s.index(3), -2, 2, i == 5);
            auto r = verify_identity(solve_regular(m, N));
            o.require(r.verified(), "rational model failed at k=" + std::to_string(k));
            ++models;
        }
        ModPRing f(65521);
        for (int i = 0; i < 5; ++i) {
            auto m = gen::uniform_model_mod(s, f, k, 1 + s.index(3));
            auto r = verify_identity(solve_regular(m, N));
            o.require(r.verified(), "mod-p model failed at k=" + std::to_string(k));
            ++models;
        }
    }
    if (o.ok)
        o.detail = std::to_string(models) + " models, residuals zero mod X^11";
    return o;
}

Outcome oracle_equivalence()
{
    Outcome o;
    gen::Source s(1002);
    const unsigned L = 7;
    for (int trial = 0; trial < 5; ++trial) {
        auto m = gen::uniform_model(s, Q, 2, 1 + s.index(3), -2, 2, false);
        auto sys = solve_regular(m, L);
        auto g = signed_sum_oracle(m, L, OracleKind::g_by_enumeration);
        auto gt = signed_sum_oracle(m, L, OracleKind::g_tilde_by_enumeration);
        o.require(g.sound_degree >= L && gt.sound_degree >= L, "oracle sound degree below 7");
        o.require(g.series == sys.g_total.truncated(g.sound_degree), "g differs from tree enumeration");
        o.require(gt.series == sys.g_tilde_total.truncated(gt.sound_degree), "g~ differs from tree enumeration");
        auto comp = signed_sum_oracle(m, L, OracleKind::composition_by_grafting);
        o.require(comp.series == compose_in_x(sys.g_total, sys.g_tilde_total).truncated(comp.sound_degree),
                  "grafted composition differs from direct composition");
    }
    if (o.ok)
        o.detail = "5 binary models through X^7";
    return o;
}

Outcome skeleton_sums()
{
    Outcome o;
    gen::Source s(1003);
    std::size_t checked = 0;
    for (unsigned k : {2u, 3u}) {
        for (int trial = 0; trial < 5; ++trial) {
            auto m = gen::uniform_model(s, Q, k, 1 + s.index(3), -2, 2, trial == 4);
            for (const auto &t : enumerate_k_regular(k, 5)) {
                if (t.is_leaf())
                    continue;
                o.require(check_skeleton_sum<RationalRing>(t, m, std::nullopt).is_zero(), format_tree(t));
                for (std::size_t a = 0; a < m.size(); ++a)
                    o.require(check_skeleton_sum<RationalRing>(t, m, a).is_zero(), format_tree(t));
                ++checked;
            }
        }
    }
    if (o.ok)
        o.detail = std::to_string(checked) + " (tree, model) pairs vanish";
    return o;
}

Outcome inversion()
{
    Outcome o;
    gen::Source s(1004);
    const unsigned N = 15;
    int done = 0;
    while (done < 10) {
        QSeries h(Q, N);
        for (unsigned k = 1; k <= N; ++k)
            h.add_term(Monomial::x_power(k), mpq_class(s.integer(-3, 3)));
        if (h.x_coefficient(1) == 0 || h.x_coefficient(2) == 0)
            continue;
        auto tree = invert_via_trees(h);
        auto newton = revert_newton(h);
        auto x = QSeries::x(Q, N);
        o.require(tree == newton, "tree and Newton inverses differ");
        o.require(compose_in_x(h, tree) == x && compose_in_x(h, newton) == x, "f o f^-1 != X");
        ++done;
    }
    if (o.ok)
        o.detail = "10 series agree mod X^16";
    return o;
}

Outcome loday_series_checks()
{
    Outcome o;
    auto y = loday_series(26);
    o.require(x_coefficients_z(y, 1, 12) == zs({-1, 9, -49, 284, -1735, 10955, -70695, 463087, -3066450, 20471641,
                                                 -137540539, 928791019}),
              "first 12 coefficients differ");
    o.require(loday_reduced_series(26) == y, "reduced system disagrees");
    auto curve = loday_curve();
    o.require(minpoly_check(y, curve).is_zero(), "P(y(t), t) != 0 mod t^27");
    o.require(transposition_check(loday_tilde_series(14), curve).is_zero(), "P(u, y~(u)) != 0 mod u^15");
    if (o.ok)
        o.detail = "12 coefficients, g_o = g_N = g_W, P = 0 mod t^27, transposed P = 0 mod u^15";
    return o;
}

const BranchPoint &loday_branch_point()
{
    static const BranchPoint bp = [] {
        auto curve = loday_curve();
        auto sing = locate_singularity(curve, parse_rational("-3/20"));
        return branch_point(curve, sing.interval.lo, sing.interval.hi, 60);
    }();
    return bp;
}

Outcome asymptotic_constants()
{
    Outcome o;
    const auto &bp = loday_branch_point();
    o.require(agrees(bp.rho, "-0.14127137998962933757540882196178714222253950575630", 30), "rho");
    o.require(agrees(bp.y_rho, "14.88738808602894055277970788094544394", 25), "y_rho");
    o.require(agrees(bp.gamma_sqrt_rho, "337.171657540870", 9), "|gamma sqrt(rho)|");
    o.require(agrees(bp.constant, "95.11436852604511894068836", 12), "constant");
    bool competing = false;
    for (const auto &e : radius_report(loday_curve(), parse_rational("-3/20"), 0, 60))
        if (e.factor != "c4" && e.factor != "rinf" && abs(e.t) > abs(bp.rho))
            competing = competing || agrees(e.t, "-0.1414780159629839", 15);
    o.require(competing, "competing ramification point");
    if (o.ok)
        o.detail = "rho " + format_bigfloat(bp.rho, 32) + ", C " + format_bigfloat(bp.constant, 14);
    return o;
}

Outcome asymptotic_law()
{
    Outcome o;
    const auto &bp = loday_branch_point();
    auto a = lift_coefficients(loday_curve(), loday_series(12), 3000);
    PrecisionScope scope(60);
    auto ratio = [&](unsigned n) { return BigFloat(to_bigfloat(a[n]) / predict_coefficient(bp, n)); };
    std::vector<BigFloat> dev;
    std::ostringstream s;
    for (unsigned n : {500u, 1000u, 2000u, 3000u}) {
        dev.push_back(abs(ratio(n) - 1));
        s << " n=" << n << ":" << format_bigfloat(ratio(n), 5);
    }
    // Mean of successive drops in |ratio - 1| must be positive.
    BigFloat mean_drop = (dev.front() - dev.back()) / (dev.size() - 1);
    o.require(mean_drop > 0, "deviation does not shrink on average;" + s.str());
    o.require(ratio(3000) >= 0.75 && ratio(3000) <= 1.25, "ratio at 3000 outside [0.75, 1.25];" + s.str());
    if (o.ok)
        o.detail = "ratios" + s.str();
    return o;
}

Outcome morphism_sequences()
{
    Outcome o;
    auto k2 = TreeFamily::regular(2), all = TreeFamily::all();
    o.require(x_coefficients_z(morphism_gf(k2, 2, true, 8), 1, 8) == zs({1, 2, 6, 21, 80, 322, 1348, 5814}),
              "restricted binary");
    o.require(x_coefficients_z(morphism_gf(k2, 2, false, 6), 1, 6) == zs({2, 5, 22, 118, 706, 4530}),
              "unrestricted binary");
    o.require(x_coefficients_z(morphism_gf(all, 2, true, 8), 1, 8) == zs({1, 2, 5, 15, 50, 178, 663, 2553}),
              "restricted all trees");
    o.require(x_coefficients_z(morphism_gf(all, 2, false, 8), 1, 8) ==
                  zs({2, 3, 9, 34, 145, 667, 3231, 16247}),
              "unrestricted all trees");
    auto pa = comparable_pairs_gf(all, 11);
    o.require(std::vector<mpz_class>(pa.begin() + 2, pa.end()) ==
                  zs({1, 5, 22, 93, 386, 1586, 6476, 26333, 106762, 431910}),
              "comparable pairs, all trees");
    auto p2 = comparable_pairs_gf(k2, 19);
    std::vector<mpz_class> halves;
    for (unsigned n = 3; n <= 19; n += 2)
        halves.push_back(p2[n] / 2);
    o.require(halves == zs({1, 6, 29, 130, 562, 2380, 9949, 41226, 169766}), "comparable pairs, binary");
    auto p3 = comparable_pairs_gf(TreeFamily::regular(3), 25);
    std::vector<mpz_class> thirds;
    for (unsigned n = 4; n <= 25; n += 3)
        thirds.push_back(p3[n] / 3);
    o.require(thirds == zs({1, 9, 69, 502, 3564, 24960, 173325, 1196748}), "comparable pairs, ternary");
    auto t = parse_tree(kEightLeafTree);
    o.require(gamma_recursive(t, 2, true) == 29 && gamma_recursive(t, 2, false) == 1289, "eight-leaf tree gamma");
    o.require(surjective(t) == 492011520, "eight-leaf tree sigma");
    std::vector<mpz_class> alpha;
    for (unsigned n : {1u, 3u, 5u, 7u})
        alpha.push_back(surjective_total(k2, n));
    o.require(alpha == zs({1, 2, 16, 272}), "alpha sequence");
    auto small = enumerate_general(DegreeSet::parse("1.."), 8);
    for (const auto &tr : small) {
        for (unsigned m : {1u, 2u, 3u})
            for (bool r : {false, true})
                o.require(gamma_recursive(tr, m, r) == count_bruteforce(tr, m, r), "gamma vs brute force");
        if (vertex_count(tr) <= 6)
            o.require(surjective(tr) == oracle::surjections_bruteforce(tr), "sigma vs brute force");
    }
    if (o.ok)
        o.detail = "printed terms match; brute force agrees on " + std::to_string(small.size()) + " trees";
    return o;
}

Outcome noncommutative()
{
    Outcome o;
    gen::Source s(1010);
    for (int i = 0; i < 5; ++i) {
        auto m = gen::uniform_model(s, Q, 2, 2, 0, 1, i % 2 == 0);
        auto sys = nc_solve_and_verify(m, 6);
        o.require(sys.residual.is_zero() && sys.residual_tilde.is_zero(), "word residual nonzero");
        auto commutative = solve_regular(m, 6);
        for (std::size_t a = 0; a < m.size(); ++a)
            o.require(abelianize(sys.g[a], m) == commutative.g[a] &&
                          abelianize(sys.g_tilde[a], m) == commutative.g_tilde[a],
                      "abelianization differs");
    }
    if (o.ok)
        o.detail = "5 two-letter 0/1 models through X-degree 6";
    return o;
}

template <class Ring>
void ring_axioms(Outcome &o, const Ring &ring, std::uint64_t seed)
{
    gen::Source s(seed);
    for (int i = 0; i < 100; ++i) {
        auto a = gen::element(s, ring), b = gen::element(s, ring), c = gen::element(s, ring);
        bool ok = (a + b) + c == a + (b + c) && (a * b) * c == a * (b * c) && a * b == b * a &&
                  a * (b + c) == a * b + a * c && a + ring.zero() == a && a * ring.one() == a && ring.is_zero(a - a);
        if (ring.is_unit(a))
            ok = ok && a * ring.inverse(a) == ring.one();
        o.require(ok, "ring axiom");
    }
}

Outcome series_properties()
{
    Outcome o;
    gen::Source s(1011);
    for (int i = 0; i < 100; ++i) {
        auto f = gen::univariate(s, Q, 12, 2);
        mpq_class c1 = 0;
        while (c1 == 0)
            c1 = gen::rational(s);
        f.add_term(Monomial::x_power(1), c1);
        auto h = revert_newton(f);
        auto x = QSeries::x(Q, 12);
        o.require(compose_in_x(f, h) == x && compose_in_x(h, f) == x, "reversion round trip");
    }
    for (int i = 0; i < 100; ++i) {
        auto f = gen::bivariate(s, Q, 6);
        auto g = gen::bivariate(s, Q, 6, 1);
        auto h = gen::univariate(s, Q, 6, 1);
        o.require(compose_in_x(compose_in_x(f, g), h) == compose_in_x(f, compose_in_x(g, h)),
                  "composition associativity");
    }
    ring_axioms(o, RationalRing{}, 1012);
    ring_axioms(o, ModPRing(65521), 1013);
    ring_axioms(o, DualRing{}, 1014);
    ring_axioms(o, ParamPolyRing{}, 1015);
    if (o.ok)
        o.detail = "100 cases each: reversion, associativity, axioms of 4 rings";
    return o;
}

struct Criterion {
    int number;
    const char *name;
    double budget_seconds;
    std::function<Outcome()> run;
};

} // namespace

int main()
{
    const std::vector<Criterion> criteria{
        {1, "spin-model example", 1, spin_example},
        {2, "inversion identity on random models", 30, theorem_random_models},
        {3, "solver equals tree-enumeration oracles", 60, oracle_equivalence},
        {4, "skeleton sums vanish", 30, skeleton_sums},
        {5, "tree inversion equals Newton reversion", 10, inversion},
        {6, "nine-letter model series and curve", 60, loday_series_checks},
        {7, "branch point constants", 30, asymptotic_constants},
        {8, "coefficient law at n = 3000", 60, asymptotic_law},
        {9, "morphism sequences", 60, morphism_sequences},
        {10, "word-level inversion identity", 30, noncommutative},
        {11, "series engine properties", 10, series_properties},
    };
    int failed = 0;
    for (const auto &c : criteria) {
        auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception &e) {
            o.ok = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (o.ok && secs > c.budget_seconds) {
            o.ok = false;
            o.detail = "over the time budget of " + std::to_string(static_cast<int>(c.budget_seconds)) + " s";
        }
        failed += o.ok ? 0 : 1;
        std::printf("%s %2d %s (%.2f s): %s\n", o.ok ? "PASS" : "FAIL", c.number, c.name, secs, o.detail.c_str());
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
