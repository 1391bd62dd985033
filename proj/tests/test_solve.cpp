#include "generators.hpp"

#include "treeinv/solve.hpp"

#include <gtest/gtest.h>

using namespace treeinv;

namespace {

using QSeries = Series<RationalRing>;
const RationalRing Q;

QSeries poly(unsigned order, std::vector<long> coeffs)
{
    std::vector<mpq_class> c(coeffs.begin(), coeffs.end());
    return QSeries::from_x_coefficients(Q, order, c);
}

Matrix<RationalRing> mat(std::vector<std::vector<long>> rows)
{
    Matrix<RationalRing> m;
    for (const auto &r : rows)
        m.emplace_back(r.begin(), r.end());
    return m;
}

SpinModel<RationalRing> all_ones(unsigned k)
{
    return make_uniform_model(Q, {"a"}, std::vector<Matrix<RationalRing>>(k, mat({{1}})), std::vector<mpq_class>{1});
}

} // namespace

TEST(SolveRegular, AllOnesBinary)
{
    auto s = solve_regular(all_ones(2), 5);
    EXPECT_EQ(s.g[0], poly(5, {0, 0, 1, -2, 5, -14}));
    EXPECT_EQ(s.g_tilde[0], poly(5, {0, 0, 1}));
    EXPECT_EQ(s.g_total, poly(5, {0, -1, 1, -2, 5, -14}));
    EXPECT_EQ(s.g_tilde_total, poly(5, {0, -1, 1}));
    EXPECT_TRUE(verify_identity(s).verified());
    EXPECT_THROW(solve_regular(all_ones(3), 2), InputError);
}

TEST(SolveRegular, OddArityComplementKeepsLiteralSign)
{
    auto s = solve_regular(all_ones(3), 7);
    EXPECT_EQ(s.g_tilde[0], poly(7, {0, 0, 0, -1}));
    EXPECT_TRUE(verify_identity(s).verified());
}

TEST(SolveRegular, BootstrapProgressBound)
{
    gen::Source src(3);
    for (unsigned k : {2u, 3u}) {
        auto m = gen::uniform_model(src, Q, k, 2, -2, 2, false);
        const unsigned N = 10;
        auto final = solve_regular(m, N);
        unsigned sweeps = 0;
        solve_regular<RationalRing>(m, N, [&](unsigned n, const std::vector<QSeries> &v) {
            ++sweeps;
            unsigned exact_below = 1 + (n + 1) * (k - 1);
            for (std::size_t a = 0; a < v.size(); ++a)
                EXPECT_TRUE(equal_through(v[a], final.g[a], std::min(N, exact_below - 1)));
        });
        EXPECT_GT(sweeps, 0u);
    }
}

template <class Ring>
void check_theorem(const SpinModel<Ring> &m, unsigned order)
{
    auto s = solve_regular(m, order);
    auto r = verify_identity(s);
    EXPECT_TRUE(r.left.is_zero()) << r.left.format();
    EXPECT_TRUE(r.right.is_zero()) << r.right.format();
    auto [e1, e2] = equation_residuals(s);
    for (const auto &e : e1)
        EXPECT_TRUE(e.is_zero());
    for (const auto &e : e2)
        EXPECT_TRUE(e.is_zero());
}

TEST(SolveRegular, TheoremOnRandomRationalModels)
{
    gen::Source s(100);
    for (int i = 0; i < 12; ++i) {
        unsigned k = 2 + static_cast<unsigned>(i % 2);
        check_theorem(gen::uniform_model(s, Q, k, 1 + s.index(3), -2, 2, false), 10);
    }
}

TEST(SolveRegular, TheoremOnRandomModularModels)
{
    gen::Source s(101);
    ModPRing f(65521);
    for (int i = 0; i < 10; ++i) {
        unsigned k = 2 + static_cast<unsigned>(i % 2);
        check_theorem(gen::uniform_model_mod(s, f, k, 1 + s.index(3)), 10);
    }
}

TEST(SolveRegular, TheoremWithSymbolicY)
{
    gen::Source s(102);
    for (unsigned k : {2u, 3u})
        check_theorem(gen::uniform_model(s, Q, k, 2, -2, 2, true), 7);
}

TEST(SolveRegular, IntroductionExampleWithSymbolicEntries)
{
    // Two letters, k = 2, every matrix entry a distinct parameter.
    ParamPolyRing r;
    auto v = [&](const char *n) { return r.variable(n); };
    Matrix<ParamPolyRing> m1{{v("a"), v("b")}, {v("c"), v("d")}};
    Matrix<ParamPolyRing> m2{{v("p"), v("q")}, {v("u"), v("w")}};
    auto m = make_uniform_model(r, {"1", "2"}, {m1, m2}, std::vector<ParamPoly>{ParamPoly(1L), ParamPoly(1L)});
    auto s = solve_regular(m, 6);
    EXPECT_TRUE(verify_identity(s).verified());
    // g_1 = X^2 - (a + b + p + q) X^3 + ...
    EXPECT_EQ(s.g[0].x_coefficient(3), r.parse("-a - b - p - q"));
}

TEST(SolveGeneral, ReducesToRegular)
{
    gen::Source s(200);
    auto m = gen::uniform_model(s, Q, 2, 3, -2, 2, false);
    auto a = solve_regular(m, 9), b = solve_general(m, 9);
    EXPECT_EQ(a.g, b.g);
    EXPECT_EQ(a.g_tilde, b.g_tilde);
}

TEST(SolveGeneral, MixedArities)
{
    SpinModel<RationalRing> m(Q);
    m.alphabet = {"p", "q"};
    m.blocks.push_back({2, {0}, {mat({{1, 1}}), mat({{1, 1}})}});
    m.blocks.push_back({3, {1}, {mat({{1, 1}}), mat({{1, 1}}), mat({{1, 1}})}});
    m.y_values = std::vector<mpq_class>{1, 1};
    auto s = solve_general(m, 8);
    // g_p + g_q = X - revert(X + X^2 + X^3) (tree oracle, computed independently below).
    auto x = QSeries::x(Q, 8);
    auto expected = x - revert_newton(poly(8, {0, 1, 1, 1}));
    EXPECT_EQ(s.g[0] + s.g[1], expected);
    EXPECT_EQ(expected.x_coefficients()[2], 1);
    EXPECT_EQ(expected.x_coefficients()[3], -1);
    EXPECT_EQ(expected.x_coefficients()[4], 0);
    EXPECT_TRUE(verify_identity(s).verified());
}

TEST(SolveGeneral, UnaryNeedsWeightedSymbolicY)
{
    SpinModel<RationalRing> m(Q);
    m.alphabet = {"a"};
    m.blocks.push_back({1, {0}, {mat({{3}})}});
    m.validate();
    EXPECT_THROW(solve_general(m, 5), InputError);
    m.grading.y_weight = 1;
    auto s = solve_general(m, 6);
    // g = Y X / (1 + 3Y) = sum_j (-3)^j Y^(j+1) X.
    QSeries expected(Q, 6, m.grading);
    mpq_class c = 1;
    for (unsigned j = 0; j + 2 <= 6; ++j, c *= -3)
        expected.add_term(Monomial{1, {{"Ya", j + 1}}}, c);
    EXPECT_EQ(s.g[0], expected);
    EXPECT_TRUE(verify_identity(s).verified());
    m.y_values = std::vector<mpq_class>{1};
    EXPECT_THROW(solve_general(m, 5), InputError);
}

TEST(SolveGeneral, RandomMixedModelsSatisfyTheorem)
{
    gen::Source s(201);
    for (int i = 0; i < 6; ++i) {
        SpinModel<RationalRing> m(Q);
        m.alphabet = {"p", "q", "r"};
        std::vector<unsigned> ar{2, 3, 4};
        for (std::size_t l = 0; l < 3; ++l) {
            ArityBlock<RationalRing> b{ar[l], {l}, {}};
            for (unsigned j = 0; j < ar[l]; ++j) {
                Matrix<RationalRing> row(1, std::vector<mpq_class>(3));
                for (auto &e : row[0])
                    e = s.integer(-2, 2);
                b.matrices.push_back(row);
            }
            m.blocks.push_back(b);
        }
        m.y_values = std::vector<mpq_class>{s.integer(1, 3), s.integer(1, 3), s.integer(1, 3)};
        auto sys = solve_general(m, 9);
        EXPECT_TRUE(verify_identity(sys).verified());
    }
}

TEST(InvertViaTrees, Examples)
{
    EXPECT_EQ(invert_via_trees(poly(6, {0, -1, 1})), poly(6, {0, -1, 1, -2, 5, -14, 42}));
    auto f = poly(6, {0, -1, 2, 1});
    EXPECT_EQ(invert_via_trees(f), revert_newton(f));
    // c_2 = (1 - beta_3/beta_2)/2.
    auto d = invert_via_trees_detailed(poly(6, {0, -1, 3, 5}));
    EXPECT_EQ(d.c[2], (1 - mpq_class(5, 3)) / 2);
    EXPECT_THROW(invert_via_trees(poly(6, {0, -1, 0, 1})), UnsupportedError);
    EXPECT_THROW(invert_via_trees(poly(6, {0, 0, 1})), NotInvertibleError);
}

TEST(InvertViaTrees, AgreesWithNewtonOnRandomSeries)
{
    // Small integer coefficients keep the per-letter series of the tree model
    // moderate; random rationals make them grow by hundreds of digits.
    gen::Source s(300);
    int done = 0;
    while (done < 10) {
        QSeries h(Q, 15);
        for (unsigned k = 1; k <= 15; ++k)
            h.add_term(Monomial::x_power(k), mpq_class(s.integer(-3, 3)));
        if (h.x_coefficient(1) == 0 || h.x_coefficient(2) == 0)
            continue;
        auto inv = invert_via_trees(h);
        EXPECT_EQ(inv, revert_newton(h));
        EXPECT_EQ(compose_in_x(h, inv), QSeries::x(Q, 15));
        ++done;
    }
}
