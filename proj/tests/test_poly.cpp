#include "generators.hpp"

#include "treeinv/poly.hpp"

#include <gtest/gtest.h>

using namespace treeinv;

namespace {

ZPoly random_zpoly(gen::Source &s, unsigned degree, long bound)
{
    std::vector<mpz_class> c;
    for (unsigned i = 0; i <= degree; ++i)
        c.emplace_back(s.integer(-bound, bound));
    if (sgn(c.back()) == 0)
        c.back() = 1;
    return ZPoly(c);
}

} // namespace

TEST(Poly, ParseAndFormat)
{
    auto q = parse_zpoly("2*t^4 + 6*t^3 - 11*t^2 - 30*t - 4");
    EXPECT_EQ(q, ZPoly(std::vector<mpz_class>{-4, -30, -11, 6, 2}));
    EXPECT_EQ(q.format("t"), "2*t^4 + 6*t^3 - 11*t^2 - 30*t - 4");
    EXPECT_EQ(parse_zpoly("(t+1)^2*(t-3)"), ZPoly(std::vector<mpz_class>{-3, -5, -1, 1}));
    EXPECT_THROW(parse_zpoly("t + u"), ParseError);
    EXPECT_THROW(parse_zpoly("1/2*t"), InputError);
    EXPECT_EQ(ZPoly().format(), "0");
    EXPECT_EQ(ZPoly().degree(), -1);
}

TEST(Poly, ExactDivisionRoundTrips)
{
    gen::Source s(60);
    for (int i = 0; i < 100; ++i) {
        auto a = random_zpoly(s, static_cast<unsigned>(s.integer(0, 8)), 20);
        auto b = random_zpoly(s, static_cast<unsigned>(s.integer(0, 5)), 20);
        EXPECT_EQ(divide_exact(a * b, b), a);
        auto [qq, rr] = divmod(to_rational(a * b + ZPoly(1L)), to_rational(b));
        if (b.degree() > 0) {
            EXPECT_FALSE(rr.is_zero());
            EXPECT_THROW(divide_exact(a * b + ZPoly(1L), b), PreconditionError);
        }
        EXPECT_EQ(qq * to_rational(b) + rr, to_rational(a * b + ZPoly(1L)));
        EXPECT_LT(rr.degree(), b.degree());
    }
}

TEST(Poly, SquareRoot)
{
    gen::Source s(61);
    for (int i = 0; i < 100; ++i) {
        auto a = random_zpoly(s, static_cast<unsigned>(s.integer(0, 10)), 50);
        if (sgn(a.leading()) < 0)
            a = -a;
        EXPECT_EQ(sqrt_exact(a * a), a);
        if (a.degree() > 0)
            EXPECT_THROW(sqrt_exact(a * a + ZPoly(std::vector<mpz_class>{0, 1})), PreconditionError);
    }
    EXPECT_THROW(sqrt_exact(parse_zpoly("t^3")), PreconditionError);
}

TEST(Poly, DeterminantAndResultant)
{
    // Resultant of (y - a)(y - b) and y - c in Z[t] is (c - a)(c - b).
    ZPoly t = ZPoly::variable();
    ZPoly a = t + ZPoly(1L), b = t * t, c = ZPoly(3L) - t;
    std::vector<ZPoly> p{a * b, -(a + b), ZPoly(1L)};
    std::vector<ZPoly> q{-c, ZPoly(1L)};
    EXPECT_EQ(resultant_y(p, q), (c - a) * (c - b));
    // Discriminant-style check: resultant of y^2 - d and 2y is -4d.
    ZPoly d = t * t * t - ZPoly(2L);
    EXPECT_EQ(resultant_y({-d, ZPoly(), ZPoly(1L)}, {ZPoly(), ZPoly(2L)}), d.scaled(mpz_class(-4)));
    // Bareiss over Z[t] against cofactor expansion of a 3x3 matrix.
    gen::Source s(62);
    for (int i = 0; i < 20; ++i) {
        std::vector<std::vector<ZPoly>> m(3, std::vector<ZPoly>(3));
        for (auto &row : m)
            for (auto &e : row)
                e = s.coin() ? random_zpoly(s, 2, 5) : ZPoly();
        ZPoly cof = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                    m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                    m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
        EXPECT_EQ(determinant(m), cof);
    }
}

TEST(Poly, EvaluateAndDerivative)
{
    auto p = parse_zpoly("t^3 - 2*t + 5");
    EXPECT_EQ(p.evaluate(mpz_class(2)), 9);
    EXPECT_EQ(p.derivative(), parse_zpoly("3*t^2 - 2"));
    EXPECT_EQ(content(parse_zpoly("6*t^2 + 4")), 2);
    EXPECT_EQ(p.power(3), p * p * p);
}

TEST(Poly, KroneckerMatchesSchoolbook)
{
    gen::Source s(63);
    for (int i = 0; i < 100; ++i) {
        auto a = random_zpoly(s, static_cast<unsigned>(s.integer(0, 30)), 1000000);
        auto b = random_zpoly(s, static_cast<unsigned>(s.integer(0, 30)), 1000000);
        if (s.coin())
            a = a * a * a;
        auto keep = static_cast<std::size_t>(s.integer(0, 80));
        auto fast = kronecker_multiply(a.coefficients(), b.coefficients(), keep);
        auto slow = (a * b).coefficients();
        slow.resize(std::min(keep, a.coefficients().size() + b.coefficients().size() - 1), 0);
        EXPECT_EQ(fast, slow);
        auto sq = kronecker_multiply(a.coefficients(), a.coefficients(), 200);
        auto sq_slow = (a * a).coefficients();
        sq_slow.resize(sq.size(), 0);
        EXPECT_EQ(sq, sq_slow);
    }
}
