#pragma once

// Singularity analysis of an algebraic curve P(y, t) = 0: real roots of the
// discriminant factors, the square-root branch point of a chosen sheet and
// the coefficient law a_n ~ C |rho|^-n n^-3/2.

#include "treeinv/loday.hpp"
#include "treeinv/poly.hpp"

#include <boost/multiprecision/mpfr.hpp>
#include <json.hpp>

#include <optional>
#include <string>
#include <vector>

namespace treeinv {

using BigFloat = boost::multiprecision::mpfr_float;

/// Sets the BigFloat working precision in decimal digits and restores it on
/// exit. The precision is process-wide state, so scopes must not overlap
/// across threads.
class PrecisionScope {
public:
    explicit PrecisionScope(unsigned digits);
    ~PrecisionScope();
    PrecisionScope(const PrecisionScope &) = delete;
    PrecisionScope &operator=(const PrecisionScope &) = delete;

private:
    unsigned saved_;
};

/// q rounded to the current working precision.
BigFloat to_bigfloat(const mpq_class &q);
BigFloat to_bigfloat(const mpz_class &z);

/// Fixed-point decimal string with `digits` significant digits.
std::string format_bigfloat(const BigFloat &x, unsigned digits);

/// Half-open interval (lo, hi] holding exactly one root.
struct RootInterval {
    mpq_class lo, hi;
};

/// Sturm isolation of the real roots of p in [lo, hi], ascending. p must be
/// square-free; otherwise PreconditionError asks for squarefree_part first.
std::vector<RootInterval> isolate_real_roots(const ZPoly &p, const mpq_class &lo, const mpq_class &hi);

/// Shrinks an isolating interval by exact bisection until hi - lo < 2^-bits.
RootInterval refine_root(const ZPoly &p, RootInterval iv, unsigned bits);

/// All real roots of p in [lo, hi] to `digits` decimal digits, ascending.
std::vector<BigFloat> real_roots(const ZPoly &p, const mpq_class &lo, const mpq_class &hi, unsigned digits);

struct BranchPoint {
    BigFloat rho;
    BigFloat y_rho;            ///< double root of P(., rho), found as a simple root of dP/dy
    BigFloat gamma_sqrt_rho;   ///< |sqrt(2 rho P_t / P_yy)| at (y_rho, rho)
    BigFloat constant;         ///< gamma_sqrt_rho / (2 sqrt(pi))
    std::string factor;        ///< discriminant factor vanishing at rho
    BigFloat p_residual;       ///< |P(y_rho, rho)|
    BigFloat py_residual;      ///< |P_y(y_rho, rho)|
    BigFloat pyy;              ///< P_yy(y_rho, rho)
    unsigned digits = 0;
};

/// Branch point at the single root of the curve's ramification factors
/// (every named factor except rinf) inside [lo, hi]. Throws
/// PreconditionError when the interval does not isolate exactly one root or
/// no real double root of P(., rho) exists.
BranchPoint branch_point(const AlgebraicCurve &curve, const mpq_class &lo, const mpq_class &hi, unsigned digits);

/// C |rho|^-n n^-3/2, with sign (-1)^n when rho < 0.
BigFloat predict_coefficient(const BranchPoint &bp, unsigned n);

struct RadiusEntry {
    BigFloat t;
    std::string factor;
    std::string note;
};

/// Real roots in [lo, hi] of every discriminant factor and of the leading
/// coefficient c4, sorted by |t|.
std::vector<RadiusEntry> radius_report(const AlgebraicCurve &curve, const mpq_class &lo, const mpq_class &hi,
                                       unsigned digits);

struct SheetSingularity {
    RootInterval interval;
    std::string factor;
};

/// Follows the real sheet through (0, y0) from t = 0 towards `limit` and
/// returns the first ramification root where it meets another sheet.
SheetSingularity locate_singularity(const AlgebraicCurve &curve, const mpq_class &limit, const mpq_class &y0 = 0);

/// {"digits", "factor", "rho", "y_rho", "gamma_sqrt_rho", "constant", "table", "prediction"?}
/// for the sheet through (0, 0), searching between 0 and `limit`.
nlohmann::json asymptotics_report(const AlgebraicCurve &curve, unsigned digits, const mpq_class &limit,
                                  std::optional<unsigned> predict_n = {});

} // namespace treeinv
