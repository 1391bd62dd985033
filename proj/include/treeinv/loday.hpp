#pragma once

// The nine-letter binary model with its 0/1 matrices, the quartic curve
// P(y, t) = c0 + c1 y + c2 y^2 + c3 y^3 + c4 y^4 satisfied by its total
// series, and exact checks tying the two together.

#include "treeinv/poly.hpp"
#include "treeinv/series.hpp"
#include "treeinv/solve.hpp"
#include "treeinv/spin.hpp"

#include <json.hpp>

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace treeinv {

struct AlgebraicCurve {
    /// c[i] is the coefficient of y^i, a polynomial in t.
    std::vector<ZPoly> c;
    /// Named factors of the discriminant in y (r1, r2, r3, rinf).
    std::map<std::string, ZPoly> factors;

    /// Coefficients of dP/dy.
    std::vector<ZPoly> derivative_y() const;
};

/// {"c": [[ascending coefficient strings] x 5], "discriminant_factors": {...}}.
/// Factors are coefficient arrays or, under keys ending in "_factored",
/// product expressions in t.
AlgebraicCurve curve_from_json(const nlohmann::json &j);
nlohmann::json curve_to_json(const AlgebraicCurve &c);

/// The built-in data document; its checksum is verified on first use.
const nlohmann::json &loday_data();
SpinModel<RationalRing> loday_model();
AlgebraicCurve loday_curve();

/// Seven-letter system left after substituting g_N = g_W = g_o.
SpinModel<RationalRing> loday_reduced_model();

/// y = -t + sum of the nine g's through t^order. Throws std::logic_error if
/// g_o = g_N = g_W fails.
Series<RationalRing> loday_series(unsigned order);

/// The same series from the reduced system: -t + 3 g_o + the other six.
Series<RationalRing> loday_reduced_series(unsigned order);

/// The complementary total series y~, the compositional inverse of y.
Series<RationalRing> loday_tilde_series(unsigned order);

/// P(y(t), t) truncated at y's order.
Series<RationalRing> minpoly_check(const Series<RationalRing> &y, const AlgebraicCurve &curve);

/// P(u, y~(u)): the curve with the roles of y and t exchanged.
Series<RationalRing> transposition_check(const Series<RationalRing> &y_tilde, const AlgebraicCurve &curve);

struct DiscriminantReport {
    ZPoly discriminant;                ///< Res_y(P, dP/dy) / c4
    ZPoly known_part;                  ///< product of the transcribed factors r1^2 r2 r3^2 rinf
    std::optional<ZPoly> cofactor;     ///< discriminant / known_part when exact
    std::optional<ZPoly> cofactor_root; ///< its square root when it is a perfect square
};

DiscriminantReport discriminant_report(const AlgebraicCurve &curve);

/// Newton lifting y <- y - P(y)/P_y(y) from an integer seed, doubling the
/// exact order per step, through t^order. Needs P(seed) = 0 through the
/// seed's order and P_y(seed(0), 0) != 0. The result is verified exactly.
std::vector<mpz_class> lift_coefficients(const AlgebraicCurve &curve, const Series<RationalRing> &seed,
                                         unsigned order);
Series<RationalRing> lift_from_curve(const AlgebraicCurve &curve, const Series<RationalRing> &seed,
                                     unsigned order);

} // namespace treeinv
