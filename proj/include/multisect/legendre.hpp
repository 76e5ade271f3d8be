#pragma once

#include <array>
#include <vector>

#include "multisect/cubic.hpp"

// The Legendre family y^2 = x(x - 1)(x - t), its 2-torsion sections, and projective
// normalization of smooth cubics into the family.
namespace multisect::legendre {

using cubic::CubicForm;
using cubic::Mat3;
using cubic::ProjPoint;

class LegendreCurve {
 public:
  // Throws InputError for t = 0 or t = 1 (singular members) or non-finite t.
  explicit LegendreCurve(Complex t);

  Complex t() const { return t_; }
  // y^2 z - x (x - z)(x - t z).
  CubicForm form() const;
  static ProjPoint identity() { return ProjPoint(0.0, 1.0, 0.0); }

 private:
  Complex t_;
};

struct TwoTorsionReport {
  std::array<ProjPoint, 3> points;  // (0,0), (1,0), (t,0)
  double max_curve_residual = 0.0;
  bool all_two_torsion = false;        // 2P = O and P != O
  double factorization_residual = 0.0; // x^3-part of the form vs x(x-1)(x-t), coefficientwise
  bool exhaustive = false;             // torsion_points(2) is exactly {O} plus the three
};
TwoTorsionReport two_torsion_sections(Complex t);

struct LegendreNormalization {
  Complex t;
  Mat3 to_source;  // source coordinates = to_source * Legendre coordinates
  double residual = 0.0;  // largest |F| at mapped sample points of the Legendre curve
};
// One entry per ordering of the three 2-torsion points (six in all; the t-values form a
// cross-ratio orbit and may repeat). Throws NumericalError if a map fails its check.
std::vector<LegendreNormalization> to_legendre(const CubicForm& F, double tol = 1e-8);

// The six values t, 1/t, 1-t, 1/(1-t), t/(t-1), (t-1)/t.
std::array<Complex, 6> cross_ratio_orbit(Complex t);

}  // namespace multisect::legendre
