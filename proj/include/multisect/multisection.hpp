#pragma once

#include <functional>
#include <string>
#include <vector>

#include "multisect/polyroots.hpp"

// Multisections of the torus fibration in the flat lattice model C / <1, tau>:
// the type-3m fibers and their deformations.
namespace multisect::multisection {

// C / <1, tau> with the unit-area flat metric: a displacement dz has length
// |dz| / sqrt(Im tau).
class LatticeCurve {
 public:
  // Throws InputError unless Im tau > 0.
  explicit LatticeCurve(Complex tau);

  Complex tau() const { return tau_; }
  double scale() const { return scale_; }  // 1 / sqrt(Im tau)
  // Reduced basis of the lattice (Lagrange-Gauss), shortest vector first.
  Complex reduced_u() const { return u_; }
  Complex reduced_v() const { return v_; }
  double shortest_vector() const { return std::abs(u_) * scale_; }

  // Representative a + b tau with a, b in [0, 1).
  Complex reduce(Complex z) const;
  // Shortest representative of z modulo the lattice.
  Complex shortest_representative(Complex z) const;
  // All representatives of z whose length is within slack of the shortest.
  std::vector<Complex> near_shortest_representatives(Complex z, double slack) const;
  double flat_length(Complex dz) const { return std::abs(dz) * scale_; }
  double flat_distance(Complex z, Complex w) const;

 private:
  Complex tau_, u_, v_;
  double scale_;
};

struct FiberMultisection {
  LatticeCurve curve;
  std::vector<Complex> points;  // reduced representatives
  std::size_t degree = 0;
  std::string construction;
};

// Builds a fiber after reducing the points; throws NumericalError if two points are
// within 1e-9 in the flat metric.
FiberMultisection make_fiber(const LatticeCurve& curve, const std::vector<Complex>& points, std::string construction);

double min_pairwise_distance(const FiberMultisection& f);

// (a + b tau) / (3m) whose order in the torus divides 3m but no 3k, k < m.
FiberMultisection sigma_m_lattice(const LatticeCurve& curve, int m);

// min(half the shortest lattice vector, half the smallest pairwise distance), flat units.
double epsilon(const FiberMultisection& f);

// Unit tangent vectors in the flat metric, as complex numbers of modulus 1.
using VectorField = std::function<Complex(Complex)>;
VectorField constant_field(Complex direction);

// Points x + (j / 4k) eps v(x), j = 1..k, grouped by source point. Throws InputError
// if v is not unit or eps exceeds epsilon(f), NumericalError on a collision.
FiberMultisection deform_k(const FiberMultisection& f, const VectorField& v, int k, double eps);

// Points x + (1/4) eps w(x), x - (1/4) eps w(x), in that order per source point.
FiberMultisection deform_double(const FiberMultisection& f, const VectorField& w, double eps);
// The homotopy x +- (t/4) eps w(x); unchecked, so t = 0 is allowed.
std::vector<Complex> deform_double_at(const FiberMultisection& f, const VectorField& w, double eps, double t);

// Unit tangent (flat metric) at z_start of the shortest segment to z_end. Throws
// InputError when z_start == z_end or when two shortest representatives tie within 1e-10.
Complex flat_geodesic_direction(const LatticeCurve& curve, Complex z_start, Complex z_end);

}  // namespace multisect::multisection
