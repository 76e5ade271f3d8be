#include "multisect/multisection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "multisect/errors.hpp"
#include "multisect/modgroup.hpp"

namespace multisect::multisection {

namespace {

constexpr double kDistinct = 1e-9;
constexpr double kTie = 1e-10;
constexpr int kWindow = 2;

double frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0 - 1e-13) f = 0.0;  // snap representatives of 0
  return f;
}

}  // namespace

LatticeCurve::LatticeCurve(Complex tau) : tau_(tau) {
  if (!(tau.imag() > 0.0) || !std::isfinite(tau.real())) throw InputError("tau must have positive imaginary part");
  scale_ = 1.0 / std::sqrt(tau.imag());
  Complex u = 1.0, v = tau;
  if (std::abs(v) < std::abs(u)) std::swap(u, v);
  for (int it = 0; it < 200; ++it) {
    const double mu = std::round((v * std::conj(u)).real() / std::norm(u));
    v -= mu * u;
    if (std::abs(v) >= std::abs(u)) break;
    std::swap(u, v);
  }
  u_ = u;
  v_ = v;
}

Complex LatticeCurve::reduce(Complex z) const {
  const double b = z.imag() / tau_.imag();
  const double a = z.real() - b * tau_.real();
  return frac(a) + frac(b) * tau_;
}

std::vector<Complex> LatticeCurve::near_shortest_representatives(Complex z, double slack) const {
  // Express z in the reduced basis and search a small window around it.
  const double det = (std::conj(u_) * v_).imag();
  const double a = (std::conj(z) * v_).imag() / det;
  const double b = (std::conj(u_) * z).imag() / det;
  const Complex base = z - std::round(a) * u_ - std::round(b) * v_;
  std::vector<Complex> cands;
  double best = std::numeric_limits<double>::infinity();
  for (int i = -kWindow; i <= kWindow; ++i)
    for (int j = -kWindow; j <= kWindow; ++j) {
      const Complex c = base + static_cast<double>(i) * u_ + static_cast<double>(j) * v_;
      cands.push_back(c);
      best = std::min(best, std::abs(c));
    }
  std::vector<Complex> out;
  for (const auto& c : cands)
    if (std::abs(c) * scale_ <= best * scale_ + slack) out.push_back(c);
  std::sort(out.begin(), out.end(), [](Complex x, Complex y) { return std::abs(x) < std::abs(y); });
  return out;
}

Complex LatticeCurve::shortest_representative(Complex z) const { return near_shortest_representatives(z, 0.0).front(); }

double LatticeCurve::flat_distance(Complex z, Complex w) const { return flat_length(shortest_representative(z - w)); }

FiberMultisection make_fiber(const LatticeCurve& curve, const std::vector<Complex>& points, std::string construction) {
  FiberMultisection f{curve, {}, points.size(), std::move(construction)};
  f.points.reserve(points.size());
  for (const auto& p : points) {
    if (!std::isfinite(p.real()) || !std::isfinite(p.imag())) throw InputError("non-finite lattice point");
    f.points.push_back(curve.reduce(p));
  }
  if (f.points.size() > 1 && min_pairwise_distance(f) <= kDistinct)
    throw NumericalError("fiber points collide (" + f.construction + ")");
  return f;
}

double min_pairwise_distance(const FiberMultisection& f) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < f.points.size(); ++i)
    for (std::size_t j = i + 1; j < f.points.size(); ++j)
      best = std::min(best, f.curve.flat_distance(f.points[i], f.points[j]));
  return best;
}

FiberMultisection sigma_m_lattice(const LatticeCurve& curve, int m) {
  if (m < 1) throw InputError("m must be positive");
  const int n = 3 * m;
  std::vector<Complex> pts;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      const int order = n / std::gcd(std::gcd(a, b), n);
      bool earlier = false;
      for (int k = 1; k < m && !earlier; ++k) earlier = (3 * k) % order == 0;
      if (!earlier) pts.push_back((static_cast<double>(a) + static_cast<double>(b) * curve.tau()) / static_cast<double>(n));
    }
  auto f = make_fiber(curve, pts, "sigma_m m=" + std::to_string(m));
  const auto expected = static_cast<std::size_t>(9 * modgroup::jordan_totient(m));
  if (f.degree != expected) throw NumericalError("type-3m lattice count mismatch");
  return f;
}

double epsilon(const FiberMultisection& f) {
  double e = 0.5 * f.curve.shortest_vector();
  if (f.points.size() > 1) {
    const double d = min_pairwise_distance(f);
    if (!(d > 0.0)) throw InputError("fiber has coincident points");
    e = std::min(e, 0.5 * d);
  }
  return e;
}

VectorField constant_field(Complex direction) {
  if (std::abs(direction) == 0.0) throw InputError("zero direction");
  const Complex u = direction / std::abs(direction);
  return [u](Complex) { return u; };
}

namespace {

Complex unit_at(const VectorField& v, Complex x) {
  const Complex d = v(x);
  if (std::abs(std::abs(d) - 1.0) > 1e-12) throw InputError("vector field is not unit length");
  return d;
}

void check_eps(const FiberMultisection& f, double eps) {
  if (!(eps > 0.0)) throw InputError("epsilon must be positive");
  if (eps > epsilon(f) * (1.0 + 1e-12)) throw InputError("epsilon exceeds the injectivity and separation bound");
}

}  // namespace

FiberMultisection deform_k(const FiberMultisection& f, const VectorField& v, int k, double eps) {
  if (k < 1) throw InputError("k must be positive");
  check_eps(f, eps);
  // Flat length s corresponds to a z-displacement s / scale.
  const double to_z = 1.0 / f.curve.scale();
  std::vector<Complex> pts;
  for (const auto& x : f.points) {
    const Complex d = unit_at(v, x);
    for (int j = 1; j <= k; ++j) pts.push_back(x + (static_cast<double>(j) / (4.0 * k)) * eps * to_z * d);
  }
  return make_fiber(f.curve, pts, "deform_k k=" + std::to_string(k) + " of " + f.construction);
}

std::vector<Complex> deform_double_at(const FiberMultisection& f, const VectorField& w, double eps, double t) {
  const double to_z = 1.0 / f.curve.scale();
  std::vector<Complex> pts;
  for (const auto& x : f.points) {
    const Complex d = (t / 4.0) * eps * to_z * unit_at(w, x);
    pts.push_back(f.curve.reduce(x + d));
    pts.push_back(f.curve.reduce(x - d));
  }
  return pts;
}

FiberMultisection deform_double(const FiberMultisection& f, const VectorField& w, double eps) {
  check_eps(f, eps);
  return make_fiber(f.curve, deform_double_at(f, w, eps, 1.0), "deform_double of " + f.construction);
}

Complex flat_geodesic_direction(const LatticeCurve& curve, Complex z_start, Complex z_end) {
  const auto reps = curve.near_shortest_representatives(z_end - z_start, kTie);
  const Complex d = reps.front();
  if (curve.flat_length(d) <= kDistinct) throw InputError("geodesic endpoints coincide");
  if (reps.size() > 1)
    throw InputError("endpoint is on the cut locus: " + std::to_string(reps.size()) + " shortest geodesics");
  return d / std::abs(d);
}

}  // namespace multisect::multisection
