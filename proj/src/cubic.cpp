#include "multisect/cubic.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <map>
#include <random>
#include <sstream>

#include "multisect/errors.hpp"

namespace multisect::cubic {

namespace {

// Sparse homogeneous polynomial used for symbolic composition and Hessians.
using Poly3 = std::map<Exponent, Complex>;

Poly3 mul(const Poly3& a, const Poly3& b) {
  Poly3 r;
  for (const auto& [ea, ca] : a)
    for (const auto& [eb, cb] : b) r[{ea[0] + eb[0], ea[1] + eb[1], ea[2] + eb[2]}] += ca * cb;
  return r;
}

Poly3 add(const Poly3& a, const Poly3& b, Complex sb = 1.0) {
  Poly3 r = a;
  for (const auto& [e, c] : b) r[e] += sb * c;
  return r;
}

Poly3 derivative(const Poly3& p, int var) {
  Poly3 r;
  for (const auto& [e, c] : p) {
    if (e[var] == 0) continue;
    Exponent f = e;
    --f[var];
    r[f] += c * static_cast<double>(e[var]);
  }
  return r;
}

Poly3 to_poly(const CubicForm& F) {
  Poly3 p;
  for (std::size_t i = 0; i < 10; ++i) p[CubicForm::monomials()[i]] = F.coefficients()[i];
  return p;
}

CubicForm from_poly(const Poly3& p) {
  std::array<Complex, 10> c{};
  for (const auto& [e, v] : p) {
    if (e[0] + e[1] + e[2] != 3) throw NumericalError("internal: polynomial is not cubic");
    c[CubicForm::index_of(e)] += v;
  }
  return CubicForm(c);
}

Complex ipow(Complex x, int e) {
  Complex r = 1.0;
  while (e-- > 0) r *= x;
  return r;
}

}  // namespace

const std::array<Exponent, 10>& CubicForm::monomials() {
  static const std::array<Exponent, 10> m = {{{3, 0, 0}, {2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 1, 1},
                                              {1, 0, 2}, {0, 3, 0}, {0, 2, 1}, {0, 1, 2}, {0, 0, 3}}};
  return m;
}

std::size_t CubicForm::index_of(const Exponent& e) {
  const auto& m = monomials();
  for (std::size_t i = 0; i < m.size(); ++i)
    if (m[i] == e) return i;
  throw InputError("CubicForm: exponent triple is not a cubic monomial");
}

CubicForm::CubicForm(const std::array<Complex, 10>& coefficients) : c_(coefficients) {
  bool nonzero = false;
  for (const auto& v : c_) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw InputError("CubicForm: non-finite coefficient");
    if (v != 0.0) nonzero = true;
  }
  if (!nonzero) throw InputError("CubicForm: zero form");
}

CubicForm CubicForm::from_terms(const std::vector<std::pair<Exponent, Complex>>& terms) {
  std::array<Complex, 10> c{};
  for (const auto& [e, v] : terms) c[index_of(e)] += v;
  return CubicForm(c);
}

CubicForm CubicForm::fermat() { return from_terms({{{3, 0, 0}, 1.0}, {{0, 3, 0}, 1.0}, {{0, 0, 3}, 1.0}}); }

Complex CubicForm::operator()(const Vec3& v) const {
  Complex s = 0.0;
  const auto& m = monomials();
  for (std::size_t i = 0; i < 10; ++i)
    if (c_[i] != 0.0) s += c_[i] * ipow(v(0), m[i][0]) * ipow(v(1), m[i][1]) * ipow(v(2), m[i][2]);
  return s;
}

Vec3 CubicForm::gradient(const Vec3& v) const {
  Vec3 g = Vec3::Zero();
  const auto& m = monomials();
  for (std::size_t i = 0; i < 10; ++i) {
    if (c_[i] == 0.0) continue;
    for (int a = 0; a < 3; ++a) {
      if (m[i][a] == 0) continue;
      Exponent e = m[i];
      const double k = e[a]--;
      g(a) += c_[i] * k * ipow(v(0), e[0]) * ipow(v(1), e[1]) * ipow(v(2), e[2]);
    }
  }
  return g;
}

Mat3 CubicForm::second_derivatives(const Vec3& v) const {
  Mat3 H = Mat3::Zero();
  const auto& m = monomials();
  for (std::size_t i = 0; i < 10; ++i) {
    if (c_[i] == 0.0) continue;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) {
        Exponent e = m[i];
        if (e[a] == 0) continue;
        double k = e[a]--;
        if (e[b] == 0) continue;
        k *= e[b]--;
        H(a, b) += c_[i] * k * ipow(v(0), e[0]) * ipow(v(1), e[1]) * ipow(v(2), e[2]);
      }
  }
  return H;
}

double CubicForm::max_coefficient() const {
  double mx = 0.0;
  for (const auto& v : c_) mx = std::max(mx, std::abs(v));
  return mx;
}

CubicForm CubicForm::normalized() const { return scaled(1.0 / max_coefficient()); }

CubicForm CubicForm::scaled(Complex s) const {
  std::array<Complex, 10> c = c_;
  for (auto& v : c) v *= s;
  return CubicForm(c);
}

CubicForm CubicForm::compose(const Mat3& M) const {
  std::array<Poly3, 3> lin;
  for (int r = 0; r < 3; ++r) lin[static_cast<std::size_t>(r)] = {{{1, 0, 0}, M(r, 0)}, {{0, 1, 0}, M(r, 1)}, {{0, 0, 1}, M(r, 2)}};
  Poly3 total;
  const auto& m = monomials();
  for (std::size_t i = 0; i < 10; ++i) {
    if (c_[i] == 0.0) continue;
    Poly3 term{{{0, 0, 0}, c_[i]}};
    for (int a = 0; a < 3; ++a)
      for (int k = 0; k < m[i][static_cast<std::size_t>(a)]; ++k) term = mul(term, lin[static_cast<std::size_t>(a)]);
    total = add(total, term);
  }
  return from_poly(total);
}

double CubicForm::proportionality_residual(const CubicForm& other) const {
  Complex num = 0.0;
  double den = 0.0, self = 0.0;
  for (std::size_t i = 0; i < 10; ++i) {
    num += std::conj(other.c_[i]) * c_[i];
    den += std::norm(other.c_[i]);
    self += std::norm(c_[i]);
  }
  const Complex s = num / den;
  double r = 0.0;
  for (std::size_t i = 0; i < 10; ++i) r += std::norm(c_[i] - s * other.c_[i]);
  return std::sqrt(r / self);
}

std::string CubicForm::to_string() const {
  std::ostringstream os;
  os << std::setprecision(17);
  bool first = true;
  for (std::size_t i = 0; i < 10; ++i) {
    if (c_[i] == 0.0) continue;
    if (!first) os << " + ";
    first = false;
    const auto& e = monomials()[i];
    os << '(' << c_[i].real() << (c_[i].imag() < 0 ? "" : "+") << c_[i].imag() << "i)"
       << "x^" << e[0] << "y^" << e[1] << "z^" << e[2];
  }
  return os.str();
}

ProjPoint::ProjPoint(Complex x, Complex y, Complex z) : ProjPoint(Vec3(x, y, z)) {}

ProjPoint::ProjPoint(const Vec3& v) {
  double mx = 0.0;
  for (int i = 0; i < 3; ++i) {
    if (!std::isfinite(v(i).real()) || !std::isfinite(v(i).imag()))
      throw InputError("ProjPoint: non-finite coordinate");
    mx = std::max(mx, std::abs(v(i)));
  }
  if (mx == 0.0) throw InputError("ProjPoint: all coordinates zero");
  int pivot = 0;
  while (std::abs(v(pivot)) < mx * (1.0 - 1e-9)) ++pivot;
  v_ = v / v(pivot);
  v_(pivot) = 1.0;
}

std::string ProjPoint::to_string() const {
  std::ostringstream os;
  os << std::setprecision(17);
  for (int i = 0; i < 3; ++i) os << (i ? " " : "") << v_(i).real() << ' ' << v_(i).imag();
  return os.str();
}

double fs_distance(const Vec3& p, const Vec3& q) {
  const Complex inner = p.dot(q);  // conjugates p
  const Vec3 wedge(p(1) * q(2) - p(2) * q(1), p(2) * q(0) - p(0) * q(2), p(0) * q(1) - p(1) * q(0));
  return std::atan2(wedge.norm(), std::abs(inner));
}

double fs_distance(const ProjPoint& p, const ProjPoint& q) { return fs_distance(p.coords(), q.coords()); }

bool lex_less(const ProjPoint& p, const ProjPoint& q) {
  constexpr double slack = 1e-9;
  for (int i = 0; i < 3; ++i) {
    for (int part = 0; part < 2; ++part) {
      const double a = part ? p[i].imag() : p[i].real();
      const double b = part ? q[i].imag() : q[i].real();
      if (a < b - slack) return true;
      if (a > b + slack) return false;
    }
  }
  return false;
}

void sort_points(std::vector<ProjPoint>& pts) { std::stable_sort(pts.begin(), pts.end(), lex_less); }

double curve_residual(const CubicForm& F, const ProjPoint& P) { return std::abs(F.normalized()(P.coords())); }

CubicForm hessian(const CubicForm& F) {
  const Poly3 p = to_poly(F);
  Poly3 D[3][3];
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b) D[a][b] = derivative(derivative(p, a), b);
  Poly3 det;
  for (int j = 0; j < 3; ++j) {
    const int j1 = (j + 1) % 3, j2 = (j + 2) % 3;
    Poly3 minor = add(mul(D[1][j1], D[2][j2]), mul(D[1][j2], D[2][j1]), -1.0);
    det = add(det, mul(D[0][j], minor));
  }
  // Drop exact cancellations before validating degree.
  for (auto it = det.begin(); it != det.end();) it = it->second == 0.0 ? det.erase(it) : std::next(it);
  if (det.empty()) throw SmoothnessError("hessian: vanishes identically (the cubic is a cone over points)");
  return from_poly(det);
}


namespace {

Mat3 generic_unitary(int attempt) {
  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL + static_cast<unsigned long long>(attempt));
  auto unit = [&rng]() { return static_cast<double>(rng() >> 11) * 0x1.0p-53 * 2.0 - 1.0; };
  Mat3 M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = Complex(unit(), unit());
  Eigen::HouseholderQR<Mat3> qr(M);
  return qr.householderQ() * Mat3::Identity();
}

// Coefficients of y^0..y^3 of G(x, y, 1), each a polynomial in x.
std::array<CPoly, 4> chart_coefficients(const CubicForm& G) {
  std::array<CPoly, 4> out;
  for (auto& p : out) p.assign(4, 0.0);
  for (std::size_t i = 0; i < 10; ++i) {
    const auto& e = CubicForm::monomials()[i];
    out[static_cast<std::size_t>(e[1])][static_cast<std::size_t>(e[0])] += G.coefficients()[i];
  }
  return out;
}

Complex sylvester_33(const std::array<Complex, 4>& a, const std::array<Complex, 4>& b) {
  Eigen::Matrix<Complex, 6, 6> S = Eigen::Matrix<Complex, 6, 6>::Zero();
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 4; ++k) {
      S(r, r + k) = a[static_cast<std::size_t>(3 - k)];
      S(r + 3, r + k) = b[static_cast<std::size_t>(3 - k)];
    }
  return S.partialPivLu().determinant();
}

struct ChartSolution {
  std::vector<ProjPoint> points;
  bool ok = false;
  std::string why;
};

ChartSolution flexes_in_chart(const CubicForm& Fn, const Mat3& U, double tol) {
  ChartSolution out;
  const CubicForm G = Fn.compose(U);
  const CubicForm H = hessian(G).normalized();
  const auto f = chart_coefficients(G);
  const auto h = chart_coefficients(H);
  if (std::abs(f[3][0]) < 1e-3 || std::abs(h[3][0]) < 1e-3) {
    out.why = "point (0:1:0) too close to the curve or Hessian";
    return out;
  }
  constexpr int kSamples = 16;
  std::vector<Complex> values(kSamples);
  for (int k = 0; k < kSamples; ++k) {
    const Complex x = std::polar(1.0, 2.0 * M_PI * k / kSamples);
    std::array<Complex, 4> a, b;
    for (std::size_t j = 0; j < 4; ++j) {
      a[j] = poly_eval(f[j], x);
      b[j] = poly_eval(h[j], x);
    }
    values[static_cast<std::size_t>(k)] = sylvester_33(a, b);
  }
  CPoly res(kSamples, 0.0);
  for (int j = 0; j < kSamples; ++j) {
    Complex s = 0.0;
    for (int k = 0; k < kSamples; ++k) s += values[static_cast<std::size_t>(k)] * std::polar(1.0, -2.0 * M_PI * j * k / kSamples);
    res[static_cast<std::size_t>(j)] = s / static_cast<double>(kSamples);
  }
  double mx = 0.0;
  for (const auto& c : res) mx = std::max(mx, std::abs(c));
  if (mx < 1e-12) throw SmoothnessError("flexes: curve and Hessian share a component (singular curve)");
  for (int j = 10; j < kSamples; ++j)
    if (std::abs(res[static_cast<std::size_t>(j)]) > 1e-8 * mx) {
      out.why = "resultant interpolation not of degree 9";
      return out;
    }
  res.resize(10);
  if (std::abs(res[9]) < 1e-6 * mx) {
    out.why = "resultant degree drops (flex near the line at infinity)";
    return out;
  }
  std::vector<Complex> xs = companion_roots(res);
  for (auto& x : xs) x = newton_polish(res, x);

  for (const Complex& x0 : xs) {
    CPoly fy(4), hy(4);
    for (std::size_t j = 0; j < 4; ++j) {
      fy[j] = poly_eval(f[j], x0);
      hy[j] = poly_eval(h[j], x0);
    }
    Complex best_y = 0.0;
    double best = -1.0;
    for (const Complex& y : companion_roots(fy)) {
      const double r = std::abs(poly_eval(hy, y));
      if (best < 0.0 || r < best) {
        best = r;
        best_y = y;
      }
    }
    Complex x = x0, y = best_y;
    double last_step = 0.0;
    for (int it = 0; it < 60; ++it) {
      const Vec3 v(x, y, 1.0);
      const Vec3 gf = G.gradient(v), gh = H.gradient(v);
      const Complex fv = G(v), hv = H(v);
      const Complex det = gf(0) * gh(1) - gf(1) * gh(0);
      if (std::abs(det) == 0.0) break;
      const Complex dx = (fv * gh(1) - hv * gf(1)) / det;
      const Complex dy = (gf(0) * hv - gh(0) * fv) / det;
      x -= dx;
      y -= dy;
      last_step = (std::abs(dx) + std::abs(dy)) / (1.0 + std::abs(x) + std::abs(y));
      if (last_step < 1e-16) break;
    }
    // A simple intersection converges quadratically; a multiple one (e.g. at a
    // singular point of the curve) stalls at a linear rate.
    if (last_step > 1e-11) throw SmoothnessError("flexes: non-simple intersection with the Hessian (singular curve)");
    out.points.emplace_back(U * Vec3(x, y, 1.0));
  }
  const CubicForm Hsrc = hessian(Fn).normalized();
  for (std::size_t i = 0; i < out.points.size(); ++i) {
    const Vec3& v = out.points[i].coords();
    if (std::abs(Fn(v)) > tol || std::abs(Hsrc(v)) > tol) {
      out.why = "residual above tolerance after refinement";
      return out;
    }
    if (Fn.gradient(v).norm() < 1e-6) throw SmoothnessError("flexes: singular point on the curve");
    for (std::size_t j = 0; j < i; ++j)
      if (fs_distance(out.points[i], out.points[j]) < 1e-6) {
        out.why = "intersection points not distinct";
        return out;
      }
  }
  out.ok = true;
  return out;
}

}  // namespace

std::vector<ProjPoint> flexes(const CubicForm& F, double tol) {
  const CubicForm Fn = F.normalized();
  std::string why;
  for (int attempt = 0; attempt < 4; ++attempt) {
    auto sol = flexes_in_chart(Fn, generic_unitary(attempt), tol);
    if (sol.ok) {
      sort_points(sol.points);
      return sol.points;
    }
    why = sol.why;
  }
  throw SmoothnessError("flexes: no 9 simple flexes found (" + why + ")");
}

bool is_smooth(const CubicForm& F) {
  try {
    flexes(F);
    return true;
  } catch (const SmoothnessError&) {
    return false;
  }
}

bool hesse_lambda_smooth(Complex lambda, double tol) { return std::abs(lambda * lambda * lambda - 1.0) > tol; }

HessePencilMember hesse_pencil(Complex lambda) {
  return {CubicForm::from_terms({{{3, 0, 0}, 1.0}, {{0, 3, 0}, 1.0}, {{0, 0, 3}, 1.0}, {{1, 1, 1}, -3.0 * lambda}}),
          hesse_lambda_smooth(lambda)};
}

double collinearity_residual(const Vec3& p, const Vec3& q, const Vec3& r) {
  Mat3 M;
  M << p, q, r;
  return std::abs(M.determinant()) / (p.norm() * q.norm() * r.norm());
}

HesseConfiguration hesse_configuration(const std::vector<ProjPoint>& pts, double tol) {
  if (pts.size() != 9) throw ConfigurationError("hesse_configuration: expected 9 points");
  HesseConfiguration cfg;
  cfg.lines_through.assign(9, {});
  cfg.min_noncollinear_residual = std::numeric_limits<double>::infinity();
  for (int i = 0; i < 9; ++i)
    for (int j = i + 1; j < 9; ++j)
      for (int k = j + 1; k < 9; ++k) {
        const double r = collinearity_residual(pts[static_cast<std::size_t>(i)].coords(),
                                               pts[static_cast<std::size_t>(j)].coords(),
                                               pts[static_cast<std::size_t>(k)].coords());
        if (r < tol) {
          const int id = static_cast<int>(cfg.lines.size());
          cfg.lines.push_back({i, j, k});
          for (int p : {i, j, k}) cfg.lines_through[static_cast<std::size_t>(p)].push_back(id);
          cfg.max_collinearity_residual = std::max(cfg.max_collinearity_residual, r);
        } else {
          cfg.min_noncollinear_residual = std::min(cfg.min_noncollinear_residual, r);
        }
      }
  if (cfg.lines.size() != 12)
    throw ConfigurationError("hesse_configuration: found " + std::to_string(cfg.lines.size()) + " lines, expected 12");
  for (const auto& l : cfg.lines_through)
    if (l.size() != 4) throw ConfigurationError("hesse_configuration: a point lies on " + std::to_string(l.size()) + " lines, expected 4");
  return cfg;
}

ProjPoint third_intersection(const CubicForm& F, const ProjPoint& P, const ProjPoint& Q, double same_point_tol) {
  const CubicForm Fn = F.normalized();
  // Orthonormal frame e1, e2 of the line with P = e1. On the line,
  // F(s e1 + t e2) = a s^3 + b s^2 t + c s t^2 + d t^3 with a = F(P) = 0, and the
  // remaining linear factor alpha s + beta t gives the third point beta e1 - alpha e2.
  const Vec3 e1 = P.coords() / P.coords().norm();
  Vec3 e2;
  Complex k_alpha, k_beta;
  if (fs_distance(P, Q) < same_point_tol) {
    const Vec3 g = Fn.gradient(e1);
    if (g.norm() < 1e-10) throw NumericalError("third_intersection: singular point, no tangent line");
    const Vec3 pc = e1.conjugate();
    e2 = Vec3(g(1) * pc(2) - g(2) * pc(1), g(2) * pc(0) - g(0) * pc(2), g(0) * pc(1) - g(1) * pc(0));
    e2 /= e2.norm();
    k_alpha = (Fn.gradient(e2).transpose() * e1)(0);
    k_beta = Fn(e2);
  } else {
    const Vec3 q = Q.coords() / Q.coords().norm();
    const Complex q1 = e1.dot(q);
    Vec3 w = q - q1 * e1;
    const double q2 = w.norm();
    e2 = w / q2;
    const Complex b = (Fn.gradient(e1).transpose() * e2)(0);
    const Complex c = (Fn.gradient(e2).transpose() * e1)(0);
    const Complex d = Fn(e2);
    k_alpha = b / q2;
    k_beta = std::abs(q1) >= q2 ? -d / q1 : (c + q1 * k_alpha) / q2;
  }
  Vec3 R = k_beta * e1 - k_alpha * e2;
  const Vec3& p = e1;
  const Vec3& other = e2;
  if (R.norm() < 1e-12) throw NumericalError("third_intersection: degenerate chord (line meets the curve ambiguously)");
  // Newton along the line, moving orthogonally to R.
  R /= R.norm();
  Vec3 w = Vec3::Zero();
  for (const Vec3* cand : std::array<const Vec3*, 2>{&p, &other}) {
    Vec3 c = *cand / cand->norm();
    c -= R.dot(c) * R;
    if (c.norm() > w.norm()) w = c;
  }
  w /= w.norm();
  // Steps are kept only while they reduce the residual: when the line is tangent at R
  // the root is double and Newton would wander along the line.
  for (int it = 0; it < 3; ++it) {
    const Complex val = Fn(R);
    const Complex der = (Fn.gradient(R).transpose() * w)(0);
    if (std::abs(der) < 1e-300) break;
    const Complex s = val / der;
    if (std::abs(s) > 1e-6) break;
    const Vec3 cand = R - s * w;
    if (std::abs(Fn(cand)) >= std::abs(val)) break;
    R = cand;
  }
  return ProjPoint(R);
}

}  // namespace multisect::cubic
