#include "multisect/heisenberg.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "multisect/errors.hpp"

namespace multisect::heisenberg {

namespace {

const Complex kZeta(-0.5, std::sqrt(3.0) / 2.0);

EMatrix identity_matrix() {
  EMatrix m;
  for (int i = 0; i < 3; ++i) m[i][i] = EisensteinInt(1);
  return m;
}

bool fermat_point(const cubic::ProjPoint& P, double tol) {
  return cubic::curve_residual(cubic::CubicForm::fermat(), P) <= tol;
}

}  // namespace

EisensteinInt EisensteinInt::operator*(const EisensteinInt& o) const {
  // (a + b z)(c + d z) = ac + (ad + bc) z + bd z^2, z^2 = -1 - z.
  const BigInt bd = b * o.b;
  return {BigInt(a * o.a - bd), BigInt(a * o.b + b * o.a - bd)};
}

Complex EisensteinInt::to_complex() const { return a.get_d() + b.get_d() * kZeta; }

std::string EisensteinInt::to_string() const {
  if (b == 0) return a.get_str();
  std::ostringstream os;
  if (a != 0) os << a.get_str() << (b > 0 ? "+" : "-");
  else if (b < 0) os << "-";
  const BigInt ab = abs(b);
  if (ab != 1) os << ab.get_str() << "*";
  os << "zeta";
  return os.str();
}

EisensteinInt determinant(const EMatrix& m) {
  return m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
         m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
         m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
}

EMatrix multiply(const EMatrix& x, const EMatrix& y) {
  EMatrix r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] = r[i][j] + x[i][k] * y[k][j];
  return r;
}

HeisenbergElement::HeisenbergElement() : m_(identity_matrix()) {}

HeisenbergElement::HeisenbergElement(const EMatrix& m) : m_(m) {
  if (!(determinant(m) == EisensteinInt(1))) throw InputError("Heisenberg element must have determinant 1");
}

HeisenbergElement HeisenbergElement::A() {
  EMatrix m;
  m[0][2] = 1;
  m[1][0] = 1;
  m[2][1] = 1;
  return HeisenbergElement(m);
}

HeisenbergElement HeisenbergElement::B() {
  EMatrix m;
  m[0][0] = 1;
  m[1][1] = EisensteinInt::zeta();
  m[2][2] = EisensteinInt::zeta() * EisensteinInt::zeta();
  return HeisenbergElement(m);
}

HeisenbergElement HeisenbergElement::scalar(const EisensteinInt& u) {
  EMatrix m;
  for (int i = 0; i < 3; ++i) m[i][i] = u;
  return HeisenbergElement(m);
}

HeisenbergElement HeisenbergElement::operator*(const HeisenbergElement& o) const {
  return HeisenbergElement(multiply(m_, o.m_));
}

HeisenbergElement HeisenbergElement::inverse() const {
  EMatrix adj;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      const int r0 = (j + 1) % 3, r1 = (j + 2) % 3, c0 = (i + 1) % 3, c1 = (i + 2) % 3;
      adj[i][j] = m_[r0][c0] * m_[r1][c1] - m_[r0][c1] * m_[r1][c0];
    }
  return HeisenbergElement(adj);
}

bool HeisenbergElement::operator<(const HeisenbergElement& o) const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      if (m_[i][j] < o.m_[i][j]) return true;
      if (o.m_[i][j] < m_[i][j]) return false;
    }
  return false;
}

bool HeisenbergElement::is_scalar() const {
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (i != j && !(m_[i][j] == EisensteinInt(0))) return false;
  return m_[0][0] == m_[1][1] && m_[1][1] == m_[2][2];
}

cubic::Mat3 HeisenbergElement::to_complex() const {
  cubic::Mat3 M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = m_[i][j].to_complex();
  return M;
}

std::string HeisenbergElement::to_string() const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < 3; ++i) {
    os << (i ? "; " : "");
    for (int j = 0; j < 3; ++j) os << (j ? ", " : "") << m_[i][j].to_string();
  }
  os << "]";
  return os.str();
}

HeisenbergElement commutator(const HeisenbergElement& x, const HeisenbergElement& y) {
  return x * y * x.inverse() * y.inverse();
}

std::vector<HeisenbergElement> generate_group() {
  const std::vector<HeisenbergElement> gens{HeisenbergElement::A(), HeisenbergElement::B()};
  std::set<HeisenbergElement> seen{HeisenbergElement()};
  std::vector<HeisenbergElement> frontier{HeisenbergElement()};
  while (!frontier.empty()) {
    std::vector<HeisenbergElement> next;
    for (const auto& g : frontier)
      for (const auto& s : gens) {
        HeisenbergElement h = s * g;
        if (seen.insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  return {seen.begin(), seen.end()};
}

std::vector<HeisenbergElement> center() {
  const auto a = HeisenbergElement::A(), b = HeisenbergElement::B();
  std::vector<HeisenbergElement> z;
  for (const auto& g : generate_group())
    if (g * a == a * g && g * b == b * g) z.push_back(g);
  return z;
}

std::size_t projective_order(const std::vector<HeisenbergElement>& group) {
  // Representative of g Z: the minimum over the three scalar multiples.
  const EisensteinInt z = EisensteinInt::zeta();
  const std::array<HeisenbergElement, 3> scalars{HeisenbergElement(), HeisenbergElement::scalar(z),
                                                 HeisenbergElement::scalar(z * z)};
  std::set<HeisenbergElement> classes;
  for (const auto& g : group) {
    HeisenbergElement best = g;
    for (const auto& s : scalars) best = std::min(best, s * g);
    classes.insert(best);
  }
  return classes.size();
}

cubic::ProjPoint act_on_curve(const HeisenbergElement& g, const cubic::ProjPoint& P, double tol) {
  if (!fermat_point(P, tol)) throw InputError("point " + P.to_string() + " is not on the Fermat cubic");
  return cubic::ProjPoint(g.to_complex() * P.coords());
}

TranslationReport translation_report(const elliptic::EllipticContext& ctx, const HeisenbergElement& g,
                                     const std::vector<cubic::ProjPoint>& samples) {
  if (samples.empty()) throw InputError("translation_report needs at least one sample");
  auto diff = [&](const cubic::ProjPoint& P) {
    return elliptic::ec_add(ctx, act_on_curve(g, P, ctx.tolerances().on_curve), elliptic::ec_neg(ctx, P));
  };
  TranslationReport r{diff(samples.front())};
  for (const auto& P : samples) r.max_deviation = std::max(r.max_deviation, cubic::fs_distance(diff(P), r.translation));
  r.three_torsion = ctx.is_identity(elliptic::ec_mul(ctx, 3, r.translation));
  return r;
}

}  // namespace multisect::heisenberg
