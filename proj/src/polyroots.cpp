#include "multisect/polyroots.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>

#include "multisect/errors.hpp"

namespace multisect {

Complex poly_eval(const CPoly& p, Complex x) {
  Complex r = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) r = r * x + *it;
  return r;
}

CPoly poly_derivative(const CPoly& p) {
  if (p.size() <= 1) return {};
  CPoly d(p.size() - 1);
  for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = p[i] * static_cast<double>(i);
  return d;
}

CPoly poly_mul(const CPoly& a, const CPoly& b) {
  if (a.empty() || b.empty()) return {};
  CPoly r(a.size() + b.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
  return r;
}

CPoly poly_add(const CPoly& a, const CPoly& b) {
  CPoly r(std::max(a.size(), b.size()), 0.0);
  for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
  return r;
}

CPoly poly_scale(const CPoly& a, Complex s) {
  CPoly r = a;
  for (auto& c : r) c *= s;
  return r;
}

CPoly poly_trim(const CPoly& p, double rel) {
  double mx = 0.0;
  for (const auto& c : p) mx = std::max(mx, std::abs(c));
  CPoly r = p;
  while (!r.empty() && std::abs(r.back()) <= rel * mx) r.pop_back();
  return r;
}

int poly_degree(const CPoly& p) { return static_cast<int>(poly_trim(p).size()) - 1; }

std::vector<Complex> companion_roots(const CPoly& p) {
  const CPoly q = poly_trim(p);
  if (q.empty()) throw NumericalError("companion_roots: zero polynomial");
  const std::size_t n = q.size() - 1;
  if (n == 0) return {};
  Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(static_cast<long>(n), static_cast<long>(n));
  for (std::size_t i = 1; i < n; ++i) C(static_cast<long>(i), static_cast<long>(i - 1)) = 1.0;
  for (std::size_t i = 0; i < n; ++i) C(static_cast<long>(i), static_cast<long>(n - 1)) = -q[i] / q[n];
  Eigen::ComplexEigenSolver<Eigen::MatrixXcd> solver(C, false);
  if (solver.info() != Eigen::Success) throw NumericalError("companion_roots: eigenvalue solver failed");
  std::vector<Complex> roots(n);
  for (std::size_t i = 0; i < n; ++i) roots[i] = solver.eigenvalues()(static_cast<long>(i));
  return roots;
}

Complex newton_polish(const CPoly& p, Complex x, int max_iter, double tol) {
  const CPoly d = poly_derivative(p);
  for (int it = 0; it < max_iter; ++it) {
    const Complex fx = poly_eval(p, x), dx = poly_eval(d, x);
    if (dx == 0.0) break;
    const Complex step = fx / dx;
    x -= step;
    if (std::abs(step) <= tol * std::max(1.0, std::abs(x))) break;
  }
  return x;
}

AberthResult aberth(const NewtonRatio& ratio, std::vector<Complex> guesses, int max_iter, double tol) {
  const std::size_t n = guesses.size();
  std::vector<LComplex> z(n);
  for (std::size_t i = 0; i < n; ++i) z[i] = LComplex(guesses[i].real(), guesses[i].imag());
  std::vector<char> done(n, 0);
  AberthResult res;
  for (int it = 0; it < max_iter; ++it) {
    res.iterations = it + 1;
    long double worst = 0.0L;
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      const LComplex r = ratio(z[i]);
      LComplex s = 0.0L;
      for (std::size_t j = 0; j < n; ++j)
        if (j != i) s += 1.0L / (z[i] - z[j]);
      const LComplex w = r / (1.0L - r * s);
      z[i] -= w;
      const long double rel = std::abs(w) / std::max(1.0L, std::abs(z[i]));
      worst = std::max(worst, rel);
      if (rel < static_cast<long double>(tol)) done[i] = 1;
    }
    res.max_correction = static_cast<double>(worst);
    if (std::all_of(done.begin(), done.end(), [](char c) { return c != 0; })) {
      res.converged = true;
      break;
    }
  }
  res.roots.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    res.roots[i] = Complex(static_cast<double>(z[i].real()), static_cast<double>(z[i].imag()));
  return res;
}

}  // namespace multisect
