#include "multisect/verify/sampling.hpp"

#include <cmath>

#include "multisect/errors.hpp"

namespace multisect::verify {

double Sampler::uniform() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }

double Sampler::normal() {
  double u = uniform();
  while (u == 0.0) u = uniform();
  return std::sqrt(-2.0 * std::log(u)) * std::cos(2.0 * M_PI * uniform());
}

Complex Sampler::complex_normal() {
  const double a = normal();
  return {a, normal()};
}

std::uint64_t Sampler::below(std::uint64_t n) { return static_cast<std::uint64_t>(uniform() * static_cast<double>(n)); }

cubic::CubicForm Sampler::cubic_form() {
  std::array<Complex, 10> c;
  for (auto& v : c) v = complex_normal();
  return cubic::CubicForm(c);
}

Complex Sampler::hesse_lambda() {
  for (;;) {
    const Complex l = std::polar(3.0 * std::sqrt(uniform()), 2.0 * M_PI * uniform());
    if (std::abs(l * l * l - 1.0) >= 0.2) return l;
  }
}

cubic::Mat3 Sampler::matrix() {
  cubic::Mat3 M;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) M(i, j) = complex_normal();
  return M;
}

cubic::ProjPoint Sampler::curve_point(const cubic::CubicForm& F) {
  const cubic::CubicForm Fn = F.normalized();
  for (int attempt = 0; attempt < 100; ++attempt) {
    const Complex x = complex_normal(), y = complex_normal();
    CPoly p(4, 0.0);
    for (std::size_t i = 0; i < 10; ++i) {
      const auto& e = cubic::CubicForm::monomials()[i];
      p[static_cast<std::size_t>(e[2])] += Fn.coefficients()[i] * std::pow(x, e[0]) * std::pow(y, e[1]);
    }
    if (std::abs(p[3]) < 1e-3) continue;
    auto roots = companion_roots(p);
    const Complex z = newton_polish(p, roots[below(roots.size())]);
    cubic::ProjPoint P(x, y, z);
    if (cubic::curve_residual(Fn, P) < 1e-12) return P;
  }
  throw NumericalError("Sampler::curve_point: no point found");
}

}  // namespace multisect::verify
