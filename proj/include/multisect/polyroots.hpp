#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace multisect {

using Complex = std::complex<double>;
using LComplex = std::complex<long double>;

// Dense univariate polynomial, ascending coefficients.
using CPoly = std::vector<Complex>;

Complex poly_eval(const CPoly& p, Complex x);
CPoly poly_derivative(const CPoly& p);
CPoly poly_mul(const CPoly& a, const CPoly& b);
CPoly poly_add(const CPoly& a, const CPoly& b);
CPoly poly_scale(const CPoly& a, Complex s);
// Drops leading coefficients with modulus <= rel * max |coefficient|.
CPoly poly_trim(const CPoly& p, double rel = 0.0);
int poly_degree(const CPoly& p);

// Eigenvalues of the companion matrix. The leading coefficient must be nonzero.
std::vector<Complex> companion_roots(const CPoly& p);

// Newton iteration on p; stops when the step is below tol * max(1, |x|).
Complex newton_polish(const CPoly& p, Complex x, int max_iter = 50, double tol = 1e-15);

// Returns p(x) / p'(x) for a polynomial known only through an evaluator.
using NewtonRatio = std::function<LComplex(LComplex)>;

struct AberthResult {
  std::vector<Complex> roots;
  bool converged = false;
  int iterations = 0;
  double max_correction = 0.0;
};

// Aberth-Ehrlich simultaneous iteration starting from the given guesses.
AberthResult aberth(const NewtonRatio& ratio, std::vector<Complex> guesses, int max_iter = 500,
                    double tol = 1e-14);

}  // namespace multisect
