#pragma once

#include <cstdint>
#include <random>

#include "multisect/cubic.hpp"

// Seeded sampling for property checks. Only std::mt19937_64 output is used, so the
// samples are identical across standard library implementations.
namespace multisect::verify {

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform();  // [0, 1)
  double normal();
  Complex complex_normal();
  std::uint64_t below(std::uint64_t n);

  cubic::CubicForm cubic_form();
  // Smooth pencil parameter with |lambda| <= 3 and |lambda^3 - 1| >= 0.2.
  Complex hesse_lambda();
  cubic::Mat3 matrix();
  // A point on F from a random vertical line, normalized.
  cubic::ProjPoint curve_point(const cubic::CubicForm& F);

 private:
  std::mt19937_64 rng_;
};

}  // namespace multisect::verify
