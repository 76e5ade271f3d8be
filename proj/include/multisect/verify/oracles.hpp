#pragma once

#include <cstdint>
#include <vector>

#include "multisect/exactlinalg.hpp"

// Independent reference computations used to cross-check the main algorithms.
namespace multisect::verify {

using exactlinalg::AbelianGroupStructure;
using exactlinalg::BigInt;
using exactlinalg::IntMatrix;

// Rational Gaussian elimination; does not share code with the library determinant.
BigInt rational_determinant(const IntMatrix& M);

// Cokernel structure from determinantal divisors: d_k = gcd of all k x k minors,
// invariant factors d_k / d_{k-1}. Exponential in size; meant for matrices up to 8 x 8.
AbelianGroupStructure cokernel_by_minors(const IntMatrix& M);

// Number of solutions x in (Z/N)^cols of M x = 0 mod N, by enumeration.
std::uint64_t count_kernel_mod(const IntMatrix& M, std::uint64_t N);
// Size of the image of (Z/N)^cols under M mod N, by enumeration.
std::uint64_t count_image_mod(const IntMatrix& M, std::uint64_t N);

// The same two counts read off the Smith normal form.
std::uint64_t predicted_kernel_mod(const IntMatrix& M, std::uint64_t N);
std::uint64_t predicted_image_mod(const IntMatrix& M, std::uint64_t N);

// |G[k]| = #{x in G : k x = 0} for k = 1..kmax, where G = Z^n / span(L) is finite.
// Enumerates (Z/D)^n with D = |det L|; L must be square and nonsingular.
std::vector<std::uint64_t> torsion_profile_by_enumeration(const IntMatrix& L, std::uint64_t kmax);
// The same profile computed from invariant factors.
std::vector<std::uint64_t> torsion_profile(const AbelianGroupStructure& G, std::uint64_t kmax);

}  // namespace multisect::verify
