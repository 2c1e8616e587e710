#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "sprlat/lattice.hpp"

namespace sprlat {

using Rng = std::mt19937_64;

/// Independent stream `stream` of generator `seed`; used so that restart r
/// of a search draws the same numbers no matter what ran before it.
Rng make_rng(std::uint64_t seed, std::uint64_t stream = 0);

RealVec random_real(Eigen::Index n, Rng& rng);
CplxVec random_cplx(Eigen::Index n, Rng& rng);
Complex random_unimodular(Rng& rng);

/// Deterministic, nearly uniform points of the unit sphere of the
/// two-dimensional coefficient space, one per class modulo unimodular
/// scalars: a Fibonacci lattice on the Bloch sphere for the complex field,
/// equally spaced angles in [0, pi) for the real field.
std::vector<Eigen::Vector2cd> coefficient_sphere(int count, Field field);

/// The coefficient pair at Bloch angles (polar, azimuth).
Eigen::Vector2cd bloch_point(double polar, double azimuth);

}  // namespace sprlat
