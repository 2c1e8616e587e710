#include "sprlat/sampling.hpp"

#include <cmath>
#include <numbers>

namespace sprlat {

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32), 0x5eedu};
  return Rng(seq);
}

RealVec random_real(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  RealVec x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
  return x;
}

CplxVec random_cplx(Eigen::Index n, Rng& rng) {
  std::normal_distribution<double> normal;
  CplxVec z(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const double re = normal(rng);
    const double im = normal(rng);
    z[i] = Complex{re, im};
  }
  return z;
}

Complex random_unimodular(Rng& rng) {
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  return std::polar(1.0, angle(rng));
}

Eigen::Vector2cd bloch_point(double polar, double azimuth) {
  return Eigen::Vector2cd(Complex{std::cos(0.5 * polar), 0.0}, std::polar(std::sin(0.5 * polar), azimuth));
}

std::vector<Eigen::Vector2cd> coefficient_sphere(int count, Field field) {
  std::vector<Eigen::Vector2cd> out;
  out.reserve(count);
  if (field == Field::real) {
    for (int j = 0; j < count; ++j) {
      const double t = std::numbers::pi * j / count;
      out.emplace_back(Complex{std::cos(t), 0.0}, Complex{std::sin(t), 0.0});
    }
    return out;
  }
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int j = 0; j < count; ++j) {
    const double z = 1.0 - (2.0 * j + 1.0) / count;
    out.push_back(bloch_point(std::acos(z), golden_angle * j));
  }
  return out;
}

}  // namespace sprlat
