#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

namespace acsel {

/// One splitmix64 step (advances the state and returns the next value).
std::uint64_t splitmix64(std::uint64_t& state);

/// Derives a child seed from a parent seed and a tag. Every resample index,
/// replicate and grid point gets its own stream this way, so parallel and
/// sequential execution produce identical results.
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag1,
                          std::uint64_t tag2);
std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag1,
                          std::uint64_t tag2, std::uint64_t tag3);

/// Seeded random stream. Samplers are implemented here rather than through
/// std:: distributions so that a given seed yields the same draws under any
/// standard library.
class RngStream {
public:
  explicit RngStream(std::uint64_t seed) : eng_(seed) {}

  /// Uniform double in [0, 1).
  double uniform();

  /// Standard normal (Marsaglia polar method).
  double normal();

  /// Fills `out` with iid standard normals.
  void fill_normals(Eigen::Ref<Eigen::VectorXd> out);

  /// Gamma(shape, 1), shape > 0 (Marsaglia-Tsang).
  double gamma(double shape);

  /// Beta(a, b) via two gamma draws.
  double beta(double a, double b);

  /// Uniform integer in {0, ..., n-1}, n >= 1, without modulo bias.
  int uniform_int(int n);

  /// Uniform draw on the unit sphere of R^dim, dim >= 1.
  Eigen::VectorXd unit_sphere(int dim);

  /// Next raw 64-bit engine output.
  std::uint64_t raw() { return eng_(); }

private:
  std::mt19937_64 eng_;
  void normal_pair(double& a, double& b);
};

}  // namespace acsel
