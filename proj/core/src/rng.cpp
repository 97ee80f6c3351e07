#include "acsel/rng.hpp"

#include <cmath>
#include <stdexcept>

namespace acsel {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ull);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag) {
  std::uint64_t s = parent;
  (void)splitmix64(s);
  s ^= tag + 0x9E3779B97F4A7C15ull;
  return splitmix64(s);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag1,
                          std::uint64_t tag2) {
  return derive_seed(derive_seed(parent, tag1), tag2);
}

std::uint64_t derive_seed(std::uint64_t parent, std::uint64_t tag1,
                          std::uint64_t tag2, std::uint64_t tag3) {
  return derive_seed(derive_seed(parent, tag1, tag2), tag3);
}

double RngStream::uniform() {
  return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
}

void RngStream::normal_pair(double& a, double& b) {
  for (;;) {
    const double u = 2.0 * uniform() - 1.0;
    const double v = 2.0 * uniform() - 1.0;
    const double s = u * u + v * v;
    if (s > 0.0 && s < 1.0) {
      const double f = std::sqrt(-2.0 * std::log(s) / s);
      a = u * f;
      b = v * f;
      return;
    }
  }
}

double RngStream::normal() {
  double a, b;
  normal_pair(a, b);
  return a;
}

void RngStream::fill_normals(Eigen::Ref<Eigen::VectorXd> out) {
  const Eigen::Index n = out.size();
  Eigen::Index i = 0;
  while (i + 1 < n) {
    normal_pair(out[i], out[i + 1]);
    i += 2;
  }
  if (i < n) out[i] = normal();
}

double RngStream::gamma(double shape) {
  if (!(shape > 0.0)) throw std::invalid_argument("gamma shape must be > 0");
  if (shape < 1.0) {
    // boost to shape+1 and scale back
    const double u = uniform();
    return gamma(shape + 1.0) * std::pow(u > 0.0 ? u : 0x1.0p-53, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (u > 0.0 &&
        std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v)))
      return d * v;
  }
}

double RngStream::beta(double a, double b) {
  const double ga = gamma(a);
  const double gb = gamma(b);
  const double s = ga + gb;
  if (s <= 0.0) return 0.5;
  return ga / s;
}

int RngStream::uniform_int(int n) {
  if (n <= 0) throw std::invalid_argument("uniform_int needs n >= 1");
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t x;
  do {
    x = eng_();
  } while (x >= limit);
  return static_cast<int>(x % un);
}

Eigen::VectorXd RngStream::unit_sphere(int dim) {
  if (dim < 1) throw std::invalid_argument("unit_sphere needs dim >= 1");
  Eigen::VectorXd v(dim);
  double n2;
  do {
    fill_normals(v);
    n2 = v.squaredNorm();
  } while (n2 < 1e-300);
  return v / std::sqrt(n2);
}

}  // namespace acsel
