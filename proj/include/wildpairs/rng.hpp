#pragma once

#include <cstdint>
#include <random>

#include "wildpairs/matrix.hpp"

namespace wildpairs {

/// The one random source of the library. std::mt19937_64 is fully specified
/// by the standard; bounded draws use our own rejection sampling because the
/// standard distributions are implementation-defined. Changing anything here
/// changes every seeded report, so bump kRngVersion with it.
class Rng {
 public:
  static constexpr const char* kRngVersion = "mt19937_64/rejection-v1";

  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  /// Uniform in [0, n); n > 0.
  std::uint64_t below(std::uint64_t n);
  /// Independent child stream, e.g. one per trial.
  Rng fork() { return Rng(splitmix(next())); }

  Elem scalar(const Field& f) { return f.element(below(f.order())); }
  Elem nonzero(const Field& f) { return f.element(1 + below(f.order() - 1)); }
  Mat matrix(const Field& f, std::size_t rows, std::size_t cols);
  /// Rejection-samples until det != 0.
  Mat invertible(const Field& f, std::size_t n);

  static std::uint64_t splitmix(std::uint64_t x);

 private:
  std::mt19937_64 engine_;
};

/// Seed of trial `index` within a run seeded by `seed`.
inline std::uint64_t trial_seed(std::uint64_t seed, std::uint64_t index) {
  return Rng::splitmix(seed ^ Rng::splitmix(index + 0x9e3779b97f4a7c15ULL));
}

}  // namespace wildpairs
