#include "wildpairs/rng.hpp"

namespace wildpairs {

std::uint64_t Rng::splitmix(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw InvalidArgument("Rng::below(0)");
  // Largest multiple of n that fits; draws at or above it are rejected.
  std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t x;
  do x = engine_();
  while (x >= limit);
  return x % n;
}

Mat Rng::matrix(const Field& f, std::size_t rows, std::size_t cols) {
  Mat m(f, rows, cols);
  for (auto& e : m.data()) e = scalar(f);
  return m;
}

Mat Rng::invertible(const Field& f, std::size_t n) {
  for (;;) {
    Mat m = matrix(f, n, n);
    if (is_invertible(m)) return m;
  }
}

}  // namespace wildpairs
