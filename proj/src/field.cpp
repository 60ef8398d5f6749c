#include "wildpairs/field.hpp"

#include <charconv>
#include <string>

namespace wildpairs {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q = 2; q * q <= n; ++q)
    if (n % q == 0) return false;
  return true;
}

namespace {

std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

std::uint32_t reduce(std::int64_t v, std::uint32_t p) {
  std::int64_t r = v % std::int64_t(p);
  return std::uint32_t(r < 0 ? r + p : r);
}

}  // namespace

Field Field::make(std::uint32_t p, int deg) {
  if (p == 2) throw InvalidArgument("characteristic 2 is not supported");
  if (!is_prime(p)) throw InvalidArgument("modulus " + std::to_string(p) + " is not prime");
  if (p >= (1u << 31)) throw InvalidArgument("modulus must be below 2^31");
  if (deg != 1 && deg != 2)
    throw InvalidArgument("extension degree must be 1 or 2, got " + std::to_string(deg));
  std::uint32_t d = 0;
  if (deg == 2) {
    // Euler's criterion: d^((p-1)/2) == -1.
    for (d = 2; d < p; ++d)
      if (powmod(d, (p - 1) / 2, p) == p - 1) break;
  }
  return Field(p, deg, d);
}

Elem Field::from_int(std::int64_t v) const { return {reduce(v, p_), 0}; }

Elem Field::make_elem(std::int64_t c0, std::int64_t c1) const {
  if (deg_ == 1 && reduce(c1, p_) != 0)
    throw InvalidArgument("nonzero t-coefficient in a prime field");
  return {reduce(c0, p_), reduce(c1, p_)};
}

Elem Field::gen() const {
  if (deg_ != 2) throw InvalidArgument("prime field has no generator t");
  return {0, 1};
}

Elem Field::inv(Elem a) const {
  if (is_zero(a)) throw DivisionByZero("inverse of zero");
  if (deg_ == 1) return {std::uint32_t(powmod(a.c0, p_ - 2, p_)), 0};
  // (c0 + c1 t)^-1 = (c0 - c1 t) / (c0^2 - d c1^2); the norm lies in F_p.
  std::uint64_t n = (std::uint64_t(a.c0) * a.c0 % p_ +
                     p_ - std::uint64_t(mulp(a.c1, a.c1)) * d_ % p_) % p_;
  std::uint64_t ni = powmod(n, p_ - 2, p_);
  return {std::uint32_t(a.c0 * ni % p_), std::uint32_t((p_ - a.c1) % p_ * ni % p_)};
}

Elem Field::pow(Elem a, std::uint64_t e) const {
  Elem r = one();
  while (e) {
    if (e & 1) r = mul(r, a);
    a = mul(a, a);
    e >>= 1;
  }
  return r;
}

std::string Field::format(Elem a) const {
  if (deg_ == 1) return std::to_string(a.c0);
  return std::to_string(a.c0) + "+" + std::to_string(a.c1) + "*t";
}

Elem Field::parse(std::string_view s) const {
  auto parse_int = [&](std::string_view part) -> std::int64_t {
    std::int64_t v = 0;
    const char* first = part.data();
    const char* last = part.data() + part.size();
    if (first != last && *first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc() || ptr != last || first == last)
      throw ParseError("bad scalar literal '" + std::string(s) + "'");
    return v;
  };
  auto plus = s.find('+', 1);
  if (plus == std::string_view::npos) return make_elem(parse_int(s), 0);
  if (deg_ == 1) throw ParseError("t-coefficient given for prime field: '" + std::string(s) + "'");
  std::string_view tail = s.substr(plus + 1);
  if (tail.size() < 2 || tail.substr(tail.size() - 2) != "*t")
    throw ParseError("bad scalar literal '" + std::string(s) + "'");
  return make_elem(parse_int(s.substr(0, plus)), parse_int(tail.substr(0, tail.size() - 2)));
}

namespace {
void check_same(const Scalar& a, const Scalar& b) {
  if (!(a.field() == b.field())) throw FieldMismatch("scalars from different fields");
}
}  // namespace

Scalar operator+(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  return {a.field_, a.field_.add(a.e_, b.e_)};
}
Scalar operator-(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  return {a.field_, a.field_.sub(a.e_, b.e_)};
}
Scalar operator*(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  return {a.field_, a.field_.mul(a.e_, b.e_)};
}
Scalar operator/(const Scalar& a, const Scalar& b) {
  check_same(a, b);
  return {a.field_, a.field_.div(a.e_, b.e_)};
}

}  // namespace wildpairs
