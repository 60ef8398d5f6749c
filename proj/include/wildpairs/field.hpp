#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "wildpairs/errors.hpp"

namespace wildpairs {

/// Raw coordinates of a field element: c0 + c1*t with t^2 = d.
/// Meaningless without the Field it belongs to; Mat stores these.
struct Elem {
  std::uint32_t c0 = 0;
  std::uint32_t c1 = 0;
  friend bool operator==(const Elem&, const Elem&) = default;
  friend auto operator<=>(const Elem&, const Elem&) = default;
};

/// F_p (deg 1, identity involution) or F_{p^2} = F_p[t]/(t^2 - d) with the
/// involution t -> -t. p is an odd prime below 2^31.
class Field {
 public:
  /// Throws InvalidArgument for p not an odd prime or deg outside {1, 2}.
  /// For deg 2 the nonresidue is the smallest positive one.
  static Field make(std::uint32_t p, int deg = 1);

  std::uint32_t p() const { return p_; }
  int degree() const { return deg_; }
  std::optional<std::uint32_t> nonresidue() const {
    return deg_ == 2 ? std::optional<std::uint32_t>(d_) : std::nullopt;
  }
  /// Number of elements, p^deg.
  std::uint64_t order() const {
    return deg_ == 1 ? p_ : std::uint64_t(p_) * p_;
  }
  bool has_nontrivial_involution() const { return deg_ == 2; }

  Elem zero() const { return {}; }
  Elem one() const { return {1, 0}; }
  Elem from_int(std::int64_t v) const;
  Elem make_elem(std::int64_t c0, std::int64_t c1 = 0) const;
  /// The generator t of the quadratic extension; InvalidArgument on deg 1.
  Elem gen() const;

  bool is_zero(Elem a) const { return a.c0 == 0 && a.c1 == 0; }
  bool is_one(Elem a) const { return a.c0 == 1 && a.c1 == 0; }

  Elem add(Elem a, Elem b) const {
    return {addp(a.c0, b.c0), addp(a.c1, b.c1)};
  }
  Elem sub(Elem a, Elem b) const {
    return {subp(a.c0, b.c0), subp(a.c1, b.c1)};
  }
  Elem neg(Elem a) const { return {subp(0, a.c0), subp(0, a.c1)}; }
  Elem mul(Elem a, Elem b) const {
    if (deg_ == 1) return {mulp(a.c0, b.c0), 0};
    std::uint64_t re = std::uint64_t(a.c0) * b.c0 +
                       std::uint64_t(mulp(a.c1, b.c1)) * d_;
    std::uint64_t im = std::uint64_t(a.c0) * b.c1 + std::uint64_t(a.c1) * b.c0;
    return {std::uint32_t(re % p_), std::uint32_t(im % p_)};
  }
  /// Multiplicative inverse; DivisionByZero for 0.
  Elem inv(Elem a) const;
  Elem div(Elem a, Elem b) const { return mul(a, inv(b)); }
  Elem pow(Elem a, std::uint64_t e) const;
  /// The involution: identity on deg 1, c0 + c1 t -> c0 - c1 t on deg 2.
  Elem conj(Elem a) const { return {a.c0, subp(0, a.c1)}; }

  /// Bijection [0, order) -> elements: index = c0 + p*c1.
  Elem element(std::uint64_t index) const {
    return {std::uint32_t(index % p_), std::uint32_t(index / p_)};
  }
  std::uint64_t index(Elem a) const { return a.c0 + std::uint64_t(p_) * a.c1; }

  /// "c0" on deg 1, "c0+c1*t" on deg 2.
  std::string format(Elem a) const;
  /// Accepts the format() output; on deg 2 also a bare "c0".
  Elem parse(std::string_view s) const;

  friend bool operator==(const Field&, const Field&) = default;

 private:
  Field(std::uint32_t p, int deg, std::uint32_t d) : p_(p), d_(d), deg_(deg) {}

  std::uint32_t addp(std::uint32_t a, std::uint32_t b) const {
    std::uint32_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  std::uint32_t subp(std::uint32_t a, std::uint32_t b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  std::uint32_t mulp(std::uint32_t a, std::uint32_t b) const {
    return std::uint32_t(std::uint64_t(a) * b % p_);
  }

  std::uint32_t p_ = 3;
  std::uint32_t d_ = 0;
  int deg_ = 1;
};

bool is_prime(std::uint64_t n);

/// A field element bound to its field. Arithmetic between scalars of
/// different fields throws FieldMismatch.
class Scalar {
 public:
  Scalar(const Field& f, Elem e) : field_(f), e_(e) {}
  Scalar(const Field& f, std::int64_t v) : field_(f), e_(f.from_int(v)) {}

  const Field& field() const { return field_; }
  Elem elem() const { return e_; }
  std::uint32_t c0() const { return e_.c0; }
  std::uint32_t c1() const { return e_.c1; }
  bool is_zero() const { return field_.is_zero(e_); }

  Scalar involute() const { return {field_, field_.conj(e_)}; }
  Scalar inverse() const { return {field_, field_.inv(e_)}; }

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar operator-() const { return {field_, field_.neg(e_)}; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.field_ == b.field_ && a.e_ == b.e_;
  }

  std::string str() const { return field_.format(e_); }

 private:
  Field field_;
  Elem e_;
};

inline Scalar involute(const Scalar& a) { return a.involute(); }

}  // namespace wildpairs
