#pragma once

#include <optional>

#include "wildpairs/matrix.hpp"
#include "wildpairs/rng.hpp"

namespace wildpairs {

/// Univariate polynomial over a Field, coefficients low degree first, no
/// trailing zeros (the zero polynomial has no coefficients).
class Poly {
 public:
  explicit Poly(const Field& f) : field_(f) {}
  Poly(const Field& f, Vec coeffs);
  static Poly monomial(const Field& f, Elem c, std::size_t degree);
  static Poly x(const Field& f) { return monomial(f, f.one(), 1); }
  static Poly constant(const Field& f, Elem c) { return monomial(f, c, 0); }

  const Field& field() const { return field_; }
  const Vec& coeffs() const { return c_; }
  /// -1 for the zero polynomial.
  long degree() const { return long(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Elem coeff(std::size_t k) const { return k < c_.size() ? c_[k] : field_.zero(); }
  Elem lead() const { return c_.back(); }
  Elem eval(Elem x) const;

  friend bool operator==(const Poly& a, const Poly& b) {
    return a.field_ == b.field_ && a.c_ == b.c_;
  }

 private:
  void trim();
  Field field_;
  Vec c_;
};

Poly operator+(const Poly& a, const Poly& b);
Poly operator-(const Poly& a, const Poly& b);
Poly operator*(const Poly& a, const Poly& b);
struct PolyDivision {
  Poly quotient;
  Poly remainder;
};
PolyDivision divmod(const Poly& a, const Poly& b);
Poly operator%(const Poly& a, const Poly& b);
Poly monic(const Poly& a);
/// Monic gcd; gcd(0, 0) = 0.
Poly gcd(Poly a, Poly b);
Poly derivative(const Poly& a);
Poly powmod(Poly base, std::uint64_t e, const Poly& modulus);

/// g(M) by Horner's rule.
Mat eval(const Poly& g, const Mat& m);

/// det(xI - M), via reduction to Hessenberg form.
Poly charpoly(const Mat& m);

/// Product of the distinct monic irreducible factors (valid when
/// deg f < p, which holds for every characteristic polynomial we take).
Poly squarefree_part(const Poly& f);

bool is_irreducible(const Poly& f);

/// A monic g dividing squarefree_part(f) with 0 < deg g < deg
/// squarefree_part(f), i.e. a factor sharing some but not all roots of f.
/// nullopt when f has a single distinct irreducible factor.
std::optional<Poly> proper_factor(const Poly& f, Rng& rng);

}  // namespace wildpairs
