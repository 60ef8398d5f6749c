#include "wildpairs/poly.hpp"

#include <utility>

namespace wildpairs {

Poly::Poly(const Field& f, Vec coeffs) : field_(f), c_(std::move(coeffs)) { trim(); }

Poly Poly::monomial(const Field& f, Elem c, std::size_t degree) {
  Vec v(degree + 1, f.zero());
  v[degree] = c;
  return Poly(f, std::move(v));
}

void Poly::trim() {
  while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
}

Elem Poly::eval(Elem x) const {
  Elem r = field_.zero();
  for (auto it = c_.rbegin(); it != c_.rend(); ++it) r = field_.add(field_.mul(r, x), *it);
  return r;
}

Poly operator+(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  Vec v(std::max(a.coeffs().size(), b.coeffs().size()), f.zero());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f.add(a.coeff(k), b.coeff(k));
  return Poly(f, std::move(v));
}

Poly operator-(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  Vec v(std::max(a.coeffs().size(), b.coeffs().size()), f.zero());
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = f.sub(a.coeff(k), b.coeff(k));
  return Poly(f, std::move(v));
}

Poly operator*(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  if (a.is_zero() || b.is_zero()) return Poly(f);
  Vec v(a.coeffs().size() + b.coeffs().size() - 1, f.zero());
  for (std::size_t i = 0; i < a.coeffs().size(); ++i)
    for (std::size_t j = 0; j < b.coeffs().size(); ++j)
      v[i + j] = f.add(v[i + j], f.mul(a.coeffs()[i], b.coeffs()[j]));
  return Poly(f, std::move(v));
}

PolyDivision divmod(const Poly& a, const Poly& b) {
  const Field& f = a.field();
  if (b.is_zero()) throw DivisionByZero("polynomial division by zero");
  Vec rem = a.coeffs();
  long db = b.degree();
  if (a.degree() < db) return {Poly(f), a};
  Vec quot(std::size_t(a.degree() - db + 1), f.zero());
  Elem inv_lead = f.inv(b.lead());
  for (long k = a.degree(); k >= db; --k) {
    Elem q = f.mul(rem[std::size_t(k)], inv_lead);
    quot[std::size_t(k - db)] = q;
    if (f.is_zero(q)) continue;
    for (long j = 0; j <= db; ++j) {
      auto idx = std::size_t(k - db + j);
      rem[idx] = f.sub(rem[idx], f.mul(q, b.coeffs()[std::size_t(j)]));
    }
  }
  return {Poly(f, std::move(quot)), Poly(f, std::move(rem))};
}

Poly operator%(const Poly& a, const Poly& b) { return divmod(a, b).remainder; }

Poly monic(const Poly& a) {
  if (a.is_zero()) return a;
  const Field& f = a.field();
  Elem inv = f.inv(a.lead());
  Vec v = a.coeffs();
  for (auto& c : v) c = f.mul(c, inv);
  return Poly(f, std::move(v));
}

Poly gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return monic(a);
}

Poly derivative(const Poly& a) {
  const Field& f = a.field();
  if (a.degree() < 1) return Poly(f);
  Vec v(a.coeffs().size() - 1);
  for (std::size_t k = 1; k < a.coeffs().size(); ++k)
    v[k - 1] = f.mul(f.from_int(std::int64_t(k % f.p())), a.coeffs()[k]);
  return Poly(f, std::move(v));
}

Poly powmod(Poly base, std::uint64_t e, const Poly& modulus) {
  const Field& f = modulus.field();
  Poly r = Poly::constant(f, f.one()) % modulus;
  base = base % modulus;
  while (e) {
    if (e & 1) r = (r * base) % modulus;
    e >>= 1;
    if (e) base = (base * base) % modulus;
  }
  return r;
}

Mat eval(const Poly& g, const Mat& m) {
  if (!m.is_square()) throw DimensionMismatch("eval: non-square matrix");
  const Field& f = m.field();
  Mat r(f, m.rows(), m.cols());
  const Vec& c = g.coeffs();
  for (auto it = c.rbegin(); it != c.rend(); ++it) r = r * m + Mat::scalar(f, m.rows(), *it);
  return r;
}

Poly charpoly(const Mat& m) {
  if (!m.is_square()) throw DimensionMismatch("charpoly: non-square matrix");
  const Field& f = m.field();
  const std::size_t n = m.rows();
  Mat h = m;
  for (std::size_t k = 0; k + 2 < n; ++k) {
    std::size_t i = k + 1;
    while (i < n && f.is_zero(h(i, k))) ++i;
    if (i == n) continue;
    if (i != k + 1) {
      for (std::size_t j = 0; j < n; ++j) std::swap(h(i, j), h(k + 1, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(h(j, i), h(j, k + 1));
    }
    Elem t_inv = f.inv(h(k + 1, k));
    for (std::size_t j = k + 2; j < n; ++j) {
      Elem u = f.mul(h(j, k), t_inv);
      if (f.is_zero(u)) continue;
      for (std::size_t c = 0; c < n; ++c) h(j, c) = f.sub(h(j, c), f.mul(u, h(k + 1, c)));
      for (std::size_t r = 0; r < n; ++r) h(r, k + 1) = f.add(h(r, k + 1), f.mul(u, h(r, j)));
    }
  }
  // Leading principal minors of xI - H satisfy a three-term-style recurrence.
  std::vector<Poly> p;
  p.push_back(Poly::constant(f, f.one()));
  const Poly x = Poly::x(f);
  for (std::size_t mm = 1; mm <= n; ++mm) {
    Poly next = (x - Poly::constant(f, h(mm - 1, mm - 1))) * p[mm - 1];
    Elem t = f.one();
    for (std::size_t i = 1; i < mm; ++i) {
      t = f.mul(t, h(mm - i, mm - i - 1));
      Elem coef = f.mul(t, h(mm - i - 1, mm - 1));
      if (!f.is_zero(coef)) next = next - Poly::constant(f, coef) * p[mm - i - 1];
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

Poly squarefree_part(const Poly& f) {
  if (f.degree() < 1) return monic(f);
  Poly g = gcd(f, derivative(f));
  return monic(divmod(f, g).quotient);
}

namespace {

// x^(q^d) mod r for d = 1, 2, ... is produced by repeated q-th powering.
Poly frobenius(const Poly& h, const Poly& r) { return powmod(h, r.field().order(), r); }

}  // namespace

bool is_irreducible(const Poly& f) {
  if (f.degree() < 1) return false;
  if (f.degree() == 1) return true;
  Poly r = monic(f);
  if (squarefree_part(r).degree() != r.degree()) return false;
  const Poly x = Poly::x(r.field());
  Poly h = x % r;
  for (long d = 1; 2 * d <= r.degree(); ++d) {
    h = frobenius(h, r);
    if (gcd(r, h - x).degree() > 0) return false;
  }
  return true;
}

std::optional<Poly> proper_factor(const Poly& f, Rng& rng) {
  const Field& fld = f.field();
  Poly r = squarefree_part(f);
  if (r.degree() < 2) return std::nullopt;
  const Poly x = Poly::x(fld);
  // Distinct-degree stage: the first d with a nontrivial gcd either splits
  // off a proper factor or shows every irreducible factor has degree d.
  Poly h = x % r;
  long d = 1;
  for (; d <= r.degree(); ++d) {
    h = frobenius(h, r);
    Poly g = gcd(r, h - x);
    if (g.degree() == 0) continue;
    if (g.degree() < r.degree()) return g;
    break;
  }
  if (d >= r.degree()) return std::nullopt;  // r is irreducible
  // Equal-degree stage (Cantor-Zassenhaus): a^((q^d - 1)/2) - 1 splits the
  // roots into quadratic residues and the rest with probability ~1/2.
  const std::uint64_t q = fld.order();
  for (int attempt = 0; attempt < 128; ++attempt) {
    Vec coeffs(std::size_t(r.degree()));
    for (auto& c : coeffs) c = rng.scalar(fld);
    Poly a(fld, std::move(coeffs));
    if (a.degree() < 1) continue;
    Poly g0 = gcd(r, a);
    if (g0.degree() > 0) return g0;  // a shares a factor with r
    Poly norm = a % r, conj = a % r;
    for (long k = 1; k < d; ++k) {
      conj = powmod(conj, q, r);
      norm = (norm * conj) % r;
    }
    Poly b = powmod(norm, (q - 1) / 2, r);
    Poly g = gcd(r, b - Poly::constant(fld, fld.one()));
    if (g.degree() > 0 && g.degree() < r.degree()) return g;
  }
  throw SearchExhausted("proper_factor: equal-degree splitting did not converge");
}

}  // namespace wildpairs
