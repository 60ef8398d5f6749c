#include "wildpairs/algebras.hpp"

#include <algorithm>

#include "wildpairs/errors.hpp"

namespace wildpairs {

AlgebraStructure::AlgebraStructure(const Field& f, std::size_t dim, std::optional<std::size_t> unital)
    : field_(f), dim_(dim), g_(dim * dim * dim, f.zero()), unital_(unital) {
  if (unital_ && *unital_ >= dim_) throw InvalidArgument("AlgebraStructure: identity index out of range");
}

AlgebraStructure::AlgebraStructure(const Field& f, std::size_t dim, Vec constants,
                                   std::optional<std::size_t> unital)
    : field_(f), dim_(dim), g_(std::move(constants)), unital_(unital) {
  if (g_.size() != dim * dim * dim) throw DimensionMismatch("AlgebraStructure: gamma must hold dim^3 constants");
  if (unital_) {
    if (*unital_ >= dim_) throw InvalidArgument("AlgebraStructure: identity index out of range");
    const std::size_t u = *unital_;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t k = 0; k < dim_; ++k) {
        Elem want = i == k ? f.one() : f.zero();
        if (gamma(u, i, k) != want || gamma(i, u, k) != want)
          throw HypothesisViolated("AlgebraStructure: flagged element is not an identity");
      }
  }
}

Vec AlgebraStructure::multiply(std::span<const Elem> u, std::span<const Elem> v) const {
  if (u.size() != dim_ || v.size() != dim_) throw DimensionMismatch("multiply: vector length");
  const Field& f = field_;
  Vec out(dim_, f.zero());
  for (std::size_t i = 0; i < dim_; ++i) {
    if (f.is_zero(u[i])) continue;
    for (std::size_t j = 0; j < dim_; ++j) {
      if (f.is_zero(v[j])) continue;
      Elem c = f.mul(u[i], v[j]);
      const Elem* row = &g_[(i * dim_ + j) * dim_];
      for (std::size_t k = 0; k < dim_; ++k)
        if (!f.is_zero(row[k])) out[k] = f.add(out[k], f.mul(c, row[k]));
    }
  }
  return out;
}

Vec AlgebraStructure::basis_product(std::size_t i, std::size_t j) const {
  auto first = g_.begin() + std::ptrdiff_t((i * dim_ + j) * dim_);
  return Vec(first, first + std::ptrdiff_t(dim_));
}

Mat AlgebraStructure::left_mult(std::span<const Elem> u) const {
  Mat out(field_, dim_, dim_);
  for (std::size_t j = 0; j < dim_; ++j) {
    Vec col = multiply(u, basis_vector(j));
    for (std::size_t k = 0; k < dim_; ++k) out(k, j) = col[k];
  }
  return out;
}

Vec AlgebraStructure::basis_vector(std::size_t i) const {
  Vec v(dim_, field_.zero());
  v[i] = field_.one();
  return v;
}

bool check_associativity(const AlgebraStructure& alg) {
  const std::size_t d = alg.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Vec ij = alg.basis_product(i, j);
      for (std::size_t k = 0; k < d; ++k) {
        Vec jk = alg.basis_product(j, k);
        if (alg.multiply(ij, alg.basis_vector(k)) != alg.multiply(alg.basis_vector(i), jk))
          return false;
      }
    }
  return true;
}

namespace {

std::vector<Vec> products(const AlgebraStructure& alg, const std::vector<Vec>& left,
                          const std::vector<Vec>& right) {
  std::vector<Vec> out;
  for (const auto& u : left)
    for (const auto& v : right) out.push_back(alg.multiply(u, v));
  return echelon_span(alg.field(), alg.dim(), out);
}

std::vector<Vec> standard_basis(const AlgebraStructure& alg) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < alg.dim(); ++i) out.push_back(alg.basis_vector(i));
  return out;
}

}  // namespace

PowerSubspaces power_subspaces(const AlgebraStructure& alg) {
  auto basis = standard_basis(alg);
  PowerSubspaces out;
  out.r2 = products(alg, basis, basis);
  out.r3 = products(alg, out.r2, basis);
  return out;
}

AlgebraStructure decode_pair(const Mat& a, const Mat& b, std::vector<std::string>* warnings) {
  if (!a.is_square() || !b.is_square() || a.rows() != b.rows())
    throw DimensionMismatch("decode_pair: A and B must be square of one size");
  require_same_field(a, b, "decode_pair");
  const Field& f = a.field();
  const std::size_t n = a.rows();
  if (n == 1 && warnings) warnings->push_back("decode_pair: n = 1 is below the n >= 2 of the encoding lemma");
  Mat stacked(f, 2, n * n);
  for (std::size_t k = 0; k < n * n; ++k) {
    stacked(0, k) = a.data()[k];
    stacked(1, k) = b.data()[k];
  }
  if (rank(stacked) != 2) throw HypothesisViolated("decode_pair: A and B are linearly dependent");

  AlgebraStructure alg(f, n + 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      alg.gamma(2 + i, 2 + j, 0) = a(i, j);
      alg.gamma(2 + i, 2 + j, 1) = b(i, j);
    }
  return alg;
}

AlgebraStructure change_basis(const AlgebraStructure& alg, const Mat& phi) {
  const std::size_t d = alg.dim();
  if (phi.rows() != d || phi.cols() != d) throw DimensionMismatch("change_basis: phi must be dim x dim");
  const Field& f = alg.field();
  Mat phi_inv = inverse(phi);
  // gamma'(i,j,:) = phi^-1 * sum_{k,l} phi(k,i) phi(l,j) gamma(k,l,:), done
  // as three single-index contractions.
  auto at = [d](std::size_t i, std::size_t j, std::size_t k) { return (i * d + j) * d + k; };
  const Vec& g = alg.gamma_data();
  Vec t1(d * d * d, f.zero()), t2(d * d * d, f.zero()), out(d * d * d, f.zero());
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t i = 0; i < d; ++i) {
      Elem c = phi(k, i);
      if (f.is_zero(c)) continue;
      for (std::size_t l = 0; l < d; ++l)
        for (std::size_t m = 0; m < d; ++m) {
          Elem x = g[at(k, l, m)];
          if (!f.is_zero(x)) t1[at(i, l, m)] = f.add(t1[at(i, l, m)], f.mul(c, x));
        }
    }
  for (std::size_t l = 0; l < d; ++l)
    for (std::size_t j = 0; j < d; ++j) {
      Elem c = phi(l, j);
      if (f.is_zero(c)) continue;
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t m = 0; m < d; ++m) {
          Elem x = t1[at(i, l, m)];
          if (!f.is_zero(x)) t2[at(i, j, m)] = f.add(t2[at(i, j, m)], f.mul(c, x));
        }
    }
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t m = 0; m < d; ++m) {
        Elem x = t2[at(i, j, m)];
        if (f.is_zero(x)) continue;
        for (std::size_t k = 0; k < d; ++k)
          out[at(i, j, k)] = f.add(out[at(i, j, k)], f.mul(phi_inv(k, m), x));
      }

  std::optional<std::size_t> unital;
  if (alg.unital()) {
    // The identity keeps its index only if phi maps it to a basis vector.
    Vec u = alg.basis_vector(*alg.unital());
    auto coords = solve(phi, u);
    for (std::size_t i = 0; coords && i < d; ++i)
      if ((*coords)[i] == f.one() &&
          std::count_if(coords->begin(), coords->end(), [&](Elem e) { return !f.is_zero(e); }) == 1)
        unital = i;
  }
  return AlgebraStructure(f, d, std::move(out), unital);
}

bool verify_algebra_iso(const AlgebraStructure& from, const AlgebraStructure& to, const Mat& phi) {
  if (!(from.field() == to.field()) || from.dim() != to.dim()) return false;
  if (phi.rows() != from.dim() || phi.cols() != from.dim() || !is_invertible(phi)) return false;
  return change_basis(from, phi).gamma_data() == to.gamma_data();
}

EncodedPair encode_pair(const AlgebraStructure& alg) {
  if (!check_associativity(alg)) throw HypothesisViolated("encode_pair: non-associative");
  PowerSubspaces ps = power_subspaces(alg);
  if (ps.r2.size() != 2)
    throw HypothesisViolated("encode_pair: dim R^2 = " + std::to_string(ps.r2.size()) + " != 2");
  if (!ps.r3.empty()) throw HypothesisViolated("encode_pair: R^3 != 0");

  const Field& f = alg.field();
  const std::size_t d = alg.dim();
  std::vector<Vec> cols = ps.r2;
  for (std::size_t i = 0; i < d && cols.size() < d; ++i) {
    auto trial = cols;
    trial.push_back(alg.basis_vector(i));
    if (echelon_span(f, d, trial).size() == trial.size()) cols = std::move(trial);
  }
  Mat basis = Mat::from_columns(f, d, cols);
  AlgebraStructure moved = change_basis(alg, basis);
  const std::size_t n = d - 2;
  Mat a(f, n, n), b(f, n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      a(i, j) = moved.gamma(2 + i, 2 + j, 0);
      b(i, j) = moved.gamma(2 + i, 2 + j, 1);
    }
  if (!(moved.gamma_data() == decode_pair(a, b).gamma_data()))
    throw VerificationFailed("encode_pair: products outside the f_i f_j -> span(e1, e2) pattern");
  return EncodedPair{std::move(a), std::move(b), std::move(basis)};
}

std::optional<std::size_t> nilpotency_index(const AlgebraStructure& alg) {
  auto basis = standard_basis(alg);
  std::vector<Vec> power = echelon_span(alg.field(), alg.dim(), basis);
  for (std::size_t k = 1; k <= alg.dim() + 1; ++k) {
    if (power.empty()) return k;
    auto next = products(alg, power, basis);
    if (next.size() == power.size()) return std::nullopt;
    power = std::move(next);
  }
  return std::nullopt;
}

AlgebraStructure adjoin_identity(const AlgebraStructure& alg) {
  if (!check_associativity(alg)) throw HypothesisViolated("adjoin_identity: non-associative");
  if (!nilpotency_index(alg)) throw HypothesisViolated("adjoin_identity: algebra is not nilpotent");
  const Field& f = alg.field();
  const std::size_t d = alg.dim();
  Vec g((d + 1) * (d + 1) * (d + 1), f.zero());
  auto at = [d](std::size_t i, std::size_t j, std::size_t k) { return (i * (d + 1) + j) * (d + 1) + k; };
  g[at(0, 0, 0)] = f.one();
  for (std::size_t i = 0; i < d; ++i) {
    g[at(0, i + 1, i + 1)] = f.one();
    g[at(i + 1, 0, i + 1)] = f.one();
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) g[at(i + 1, j + 1, k + 1)] = alg.gamma(i, j, k);
  }
  return AlgebraStructure(f, d + 1, std::move(g), 0);
}

std::optional<Vec> inverse_element(const AlgebraStructure& alg, std::span<const Elem> x) {
  if (!alg.unital()) throw InvalidArgument("inverse_element: algebra has no identity");
  Vec one = alg.basis_vector(*alg.unital());
  auto y = solve(alg.left_mult(x), one);
  if (!y) return std::nullopt;
  // In a finite-dimensional algebra a right inverse is two-sided; check anyway.
  if (alg.multiply(*y, x) != one) return std::nullopt;
  return y;
}

RadicalInfo radical_and_local(const AlgebraStructure& alg) {
  if (!alg.unital()) throw InvalidArgument("radical_and_local: algebra has no identity");
  const Field& f = alg.field();
  const std::size_t d = alg.dim();
  if (f.p() <= d)
    throw CharacteristicTooSmall("radical_and_local: need p > dim = " + std::to_string(d) +
                                 "; use a larger prime");
  // tr(L_{b_k}) and then G_ij = tr(L_{b_i b_j}) = sum_k gamma(i,j,k) tr(L_{b_k}).
  Vec tr(d, f.zero());
  for (std::size_t k = 0; k < d; ++k)
    for (std::size_t m = 0; m < d; ++m) tr[k] = f.add(tr[k], alg.gamma(k, m, m));
  Mat g(f, d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      Elem s = f.zero();
      for (std::size_t k = 0; k < d; ++k) s = f.add(s, f.mul(alg.gamma(i, j, k), tr[k]));
      g(i, j) = s;
    }
  RadicalInfo out;
  out.radical = solve_homogeneous(transpose(g));
  for (const auto& x : out.radical)
    if (!power(alg.left_mult(x), d).is_zero())
      throw VerificationFailed("radical_and_local: trace-form radical element is not nilpotent");
  out.is_local = out.radical.size() + 1 == d;
  return out;
}

RadicalPowers radical_powers(const AlgebraStructure& alg) {
  RadicalInfo info = radical_and_local(alg);
  RadicalPowers out;
  out.rad_dim = info.radical.size();
  out.is_local = info.is_local;
  auto rad2 = products(alg, info.radical, info.radical);
  out.rad2_dim = rad2.size();
  out.rad3_dim = products(alg, rad2, info.radical).size();
  return out;
}

WildInstance wild_instance(const Mat& a, const Mat& b, const Multiplicities& mult) {
  BigPair pair = build_P35(a, b, mult);
  AlgebraStructure alg = adjoin_identity(decode_pair(pair.m1(), pair.m2()));
  RadicalPowers checks = radical_powers(alg);
  if (!checks.is_local || checks.rad3_dim != 0 || checks.rad2_dim != 2)
    throw HypothesisViolated("wild_instance: radical checks failed (local " +
                             std::to_string(checks.is_local) + ", dim Rad^2 " +
                             std::to_string(checks.rad2_dim) + ", dim Rad^3 " +
                             std::to_string(checks.rad3_dim) + ")");
  return WildInstance{std::move(pair), std::move(alg), checks};
}

Mat algebra_iso_from_pair_witness(const PairClassWitness& w, const Mat& a, const Mat& b,
                                  const Mat& c, const Mat& d) {
  if (!verify_witness(w, MatTuple::pair(a, b), MatTuple::pair(c, d)))
    throw VerificationFailed("algebra_iso_from_pair_witness: witness does not relate the pairs");
  // f'_j = sum_k S(k,j) f_k and [e'_1 e'_2] = [e_1 e_2] r^-1.
  Mat phi = direct_sum(inverse(w.r().matrix()), w.S());
  if (!verify_algebra_iso(decode_pair(a, b), decode_pair(c, d), phi))
    throw VerificationFailed("algebra_iso_from_pair_witness: induced basis change failed replay");
  return phi;
}

Mat extend_iso_unital(const Mat& phi) { return direct_sum(Mat::identity(phi.field(), 1), phi); }

Mat wild_instance_iso(const SimilarityWitness& s, const Mat& a, const Mat& b,
                      const Multiplicities& mult) {
  const Field& f = a.field();
  MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
  BigPair from = build_P35(a, b, mult), to = build_P35(cd[0], cd[1], mult);
  PairClassWitness w(transport_P35(s, a, b, mult), SubstitutionMatrix::identity(f));
  Mat phi = extend_iso_unital(algebra_iso_from_pair_witness(w, from.m1(), from.m2(), to.m1(), to.m2()));
  if (!verify_algebra_iso(adjoin_identity(decode_pair(from.m1(), from.m2())),
                          adjoin_identity(decode_pair(to.m1(), to.m2())), phi))
    throw VerificationFailed("wild_instance_iso: unital extension failed replay");
  return phi;
}

}  // namespace wildpairs
