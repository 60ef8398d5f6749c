#pragma once

#include <optional>
#include <string>
#include <vector>

#include "wildpairs/gadgets.hpp"
#include "wildpairs/matrix.hpp"
#include "wildpairs/tuples.hpp"

namespace wildpairs {

/// Finite-dimensional algebra given by structure constants on a basis
/// b_0..b_{d-1}: b_i b_j = sum_k gamma(i,j,k) b_k. `unital` holds the index
/// of the identity element when there is one.
class AlgebraStructure {
 public:
  AlgebraStructure(const Field& f, std::size_t dim, std::optional<std::size_t> unital = {});
  AlgebraStructure(const Field& f, std::size_t dim, Vec constants, std::optional<std::size_t> unital);

  const Field& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const std::optional<std::size_t>& unital() const { return unital_; }

  Elem& gamma(std::size_t i, std::size_t j, std::size_t k) { return g_[(i * dim_ + j) * dim_ + k]; }
  Elem gamma(std::size_t i, std::size_t j, std::size_t k) const {
    return g_[(i * dim_ + j) * dim_ + k];
  }
  const Vec& gamma_data() const { return g_; }

  /// Product of two coordinate vectors.
  Vec multiply(std::span<const Elem> u, std::span<const Elem> v) const;
  /// b_i b_j as a coordinate vector.
  Vec basis_product(std::size_t i, std::size_t j) const;
  /// Matrix of v -> u v.
  Mat left_mult(std::span<const Elem> u) const;
  Vec basis_vector(std::size_t i) const;

  friend bool operator==(const AlgebraStructure&, const AlgebraStructure&) = default;

 private:
  Field field_;
  std::size_t dim_;
  Vec g_;
  std::optional<std::size_t> unital_;
};

/// (b_i b_j) b_k == b_i (b_j b_k) for all basis triples.
bool check_associativity(const AlgebraStructure& alg);

struct PowerSubspaces {
  std::vector<Vec> r2;  // echelon basis of span{uv}
  std::vector<Vec> r3;  // echelon basis of span{uvw}
};
PowerSubspaces power_subspaces(const AlgebraStructure& alg);

/// Algebra on F^{2+n}, basis e1, e2, f1..fn, with f_i f_j = a_ij e1 + b_ij e2
/// and every other basis product zero. A and B must be linearly independent
/// (HypothesisViolated otherwise). n = 1 is accepted with a warning.
AlgebraStructure decode_pair(const Mat& a, const Mat& b,
                             std::vector<std::string>* warnings = nullptr);

struct EncodedPair {
  Mat a, b;
  /// Columns are the chosen basis e1, e2, f1..fn in the input coordinates.
  Mat basis;
};

/// Inverse of decode_pair: basis e1, e2 = echelon basis of R^2, completed
/// by the first standard vectors independent of it. Hypothesis violations
/// (non-associative, dim R^2 != 2, R^3 != 0) are named in the error.
EncodedPair encode_pair(const AlgebraStructure& alg);

/// The same algebra on the basis given by the columns of phi:
/// b'_i = sum_k phi(k, i) b_k.
AlgebraStructure change_basis(const AlgebraStructure& alg, const Mat& phi);

/// change_basis(from, phi) == to, bit-exactly.
bool verify_algebra_iso(const AlgebraStructure& from, const AlgebraStructure& to, const Mat& phi);

/// Smallest k with R^k = 0, or nullopt when R is not nilpotent.
std::optional<std::size_t> nilpotency_index(const AlgebraStructure& alg);

/// F 1 (+) R with (a1 + u)(b1 + v) = ab 1 + (av + bu + uv). The identity is
/// basis element 0; the old basis shifts up by one. R must be associative
/// and nilpotent.
AlgebraStructure adjoin_identity(const AlgebraStructure& alg);

/// Two-sided inverse of x in a unital algebra, found by a linear solve.
std::optional<Vec> inverse_element(const AlgebraStructure& alg, std::span<const Elem> x);

struct RadicalInfo {
  std::vector<Vec> radical;  // echelon basis
  bool is_local = false;
};

/// Jacobson radical as the null space of the trace form tr(L_{xy}) of the
/// regular representation. Needs a unital algebra and p > dim. Every
/// radical element is checked nilpotent.
RadicalInfo radical_and_local(const AlgebraStructure& alg);

struct RadicalPowers {
  std::size_t rad_dim = 0, rad2_dim = 0, rad3_dim = 0;
  bool is_local = false;
};
RadicalPowers radical_powers(const AlgebraStructure& alg);

struct WildInstance {
  BigPair pair;
  AlgebraStructure algebra;  // adjoin_identity(decode_pair(M1, M2))
  RadicalPowers checks;
};

/// The local algebra attached to (A,B): dimension 1 + 2 + 35n with the
/// default multiplicities. HypothesisViolated if the radical checks fail.
WildInstance wild_instance(const Mat& a, const Mat& b, const Multiplicities& mult = {});

/// Basis change diag(r^-1, S) carrying decode(A,B) onto decode(C,D), where
/// S^T (r.(A,B)) S = (C,D). Verified; VerificationFailed if the witness does
/// not relate the pairs.
Mat algebra_iso_from_pair_witness(const PairClassWitness& w, const Mat& a, const Mat& b,
                                  const Mat& c, const Mat& d);

/// diag(1, phi): the same isomorphism after adjoining identities.
Mat extend_iso_unital(const Mat& phi);

/// For (C,D) = S^-1 (A,B) S: a verified isomorphism between the two wild
/// instances, built from transport_P35.
Mat wild_instance_iso(const SimilarityWitness& s, const Mat& a, const Mat& b,
                      const Multiplicities& mult = {});

}  // namespace wildpairs
