#pragma once

#include <string>
#include <variant>
#include <vector>

#include "wildpairs/matrix.hpp"

namespace wildpairs {

/// Ordered, nonempty list of equally sized matrices over one field.
class MatTuple {
 public:
  explicit MatTuple(std::vector<Mat> mats);
  static MatTuple pair(Mat a, Mat b) { return MatTuple({std::move(a), std::move(b)}); }

  std::size_t size() const { return mats_.size(); }
  std::size_t rows() const { return mats_.front().rows(); }
  std::size_t cols() const { return mats_.front().cols(); }
  bool is_square() const { return rows() == cols(); }
  const Field& field() const { return mats_.front().field(); }
  const Mat& operator[](std::size_t i) const { return mats_[i]; }
  const std::vector<Mat>& mats() const { return mats_; }

  friend bool operator==(const MatTuple&, const MatTuple&) = default;

 private:
  std::vector<Mat> mats_;
};

/// R * T_i * S = U_i.
class EquivalenceWitness {
 public:
  EquivalenceWitness(Mat r, Mat s);
  const Mat& R() const { return r_; }
  const Mat& S() const { return s_; }

 private:
  Mat r_, s_;
};

/// S* * T_i * S = U_i.
class CongruenceWitness {
 public:
  explicit CongruenceWitness(Mat s);
  const Mat& S() const { return s_; }

 private:
  Mat s_;
};

/// S^-1 * T_i * S = U_i.
class SimilarityWitness {
 public:
  explicit SimilarityWitness(Mat s);
  const Mat& S() const { return s_; }

 private:
  Mat s_;
};

/// (A, B) -> (r11 A + r12 B, r21 A + r22 B) with [r_ij] nonsingular.
class SubstitutionMatrix {
 public:
  explicit SubstitutionMatrix(Mat r);
  static SubstitutionMatrix identity(const Field& f) {
    return SubstitutionMatrix(Mat::identity(f, 2));
  }
  const Mat& matrix() const { return r_; }
  Elem operator()(std::size_t i, std::size_t j) const { return r_(i, j); }

 private:
  Mat r_;
};

/// Congruence after substitution: S^T * (r . T)_i * S = U_i. Uses the plain
/// transpose: this is the bilinear relation that algebra structure constants
/// obey, independent of any involution on the field.
class PairClassWitness {
 public:
  PairClassWitness(Mat s, SubstitutionMatrix r);
  const Mat& S() const { return s_; }
  const SubstitutionMatrix& r() const { return r_; }

 private:
  Mat s_;
  SubstitutionMatrix r_;
};

using Witness = std::variant<EquivalenceWitness, CongruenceWitness, SimilarityWitness,
                             SubstitutionMatrix, PairClassWitness>;

/// "equivalence", "congruence", "similarity", "substitution", "pair_class".
std::string witness_kind(const Witness& w);

MatTuple apply_equivalence(const EquivalenceWitness& w, const MatTuple& t);
MatTuple apply_star_congruence(const CongruenceWitness& w, const MatTuple& t);
MatTuple apply_similarity(const SimilarityWitness& w, const MatTuple& t);
MatTuple apply_substitution(const SubstitutionMatrix& r, const MatTuple& pair);
MatTuple apply_pair_class(const PairClassWitness& w, const MatTuple& pair);
MatTuple apply_witness(const Witness& w, const MatTuple& t);

MatTuple tuple_direct_sum(const MatTuple& a, const MatTuple& b);

/// Replays the witness on `from` and compares with `to` bit-exactly. Returns
/// false (never throws) on extent or field mismatch.
bool verify_witness(const Witness& w, const MatTuple& from, const MatTuple& to);

// Group structure, used to exercise reflexivity/symmetry/transitivity.
EquivalenceWitness inverse(const EquivalenceWitness& w);
CongruenceWitness inverse(const CongruenceWitness& w);
SimilarityWitness inverse(const SimilarityWitness& w);
/// Apply `first`, then `second`.
EquivalenceWitness compose(const EquivalenceWitness& first, const EquivalenceWitness& second);
CongruenceWitness compose(const CongruenceWitness& first, const CongruenceWitness& second);
SimilarityWitness compose(const SimilarityWitness& first, const SimilarityWitness& second);

}  // namespace wildpairs
