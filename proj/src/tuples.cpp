#include "wildpairs/tuples.hpp"

namespace wildpairs {

namespace {

void require_invertible(const Mat& m, const char* what) {
  if (!m.is_square())
    throw DimensionMismatch(std::string(what) + ": witness matrix must be square");
  if (!is_invertible(m)) throw SingularMatrix(std::string(what) + ": witness matrix is singular");
}

template <class F>
MatTuple map_tuple(const MatTuple& t, F&& f) {
  std::vector<Mat> out;
  out.reserve(t.size());
  for (const auto& m : t.mats()) out.push_back(f(m));
  return MatTuple(std::move(out));
}

}  // namespace

MatTuple::MatTuple(std::vector<Mat> mats) : mats_(std::move(mats)) {
  if (mats_.empty()) throw InvalidArgument("matrix tuple must be nonempty");
  for (const auto& m : mats_) {
    if (!(m.field() == mats_.front().field())) throw FieldMismatch("tuple mixes fields");
    if (m.rows() != mats_.front().rows() || m.cols() != mats_.front().cols())
      throw DimensionMismatch("tuple components must share one size");
  }
}

EquivalenceWitness::EquivalenceWitness(Mat r, Mat s) : r_(std::move(r)), s_(std::move(s)) {
  require_same_field(r_, s_, "equivalence witness");
  require_invertible(r_, "equivalence witness R");
  require_invertible(s_, "equivalence witness S");
}

CongruenceWitness::CongruenceWitness(Mat s) : s_(std::move(s)) {
  require_invertible(s_, "congruence witness");
}

SimilarityWitness::SimilarityWitness(Mat s) : s_(std::move(s)) {
  require_invertible(s_, "similarity witness");
}

SubstitutionMatrix::SubstitutionMatrix(Mat r) : r_(std::move(r)) {
  if (r_.rows() != 2 || r_.cols() != 2)
    throw DimensionMismatch("substitution matrix must be 2x2");
  require_invertible(r_, "substitution matrix");
}

PairClassWitness::PairClassWitness(Mat s, SubstitutionMatrix r) : s_(std::move(s)), r_(std::move(r)) {
  require_same_field(s_, r_.matrix(), "pair-class witness");
  require_invertible(s_, "pair-class witness S");
}

std::string witness_kind(const Witness& w) {
  struct {
    std::string operator()(const EquivalenceWitness&) const { return "equivalence"; }
    std::string operator()(const CongruenceWitness&) const { return "congruence"; }
    std::string operator()(const SimilarityWitness&) const { return "similarity"; }
    std::string operator()(const SubstitutionMatrix&) const { return "substitution"; }
    std::string operator()(const PairClassWitness&) const { return "pair_class"; }
  } visitor;
  return std::visit(visitor, w);
}

MatTuple apply_equivalence(const EquivalenceWitness& w, const MatTuple& t) {
  if (w.R().cols() != t.rows() || w.S().rows() != t.cols())
    throw DimensionMismatch("apply_equivalence: witness does not fit tuple size");
  return map_tuple(t, [&](const Mat& a) { return w.R() * a * w.S(); });
}

MatTuple apply_star_congruence(const CongruenceWitness& w, const MatTuple& t) {
  if (!t.is_square()) throw DimensionMismatch("apply_star_congruence: tuple not square");
  if (w.S().rows() != t.rows())
    throw DimensionMismatch("apply_star_congruence: witness does not fit tuple size");
  Mat left = star(w.S());
  return map_tuple(t, [&](const Mat& a) { return left * a * w.S(); });
}

MatTuple apply_similarity(const SimilarityWitness& w, const MatTuple& t) {
  if (!t.is_square() || w.S().rows() != t.rows())
    throw DimensionMismatch("apply_similarity: witness does not fit tuple size");
  Mat left = inverse(w.S());
  return map_tuple(t, [&](const Mat& a) { return left * a * w.S(); });
}

MatTuple apply_substitution(const SubstitutionMatrix& r, const MatTuple& pair) {
  if (pair.size() != 2) throw InvalidArgument("apply_substitution: needs a pair (t = 2)");
  require_same_field(r.matrix(), pair[0], "apply_substitution");
  return MatTuple::pair(scale(r(0, 0), pair[0]) + scale(r(0, 1), pair[1]),
                        scale(r(1, 0), pair[0]) + scale(r(1, 1), pair[1]));
}

MatTuple apply_pair_class(const PairClassWitness& w, const MatTuple& pair) {
  MatTuple sub = apply_substitution(w.r(), pair);
  if (!sub.is_square() || w.S().rows() != sub.rows())
    throw DimensionMismatch("apply_pair_class: witness does not fit pair size");
  Mat left = transpose(w.S());
  return map_tuple(sub, [&](const Mat& a) { return left * a * w.S(); });
}

MatTuple apply_witness(const Witness& w, const MatTuple& t) {
  struct {
    const MatTuple& t;
    MatTuple operator()(const EquivalenceWitness& x) const { return apply_equivalence(x, t); }
    MatTuple operator()(const CongruenceWitness& x) const { return apply_star_congruence(x, t); }
    MatTuple operator()(const SimilarityWitness& x) const { return apply_similarity(x, t); }
    MatTuple operator()(const SubstitutionMatrix& x) const { return apply_substitution(x, t); }
    MatTuple operator()(const PairClassWitness& x) const { return apply_pair_class(x, t); }
  } visitor{t};
  return std::visit(visitor, w);
}

MatTuple tuple_direct_sum(const MatTuple& a, const MatTuple& b) {
  if (a.size() != b.size())
    throw DimensionMismatch("tuple_direct_sum: tuples of different length");
  std::vector<Mat> out;
  for (std::size_t i = 0; i < a.size(); ++i) out.push_back(direct_sum(a[i], b[i]));
  return MatTuple(std::move(out));
}

bool verify_witness(const Witness& w, const MatTuple& from, const MatTuple& to) {
  if (from.size() != to.size() || !(from.field() == to.field())) return false;
  try {
    return apply_witness(w, from) == to;
  } catch (const DimensionMismatch&) {
    return false;
  } catch (const InvalidArgument&) {
    return false;
  } catch (const FieldMismatch&) {
    return false;
  }
}

EquivalenceWitness inverse(const EquivalenceWitness& w) {
  return EquivalenceWitness(inverse(w.R()), inverse(w.S()));
}
CongruenceWitness inverse(const CongruenceWitness& w) { return CongruenceWitness(inverse(w.S())); }
SimilarityWitness inverse(const SimilarityWitness& w) { return SimilarityWitness(inverse(w.S())); }

EquivalenceWitness compose(const EquivalenceWitness& first, const EquivalenceWitness& second) {
  return EquivalenceWitness(second.R() * first.R(), first.S() * second.S());
}
CongruenceWitness compose(const CongruenceWitness& first, const CongruenceWitness& second) {
  return CongruenceWitness(first.S() * second.S());
}
SimilarityWitness compose(const SimilarityWitness& first, const SimilarityWitness& second) {
  return SimilarityWitness(first.S() * second.S());
}

}  // namespace wildpairs
