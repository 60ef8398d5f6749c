#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wildpairs/tuples.hpp"

namespace wildpairs {

// A t-tuple of m x n matrices is a representation of the quiver with two
// vertices and t arrows, each arrow a map F^n -> F^m. A morphism to a tuple
// of m' x n' matrices is a pair of maps, one per vertex, commuting with
// every arrow:  out_map * T_i == U_i * in_map.
struct Morphism {
  Mat in_map;   // n' x n
  Mat out_map;  // m' x m
};

struct HomBasis {
  MatTuple source;
  MatTuple target;
  std::vector<Morphism> basis;

  std::size_t dim() const { return basis.size(); }
  /// sum_k coeffs[k] * basis[k]
  Morphism combine(std::span<const Elem> coeffs) const;
};

bool is_morphism(const Morphism& x, const MatTuple& source, const MatTuple& target);

/// Echelon-canonical basis of all morphisms source -> target. Throws
/// DimensionMismatch when the tuples have different lengths.
HomBasis hom_basis(const MatTuple& source, const MatTuple& target);
inline HomBasis end_ring(const MatTuple& t) { return hom_basis(t, t); }

/// Basis of {X : X * T_i == U_i * X} for square tuples; the morphisms of the
/// one-vertex quiver, i.e. the intertwiners behind simultaneous similarity.
std::vector<Mat> intertwiner_basis(const MatTuple& source, const MatTuple& target);

struct DecideOptions {
  std::size_t trials = 24;
  std::uint64_t seed = 0;
};

/// Why a decider returned no witness. exact = true means the tuples are
/// provably unrelated; otherwise `failure_bound` bounds the probability that
/// related tuples would have produced this outcome.
struct NoInstanceCertificate {
  bool exact = false;
  std::string reason;
  std::size_t trials = 0;
  std::size_t hom_dim = 0;
  double failure_bound = 0.0;
};

template <class W>
struct Decision {
  std::optional<W> witness;
  std::optional<NoInstanceCertificate> certificate;
  std::size_t trials_used = 0;
  bool related() const { return witness.has_value(); }
};

/// Randomized equivalence test: samples random elements of Hom(T, U) and
/// keeps the first invertible one. Exact rejections (different sizes,
/// mismatched Hom dimensions) come first; random sampling needs a field with
/// at least 100 elements (FieldTooSmall otherwise).
Decision<EquivalenceWitness> decide_equivalence(const MatTuple& t, const MatTuple& u,
                                                const DecideOptions& opts = {});
Decision<SimilarityWitness> decide_similarity(const MatTuple& t, const MatTuple& u,
                                              const DecideOptions& opts = {});

struct EndRadical {
  HomBasis end;
  std::vector<Morphism> radical;
  std::size_t quotient_dim() const { return end.dim() - radical.size(); }
};

/// Jacobson radical of End(T) as the null space of the trace form
/// (x, y) -> tr(xy) in the natural representation on F^n (+) F^m. Requires
/// p > dim End(T) and p > n + m; every radical element is checked nilpotent.
EndRadical radical_of_end(const MatTuple& t);

struct SummandCertificate {
  std::size_t end_dim = 0;
  std::size_t radical_dim = 0;
  /// Dimension of End/rad; 1 means End/rad is the ground field. Larger
  /// values only occur when End/rad is a proper extension field.
  std::size_t residue_degree = 1;
};

/// witness.R() * T_i * witness.S() == direct sum of summands, in order.
struct Decomposition {
  std::vector<MatTuple> summands;
  EquivalenceWitness witness;
  std::vector<SummandCertificate> certificates;  // empty for fitting_split

  std::vector<std::pair<std::size_t, std::size_t>> extents() const;
  MatTuple assembled() const;
};

/// Fitting decomposition T = ker(e^k) (+) im(e^k) for an endomorphism e.
/// nullopt when e is nilpotent or invertible. Throws InvalidArgument if e
/// is not an endomorphism of T.
std::optional<Decomposition> fitting_split(const MatTuple& t, const Morphism& e);

struct KrullSchmidtOptions {
  std::uint64_t seed = 0;
  std::size_t random_candidates = 64;
};

/// Full decomposition into indecomposables, summands sorted by extent.
/// Requires p > m^2 + n^2 (CharacteristicTooSmall otherwise).
Decomposition krull_schmidt(const MatTuple& t, const KrullSchmidtOptions& opts = {});

/// Pairs the summands of two decompositions up to equivalence and assembles
/// an equivalence T -> U from the matched pieces. nullopt if some summand
/// finds no partner.
std::optional<EquivalenceWitness> match_decompositions(const MatTuple& t, const Decomposition& dt,
                                                       const MatTuple& u, const Decomposition& du,
                                                       const DecideOptions& opts = {});

}  // namespace wildpairs
