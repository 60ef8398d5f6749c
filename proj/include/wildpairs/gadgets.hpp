#pragma once

#include <optional>
#include <string>

#include "wildpairs/homspace.hpp"
#include "wildpairs/tuples.hpp"

namespace wildpairs {

/// A gadget instantiated at n x n blocks. `provenance` names the builder:
/// "T", "P-triple", "F", "G" or "P35".
struct GadgetPair {
  MatTuple pair;
  Elem epsilon;
  std::size_t n = 0;
  std::string provenance;
};

/// The first matrix [[0, I_2n], [L, 0]] with L = [[2I, I], [0, 2I]].
Mat gadget_first_matrix(const Field& f, std::size_t n);

/// T_eps(A, B): 4n x 4n pair, second matrix
/// [[0,0,A,0],[0,0,0,B],[eps A*,0,0,0],[0,eps B*,0,0]].
GadgetPair build_T(Elem eps, const Mat& a, const Mat& b);

enum class Symmetry { hermitian, symmetric, skew, none };
std::string to_string(Symmetry s);

/// Which of the three form families the gadget's second matrix belongs to.
/// Hermitian is only reported over fields with a nonidentity involution.
Symmetry classify_symmetry(const GadgetPair& g);

/// Builds the gadget of a named family: hermitian (eps = 1, needs a deg-2
/// field), symmetric (eps = 1, deg 1), skew (eps = -1, deg 1). Any other
/// combination is rejected with InvalidArgument.
GadgetPair build_family_gadget(Symmetry family, const Mat& a, const Mat& b);

/// R = diag((S*)^-1, (S*)^-1, S, S), so that R* T_eps(A,B) R = T_eps(C,D)
/// with (C,D) = S^-1 (A,B) S. Verified before returning.
CongruenceWitness transport_witness(const SimilarityWitness& s, Elem eps, const Mat& a,
                                    const Mat& b);

/// The eps = 0 transport for the bilinear (plain transpose) action:
/// R^T T_0(A,B) R = T_0(C,D) with R = diag((S^T)^-1, (S^T)^-1, S, S).
Mat transport_bilinear(const SimilarityWitness& s, const Mat& a, const Mat& b);

struct ProofTriples {
  MatTuple p;  // (F, F*, second matrix of T_eps)
  MatTuple f;  // (I, [[2I,0],[I,2I]], diag(A,B))
  MatTuple g;  // ([[2I,I],[0,2I]], I, diag(eps A*, eps B*))
};

/// The three triples of the backward argument. Checks that every P_i is
/// [[0, F_i], [G_i, 0]], i.e. P is F (+) G up to swapping the column halves.
ProofTriples build_proof_triples(Elem eps, const Mat& a, const Mat& b);

enum class ExtractRoute { automatic, block, decomposition };
std::string to_string(ExtractRoute r);

struct ExtractOptions {
  ExtractRoute route = ExtractRoute::automatic;
  DecideOptions decide{};
  std::uint64_t seed = 0;
};

struct Extraction {
  SimilarityWitness witness;
  ExtractRoute route_used;
  /// Characteristic 3: the summand-exclusion step divides by 2 and 4 in a
  /// way that degenerates (2 = 1/2), so outcomes are reported, not promised.
  bool outside_verified_envelope = false;
};

/// From a verified *congruence R between T_eps(A,B) and T_eps(C,D), finds P
/// with P(A,B) = (C,D)P. The block route reads P off the F-component of the
/// induced equivalence of P-triples; the decomposition route decomposes both
/// F-triples and matches summands. Throws VerificationFailed if R does not
/// verify, SearchExhausted if no route yields a verified P.
Extraction extract_similarity(const CongruenceWitness& r, Elem eps, const Mat& a, const Mat& b,
                              const Mat& c, const Mat& d, const ExtractOptions& opts = {});

struct Multiplicities {
  std::size_t id = 20;    // copies of (I_n, 0)
  std::size_t zero = 10;  // copies of (0, I_n)
  std::size_t ones = 1;   // copies of (I_n, I_n)
  friend bool operator==(const Multiplicities&, const Multiplicities&) = default;
};

struct BigPair {
  MatTuple pair;
  std::size_t n = 0;
  Multiplicities mult;

  const Mat& m1() const { return pair[0]; }
  const Mat& m2() const { return pair[1]; }
};

/// (I,0)^id (+) (0,I)^zero (+) (I,I)^ones (+) T_0(A,B), scalar blocks
/// scaled to n x n. Extent (id + zero + ones + 4) * n.
BigPair build_P35(const Mat& a, const Mat& b, const Multiplicities& mult = {});

/// S_big with S_big^T P(A,B) S_big = P(C,D) for (C,D) = S^-1 (A,B) S: the
/// identity on the padding summands and transport_bilinear on T_0.
Mat transport_P35(const SimilarityWitness& s, const Mat& a, const Mat& b,
                  const Multiplicities& mult = {});

/// rank(r11 M1 + r12 M2(A,B)) == rank M1 and rank(r21 M1 + r22 M2(A,B)) ==
/// rank M2(A,B). Off-diagonal substitutions are expected to fail.
bool rank_separation_check(const Mat& a, const Mat& b, const SubstitutionMatrix& r,
                           const Multiplicities& mult = {});

/// Square root in a prime field (Tonelli-Shanks); nullopt for nonsquares.
std::optional<Elem> sqrt_mod(const Field& f, Elem a);

/// Copies a deg-1 matrix into F_{p^2}.
Mat lift_to_extension(const Mat& m, const Field& ext);

struct ScalarAbsorption {
  Field field;  // where s lives; the extension when lifted
  Mat s;        // s^T (lambda T_i) s == T_i
  bool lifted = false;
};

/// Absorbs a nonzero scalar into a plain congruence: s = c I with c^2 =
/// 1/lambda. Over F_p this needs lambda to be a square; with
/// allow_extension the tuple is lifted to F_{p^2}, where every element of F_p
/// has a root. nullopt when no root is available. deg-1 input only.
std::optional<ScalarAbsorption> absorb_scalar(const MatTuple& t, Elem lambda,
                                              bool allow_extension = false);

}  // namespace wildpairs
