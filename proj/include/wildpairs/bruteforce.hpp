#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "wildpairs/tuples.hpp"

namespace wildpairs {

/// Order of GL(n, F_q); throws BudgetExceeded when it does not fit in 64 bits.
std::uint64_t gl_order(std::uint64_t q, std::size_t n);

/// Visits every nonsingular n x n matrix over a prime field exactly once,
/// in a fixed order: lexicographic in the column indices (column 0 most
/// significant), each column read as a base-p number with row 0 as the
/// lowest digit. Singular matrices are skipped. `visit` returns false to
/// stop early. Throws BudgetExceeded if |GL(n, F_p)| > budget. Returns the
/// number of matrices visited.
std::uint64_t enumerate_gl(std::size_t n, const Field& f, std::uint64_t budget,
                           const std::function<bool(const Mat&)>& visit);

enum class FastReject {
  off,          // always scan
  shortcut,     // skip the scan when an invariant separates the pairs
  cross_check,  // compute invariants and scan; record whether they agree
};

struct BruteforceOptions {
  std::uint64_t budget = 35'000'000;
  std::size_t threads = 1;
  FastReject fast_reject = FastReject::cross_check;
};

struct InvariantVerdict {
  bool separated = false;
  std::string reason;
};

struct SearchReport {
  std::string relation;  // "congruence" or "pair_class"
  std::optional<Witness> found;
  /// Position of the witness in enumeration order plus one, or the full
  /// space size when absent: independent of thread count and pruning.
  std::uint64_t states_examined = 0;
  std::uint64_t search_space_size = 0;
  bool scanned = false;
  std::optional<InvariantVerdict> invariant;
  /// False only when an invariant claimed separation but the scan found a
  /// witness (which would be a bug).
  bool invariant_agrees = true;
  double elapsed_seconds = 0.0;
};

/// Congruence invariants: component ranks and, when the first matrix is
/// nonsingular, the characteristic polynomial of M1^-1 M2.
InvariantVerdict congruence_invariants(const MatTuple& t, const MatTuple& u);
/// Invariants under congruence and substitution: the dimension of the
/// pencil and the multiset of ranks over the points of P^1(F_p).
InvariantVerdict pair_class_invariants(const MatTuple& t, const MatTuple& u);

/// First S (in enumerate_gl order) with S* T_i S = U_i, i = 1, 2.
SearchReport decide_congruence_exhaustive(const MatTuple& t, const MatTuple& u,
                                          const BruteforceOptions& opts = {});

/// First (r, S) with S^T (r.T)_i S = U_i; r runs over GL(2) in enumerate_gl
/// order in the outer loop.
SearchReport decide_pair_class_exhaustive(const MatTuple& t, const MatTuple& u,
                                          const BruteforceOptions& opts = {});

}  // namespace wildpairs
