#include "wildpairs/bruteforce.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <limits>
#include <mutex>
#include <thread>

#include "wildpairs/errors.hpp"
#include "wildpairs/poly.hpp"

namespace wildpairs {

std::uint64_t gl_order(std::uint64_t q, std::size_t n) {
  constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t qn = 1;
  for (std::size_t i = 0; i < n; ++i) {
    if (qn > kMax / q) throw BudgetExceeded("gl_order: q^n overflows");
    qn *= q;
  }
  std::uint64_t total = 1, qk = 1;
  for (std::size_t k = 0; k < n; ++k) {
    std::uint64_t factor = qn - qk;
    if (factor != 0 && total > kMax / factor) throw BudgetExceeded("gl_order: |GL| overflows");
    total *= factor;
    qk *= q;
  }
  return total;
}

namespace {

// Shared, read-only data for one column search.
struct SearchSpace {
  Field field;
  std::size_t n = 0;
  std::uint32_t num_vectors = 0;          // q^n
  std::vector<Vec> vecs;                  // index -> column vector
  std::vector<std::vector<Vec>> m_times;  // [t][index] = M_t * vecs[index]
  std::vector<Mat> target;                // empty: no pruning
  std::vector<std::uint64_t> subtree;     // completions once columns 0..k are fixed

  SearchSpace(const Field& f, std::size_t n_, const std::vector<Mat>& source,
              std::vector<Mat> target_)
      : field(f), n(n_), target(std::move(target_)) {
    if (f.degree() != 1) throw InvalidArgument("exhaustive search: prime fields only");
    const std::uint64_t q = f.p();
    std::uint64_t count = 1;
    for (std::size_t i = 0; i < n; ++i) count *= q;
    num_vectors = std::uint32_t(count);
    vecs.resize(num_vectors);
    for (std::uint32_t idx = 0; idx < num_vectors; ++idx) {
      Vec v(n);
      std::uint32_t x = idx;
      for (std::size_t r = 0; r < n; ++r, x /= f.p()) v[r] = Elem{x % f.p(), 0};
      vecs[idx] = std::move(v);
    }
    for (const auto& m : source) {
      std::vector<Vec> prod(num_vectors);
      for (std::uint32_t idx = 0; idx < num_vectors; ++idx) prod[idx] = wildpairs::apply(m, vecs[idx]);
      m_times.push_back(std::move(prod));
    }
    subtree.assign(n, 1);
    for (std::size_t k = 0; k < n; ++k) {
      std::uint64_t qk = 1, total = 1;
      for (std::size_t i = 0; i <= k; ++i) qk *= q;
      for (std::size_t i = k + 1; i < n; ++i, qk *= q) total *= count - qk;
      subtree[k] = total;
    }
  }

  Mat matrix(const std::vector<std::uint32_t>& cols) const {
    Mat s(field, n, n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) s(i, j) = vecs[cols[j]][i];
    return s;
  }

  Elem dot_conj(const Vec& a, const Vec& b) const {
    Elem s = field.zero();
    for (std::size_t i = 0; i < n; ++i) s = field.add(s, field.mul(field.conj(a[i]), b[i]));
    return s;
  }
};

// Depth-first walk over the columns below one fixed first column.
class Walker {
 public:
  using Leaf = std::function<bool(const std::vector<std::uint32_t>&)>;
  Walker(const SearchSpace& s, Leaf leaf) : s_(s), leaf_(std::move(leaf)), cols_(s.n) {}

  /// Walks the subtree with column 0 = first. Returns true if the leaf
  /// callback asked to stop; `counter` then holds the leaf's rank within the
  /// subtree.
  bool run(std::uint32_t first) {
    counter = 0;
    Basis b;
    if (!admit(b, 0, first)) {
      counter = s_.subtree[0];
      return false;
    }
    return place(b, 0, first);
  }

  std::uint64_t counter = 0;
  std::vector<std::uint32_t> cols() const { return cols_; }

 private:
  struct Basis {
    std::vector<std::size_t> pivots;
    std::vector<Vec> rows;
  };

  // Extends the echelon basis by vecs[idx]; false if dependent.
  bool extend(Basis& b, std::uint32_t idx) const {
    const Field& f = s_.field;
    Vec v = s_.vecs[idx];
    for (std::size_t r = 0; r < b.rows.size(); ++r) {
      Elem c = v[b.pivots[r]];
      if (f.is_zero(c)) continue;
      for (std::size_t i = 0; i < s_.n; ++i) v[i] = f.sub(v[i], f.mul(c, b.rows[r][i]));
    }
    std::size_t p = 0;
    while (p < s_.n && f.is_zero(v[p])) ++p;
    if (p == s_.n) return false;
    Elem inv = f.inv(v[p]);
    for (auto& e : v) e = f.mul(e, inv);
    b.pivots.push_back(p);
    b.rows.push_back(std::move(v));
    return true;
  }

  // Entries (i,k), (k,i) of S* M_t S for i <= k must match the target.
  bool consistent(std::size_t k, std::uint32_t idx) const {
    if (s_.target.empty()) return true;
    const Vec& vk = s_.vecs[idx];
    for (std::size_t t = 0; t < s_.target.size(); ++t) {
      const auto& mt = s_.m_times[t];
      const Mat& tgt = s_.target[t];
      for (std::size_t i = 0; i <= k; ++i) {
        std::uint32_t ci = i == k ? idx : cols_[i];
        if (s_.dot_conj(s_.vecs[ci], mt[idx]) != tgt(i, k)) return false;
        if (i != k && s_.dot_conj(vk, mt[ci]) != tgt(k, i)) return false;
      }
    }
    return true;
  }

  bool admit(Basis& b, std::size_t k, std::uint32_t idx) {
    if (!extend(b, idx)) return false;
    return consistent(k, idx);
  }

  bool place(const Basis& b, std::size_t k, std::uint32_t idx) {
    cols_[k] = idx;
    if (k + 1 == s_.n) {
      if (leaf_(cols_)) return true;
      ++counter;
      return false;
    }
    for (std::uint32_t next = 1; next < s_.num_vectors; ++next) {
      Basis nb = b;
      if (!extend(nb, next)) continue;
      if (!consistent(k + 1, next)) {
        counter += s_.subtree[k + 1];
        continue;
      }
      if (place(nb, k + 1, next)) return true;
    }
    return false;
  }

  const SearchSpace& s_;
  Leaf leaf_;
  std::vector<std::uint32_t> cols_;
};

struct Hit {
  std::uint64_t rank;
  std::vector<std::uint32_t> cols;
};

// Lowest-rank leaf of the pruned search, scanning first columns in parallel.
std::optional<Hit> first_hit(const SearchSpace& space, std::size_t threads) {
  if (space.n == 0) return Hit{0, {}};
  std::atomic<std::uint32_t> next{1};
  std::mutex mu;
  std::optional<Hit> best;
  std::atomic<std::uint32_t> best_first{std::numeric_limits<std::uint32_t>::max()};

  auto worker = [&] {
    Walker w(space, [](const std::vector<std::uint32_t>&) { return true; });
    for (;;) {
      std::uint32_t first = next.fetch_add(1);
      // Subtrees after a known hit can only hold later witnesses.
      if (first >= space.num_vectors || first > best_first.load()) return;
      if (!w.run(first)) continue;
      Hit h{std::uint64_t(first - 1) * space.subtree[0] + w.counter, w.cols()};
      std::lock_guard<std::mutex> lock(mu);
      if (!best || h.rank < best->rank) {
        best = h;
        best_first = first;
      }
    }
  };
  threads = std::max<std::size_t>(1, threads);
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (std::size_t i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  return best;
}

void require_square_pairs(const MatTuple& t, const MatTuple& u, const char* what) {
  if (t.size() != 2 || u.size() != 2) throw InvalidArgument(std::string(what) + ": pairs only");
  if (!t.is_square() || !u.is_square()) throw DimensionMismatch(std::string(what) + ": square pairs only");
  if (!(t.field() == u.field())) throw FieldMismatch(std::string(what) + ": different fields");
  if (t.field().degree() != 1) throw InvalidArgument(std::string(what) + ": prime fields only");
}

double seconds_since(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::vector<std::size_t> pencil_ranks(const MatTuple& t) {
  const Field& f = t.field();
  std::vector<std::size_t> out;
  for (std::uint32_t l = 0; l < f.p(); ++l) out.push_back(rank(t[0] + scale(Elem{l, 0}, t[1])));
  out.push_back(rank(t[1]));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t pencil_dim(const MatTuple& t) {
  const std::size_t cells = t.rows() * t.cols();
  Mat stacked(t.field(), 2, cells);
  for (std::size_t k = 0; k < cells; ++k) {
    stacked(0, k) = t[0].data()[k];
    stacked(1, k) = t[1].data()[k];
  }
  return rank(stacked);
}

}  // namespace

std::uint64_t enumerate_gl(std::size_t n, const Field& f, std::uint64_t budget,
                           const std::function<bool(const Mat&)>& visit) {
  if (f.degree() != 1) throw InvalidArgument("enumerate_gl: prime fields only");
  const std::uint64_t size = gl_order(f.p(), n);
  if (size > budget)
    throw BudgetExceeded("enumerate_gl: |GL(" + std::to_string(n) + ", F_" + std::to_string(f.p()) +
                         ")| = " + std::to_string(size) + " exceeds the budget " +
                         std::to_string(budget));
  if (n == 0) {
    visit(Mat(f, 0, 0));
    return 1;
  }
  SearchSpace space(f, n, {}, {});
  std::uint64_t visited = 0;
  Walker w(space, [&](const std::vector<std::uint32_t>& cols) {
    ++visited;
    return !visit(space.matrix(cols));
  });
  for (std::uint32_t first = 1; first < space.num_vectors; ++first)
    if (w.run(first)) break;
  return visited;
}

InvariantVerdict congruence_invariants(const MatTuple& t, const MatTuple& u) {
  if (t.size() != u.size() || t.rows() != u.rows() || t.cols() != u.cols())
    return {true, "sizes differ"};
  for (std::size_t i = 0; i < t.size(); ++i) {
    std::size_t rt = rank(t[i]), ru = rank(u[i]);
    if (rt != ru)
      return {true, "rank of component " + std::to_string(i + 1) + " differs (" + std::to_string(rt) +
                        " vs " + std::to_string(ru) + ")"};
  }
  if (t.size() == 2 && t.is_square()) {
    for (std::size_t i = 0; i < 2; ++i) {
      if (!is_invertible(t[i])) continue;
      Poly ct = charpoly(inverse(t[i]) * t[1 - i]), cu = charpoly(inverse(u[i]) * u[1 - i]);
      if (!(ct == cu))
        return {true, "characteristic polynomial of M" + std::to_string(i + 1) + "^-1 M" +
                          std::to_string(2 - i) + " differs"};
    }
  }
  return {false, "no invariant separates the pairs"};
}

InvariantVerdict pair_class_invariants(const MatTuple& t, const MatTuple& u) {
  if (t.size() != 2 || u.size() != 2 || t.rows() != u.rows() || t.cols() != u.cols())
    return {true, "sizes differ"};
  if (pencil_dim(t) != pencil_dim(u)) return {true, "pencil dimensions differ"};
  if (pencil_ranks(t) != pencil_ranks(u)) return {true, "rank multisets over P^1 differ"};
  return {false, "no invariant separates the pairs"};
}

SearchReport decide_congruence_exhaustive(const MatTuple& t, const MatTuple& u,
                                          const BruteforceOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  require_square_pairs(t, u, "decide_congruence_exhaustive");
  SearchReport rep;
  rep.relation = "congruence";
  const Field& f = t.field();
  if (t.rows() != u.rows()) {
    rep.invariant = InvariantVerdict{true, "sizes differ"};
    rep.elapsed_seconds = seconds_since(start);
    return rep;
  }
  const std::size_t n = t.rows();
  rep.search_space_size = gl_order(f.p(), n);
  if (rep.search_space_size > opts.budget)
    throw BudgetExceeded("decide_congruence_exhaustive: |GL(" + std::to_string(n) + ", F_" +
                         std::to_string(f.p()) + ")| = " + std::to_string(rep.search_space_size) +
                         " exceeds the budget " + std::to_string(opts.budget));

  if (opts.fast_reject != FastReject::off) {
    rep.invariant = congruence_invariants(t, u);
    if (rep.invariant->separated && opts.fast_reject == FastReject::shortcut) {
      rep.elapsed_seconds = seconds_since(start);
      return rep;
    }
  }
  SearchSpace space(f, n, t.mats(), u.mats());
  auto hit = first_hit(space, opts.threads);
  rep.scanned = true;
  if (hit) {
    CongruenceWitness w(space.matrix(hit->cols));
    if (!verify_witness(w, t, u))
      throw VerificationFailed("decide_congruence_exhaustive: scan hit failed replay");
    rep.found = w;
    rep.states_examined = hit->rank + 1;
  } else {
    rep.states_examined = rep.search_space_size;
  }
  if (rep.invariant && rep.invariant->separated && rep.found) rep.invariant_agrees = false;
  rep.elapsed_seconds = seconds_since(start);
  return rep;
}

SearchReport decide_pair_class_exhaustive(const MatTuple& t, const MatTuple& u,
                                          const BruteforceOptions& opts) {
  auto start = std::chrono::steady_clock::now();
  require_square_pairs(t, u, "decide_pair_class_exhaustive");
  SearchReport rep;
  rep.relation = "pair_class";
  const Field& f = t.field();
  if (t.rows() != u.rows()) {
    rep.invariant = InvariantVerdict{true, "sizes differ"};
    rep.elapsed_seconds = seconds_since(start);
    return rep;
  }
  const std::size_t n = t.rows();
  const std::uint64_t inner = gl_order(f.p(), n), outer = gl_order(f.p(), 2);
  if (inner > std::numeric_limits<std::uint64_t>::max() / outer)
    throw BudgetExceeded("decide_pair_class_exhaustive: search space overflows");
  rep.search_space_size = inner * outer;
  if (rep.search_space_size > opts.budget)
    throw BudgetExceeded("decide_pair_class_exhaustive: |GL(2)| * |GL(" + std::to_string(n) +
                         ")| = " + std::to_string(rep.search_space_size) + " exceeds the budget " +
                         std::to_string(opts.budget));

  if (opts.fast_reject != FastReject::off) {
    rep.invariant = pair_class_invariants(t, u);
    if (rep.invariant->separated && opts.fast_reject == FastReject::shortcut) {
      rep.elapsed_seconds = seconds_since(start);
      return rep;
    }
  }
  rep.scanned = true;
  std::vector<Mat> substitutions;
  enumerate_gl(2, f, outer, [&](const Mat& r) {
    substitutions.push_back(r);
    return true;
  });
  for (std::size_t k = 0; k < substitutions.size(); ++k) {
    SubstitutionMatrix r(substitutions[k]);
    MatTuple tr = apply_substitution(r, t);
    // Component ranks must already agree; otherwise this r has no S.
    if (rank(tr[0]) != rank(u[0]) || rank(tr[1]) != rank(u[1])) continue;
    SearchSpace space(f, n, tr.mats(), u.mats());
    if (auto hit = first_hit(space, opts.threads)) {
      PairClassWitness w(space.matrix(hit->cols), r);
      if (!verify_witness(w, t, u))
        throw VerificationFailed("decide_pair_class_exhaustive: scan hit failed replay");
      rep.found = w;
      rep.states_examined = std::uint64_t(k) * inner + hit->rank + 1;
      break;
    }
  }
  if (!rep.found) rep.states_examined = rep.search_space_size;
  if (rep.invariant && rep.invariant->separated && rep.found) rep.invariant_agrees = false;
  rep.elapsed_seconds = seconds_since(start);
  return rep;
}

}  // namespace wildpairs
