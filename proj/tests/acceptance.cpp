// Acceptance gate: one PASS/FAIL line per criterion. All comparisons are
// exact; runtime limits are pinned below and measured with a steady clock.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <map>

#include "oracles.hpp"
#include "wildpairs/commands.hpp"
#include "wildpairs/rng.hpp"

using namespace wildpairs;

namespace {

constexpr std::uint64_t kSeed = 20260101;

// Runtime limits in seconds.
constexpr double kLimit1 = 0.001;
constexpr double kLimit2 = 5.0;
constexpr double kLimit3PerScan = 300.0;
constexpr double kLimit4 = 30.0;
constexpr double kLimit5 = 20.0;
constexpr double kLimit6 = 1.0;
constexpr double kLimit7Exhaustive = 600.0;
constexpr double kLimit8 = 30.0;
constexpr double kLimit9 = 5.0;
constexpr double kLimit10 = 0.001;

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

struct Outcome {
  bool pass = false;
  std::string detail;
  json report;  // deterministic content only; compared byte-wise by criterion 11
};

std::string fmt_time(double s) {
  char buf[64];
  if (s < 0.01) std::snprintf(buf, sizeof buf, "%.3f ms", s * 1e3);
  else std::snprintf(buf, sizeof buf, "%.2f s", s);
  return buf;
}

// ---- 1 ----
Outcome gadget_fidelity() {
  Field f = Field::make(7, 1);
  // Hand-instantiated display for n = 1, A = [3], B = [5], eps = 0.
  Mat first = Mat::from_ints(f, 4, 4, {0, 0, 1, 0, 0, 0, 0, 1, 2, 1, 0, 0, 0, 2, 0, 0});
  Mat second = Mat::from_ints(f, 4, 4, {0, 0, 3, 0, 0, 0, 0, 5, 0, 0, 0, 0, 0, 0, 0, 0});
  auto t0 = Clock::now();
  GadgetPair g = build_T(f.zero(), Mat::from_ints(f, 1, 1, {3}), Mat::from_ints(f, 1, 1, {5}));
  double el = since(t0);
  bool ok = g.pair[0] == first && g.pair[1] == second;
  json rep{{"tuple", to_json(g.pair)}, {"matches_display", ok}};
  return {ok && el < kLimit1, "entry-for-entry " + std::string(ok ? "equal" : "DIFFERENT") + ", " +
                                  fmt_time(el) + " (limit " + fmt_time(kLimit1) + ")",
          rep};
}

// ---- 2 ----
Outcome forward_transport() {
  RunConfig cfg;
  cfg.field = Field::make(10007, 1);
  cfg.seed = kSeed;
  cfg.trials = 200;  // the command adds trials / 4 = 50 Hermitian trials over F_{p^2}
  auto t0 = Clock::now();
  json rep = cmd_verify_theorem("thm21-forward", cfg);
  double el = since(t0);
  bool ok = rep["passed"] == 200 && rep["extension_trials"] == 50 && rep["extension_passed"] == 50;
  return {ok && el < kLimit2,
          std::to_string(rep["passed"].get<int>()) + "/200 over F_10007, " +
              std::to_string(rep["extension_passed"].get<int>()) + "/50 Hermitian over F_10007^2, " +
              fmt_time(el) + " (limit " + fmt_time(kLimit2) + ")",
          rep};
}

// ---- 3 ----
// Plain-integer replay of S^T M S == U over F_3 for every S in GL(4, F_3):
// independent of the pruned search. Returns (states, witnesses).
std::pair<std::uint64_t, std::uint64_t> full_scan(const MatTuple& t, const MatTuple& u) {
  const std::size_t n = t.rows();
  std::vector<int> m(2 * n * n), target(2 * n * n);
  for (std::size_t k = 0; k < 2; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        m[(k * n + i) * n + j] = int(t[k](i, j).c0);
        target[(k * n + i) * n + j] = int(u[k](i, j).c0);
      }
  std::uint64_t states = 0, hits = 0;
  std::vector<int> s(n * n), ms(n * n);
  enumerate_gl(n, t.field(), ~0ull, [&](const Mat& sm) {
    ++states;
    for (std::size_t i = 0; i < n * n; ++i) s[i] = int(sm.data()[i].c0);
    bool ok = true;
    for (std::size_t k = 0; k < 2 && ok; ++k) {
      const int* mk = &m[k * n * n];
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
          int acc = 0;
          for (std::size_t l = 0; l < n; ++l) acc += mk[i * n + l] * s[l * n + j];
          ms[i * n + j] = acc % 3;
        }
      for (std::size_t i = 0; i < n && ok; ++i)
        for (std::size_t j = 0; j < n && ok; ++j) {
          int acc = 0;
          for (std::size_t l = 0; l < n; ++l) acc += s[l * n + i] * ms[l * n + j];
          ok = acc % 3 == target[(k * n + i) * n + j];
        }
    }
    hits += ok;
    return true;
  });
  return {states, hits};
}

Outcome backward_desk() {
  RunConfig cfg;
  cfg.field = Field::make(3, 1);
  cfg.seed = kSeed;
  cfg.threads = 4;
  json rep = cmd_verify_theorem("thm21-backward-desk", cfg);

  const Field& f = cfg.field;
  auto scalar = [&](int v) { return Mat::from_ints(f, 1, 1, {v}); };
  auto gadget = [&](int a, int b) { return build_T(f.zero(), scalar(a), scalar(b)).pair; };
  Rng rng(trial_seed(kSeed, 0));
  MatTuple t11 = gadget(1, 1);
  MatTuple planted = apply_star_congruence(CongruenceWitness(rng.invertible(f, 4)), t11);
  const std::uint64_t order = oracle::gl_order(3, 4);

  bool ok = true;
  std::string detail;
  json scans = json::array();
  struct Case {
    const char* name;
    MatTuple t, u;
    bool expect_found;
    bool asserted;
  };
  std::vector<Case> cases{{"a", t11, planted, true, true},
                          {"b", t11, gadget(1, 2), false, true},
                          {"c", gadget(1, 2), gadget(2, 1), false, false}};
  double slowest = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& c = cases[i];
    const json& r = rep["cases"][i];
    auto t0 = Clock::now();
    auto [states, hits] = full_scan(c.t, c.u);
    double el = since(t0);
    slowest = std::max(slowest, el);
    bool found = r["found"].get<bool>();
    bool consistent = states == order && (hits > 0) == found &&
                      r["report"]["states_examined"].get<std::uint64_t>() <= order &&
                      r["report"]["invariant_agrees"].get<bool>();
    if (!found) consistent = consistent && r["report"]["states_examined"] == order;
    bool as_predicted = found == c.expect_found;
    if (c.asserted) ok = ok && consistent && as_predicted;
    else ok = ok && consistent;  // reported with the caveat, not asserted
    scans.push_back({{"case", c.name},
                     {"states", states},
                     {"witnesses", hits},
                     {"pruned_found", found},
                     {"consistent", consistent}});
    detail += std::string(c.name) + (found ? " found" : " absent") + " (" + std::to_string(hits) +
              " witnesses in " + std::to_string(states) + ")" +
              (c.asserted ? "" : " [char-3 caveat, not asserted]") + "; ";
  }
  ok = ok && rep["sweep"]["invariant_disagreements"] == 0;
  rep["full_scans"] = scans;
  detail += "slowest scan " + fmt_time(slowest) + " (limit " + fmt_time(kLimit3PerScan) + ")";
  return {ok && slowest < kLimit3PerScan, detail, rep};
}

// ---- 4 ----
Outcome extraction() {
  Field f = Field::make(10007, 1);
  const std::int64_t eps_values[] = {0, 1, -1};
  std::size_t passed = 0;
  std::map<std::string, int> routes;
  json rep = json::array();
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < 50; ++i) {
    Rng rng(trial_seed(kSeed, 400 + i));
    std::size_t n = 1 + i % 3;
    Elem eps = f.from_int(eps_values[i % 3]);
    Mat a = rng.matrix(f, n, n), b = rng.matrix(f, n, n);
    SimilarityWitness s(rng.invertible(f, n));
    MatTuple cd = apply_similarity(s, MatTuple::pair(a, b));
    CongruenceWitness r = transport_witness(s, eps, a, b);
    bool ok = false;
    std::string route;
    try {
      ExtractOptions opts;
      opts.seed = trial_seed(kSeed, 500 + i);
      opts.decide.seed = opts.seed;
      Extraction ex = extract_similarity(r, eps, a, b, cd[0], cd[1], opts);
      ok = verify_witness(ex.witness, MatTuple::pair(a, b), cd);
      route = to_string(ex.route_used);
    } catch (const Error& e) {
      route = std::string("error: ") + e.kind();
    }
    passed += ok;
    ++routes[route];
    rep.push_back({{"trial", i}, {"n", n}, {"epsilon", f.format(eps)}, {"route", route}, {"verified", ok}});
  }
  double el = since(t0);
  std::string by_route;
  for (auto& [k, v] : routes) by_route += k + "=" + std::to_string(v) + " ";
  return {passed == 50 && el < kLimit4,
          std::to_string(passed) + "/50 verified (" + by_route + "), " + fmt_time(el) + " (limit " +
              fmt_time(kLimit4) + ")",
          rep};
}

// ---- 5 ----
std::vector<MatTuple> pieces(const Field& f, std::size_t t) {
  auto sc = [&](std::initializer_list<std::int64_t> vals) {
    std::vector<Mat> m;
    for (auto v : vals) m.push_back(Mat::from_ints(f, 1, 1, {v}));
    return MatTuple(m);
  };
  if (t == 2)
    return {sc({1, 0}), sc({0, 1}), sc({1, 1}), sc({1, 5}),
            MatTuple::pair(Mat::from_ints(f, 1, 2, {1, 0}), Mat::from_ints(f, 1, 2, {0, 1})),
            MatTuple::pair(Mat::from_ints(f, 2, 1, {1, 0}), Mat::from_ints(f, 2, 1, {0, 1})),
            MatTuple::pair(Mat::from_ints(f, 2, 3, {1, 0, 0, 0, 1, 0}), Mat::from_ints(f, 2, 3, {0, 1, 0, 0, 0, 1})),
            MatTuple::pair(Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {3, 1, 0, 3})),
            MatTuple::pair(Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {0, 5, 1, 0})),
            MatTuple::pair(Mat(f, 0, 1), Mat(f, 0, 1)),
            MatTuple::pair(Mat(f, 1, 0), Mat(f, 1, 0))};
  return {sc({1, 0, 0}), sc({0, 1, 0}), sc({0, 0, 1}), sc({1, 2, 3}),
          MatTuple({Mat::from_ints(f, 1, 2, {1, 0}), Mat::from_ints(f, 1, 2, {0, 1}), Mat::zero(f, 1, 2)}),
          MatTuple({Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {0, 1, 0, 0}),
                    Mat::from_ints(f, 2, 2, {0, 0, 1, 0})}),
          MatTuple({Mat::identity(f, 2), Mat::from_ints(f, 2, 2, {2, 1, 0, 2}), Mat::zero(f, 2, 2)}),
          MatTuple({Mat(f, 0, 1), Mat(f, 0, 1), Mat(f, 0, 1)}),
          MatTuple({Mat(f, 1, 0), Mat(f, 1, 0), Mat(f, 1, 0)})};
}

Outcome krull_schmidt_recovery() {
  Field f = Field::make(10007, 1);
  std::size_t passed = 0;
  json rep = json::array();
  auto t0 = Clock::now();
  for (std::size_t trial = 0; trial < 100; ++trial) {
    Rng rng(trial_seed(kSeed, 600 + trial));
    std::size_t arity = 2 + trial % 2;
    auto lib = pieces(f, arity);
    std::vector<MatTuple> chosen;
    std::size_t rows = 0, cols = 0;
    for (std::size_t k = 0, want = 1 + rng.below(5); k < want; ++k) {
      const MatTuple& p = lib[rng.below(lib.size())];
      if (rows + p.rows() > 8 || cols + p.cols() > 8) continue;
      chosen.push_back(p);
      rows += p.rows();
      cols += p.cols();
    }
    MatTuple planted = chosen[0];
    for (std::size_t k = 1; k < chosen.size(); ++k) planted = tuple_direct_sum(planted, chosen[k]);
    MatTuple t = apply_equivalence(
        EquivalenceWitness(rng.invertible(f, planted.rows()), rng.invertible(f, planted.cols())), planted);

    bool ok = false;
    try {
      Decomposition d = krull_schmidt(t, {trial_seed(kSeed, 700 + trial), 64});
      std::vector<std::pair<std::size_t, std::size_t>> want;
      for (const auto& p : chosen) want.emplace_back(p.rows(), p.cols());
      std::sort(want.begin(), want.end());
      ok = d.extents() == want && verify_witness(d.witness, t, d.assembled());
      // Pair every recovered summand with a distinct planted piece.
      std::vector<bool> used(chosen.size(), false);
      for (std::size_t s = 0; s < d.summands.size() && ok; ++s) {
        bool matched = false;
        for (std::size_t c = 0; c < chosen.size() && !matched; ++c) {
          if (used[c] || chosen[c].rows() != d.summands[s].rows() || chosen[c].cols() != d.summands[s].cols())
            continue;
          auto dec = decide_equivalence(d.summands[s], chosen[c], {24, trial_seed(kSeed, 800 + trial)});
          if (dec.witness && verify_witness(*dec.witness, d.summands[s], chosen[c])) used[c] = matched = true;
        }
        ok = matched;
      }
    } catch (const Error&) {
      ok = false;
    }
    passed += ok;
    rep.push_back({{"trial", trial}, {"arity", arity}, {"summands", chosen.size()}, {"ok", ok}});
  }
  double el = since(t0);
  return {passed == 100 && el < kLimit5,
          std::to_string(passed) + "/100 planted sums recovered, " + fmt_time(el) + " (limit " +
              fmt_time(kLimit5) + ")",
          rep};
}

// ---- 6 ----
Outcome symmetry_families() {
  Field f1 = Field::make(10007, 1), f2 = Field::make(10007, 2);
  std::map<std::string, int> hits;
  bool rejected = false;
  auto t0 = Clock::now();
  Rng rng(trial_seed(kSeed, 900));
  for (int i = 0; i < 50; ++i) {
    std::size_t n = 1 + i % 3;
    auto go = [&](Symmetry fam, const Field& f) {
      GadgetPair g = build_family_gadget(fam, rng.matrix(f, n, n), rng.matrix(f, n, n));
      if (classify_symmetry(g) == fam) ++hits[to_string(fam)];
    };
    go(Symmetry::hermitian, f2);
    go(Symmetry::symmetric, f1);
    go(Symmetry::skew, f1);
  }
  try {
    build_family_gadget(Symmetry::hermitian, Mat::identity(f1, 1), Mat::identity(f1, 1));
  } catch (const InvalidArgument&) {
    rejected = true;
  }
  double el = since(t0);
  json rep{{"hermitian", hits["hermitian"]},
           {"symmetric", hits["symmetric"]},
           {"skew", hits["skew"]},
           {"deg1_hermitian_rejected", rejected}};
  bool ok = hits["hermitian"] == 50 && hits["symmetric"] == 50 && hits["skew"] == 50 && rejected;
  return {ok && el < kLimit6,
          "hermitian " + std::to_string(hits["hermitian"]) + "/50, symmetric " +
              std::to_string(hits["symmetric"]) + "/50, skew " + std::to_string(hits["skew"]) +
              "/50, deg-1 hermitian " + (rejected ? "rejected" : "ACCEPTED") + ", " + fmt_time(el) +
              " (limit " + fmt_time(kLimit6) + ")",
          rep};
}

// ---- 7 ----
bool independent(const Mat& a, const Mat& b) {
  Vec va(a.data().begin(), a.data().end()), vb(b.data().begin(), b.data().end());
  return rank(Mat::from_columns(a.field(), va.size(), {va, vb})) == 2;
}

Outcome algebra_round_trips() {
  std::size_t exact = 0;
  Field f = Field::make(10007, 1);
  for (std::size_t i = 0; i < 100; ++i) {
    Rng rng(trial_seed(kSeed, 1000 + i));
    std::size_t n = 2 + i % 4;
    Mat a = rng.matrix(f, n, n), b = rng.matrix(f, n, n);
    EncodedPair e = encode_pair(decode_pair(a, b));
    exact += e.a == a && e.b == b;
  }

  Field f3 = Field::make(3, 1);
  std::size_t confirmed = 0, shuffles = 20;
  json rep = json::array();
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < shuffles; ++i) {
    Rng rng(trial_seed(kSeed, 1200 + i));
    Mat a = rng.matrix(f3, 2, 2), b = rng.matrix(f3, 2, 2);
    while (!independent(a, b)) {
      a = rng.matrix(f3, 2, 2);
      b = rng.matrix(f3, 2, 2);
    }
    AlgebraStructure shuffled = change_basis(decode_pair(a, b), rng.invertible(f3, 4));
    EncodedPair e = encode_pair(shuffled);
    SearchReport r = decide_pair_class_exhaustive(MatTuple::pair(a, b), MatTuple::pair(e.a, e.b));
    bool ok = r.found && verify_witness(*r.found, MatTuple::pair(a, b), MatTuple::pair(e.a, e.b));
    confirmed += ok;
    rep.push_back({{"trial", i}, {"report", to_json(r)}});
  }
  double el = since(t0);
  json out{{"exact_round_trips", exact}, {"oracle", rep}};
  return {exact == 100 && confirmed == shuffles && el < kLimit7Exhaustive,
          std::to_string(exact) + "/100 exact round trips, " + std::to_string(confirmed) + "/" +
              std::to_string(shuffles) + " shuffled re-encodings confirmed by the F_3 pair-class oracle, " +
              fmt_time(el) + " (limit " + fmt_time(kLimit7Exhaustive) + ")",
          out};
}

// ---- 8 ----
Outcome wild_forward() {
  RunConfig cfg;
  cfg.field = Field::make(10007, 1);
  cfg.seed = kSeed;
  cfg.trials = 20;
  auto t0 = Clock::now();
  json rep = cmd_verify_theorem("thm3-forward", cfg);
  double el = since(t0);
  bool ok = rep["passed"] == 20 && rep["algebra_dim"] == 38;
  return {ok && el < kLimit8,
          std::to_string(rep["passed"].get<int>()) + "/20 dim-" + std::to_string(rep["algebra_dim"].get<int>()) +
              " local algebras with verified isomorphisms, " + fmt_time(el) + " (limit " +
              fmt_time(kLimit8) + ")",
          rep};
}

// ---- 9 ----
Outcome rank_separation() {
  RunConfig cfg;
  cfg.field = Field::make(10007, 1);
  cfg.seed = kSeed;
  cfg.trials = 100;
  auto t0 = Clock::now();
  json rep = cmd_verify_theorem("ranksep", cfg);
  double el = since(t0);
  bool ok = rep["off_diagonal_false"] == 100 && rep["diagonal_true"] == 100;
  return {ok && el < kLimit9,
          "off-diagonal false " + std::to_string(rep["off_diagonal_false"].get<int>()) +
              "/100, diagonal true " + std::to_string(rep["diagonal_true"].get<int>()) + "/100, " +
              fmt_time(el) + " (limit " + fmt_time(kLimit9) + ")",
          rep};
}

// ---- 10 ----
Outcome f_minus_ft() {
  json rep = json::object();
  bool ok = true;
  auto t0 = Clock::now();
  for (std::uint32_t p : {3u, 5u, 7u, 10007u}) {
    Field f = Field::make(p, 1);
    Mat m = gadget_first_matrix(f, 1);
    Elem d = det(m - transpose(m));
    rep[std::to_string(p)] = f.format(d);
    ok = ok && !f.is_zero(d);
  }
  double el = since(t0);
  // Leibniz cross-check, outside the timed part.
  for (std::uint32_t p : {3u, 5u, 7u, 10007u}) {
    Field f = Field::make(p, 1);
    Mat m = gadget_first_matrix(f, 1);
    ok = ok && oracle::leibniz_det(m - transpose(m)) == f.parse(rep[std::to_string(p)].get<std::string>());
  }
  return {ok && el < kLimit10,
          "det = " + rep.dump() + ", " + fmt_time(el) + " (limit " + fmt_time(kLimit10) + ")", rep};
}

}  // namespace

int main() {
  struct Entry {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  std::vector<Entry> criteria{{1, "gadget fidelity", gadget_fidelity},
                              {2, "forward transport", forward_transport},
                              {3, "backward direction, desk scale", backward_desk},
                              {4, "witness extraction", extraction},
                              {5, "Krull-Schmidt", krull_schmidt_recovery},
                              {6, "symmetry families", symmetry_families},
                              {7, "algebra round trips", algebra_round_trips},
                              {8, "wild instances forward", wild_forward},
                              {9, "rank separation", rank_separation},
                              {10, "F - F^T nonsingular", f_minus_ft}};
  int failures = 0;
  std::vector<std::string> first_reports;
  for (const auto& c : criteria) {
    Outcome o = c.run();
    first_reports.push_back(dump(o.report));
    std::printf("[%s] %d %s: %s\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }

  // 11: every criterion again with the same seed, reports compared byte-wise.
  std::size_t identical = 0;
  std::string differing;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    if (dump(criteria[i].run().report) == first_reports[i]) ++identical;
    else differing += " " + std::to_string(criteria[i].id);
  }
  bool ok11 = identical == criteria.size();
  std::printf("[%s] 11 determinism: %zu/%zu criterion reports byte-identical on re-run%s\n",
              ok11 ? "PASS" : "FAIL", identical, criteria.size(),
              differing.empty() ? "" : (" (differ:" + differing + ")").c_str());
  failures += !ok11;
  return failures == 0 ? 0 : 1;
}
