#include "wildpairs/commands.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "wildpairs/rng.hpp"

namespace wildpairs {

namespace {

// Runs one named stage, attaching the stage name to any library error.
template <class F>
auto stage(const std::string& name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

Elem parse_scalar(const Field& f, const std::string& s) {
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec == std::errc() && ptr == s.data() + s.size()) return f.from_int(v);
  return f.parse(s);
}

const json& at_pointer(const json& doc, const std::string& pointer) {
  try {
    return doc.at(json::json_pointer(pointer));
  } catch (const json::exception& e) {
    throw ParseError("no payload at " + pointer + ": " + e.what());
  }
}

const json& payload(const json& doc, const std::string& pointer,
                    std::initializer_list<const char*> keys) {
  if (!pointer.empty()) return at_pointer(doc, pointer);
  for (const char* k : keys)
    if (doc.is_object() && doc.contains(k)) return doc.at(k);
  std::string names;
  for (const char* k : keys) names += std::string(names.empty() ? "" : ", ") + k;
  throw ParseError("document has none of the keys " + names);
}

json envelope(const Field& f, const std::string& command, const RunConfig* cfg = nullptr) {
  json doc = make_document(f);
  doc["command"] = command;
  if (cfg) {
    doc["config"] = to_json(*cfg);
    doc["rng"] = Rng::kRngVersion;
  }
  return doc;
}

json pair_doc(const MatTuple& t) {
  json doc = make_document(t.field());
  doc["pair"] = to_json(t);
  return doc;
}

json mult_json(const Multiplicities& m) { return json::array({m.id, m.zero, m.ones}); }

std::size_t trials_or(const RunConfig& cfg, std::size_t fallback) {
  return cfg.trials ? cfg.trials : fallback;
}

DecideOptions decide_opts(const RunConfig& cfg, std::uint64_t salt = 0) {
  DecideOptions o;
  if (cfg.trials) o.trials = cfg.trials;
  o.seed = trial_seed(cfg.seed, salt);
  return o;
}

void check_pair(const MatTuple& t, const char* what) {
  if (t.size() != 2 || !t.is_square())
    throw DimensionMismatch(std::string(what) + ": expected a pair of square matrices");
}

// ---- verify-theorem ----

json thm21_forward(const RunConfig& cfg) {
  const std::size_t trials = trials_or(cfg, 200);
  const Field f1 = Field::make(cfg.field.p(), 1);
  json failures = json::array();
  std::size_t passed = 0;
  const std::int64_t eps_values[] = {0, 1, -1};
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    Rng rng(s);
    std::size_t n = 1 + i % 4;
    Elem eps = f1.from_int(eps_values[(i / 4) % 3]);
    Mat a = rng.matrix(f1, n, n), b = rng.matrix(f1, n, n);
    SimilarityWitness sw(rng.invertible(f1, n));
    MatTuple cd = apply_similarity(sw, MatTuple::pair(a, b));
    CongruenceWitness r = transport_witness(sw, eps, a, b);
    bool ok = verify_witness(r, build_T(eps, a, b).pair, build_T(eps, cd[0], cd[1]).pair);
    if (ok) ++passed;
    else failures.push_back({{"trial", i}, {"seed", s}, {"n", n}, {"epsilon", f1.format(eps)}});
  }

  // Hermitian family over the quadratic extension.
  const std::size_t ext_trials = trials / 4;
  const Field f2 = Field::make(cfg.field.p(), 2);
  std::size_t ext_passed = 0;
  for (std::size_t i = 0; i < ext_trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed ^ 0x2ULL, i);
    Rng rng(s);
    std::size_t n = 1 + i % 4;
    Mat a = rng.matrix(f2, n, n), b = rng.matrix(f2, n, n);
    SimilarityWitness sw(rng.invertible(f2, n));
    MatTuple cd = apply_similarity(sw, MatTuple::pair(a, b));
    CongruenceWitness r = transport_witness(sw, f2.one(), a, b);
    GadgetPair g = build_family_gadget(Symmetry::hermitian, a, b);
    bool ok = classify_symmetry(g) == Symmetry::hermitian &&
              verify_witness(r, g.pair, build_T(f2.one(), cd[0], cd[1]).pair);
    if (ok) ++ext_passed;
    else failures.push_back({{"trial", i}, {"seed", s}, {"n", n}, {"field_deg", 2}});
  }

  json doc = envelope(f1, "verify-theorem", &cfg);
  doc["theorem"] = "thm21-forward";
  doc["trials"] = trials;
  doc["passed"] = passed;
  doc["extension_trials"] = ext_trials;
  doc["extension_passed"] = ext_passed;
  doc["failures"] = failures;
  doc["pass"] = failures.empty();
  return doc;
}

json backward_case(const std::string& name, const MatTuple& t, const MatTuple& u, bool predicted,
                   const RunConfig& cfg, bool char3) {
  BruteforceOptions bo{cfg.budget, cfg.threads, FastReject::cross_check};
  SearchReport rep = decide_congruence_exhaustive(t, u, bo);
  json j{{"case", name},
         {"predicted_congruent", predicted},
         {"found", bool(rep.found)},
         {"matches_prediction", bool(rep.found) == predicted},
         {"outside_verified_envelope", char3},
         {"report", to_json(rep, cfg.timing)}};
  return j;
}

json thm21_backward_desk(const RunConfig& cfg) {
  const Field& f = cfg.field;
  if (f.degree() != 1) throw InvalidArgument("thm21-backward-desk: prime field expected");
  const bool char3 = f.p() == 3;
  Elem zero = f.zero();
  auto scalar = [&](std::int64_t v) { return Mat::from_ints(f, 1, 1, {v}); };
  auto gadget = [&](std::int64_t a, std::int64_t b) { return build_T(zero, scalar(a), scalar(b)).pair; };

  json cases = json::array();
  Rng rng(trial_seed(cfg.seed, 0));
  MatTuple t11 = gadget(1, 1);
  CongruenceWitness planted(rng.invertible(f, 4));
  MatTuple u = apply_star_congruence(planted, t11);
  json a = backward_case("a: T0([1],[1]) vs a random congruate", t11, u, true, cfg, false);

  // The found witness should carry back to a similarity.
  SearchReport rep = decide_congruence_exhaustive(t11, u, {cfg.budget, cfg.threads, FastReject::off});
  if (rep.found) {
    const auto& r = std::get<CongruenceWitness>(*rep.found);
    // u is T0 up to congruence, not literally a gadget: extract against T0 itself,
    // composing the planted witness back.
    CongruenceWitness to_self = compose(r, inverse(planted));
    try {
      Extraction ex = extract_similarity(to_self, zero, scalar(1), scalar(1), scalar(1), scalar(1));
      a["extraction"] = {{"witness", to_json(Witness(ex.witness))},
                         {"route", to_string(ex.route_used)},
                         {"outside_verified_envelope", ex.outside_verified_envelope}};
    } catch (const Error& e) {
      a["extraction"] = {{"error", e.kind()}, {"message", e.what()}};
    }
  }
  cases.push_back(a);
  cases.push_back(backward_case("b: T0([1],[1]) vs T0([1],[2])", t11, gadget(1, 2), false, cfg, false));
  cases.push_back(backward_case("c: T0([1],[2]) vs T0([2],[1])", gadget(1, 2), gadget(2, 1), false, cfg, char3));

  // Every unordered pair of 1 x 1 pairs: congruent gadgets iff equal pairs.
  std::size_t sweep_total = 0, sweep_matches = 0, invariant_disagreements = 0;
  json sweep_mismatches = json::array();
  for (std::uint32_t x = 0; x < f.p() * f.p(); ++x)
    for (std::uint32_t y = x; y < f.p() * f.p(); ++y) {
      MatTuple tx = gadget(x % f.p(), x / f.p()), ty = gadget(y % f.p(), y / f.p());
      SearchReport r = decide_congruence_exhaustive(tx, ty, {cfg.budget, cfg.threads, FastReject::cross_check});
      ++sweep_total;
      if (!r.invariant_agrees) ++invariant_disagreements;
      if (bool(r.found) == (x == y)) ++sweep_matches;
      else sweep_mismatches.push_back(json::array({x % f.p(), x / f.p(), y % f.p(), y / f.p()}));
    }

  json doc = envelope(f, "verify-theorem", &cfg);
  doc["theorem"] = "thm21-backward-desk";
  doc["cases"] = cases;
  doc["sweep"] = {{"pairs_compared", sweep_total},
                  {"matches_prediction", sweep_matches},
                  {"mismatches", sweep_mismatches},
                  {"invariant_disagreements", invariant_disagreements},
                  {"outside_verified_envelope", char3}};
  bool asserted = cases[0]["matches_prediction"].get<bool>() && cases[1]["matches_prediction"].get<bool>();
  for (const auto& c : cases)
    asserted = asserted && c["report"]["invariant_agrees"].get<bool>();
  doc["pass"] = asserted && invariant_disagreements == 0;
  return doc;
}

json thm3_forward(const RunConfig& cfg) {
  const std::size_t trials = trials_or(cfg, 20);
  const Field& f = cfg.field;
  json failures = json::array();
  std::size_t passed = 0;
  std::size_t dim = 0;
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    Rng rng(s);
    Mat a = rng.matrix(f, 1, 1), b = rng.matrix(f, 1, 1);
    SimilarityWitness sw(rng.invertible(f, 1));
    MatTuple cd = apply_similarity(sw, MatTuple::pair(a, b));
    try {
      WildInstance w1 = wild_instance(a, b, cfg.mult), w2 = wild_instance(cd[0], cd[1], cfg.mult);
      Mat phi = wild_instance_iso(sw, a, b, cfg.mult);
      dim = w1.algebra.dim();
      bool ok = verify_algebra_iso(w1.algebra, w2.algebra, phi);
      for (const auto* w : {&w1, &w2})
        ok = ok && w->checks.is_local && w->checks.rad2_dim == 2 && w->checks.rad3_dim == 0;
      if (ok) ++passed;
      else failures.push_back({{"trial", i}, {"seed", s}});
    } catch (const Error& e) {
      failures.push_back({{"trial", i}, {"seed", s}, {"error", e.kind()}, {"message", e.what()}});
    }
  }
  json doc = envelope(f, "verify-theorem", &cfg);
  doc["theorem"] = "thm3-forward";
  doc["trials"] = trials;
  doc["algebra_dim"] = dim;
  doc["passed"] = passed;
  doc["failures"] = failures;
  doc["pass"] = failures.empty();
  return doc;
}

json ranksep(const RunConfig& cfg) {
  const std::size_t trials = trials_or(cfg, 100);
  const Field& f = cfg.field;
  std::size_t off_false = 0, diag_true = 0;
  json failures = json::array();
  for (std::size_t i = 0; i < trials; ++i) {
    std::uint64_t s = trial_seed(cfg.seed, i);
    Rng rng(s);
    std::size_t n = 1 + i % 3;
    Mat a = rng.matrix(f, n, n), b = rng.matrix(f, n, n);
    Mat r = rng.invertible(f, 2);
    while (f.is_zero(r(0, 1)) && f.is_zero(r(1, 0))) r = rng.invertible(f, 2);
    bool off = rank_separation_check(a, b, SubstitutionMatrix(r), cfg.mult);
    Mat diag = Mat::zero(f, 2, 2);
    diag(0, 0) = rng.nonzero(f);
    diag(1, 1) = rng.nonzero(f);
    bool on = rank_separation_check(a, b, SubstitutionMatrix(diag), cfg.mult);
    off_false += !off;
    diag_true += on;
    if (off || !on)
      failures.push_back({{"trial", i}, {"seed", s}, {"n", n}, {"off_diagonal_result", off},
                          {"diagonal_result", on}});
  }
  json doc = envelope(f, "verify-theorem", &cfg);
  doc["theorem"] = "ranksep";
  doc["trials"] = trials;
  doc["off_diagonal_false"] = off_false;
  doc["diagonal_true"] = diag_true;
  doc["failures"] = failures;
  doc["pass"] = failures.empty();
  return doc;
}

}  // namespace

Field parse_field_spec(const std::string& s) {
  auto comma = s.find(',');
  try {
    std::uint32_t p = std::stoul(s.substr(0, comma));
    int deg = comma == std::string::npos ? 1 : std::stoi(s.substr(comma + 1));
    return Field::make(p, deg);
  } catch (const std::logic_error&) {
    throw InvalidArgument("bad field spec \"" + s + "\" (expected P or P,2)");
  }
}

Multiplicities parse_mult(const std::string& s) {
  std::vector<std::size_t> v;
  std::stringstream ss(s);
  std::string item;
  try {
    while (std::getline(ss, item, ',')) v.push_back(std::stoul(item));
  } catch (const std::logic_error&) {
    v.clear();
  }
  if (v.size() != 3) throw InvalidArgument("bad multiplicities \"" + s + "\" (expected a,b,c)");
  return Multiplicities{v[0], v[1], v[2]};
}

json to_json(const RunConfig& c) {
  return json{{"field", to_json(c.field)}, {"seed", c.seed},        {"trials", c.trials},
              {"budget", c.budget},        {"threads", c.threads}, {"mult", mult_json(c.mult)}};
}

MatTuple load_tuple(const json& doc, const std::string& pointer) {
  Field f = document_field(doc);
  return tuple_from_json(f, payload(doc, pointer, {"pair", "tuple", "pair1"}));
}

Witness load_witness(const json& doc, const std::string& pointer) {
  Field f = document_field(doc);
  return witness_from_json(f, payload(doc, pointer, {"witness"}));
}

AlgebraStructure load_algebra(const json& doc, const std::string& pointer) {
  Field f = document_field(doc);
  return algebra_from_json(f, payload(doc, pointer, {"algebra"}));
}

json cmd_gen_pair(const RunConfig& cfg, std::size_t n) {
  Rng rng(cfg.seed);
  MatTuple t = MatTuple::pair(rng.matrix(cfg.field, n, n), rng.matrix(cfg.field, n, n));
  json doc = pair_doc(t);
  doc["seed"] = cfg.seed;
  return doc;
}

json cmd_gen_similar_pair_instance(const RunConfig& cfg, std::size_t n) {
  Rng rng(cfg.seed);
  MatTuple ab = MatTuple::pair(rng.matrix(cfg.field, n, n), rng.matrix(cfg.field, n, n));
  SimilarityWitness s(rng.invertible(cfg.field, n));
  json doc = make_document(cfg.field);
  doc["seed"] = cfg.seed;
  doc["pair1"] = to_json(ab);
  doc["pair2"] = to_json(apply_similarity(s, ab));
  doc["witness"] = to_json(Witness(s));
  return doc;
}

json cmd_gen_algebra_from_pair(const json& pair_doc_in) { return cmd_decode_alg(pair_doc_in); }

json cmd_gadget(const json& doc_in, const std::string& eps_s) {
  MatTuple t = stage("input", [&] { return load_tuple(doc_in); });
  return stage("gadget", [&] {
    check_pair(t, "gadget");
    Elem eps = parse_scalar(t.field(), eps_s);
    GadgetPair g = build_T(eps, t[0], t[1]);
    json doc = make_document(t.field());
    doc["epsilon"] = t.field().format(eps);
    doc["n"] = g.n;
    doc["symmetry"] = to_string(classify_symmetry(g));
    doc["tuple"] = to_json(g.pair);
    return doc;
  });
}

json cmd_transport(const json& doc_in, const json& sim_doc, const std::string& eps_s) {
  MatTuple t = stage("input", [&] { return load_tuple(doc_in); });
  Witness w = stage("input", [&] { return load_witness(sim_doc); });
  return stage("transport", [&] {
    check_pair(t, "transport");
    const auto* s = std::get_if<SimilarityWitness>(&w);
    if (!s) throw InvalidArgument("transport: expected a similarity witness");
    Elem eps = parse_scalar(t.field(), eps_s);
    MatTuple cd = apply_similarity(*s, t);
    CongruenceWitness r = transport_witness(*s, eps, t[0], t[1]);
    json doc = make_document(t.field());
    doc["epsilon"] = t.field().format(eps);
    doc["pair1"] = to_json(t);
    doc["pair2"] = to_json(cd);
    doc["gadget1"] = to_json(build_T(eps, t[0], t[1]).pair);
    doc["gadget2"] = to_json(build_T(eps, cd[0], cd[1]).pair);
    doc["witness"] = to_json(Witness(r));
    return doc;
  });
}

json cmd_extract(const json& doc1, const json& doc2, const json& witness_doc, const std::string& eps_s,
                 const RunConfig& cfg, const std::string& route) {
  MatTuple ab = stage("input", [&] { return load_tuple(doc1); });
  MatTuple cd = stage("input", [&] { return load_tuple(doc2); });
  Witness w = stage("input", [&] { return load_witness(witness_doc); });
  return stage("extract", [&] {
    check_pair(ab, "extract");
    check_pair(cd, "extract");
    const auto* r = std::get_if<CongruenceWitness>(&w);
    if (!r) throw InvalidArgument("extract: expected a congruence witness");
    ExtractOptions opts;
    if (route == "block") opts.route = ExtractRoute::block;
    else if (route == "decomposition") opts.route = ExtractRoute::decomposition;
    else if (route != "auto") throw InvalidArgument("extract: unknown route \"" + route + "\"");
    opts.decide = decide_opts(cfg, 1);
    opts.seed = trial_seed(cfg.seed, 2);
    Elem eps = parse_scalar(ab.field(), eps_s);
    Extraction ex = extract_similarity(*r, eps, ab[0], ab[1], cd[0], cd[1], opts);
    json doc = envelope(ab.field(), "extract", &cfg);
    doc["route_used"] = to_string(ex.route_used);
    doc["outside_verified_envelope"] = ex.outside_verified_envelope;
    doc["witness"] = to_json(Witness(ex.witness));
    return doc;
  });
}

json cmd_p35(const json& doc_in, const RunConfig& cfg) {
  MatTuple t = stage("input", [&] { return load_tuple(doc_in); });
  return stage("p35", [&] {
    check_pair(t, "p35");
    BigPair big = build_P35(t[0], t[1], cfg.mult);
    json doc = make_document(t.field());
    doc["n"] = big.n;
    doc["mult"] = mult_json(big.mult);
    doc["rank_m1"] = rank(big.m1());
    doc["rank_m2"] = rank(big.m2());
    doc["tuple"] = to_json(big.pair);
    return doc;
  });
}

json cmd_decide_sim(const json& doc1, const json& doc2, const RunConfig& cfg) {
  MatTuple t = stage("input", [&] { return load_tuple(doc1); });
  MatTuple u = stage("input", [&] { return load_tuple(doc2); });
  return stage("decide-sim", [&] {
    auto d = decide_similarity(t, u, decide_opts(cfg));
    json doc = envelope(t.field(), "decide-sim", &cfg);
    doc["similar"] = d.related();
    doc["trials_used"] = d.trials_used;
    doc["witness"] = d.witness ? to_json(Witness(*d.witness)) : json(nullptr);
    doc["certificate"] = d.certificate ? to_json(*d.certificate) : json(nullptr);
    return doc;
  });
}

json cmd_decompose(const json& doc_in, const RunConfig& cfg) {
  MatTuple t = stage("input", [&] { return load_tuple(doc_in); });
  return stage("decompose", [&] {
    Decomposition d = krull_schmidt(t, KrullSchmidtOptions{cfg.seed, 64});
    json doc = envelope(t.field(), "decompose", &cfg);
    json extents = json::array();
    for (auto [r, c] : d.extents()) extents.push_back(json::array({r, c}));
    doc["extents"] = extents;
    doc["decomposition"] = to_json(d);
    doc["witness"] = to_json(Witness(d.witness));
    doc["assembled"] = to_json(d.assembled());
    return doc;
  });
}

json cmd_encode_alg(const json& alg_doc) {
  AlgebraStructure alg = stage("input", [&] { return load_algebra(alg_doc); });
  return stage("encode-alg", [&] {
    EncodedPair e = encode_pair(alg);
    json doc = make_document(alg.field());
    doc["pair"] = to_json(MatTuple::pair(e.a, e.b));
    doc["basis"] = to_json(e.basis);
    return doc;
  });
}

json cmd_decode_alg(const json& doc_in) {
  MatTuple t = stage("input", [&] { return load_tuple(doc_in); });
  return stage("decode-alg", [&] {
    check_pair(t, "decode-alg");
    std::vector<std::string> warnings;
    AlgebraStructure alg = decode_pair(t[0], t[1], &warnings);
    json doc = make_document(t.field());
    doc["warnings"] = warnings;
    doc["algebra"] = to_json(alg);
    return doc;
  });
}

json cmd_adjoin(const json& alg_doc) {
  AlgebraStructure alg = stage("input", [&] { return load_algebra(alg_doc); });
  return stage("adjoin", [&] {
    json doc = make_document(alg.field());
    doc["algebra"] = to_json(adjoin_identity(alg));
    return doc;
  });
}

json cmd_radical(const json& alg_doc) {
  AlgebraStructure alg = stage("input", [&] { return load_algebra(alg_doc); });
  return stage("radical", [&] {
    RadicalInfo info = radical_and_local(alg);
    RadicalPowers pw = radical_powers(alg);
    json basis = json::array();
    for (const auto& v : info.radical) {
      json row = json::array();
      for (const auto& e : v) row.push_back(alg.field().format(e));
      basis.push_back(row);
    }
    json doc = make_document(alg.field());
    doc["dim"] = alg.dim();
    doc["radical_dim"] = pw.rad_dim;
    doc["radical2_dim"] = pw.rad2_dim;
    doc["radical3_dim"] = pw.rad3_dim;
    doc["is_local"] = info.is_local;
    doc["radical_basis"] = basis;
    return doc;
  });
}

json cmd_wild_instance(const json& doc_in, const RunConfig& cfg) {
  MatTuple t = stage("input", [&] { return load_tuple(doc_in); });
  return stage("wild-instance", [&] {
    check_pair(t, "wild-instance");
    WildInstance w = wild_instance(t[0], t[1], cfg.mult);
    json doc = make_document(t.field());
    doc["n"] = w.pair.n;
    doc["mult"] = mult_json(w.pair.mult);
    doc["dim"] = w.algebra.dim();
    doc["checks"] = {{"radical_dim", w.checks.rad_dim},
                     {"radical2_dim", w.checks.rad2_dim},
                     {"radical3_dim", w.checks.rad3_dim},
                     {"is_local", w.checks.is_local}};
    doc["algebra"] = to_json(w.algebra);
    return doc;
  });
}

json cmd_oracle(const std::string& relation, const json& doc1, const json& doc2, const RunConfig& cfg) {
  MatTuple t = stage("input", [&] { return load_tuple(doc1); });
  MatTuple u = stage("input", [&] { return load_tuple(doc2); });
  return stage("oracle", [&] {
    BruteforceOptions bo{cfg.budget, cfg.threads, FastReject::cross_check};
    SearchReport rep;
    if (relation == "congruence") rep = decide_congruence_exhaustive(t, u, bo);
    else if (relation == "pairclass") rep = decide_pair_class_exhaustive(t, u, bo);
    else throw InvalidArgument("oracle: unknown relation \"" + relation + "\"");
    json doc = envelope(t.field(), "oracle " + relation, &cfg);
    doc["report"] = to_json(rep, cfg.timing);
    doc["witness"] = rep.found ? to_json(*rep.found) : json(nullptr);
    return doc;
  });
}

json cmd_verify(const json& doc1, const std::string& ptr1, const json& doc2, const std::string& ptr2,
                const json& witness_doc, const std::string& witness_ptr, const RunConfig& cfg) {
  return stage("verify", [&] {
    Field f = document_field(witness_doc);
    const json& wj = payload(witness_doc, witness_ptr, {"witness"});
    json doc = make_document(f);
    doc["command"] = "verify";
    std::string kind = wj.at("kind").get<std::string>();
    doc["kind"] = kind;
    if (kind == "algebra_iso") {
      Mat phi = mat_from_json(f, wj.at("phi"));
      auto side = [&](const json& d, const std::string& p) {
        const json& body = payload(d, p, {"algebra", "pair", "tuple"});
        Field fd = document_field(d);
        if (body.contains("gamma")) return algebra_from_json(fd, body);
        MatTuple t = tuple_from_json(fd, body);
        check_pair(t, "verify");
        Multiplicities m = cfg.mult;
        if (wj.contains("mult")) {
          auto v = wj.at("mult").get<std::vector<std::size_t>>();
          m = Multiplicities{v.at(0), v.at(1), v.at(2)};
        }
        return wild_instance(t[0], t[1], m).algebra;
      };
      doc["verified"] = verify_algebra_iso(side(doc1, ptr1), side(doc2, ptr2), phi);
      return doc;
    }
    Witness w = witness_from_json(f, wj);
    doc["verified"] = verify_witness(w, load_tuple(doc1, ptr1), load_tuple(doc2, ptr2));
    return doc;
  });
}

std::vector<std::string> theorem_names() {
  return {"thm21-forward", "thm21-backward-desk", "thm3-forward", "ranksep"};
}

json cmd_verify_theorem(const std::string& which, const RunConfig& cfg) {
  return stage(which, [&] {
    if (which == "thm21-forward") return thm21_forward(cfg);
    if (which == "thm21-backward-desk") return thm21_backward_desk(cfg);
    if (which == "thm3-forward") return thm3_forward(cfg);
    if (which == "ranksep") return ranksep(cfg);
    throw InvalidArgument("unknown theorem \"" + which + "\"");
  });
}

json cmd_pipeline(const json& doc1, const json& doc2, const RunConfig& cfg, const std::string& eps_s) {
  MatTuple ab = stage("input", [&] {
    MatTuple t = load_tuple(doc1);
    check_pair(t, "input");
    return t;
  });
  MatTuple cd = stage("input", [&] {
    MatTuple t = load_tuple(doc2);
    check_pair(t, "input");
    if (!(t.field() == ab.field())) throw FieldMismatch("the two inputs live over different fields");
    if (t.rows() != ab.rows())
      throw DimensionMismatch("extents differ (" + std::to_string(ab.rows()) + " vs " +
                              std::to_string(t.rows()) + ")");
    return t;
  });
  const Field& f = ab.field();
  const Elem eps = stage("input", [&] { return parse_scalar(f, eps_s); });

  json doc = envelope(f, "pipeline", &cfg);
  doc["pair1"] = to_json(ab);
  doc["pair2"] = to_json(cd);
  doc["epsilon"] = f.format(eps);
  json steps = json::object();

  auto decision = stage("decide", [&] { return decide_similarity(ab, cd, decide_opts(cfg)); });
  steps["decide"] = {{"similar", decision.related()},
                     {"trials_used", decision.trials_used},
                     {"witness", decision.witness ? to_json(Witness(*decision.witness)) : json(nullptr)},
                     {"certificate", decision.certificate ? to_json(*decision.certificate) : json(nullptr)}};
  if (!decision.related()) {
    for (const char* s : {"gadget", "transport", "extract", "algebra"})
      steps[s] = {{"skipped", true}, {"reason", "pairs are not similar"}};
    doc["steps"] = steps;
    doc["complete"] = false;
    return doc;
  }
  const SimilarityWitness& s = *decision.witness;

  GadgetPair g1 = stage("gadget", [&] { return build_T(eps, ab[0], ab[1]); });
  GadgetPair g2 = stage("gadget", [&] { return build_T(eps, cd[0], cd[1]); });
  steps["gadget"] = {{"gadget1", to_json(g1.pair)},
                     {"gadget2", to_json(g2.pair)},
                     {"symmetry", to_string(classify_symmetry(g1))}};

  CongruenceWitness r = stage("transport", [&] { return transport_witness(s, eps, ab[0], ab[1]); });
  steps["transport"] = {{"witness", to_json(Witness(r))}, {"verified", verify_witness(r, g1.pair, g2.pair)}};

  Extraction ex = stage("extract", [&] {
    ExtractOptions opts;
    opts.decide = decide_opts(cfg, 1);
    opts.seed = trial_seed(cfg.seed, 2);
    return extract_similarity(r, eps, ab[0], ab[1], cd[0], cd[1], opts);
  });
  steps["extract"] = {{"witness", to_json(Witness(ex.witness))},
                      {"route_used", to_string(ex.route_used)},
                      {"outside_verified_envelope", ex.outside_verified_envelope},
                      {"verified", verify_witness(ex.witness, ab, cd)}};

  json alg = stage("algebra", [&] {
    WildInstance w1 = wild_instance(ab[0], ab[1], cfg.mult);
    WildInstance w2 = wild_instance(cd[0], cd[1], cfg.mult);
    Mat phi = wild_instance_iso(ex.witness, ab[0], ab[1], cfg.mult);
    Mat big = transport_P35(ex.witness, ab[0], ab[1], cfg.mult);
    return json{{"dim", w1.algebra.dim()},
                {"checks", {{"radical_dim", w1.checks.rad_dim},
                            {"radical2_dim", w1.checks.rad2_dim},
                            {"radical3_dim", w1.checks.rad3_dim},
                            {"is_local", w1.checks.is_local && w2.checks.is_local}}},
                {"p35_witness",
                 to_json(Witness(PairClassWitness(big, SubstitutionMatrix::identity(f))))},
                {"witness", {{"kind", "algebra_iso"}, {"mult", mult_json(cfg.mult)}, {"phi", to_json(phi)}}},
                {"verified", verify_algebra_iso(w1.algebra, w2.algebra, phi)}};
  });
  steps["algebra"] = alg;
  doc["steps"] = steps;
  doc["complete"] = true;
  return doc;
}

}  // namespace wildpairs
