#include <CLI11.hpp>
#include <iostream>

#include "wildpairs/commands.hpp"

using namespace wildpairs;

namespace {

struct Common {
  std::string field;
  std::uint64_t seed = 0;
  std::size_t trials = 0;
  std::uint64_t budget = 35'000'000;
  std::size_t threads = 1;
  std::string mult = "20,10,1";
  bool timing = false;
  std::string out;
};

RunConfig config(const Common& c, const char* default_field) {
  RunConfig cfg;
  cfg.field = parse_field_spec(c.field.empty() ? default_field : c.field);
  cfg.seed = c.seed;
  cfg.trials = c.trials;
  cfg.budget = c.budget;
  cfg.threads = c.threads;
  cfg.mult = parse_mult(c.mult);
  cfg.timing = c.timing;
  return cfg;
}

// "file.json" or "file.json#/json/pointer". A pointer re-roots the payload
// under `key` so commands see an ordinary document.
json input(const std::string& spec, const char* key) {
  auto hash = spec.find('#');
  json doc = read_json_file(spec.substr(0, hash));
  if (hash == std::string::npos) return doc;
  std::string pointer = spec.substr(hash + 1);
  json out = make_document(document_field(doc));
  try {
    out[key] = doc.at(json::json_pointer(pointer));
  } catch (const json::exception& e) {
    throw ParseError(spec + ": " + e.what());
  }
  return out;
}

std::pair<json, std::string> input_with_pointer(const std::string& spec) {
  auto hash = spec.find('#');
  json doc = read_json_file(spec.substr(0, hash));
  return {doc, hash == std::string::npos ? "" : spec.substr(hash + 1)};
}

void emit(const Common& c, const json& doc) {
  if (c.out.empty()) std::cout << dump(doc);
  else write_json_file(c.out, doc);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact tools for matrix pairs, gadgets, and the algebras they encode"};
  app.require_subcommand(1);
  app.fallthrough();
  Common c;
  app.add_option("--field", c.field, "P or P,2 (default 10007; 3 for oracle runs)");
  app.add_option("--seed", c.seed, "seed of all randomness");
  app.add_option("--trials", c.trials, "trial count (0: command default)");
  app.add_option("--budget", c.budget, "exhaustive search budget");
  app.add_option("--threads", c.threads, "worker threads for exhaustive scans");
  app.add_option("--mult", c.mult, "padding multiplicities a,b,c");
  app.add_flag("--timing", c.timing, "include wall-clock times (breaks byte reproducibility)");
  app.add_option("--out", c.out, "output file (default stdout)");

  std::string in, in1, in2, witness, eps = "0", route = "auto", sim;
  std::size_t n = 2;

  auto* gen = app.add_subcommand("gen", "generate seeded instances");
  gen->require_subcommand(1);
  auto* gen_pair = gen->add_subcommand("pair", "random pair of n x n matrices");
  gen_pair->add_option("--n", n);
  auto* gen_sim = gen->add_subcommand("similar-pair-instance", "((A,B), S^-1 (A,B) S, S)");
  gen_sim->add_option("--n", n);
  auto* gen_alg = gen->add_subcommand("algebra", "algebra decoded from a pair");
  gen_alg->add_option("--from-pair", in)->required();

  auto* gadget = app.add_subcommand("gadget", "build T_eps(A,B)");
  gadget->add_option("--in", in)->required();
  gadget->add_option("--eps", eps);

  auto* transport = app.add_subcommand("transport", "carry a similarity to a gadget *congruence");
  transport->add_option("--in", in)->required();
  transport->add_option("--sim", sim)->required();
  transport->add_option("--eps", eps);

  auto* extract = app.add_subcommand("extract", "recover a similarity from a gadget *congruence");
  extract->add_option("--in1", in1)->required();
  extract->add_option("--in2", in2)->required();
  extract->add_option("--witness", witness)->required();
  extract->add_option("--eps", eps);
  extract->add_option("--route", route, "auto, block or decomposition");

  auto* p35 = app.add_subcommand("p35", "the padded pair (M1, M2)");
  p35->add_option("--in", in)->required();

  auto* decide = app.add_subcommand("decide-sim", "randomized simultaneous similarity test");
  decide->add_option("--in1", in1)->required();
  decide->add_option("--in2", in2)->required();

  auto* decompose = app.add_subcommand("decompose", "Krull-Schmidt decomposition of a tuple");
  decompose->add_option("--in", in)->required();

  auto* encode = app.add_subcommand("encode-alg", "algebra to pair");
  encode->add_option("--in", in)->required();
  auto* decode = app.add_subcommand("decode-alg", "pair to algebra");
  decode->add_option("--in", in)->required();
  auto* adjoin = app.add_subcommand("adjoin", "adjoin an identity");
  adjoin->add_option("--in", in)->required();
  auto* radical = app.add_subcommand("radical", "radical and locality of a unital algebra");
  radical->add_option("--in", in)->required();
  auto* wild = app.add_subcommand("wild-instance", "the local algebra attached to a pair");
  wild->add_option("--in", in)->required();

  std::string relation;
  auto* oracle = app.add_subcommand("oracle", "exhaustive congruence / pair-class search");
  oracle->add_option("relation", relation)->required()->check(CLI::IsMember({"congruence", "pairclass"}));
  oracle->add_option("--in1", in1)->required();
  oracle->add_option("--in2", in2)->required();

  auto* verify = app.add_subcommand("verify", "replay a witness (inputs accept file#/pointer)");
  verify->add_option("--in1", in1)->required();
  verify->add_option("--in2", in2)->required();
  verify->add_option("--witness", witness)->required();

  std::string theorem;
  auto* vthm = app.add_subcommand("verify-theorem", "seeded checks of the main statements");
  vthm->add_option("which", theorem)->required()->check(CLI::IsMember(theorem_names()));

  auto* pipeline = app.add_subcommand("pipeline", "decide, transport, extract, build algebras");
  pipeline->add_option("--in1", in1)->required();
  pipeline->add_option("--in2", in2)->required();
  pipeline->add_option("--eps", eps);

  CLI11_PARSE(app, argc, argv);

  try {
    if (gen_pair->parsed()) emit(c, cmd_gen_pair(config(c, "10007"), n));
    else if (gen_sim->parsed()) emit(c, cmd_gen_similar_pair_instance(config(c, "10007"), n));
    else if (gen_alg->parsed()) emit(c, cmd_gen_algebra_from_pair(input(in, "pair")));
    else if (gadget->parsed()) emit(c, cmd_gadget(input(in, "pair"), eps));
    else if (transport->parsed()) emit(c, cmd_transport(input(in, "pair"), input(sim, "witness"), eps));
    else if (extract->parsed())
      emit(c, cmd_extract(input(in1, "pair"), input(in2, "pair"), input(witness, "witness"), eps,
                          config(c, "10007"), route));
    else if (p35->parsed()) emit(c, cmd_p35(input(in, "pair"), config(c, "10007")));
    else if (decide->parsed()) emit(c, cmd_decide_sim(input(in1, "pair"), input(in2, "pair"), config(c, "10007")));
    else if (decompose->parsed()) emit(c, cmd_decompose(input(in, "tuple"), config(c, "10007")));
    else if (encode->parsed()) emit(c, cmd_encode_alg(input(in, "algebra")));
    else if (decode->parsed()) emit(c, cmd_decode_alg(input(in, "pair")));
    else if (adjoin->parsed()) emit(c, cmd_adjoin(input(in, "algebra")));
    else if (radical->parsed()) emit(c, cmd_radical(input(in, "algebra")));
    else if (wild->parsed()) emit(c, cmd_wild_instance(input(in, "pair"), config(c, "10007")));
    else if (oracle->parsed())
      emit(c, cmd_oracle(relation, input(in1, "pair"), input(in2, "pair"), config(c, "3")));
    else if (verify->parsed()) {
      auto [d1, p1] = input_with_pointer(in1);
      auto [d2, p2] = input_with_pointer(in2);
      auto [dw, pw] = input_with_pointer(witness);
      emit(c, cmd_verify(d1, p1, d2, p2, dw, pw, config(c, "10007")));
    } else if (vthm->parsed())
      emit(c, cmd_verify_theorem(theorem, config(c, theorem == "thm21-backward-desk" ? "3" : "10007")));
    else if (pipeline->parsed())
      emit(c, cmd_pipeline(input(in1, "pair"), input(in2, "pair"), config(c, "10007"), eps));
  } catch (const Error& e) {
    json err{{"error", e.kind()}, {"message", e.what()}};
    std::cerr << err.dump() << "\n";
    return 2;
  }
  return 0;
}
