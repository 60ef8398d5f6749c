#pragma once

// The command layer behind the CLI: every command takes parsed JSON inputs
// and a RunConfig and returns a JSON document. File and process handling
// live in tools/.

#include <cstdint>
#include <string>
#include <vector>

#include "wildpairs/gadgets.hpp"
#include "wildpairs/serialize.hpp"

namespace wildpairs {

struct RunConfig {
  Field field = Field::make(10007, 1);
  std::uint64_t seed = 0;
  std::size_t trials = 0;  // 0: the command's default
  std::uint64_t budget = 35'000'000;
  std::size_t threads = 1;
  Multiplicities mult{};
  bool timing = false;
};

/// "P" or "P,2".
Field parse_field_spec(const std::string& s);
/// "a,b,c".
Multiplicities parse_mult(const std::string& s);
json to_json(const RunConfig& c);

/// Error raised by a command stage; the message names the stage.
class StageError : public Error {
 public:
  StageError(std::string stage, const Error& cause)
      : Error("stage " + stage + ": " + cause.what()), stage_(std::move(stage)), cause_(cause.kind()) {}
  const char* kind() const noexcept override { return cause_.c_str(); }
  const std::string& stage() const { return stage_; }

 private:
  std::string stage_, cause_;
};

/// A tuple out of a document: the payload at `pointer` when given, else the
/// first of "pair", "tuple", "pair1".
MatTuple load_tuple(const json& doc, const std::string& pointer = "");
Witness load_witness(const json& doc, const std::string& pointer = "");
AlgebraStructure load_algebra(const json& doc, const std::string& pointer = "");

// gen
json cmd_gen_pair(const RunConfig& cfg, std::size_t n);
/// {"pair1": (A,B), "pair2": (C,D), "witness": S} with (C,D) = S^-1 (A,B) S.
json cmd_gen_similar_pair_instance(const RunConfig& cfg, std::size_t n);
json cmd_gen_algebra_from_pair(const json& pair_doc);

// gadgets
json cmd_gadget(const json& pair_doc, const std::string& eps);
/// Pair document and similarity witness in; gadget pair of the conjugated
/// pair and the congruence witness out.
json cmd_transport(const json& pair_doc, const json& sim_doc, const std::string& eps);
json cmd_extract(const json& pair1_doc, const json& pair2_doc, const json& witness_doc,
                 const std::string& eps, const RunConfig& cfg, const std::string& route = "auto");
json cmd_p35(const json& pair_doc, const RunConfig& cfg);

// homspace
json cmd_decide_sim(const json& doc1, const json& doc2, const RunConfig& cfg);
json cmd_decompose(const json& doc, const RunConfig& cfg);

// algebras
json cmd_encode_alg(const json& alg_doc);
json cmd_decode_alg(const json& pair_doc);
json cmd_adjoin(const json& alg_doc);
json cmd_radical(const json& alg_doc);
json cmd_wild_instance(const json& pair_doc, const RunConfig& cfg);

// bruteforce
json cmd_oracle(const std::string& relation, const json& doc1, const json& doc2, const RunConfig& cfg);

/// Replays a witness between two inputs. Supports every tuple witness kind
/// and "algebra_iso" (between algebras, or between the wild instances of
/// two pairs).
json cmd_verify(const json& doc1, const std::string& ptr1, const json& doc2, const std::string& ptr2,
                const json& witness_doc, const std::string& witness_ptr, const RunConfig& cfg);

/// "thm21-forward", "thm21-backward-desk", "thm3-forward", "ranksep".
json cmd_verify_theorem(const std::string& which, const RunConfig& cfg);
std::vector<std::string> theorem_names();

/// gadget -> transport -> extract -> wild instances -> algebra isomorphism.
json cmd_pipeline(const json& doc1, const json& doc2, const RunConfig& cfg, const std::string& eps = "0");

}  // namespace wildpairs
