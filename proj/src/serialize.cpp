#include "wildpairs/serialize.hpp"

#include <fstream>
#include <sstream>

namespace wildpairs {

namespace {

// Runs a decoder, turning JSON access errors into ParseError.
template <class F>
auto decoding(const char* what, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw ParseError(std::string(what) + ": " + e.what());
  }
}

const json& need(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key))
    throw ParseError(std::string("missing key \"") + key + "\"");
  return j.at(key);
}

}  // namespace

json to_json(const Field& f) { return json{{"p", f.p()}, {"deg", f.degree()}}; }

Field field_from_json(const json& j) {
  return decoding("field", [&] {
    return Field::make(need(j, "p").get<std::uint32_t>(), need(j, "deg").get<int>());
  });
}

json to_json(const Field& f, Elem e) { return f.format(e); }

Elem elem_from_json(const Field& f, const json& j) {
  return decoding("scalar", [&] {
    if (j.is_number_integer()) return f.from_int(j.get<std::int64_t>());
    return f.parse(j.get<std::string>());
  });
}

json to_json(const Mat& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m.field().format(m(i, j)));
    rows.push_back(std::move(row));
  }
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", std::move(rows)}};
}

Mat mat_from_json(const Field& f, const json& j) {
  return decoding("matrix", [&] {
    auto rows = need(j, "rows").get<std::size_t>(), cols = need(j, "cols").get<std::size_t>();
    const json& e = need(j, "entries");
    if (!e.is_array() || e.size() != rows) throw ParseError("matrix: entries do not match rows");
    Mat m(f, rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!e[i].is_array() || e[i].size() != cols)
        throw ParseError("matrix: row " + std::to_string(i) + " does not match cols");
      for (std::size_t k = 0; k < cols; ++k) m(i, k) = elem_from_json(f, e[i][k]);
    }
    return m;
  });
}

json to_json(const MatTuple& t) {
  json mats = json::array();
  for (const auto& m : t.mats()) mats.push_back(to_json(m));
  return json{{"t", t.size()}, {"mats", std::move(mats)}};
}

MatTuple tuple_from_json(const Field& f, const json& j) {
  return decoding("tuple", [&] {
    const json& mats = need(j, "mats");
    std::vector<Mat> out;
    for (const auto& m : mats) out.push_back(mat_from_json(f, m));
    if (j.contains("t") && j.at("t").get<std::size_t>() != out.size())
      throw ParseError("tuple: \"t\" does not match the number of matrices");
    return MatTuple(std::move(out));
  });
}

json to_json(const Witness& w) {
  json j{{"kind", witness_kind(w)}};
  std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<T, EquivalenceWitness>) {
          j["R"] = to_json(x.R());
          j["S"] = to_json(x.S());
        } else if constexpr (std::is_same_v<T, SubstitutionMatrix>) {
          j["r"] = to_json(x.matrix());
        } else if constexpr (std::is_same_v<T, PairClassWitness>) {
          j["S"] = to_json(x.S());
          j["r"] = to_json(x.r().matrix());
        } else {
          j["S"] = to_json(x.S());
        }
      },
      w);
  return j;
}

Witness witness_from_json(const Field& f, const json& j) {
  return decoding("witness", [&]() -> Witness {
    std::string kind = need(j, "kind").get<std::string>();
    auto m = [&](const char* key) { return mat_from_json(f, need(j, key)); };
    if (kind == "equivalence") return EquivalenceWitness(m("R"), m("S"));
    if (kind == "congruence") return CongruenceWitness(m("S"));
    if (kind == "similarity") return SimilarityWitness(m("S"));
    if (kind == "substitution") return SubstitutionMatrix(m("r"));
    if (kind == "pair_class") return PairClassWitness(m("S"), SubstitutionMatrix(m("r")));
    throw ParseError("witness: unknown kind \"" + kind + "\"");
  });
}

json to_json(const Morphism& m) {
  return json{{"in_map", to_json(m.in_map)}, {"out_map", to_json(m.out_map)}};
}

Morphism morphism_from_json(const Field& f, const json& j) {
  return Morphism{mat_from_json(f, need(j, "in_map")), mat_from_json(f, need(j, "out_map"))};
}

json to_json(const AlgebraStructure& a) {
  const Field& f = a.field();
  const std::size_t d = a.dim();
  json gamma = json::array();
  for (std::size_t i = 0; i < d; ++i) {
    json gi = json::array();
    for (std::size_t j = 0; j < d; ++j) {
      json gij = json::array();
      for (std::size_t k = 0; k < d; ++k) gij.push_back(f.format(a.gamma(i, j, k)));
      gi.push_back(std::move(gij));
    }
    gamma.push_back(std::move(gi));
  }
  json unital = a.unital() ? json(*a.unital()) : json(nullptr);
  return json{{"dim", d}, {"unital", unital}, {"gamma", std::move(gamma)}};
}

AlgebraStructure algebra_from_json(const Field& f, const json& j) {
  return decoding("algebra", [&] {
    auto d = need(j, "dim").get<std::size_t>();
    std::optional<std::size_t> unital;
    if (j.contains("unital") && !j.at("unital").is_null()) unital = j.at("unital").get<std::size_t>();
    const json& g = need(j, "gamma");
    Vec constants(d * d * d);
    if (g.size() != d) throw ParseError("algebra: gamma has the wrong shape");
    for (std::size_t i = 0; i < d; ++i) {
      if (g[i].size() != d) throw ParseError("algebra: gamma has the wrong shape");
      for (std::size_t k2 = 0; k2 < d; ++k2) {
        if (g[i][k2].size() != d) throw ParseError("algebra: gamma has the wrong shape");
        for (std::size_t k = 0; k < d; ++k) constants[(i * d + k2) * d + k] = elem_from_json(f, g[i][k2][k]);
      }
    }
    return AlgebraStructure(f, d, std::move(constants), unital);
  });
}

json to_json(const NoInstanceCertificate& c) {
  json j{{"exact", c.exact}, {"reason", c.reason}};
  if (!c.exact) {
    j["trials"] = c.trials;
    j["hom_dim"] = c.hom_dim;
    j["failure_bound"] = c.failure_bound;
  }
  return j;
}

json to_json(const Decomposition& d) {
  json summands = json::array();
  for (std::size_t i = 0; i < d.summands.size(); ++i) {
    json s{{"tuple", to_json(d.summands[i])}};
    if (i < d.certificates.size()) {
      const auto& c = d.certificates[i];
      s["certificate"] = {{"end_dim", c.end_dim},
                          {"radical_dim", c.radical_dim},
                          {"residue_degree", c.residue_degree}};
    }
    summands.push_back(std::move(s));
  }
  return json{{"summands", std::move(summands)}, {"witness", to_json(Witness(d.witness))}};
}

json to_json(const InvariantVerdict& v) {
  return json{{"separated", v.separated}, {"reason", v.reason}};
}

json to_json(const SearchReport& r, bool with_timing) {
  json j{{"relation", r.relation},
         {"found", r.found ? to_json(*r.found) : json(nullptr)},
         {"states_examined", r.states_examined},
         {"search_space_size", r.search_space_size},
         {"scanned", r.scanned},
         {"invariant", r.invariant ? to_json(*r.invariant) : json(nullptr)},
         {"invariant_agrees", r.invariant_agrees}};
  if (with_timing) j["elapsed_seconds"] = r.elapsed_seconds;
  return j;
}

json make_document(const Field& f) {
  return json{{"schema_version", kSchemaVersion}, {"field", to_json(f)}};
}

Field document_field(const json& doc) {
  return decoding("document", [&] {
    int v = need(doc, "schema_version").get<int>();
    if (v != kSchemaVersion)
      throw ParseError("document: unsupported schema_version " + std::to_string(v));
    return field_from_json(need(doc, "field"));
  });
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidArgument("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParseError(path + ": " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

void write_json_file(const std::string& path, const json& doc) {
  std::ofstream out(path);
  if (!out) throw InvalidArgument("cannot write " + path);
  out << dump(doc);
}

}  // namespace wildpairs
