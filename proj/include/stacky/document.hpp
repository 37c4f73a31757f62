#pragma once

// JSON fan documents (schema_version "1"):
//
//   {
//     "schema_version": "1",
//     "N": {"rank": 2, "torsion": [2]},
//     "beta": [[-2, -2, 1], [3, 0, 1], [0, 5, 1]],   // column j lifts beta(e_j)
//     "max_cones": [[0, 1], [0, 2], [1, 2]],
//     "polytopal": true,
//     "metadata": {"name": "...", "labels": [...], "description": "..."}
//   }
//
// Integers beyond the 53-bit safe range are written as decimal strings; the
// reader accepts either form.

#include "stacky/error.hpp"
#include "stacky/stackyfan.hpp"
#include "stacky/zlinalg.hpp"

#include <json.hpp>  // nlohmann/json, vendored

#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace stacky {

using json = nlohmann::json;

inline constexpr const char* kSchemaVersion = "1";

inline json integer_to_json(const Integer& x) {
  static const Integer safe("9007199254740991");
  if (abs(x) <= safe) return json(x.get_si());
  return json(x.get_str());
}

inline Integer integer_from_json(const json& j, const std::string& where) {
  if (j.is_number_integer()) {
    if (j.is_number_unsigned()) return Integer(std::to_string(j.get<std::uint64_t>()));
    return Integer(std::to_string(j.get<std::int64_t>()));
  }
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    Integer x;
    const bool digits = !s.empty() && s.find_first_not_of("-0123456789") == std::string::npos &&
                        s.find('-', 1) == std::string::npos && s != "-";
    if (!digits || x.set_str(s, 10) != 0)
      throw Error(ErrorKind::ParseError, where + ": not an integer: \"" + s + "\"");
    return x;
  }
  throw Error(ErrorKind::ParseError, where + ": expected an integer");
}

inline std::size_t index_from_json(const json& j, const std::string& where) {
  if (!j.is_number_integer() || j.get<std::int64_t>() < 0)
    throw Error(ErrorKind::ParseError, where + ": expected a non-negative integer");
  return j.get<std::size_t>();
}

inline json vector_to_json(const IntVector& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(integer_to_json(x));
  return a;
}

inline json group_to_json(const FgAbelianGroup& g) {
  return {{"free_rank", g.free_rank},
          {"invariant_factors", vector_to_json(g.invariant_factors)},
          {"text", g.to_string()}};
}

struct FanDocument {
  std::string schema_version = kSchemaVersion;
  AmbientModule n_module;
  IntMatrix beta;  ///< (d+l) x n
  std::vector<Cone> max_cones;
  bool polytopal = false;
  json metadata = json::object();
};

inline FanDocument document_from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ParseError, "document must be a JSON object");
  auto need = [&](const char* key) -> const json& {
    if (!j.contains(key)) throw Error(ErrorKind::ParseError, std::string("missing \"") + key + "\"");
    return j.at(key);
  };
  FanDocument doc;
  const json& version = need("schema_version");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
    throw Error(ErrorKind::ParseError, "unsupported schema_version");
  doc.schema_version = version.get<std::string>();

  const json& n = need("N");
  if (!n.is_object() || !n.contains("rank"))
    throw Error(ErrorKind::ParseError, "\"N\" needs \"rank\"");
  doc.n_module.free_rank = index_from_json(n.at("rank"), "N.rank");
  if (n.contains("torsion")) {
    if (!n.at("torsion").is_array()) throw Error(ErrorKind::ParseError, "N.torsion must be an array");
    for (const auto& q : n.at("torsion"))
      doc.n_module.torsion_orders.push_back(integer_from_json(q, "N.torsion"));
  }

  const json& beta = need("beta");
  if (!beta.is_array()) throw Error(ErrorKind::ParseError, "\"beta\" must be an array of columns");
  std::vector<IntVector> cols;
  for (std::size_t c = 0; c < beta.size(); ++c) {
    const auto where = "beta[" + std::to_string(c) + "]";
    if (!beta[c].is_array()) throw Error(ErrorKind::ParseError, where + " must be an array");
    IntVector col;
    for (const auto& x : beta[c]) col.push_back(integer_from_json(x, where));
    if (col.size() != doc.n_module.lift_dim())
      throw Error(ErrorKind::ParseError, where + " has " + std::to_string(col.size()) +
                                             " entries, expected " +
                                             std::to_string(doc.n_module.lift_dim()));
    cols.push_back(std::move(col));
  }
  doc.beta = IntMatrix::from_columns(cols, doc.n_module.lift_dim());

  const json& cones = need("max_cones");
  if (!cones.is_array()) throw Error(ErrorKind::ParseError, "\"max_cones\" must be an array");
  for (const auto& c : cones) {
    if (!c.is_array()) throw Error(ErrorKind::ParseError, "each cone must be an array");
    Cone cone;
    for (const auto& i : c) cone.push_back(index_from_json(i, "max_cones"));
    doc.max_cones.push_back(std::move(cone));
  }

  if (j.contains("polytopal")) {
    if (!j.at("polytopal").is_boolean())
      throw Error(ErrorKind::ParseError, "\"polytopal\" must be a boolean");
    doc.polytopal = j.at("polytopal").get<bool>();
  }
  if (j.contains("metadata")) {
    if (!j.at("metadata").is_object())
      throw Error(ErrorKind::ParseError, "\"metadata\" must be an object");
    doc.metadata = j.at("metadata");
  }
  return doc;
}

inline FanDocument parse_document(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  return document_from_json(j);
}

inline FanDocument read_document(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::IoError, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_document(ss.str());
}

inline json document_to_json(const FanDocument& doc) {
  json beta = json::array();
  for (std::size_t c = 0; c < doc.beta.cols(); ++c) beta.push_back(vector_to_json(doc.beta.column(c)));
  json cones = json::array();
  for (const auto& c : doc.max_cones) cones.push_back(c);
  return {{"schema_version", doc.schema_version},
          {"N", {{"rank", doc.n_module.free_rank}, {"torsion", vector_to_json(doc.n_module.torsion_orders)}}},
          {"beta", beta},
          {"max_cones", cones},
          {"polytopal", doc.polytopal},
          {"metadata", doc.metadata}};
}

inline void write_document(const FanDocument& doc, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path);
  out << document_to_json(doc).dump(2) << '\n';
  if (!out) throw Error(ErrorKind::IoError, "write failed for " + path);
}

inline FanDocument document_from_fan(const StackyFan& fan, json metadata = json::object()) {
  return {kSchemaVersion, fan.module(), fan.lift(), fan.max_cones(), fan.polytopal(),
          std::move(metadata)};
}

inline StackyFan fan_from_document(const FanDocument& doc) {
  return make_stacky_fan(doc.n_module, doc.beta, doc.max_cones, doc.polytopal);
}

}  // namespace stacky
