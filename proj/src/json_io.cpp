#include "jtree/json_io.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>

#include "jtree/errors.hpp"
#include "jtree/rational.hpp"

namespace jtree {

double round15(double x) {
  if (x == 0.0) return 0.0;
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", x);
  return std::strtod(buf, nullptr);
}

Json json_number(double x) { return Json(round15(x)); }

Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(Errc::schema, "cannot open " + path);
  Json j = Json::parse(in, nullptr, false);
  if (j.is_discarded()) fail(Errc::schema, "malformed JSON in " + path);
  return j;
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) fail(Errc::schema, "cannot write " + path);
  out << j.dump(2) << "\n";
}

TreePrefix tree_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nodes") || !j["nodes"].is_array())
    fail(Errc::schema, "tree JSON needs a \"nodes\" array");
  std::vector<std::pair<NodeId, NodeId>> spec;
  for (const Json& entry : j["nodes"]) {
    if (!entry.is_object() || !entry.contains("id") || !entry.contains("parent") ||
        !entry["id"].is_number_integer())
      fail(Errc::schema, "tree node entries need integer \"id\" and \"parent\"|null");
    NodeId id = entry["id"].get<NodeId>();
    NodeId parent = kRoot;
    if (!entry["parent"].is_null()) {
      if (!entry["parent"].is_number_integer())
        fail(Errc::schema, "tree parent must be an integer or null");
      parent = entry["parent"].get<NodeId>();
    }
    spec.emplace_back(id, parent);
  }
  return TreePrefix::build(spec);
}

Json tree_to_json(const TreePrefix& t) {
  Json nodes = Json::array();
  for (NodeId v : t.node_list()) {
    Json entry;
    entry["id"] = v;
    NodeId p = t.parent(v);
    if (p == kRoot)
      entry["parent"] = nullptr;
    else
      entry["parent"] = p;
    nodes.push_back(std::move(entry));
  }
  return Json{{"nodes", std::move(nodes)}};
}

SparseVector vector_from_json(const Json& j) {
  if (!j.is_object()) fail(Errc::schema, "vector JSON must be an object {node: value}");
  SparseVector x;
  for (const auto& [key, val] : j.items()) {
    NodeId node = 0;
    try {
      std::size_t used = 0;
      node = std::stoi(key, &used);
      if (used != key.size()) throw std::invalid_argument(key);
    } catch (const std::exception&) {
      fail(Errc::schema, "vector keys must be node labels, got \"" + key + "\"");
    }
    if (node <= 0) fail(Errc::schema, "vector keys must be positive node labels");
    double value = 0.0;
    if (val.is_number())
      value = val.get<double>();
    else if (val.is_string())
      value = to_double(parse_rational(val.get<std::string>()));
    else
      fail(Errc::schema, "vector values must be numbers or \"num/den\" strings");
    if (value != 0.0) x.set(node, value);
  }
  return x;
}

Json vector_to_json(const SparseVector& x) {
  Json j = Json::object();
  for (const auto& [v, a] : x.entries()) j[std::to_string(v)] = json_number(a);
  return j;
}

JTGParams params_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("m") || !j.contains("n") || !j.contains("gamma"))
    fail(Errc::schema, "params JSON needs \"m\", \"n\" and \"gamma\"");
  JTGParams p;
  for (const Json& v : j["m"]) {
    if (!v.is_number_integer()) fail(Errc::schema, "\"m\" must hold integers");
    p.m.push_back(v.get<int>());
  }
  for (const Json& v : j["n"]) {
    if (!v.is_number_integer()) fail(Errc::schema, "\"n\" must hold integers");
    p.n.push_back(v.get<int>());
  }
  if (!j["gamma"].is_object() || !j["gamma"].contains("root"))
    fail(Errc::schema, "\"gamma\" must be an object with a \"root\" entry");
  for (const auto& [key, val] : j["gamma"].items()) {
    if (!val.is_number_integer()) fail(Errc::schema, "gamma values must be integers");
    if (key == "root") {
      p.gamma_root = val.get<int>();
      continue;
    }
    try {
      p.gamma[std::stoi(key)] = val.get<int>();
    } catch (const std::exception&) {
      fail(Errc::schema, "gamma keys must be node labels or \"root\"");
    }
  }
  if (j.contains("strict_growth")) {
    if (!j["strict_growth"].is_boolean()) fail(Errc::schema, "strict_growth must be a boolean");
    p.strict_growth = j["strict_growth"].get<bool>();
  }
  return p;
}

Json params_to_json(const JTGParams& p) {
  Json gamma;
  gamma["root"] = p.gamma_root;
  for (const auto& [node, g] : p.gamma) gamma[std::to_string(node)] = g;
  return Json{{"m", p.m}, {"n", p.n}, {"gamma", std::move(gamma)}, {"strict_growth", p.strict_growth}};
}

Json segment_to_json(const Segment& s) {
  Json j = Json::array();
  for (NodeId v : s.nodes) j.push_back(v);
  return j;
}

Json certificate_to_json(const Jt2pCertificate& c) {
  Json terms = Json::array();
  for (const CertificateTerm& term : c.terms) {
    Json profile = Json::object();
    for (const auto& [v, a] : term.profile) profile[std::to_string(v)] = json_number(a);
    terms.push_back(Json{{"segment", segment_to_json(term.segment)},
                         {"weight", json_number(term.weight)},
                         {"profile", std::move(profile)}});
  }
  return Json{{"q", json_number(c.q)}, {"terms", std::move(terms)}};
}

Jt2pCertificate certificate_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("q") || !j.contains("terms") || !j["terms"].is_array())
    fail(Errc::schema, "certificate JSON needs \"q\" and a \"terms\" array");
  Jt2pCertificate c;
  c.q = j["q"].get<double>();
  for (const Json& t : j["terms"]) {
    if (!t.is_object() || !t.contains("segment") || !t.contains("weight") || !t.contains("profile"))
      fail(Errc::schema, "certificate terms need \"segment\", \"weight\" and \"profile\"");
    CertificateTerm term;
    for (const Json& v : t["segment"]) term.segment.nodes.push_back(v.get<NodeId>());
    term.weight = t["weight"].get<double>();
    SparseVector profile = vector_from_json(t["profile"]);
    for (const auto& [v, a] : profile.entries()) term.profile.emplace_back(v, a);
    c.terms.push_back(std::move(term));
  }
  return c;
}

}  // namespace jtree
