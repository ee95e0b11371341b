#pragma once

#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "json.hpp"
#include "pcf/instance.hpp"

namespace pcf {

using json = nlohmann::json;

enum class NumFormat { kExact, kFloat };

inline json num_to_json(const Num& x, NumFormat fmt = NumFormat::kExact) {
  if (fmt == NumFormat::kFloat) return x.to_double();
  return x.str();
}

/// Accepts a decimal/fraction string or a JSON integer. Floating JSON numbers
/// are refused because they have already lost exactness.
inline Num num_from_json(const json& j, std::string_view what) {
  if (j.is_string()) return Num::parse(j.get<std::string>());
  if (j.is_number_integer()) return Num(static_cast<long>(j.get<std::int64_t>()));
  if (j.is_number_unsigned()) return Num(static_cast<long>(j.get<std::uint64_t>()));
  throw Error(ErrorCode::kBadNumber, std::string(what) + " must be a decimal string");
}

inline json parse_json(std::string_view text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::kMalformedJson, e.what());
  }
}

namespace detail {

inline const json& field(const json& obj, const char* name) {
  if (!obj.is_object() || !obj.contains(name))
    throw Error(ErrorCode::kSchema, std::string("missing field '") + name + "'");
  return obj.at(name);
}

inline std::int64_t int_field(const json& obj, const char* name) {
  const json& j = field(obj, name);
  if (!j.is_number_integer()) throw Error(ErrorCode::kSchema, std::string("field '") + name + "' must be an integer");
  return j.get<std::int64_t>();
}

}  // namespace detail

/// Label -> dense id lookup built from an instance.
class LabelIndex {
 public:
  explicit LabelIndex(const Instance& g) {
    for (VertexId v = 0; v < g.n(); ++v) map_.emplace(g.label(v), v);
  }
  VertexId at(std::int64_t label) const {
    auto it = map_.find(label);
    if (it == map_.end()) throw Error(ErrorCode::kDanglingVertex, "unknown vertex id " + std::to_string(label));
    return it->second;
  }

 private:
  std::unordered_map<std::int64_t, VertexId> map_;
};

inline Instance instance_from_json(const json& doc) {
  if (!doc.is_object()) throw Error(ErrorCode::kSchema, "instance document must be an object");
  const json& vertices = detail::field(doc, "vertices");
  const json& edges = detail::field(doc, "edges");
  if (!vertices.is_array() || !edges.is_array()) throw Error(ErrorCode::kSchema, "'vertices' and 'edges' must be arrays");

  std::vector<std::int64_t> labels;
  std::vector<Num> penalties;
  std::unordered_map<std::int64_t, VertexId> dense;
  for (const json& v : vertices) {
    const std::int64_t id = detail::int_field(v, "id");
    if (!dense.emplace(id, static_cast<VertexId>(labels.size())).second)
      throw Error(ErrorCode::kDuplicateVertex, "vertex id " + std::to_string(id) + " appears twice");
    labels.push_back(id);
    penalties.push_back(num_from_json(detail::field(v, "penalty"), "penalty"));
  }

  std::vector<Edge> list;
  list.reserve(edges.size());
  for (const json& e : edges) {
    const std::int64_t u = detail::int_field(e, "u");
    const std::int64_t v = detail::int_field(e, "v");
    auto iu = dense.find(u);
    auto iv = dense.find(v);
    if (iu == dense.end() || iv == dense.end())
      throw Error(ErrorCode::kDanglingVertex, "edge {" + std::to_string(u) + "," + std::to_string(v) + "} references an unknown vertex");
    list.push_back({iu->second, iv->second, num_from_json(detail::field(e, "w"), "weight")});
  }
  return Instance(std::move(penalties), std::move(list), std::move(labels));
}

inline Instance parse_instance(std::string_view text) { return instance_from_json(parse_json(text)); }

inline json instance_to_json(const Instance& g) {
  json vertices = json::array();
  for (VertexId v = 0; v < g.n(); ++v) vertices.push_back({{"id", g.label(v)}, {"penalty", g.penalty(v).str()}});
  json edges = json::array();
  for (const Edge& e : g.edges()) edges.push_back({{"u", g.label(e.u)}, {"v", g.label(e.v)}, {"w", e.w.str()}});
  return {{"vertices", std::move(vertices)}, {"edges", std::move(edges)}};
}

inline std::string serialize_instance(const Instance& g) { return instance_to_json(g).dump(); }

/// Forest document: {"spanned":[ids],"edges":[[u,v]],"k":int,"value":"decimal"}.
inline json forest_to_json(const Instance& g, const Forest& f, const Num& value, NumFormat fmt = NumFormat::kExact) {
  json spanned = json::array();
  for (VertexId v : f.spanned()) spanned.push_back(g.label(v));
  json edges = json::array();
  for (EdgeId e : f.edges()) edges.push_back(json::array({g.label(g.edge(e).u), g.label(g.edge(e).v)}));
  return {{"spanned", std::move(spanned)}, {"edges", std::move(edges)}, {"k", f.k()}, {"value", num_to_json(value, fmt)}};
}

inline Forest forest_from_json(const Instance& g, const json& doc) {
  LabelIndex index(g);
  std::vector<VertexId> spanned;
  for (const json& v : detail::field(doc, "spanned")) {
    if (!v.is_number_integer()) throw Error(ErrorCode::kSchema, "spanned ids must be integers");
    spanned.push_back(index.at(v.get<std::int64_t>()));
  }
  std::vector<EdgeId> edges;
  for (const json& e : detail::field(doc, "edges")) {
    if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::kSchema, "forest edges must be [u,v] pairs");
    const auto id = g.find_edge(index.at(e[0].get<std::int64_t>()), index.at(e[1].get<std::int64_t>()));
    if (!id) throw Error(ErrorCode::kInvalidForest, "forest edge not in instance");
    edges.push_back(*id);
  }
  Forest f = Forest::make(g, std::move(spanned), std::move(edges));
  if (doc.contains("k") && doc.at("k").get<int>() != f.k())
    throw Error(ErrorCode::kInvalidForest, "declared k does not match |spanned| - |edges|");
  return f;
}

/// A tree in the instance schema plus "root": id.
struct TreeDocument {
  Instance tree;
  VertexId root = 0;
};

inline TreeDocument parse_tree_document(std::string_view text) {
  const json doc = parse_json(text);
  TreeDocument out{instance_from_json(doc), 0};
  out.root = LabelIndex(out.tree).at(detail::int_field(doc, "root"));
  return out;
}

}  // namespace pcf
