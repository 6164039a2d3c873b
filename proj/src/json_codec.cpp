#include "essencery/json_codec.hpp"

#include <limits>

namespace essencery::json_codec {

using nlohmann::json;

namespace {

[[noreturn]] void shape(const std::string& message) { throw JsonShapeError(message); }

const json& field(const json& obj, const char* name, const std::string& where) {
  if (!obj.is_object()) shape(where + " must be an object");
  const auto it = obj.find(name);
  if (it == obj.end()) shape(where + " is missing \"" + name + "\"");
  return *it;
}

std::string string_field(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_string()) shape(where + "." + name + " must be a string");
  return v.get<std::string>();
}

std::int32_t coordinate(const json& obj, const char* name, const std::string& where) {
  const json& v = field(obj, name, where);
  if (!v.is_number_integer()) shape(where + "." + name + " must be an integer");
  const auto n = v.get<std::int64_t>();
  if (n < std::numeric_limits<std::int32_t>::min() || n > std::numeric_limits<std::int32_t>::max()) {
    shape(where + "." + name + " out of range");
  }
  return static_cast<std::int32_t>(n);
}

std::vector<std::string> string_list(const json& obj, const char* name, const std::string& where) {
  const auto it = obj.find(name);
  if (it == obj.end()) return {};
  if (!it->is_array()) shape(where + "." + name + " must be an array");
  std::vector<std::string> out;
  for (const auto& v : *it) {
    if (!v.is_string()) shape(where + "." + name + " must contain strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

const json& list(const json& obj, const char* name) {
  static const json empty = json::array();
  const auto it = obj.find(name);
  if (it == obj.end()) return empty;
  if (!it->is_array()) shape(std::string("\"") + name + "\" must be an array");
  return *it;
}

template <typename Map, typename Value>
void insert_unique(Map& map, const std::string& key, Value value, const char* what) {
  if (!map.emplace(key, std::move(value)).second) shape(std::string("duplicate ") + what + " '" + key + "'");
}

}  // namespace

json to_json(const Graph& graph) {
  json nodes = json::array();
  for (const auto& [id, n] : graph.nodes) {
    json j = {{"id", n.id}, {"kind", to_string(n.kind)}, {"name", n.name}, {"x", n.position.x}, {"y", n.position.y}};
    if (n.area) j["area"] = to_string(*n.area);
    nodes.push_back(std::move(j));
  }
  json notes = json::array();
  for (const auto& [id, t] : graph.notes) {
    notes.push_back({{"id", t.id}, {"text", t.text}, {"x", t.position.x}, {"y", t.position.y}});
  }
  json relations = json::array();
  for (const auto& [id, r] : graph.relations) {
    json j = {{"id", r.id}, {"source", r.source}, {"target", r.target}, {"directed", r.directed}};
    if (r.label) j["label"] = *r.label;
    relations.push_back(std::move(j));
  }
  json cards = json::array();
  for (const auto& [owner, c] : graph.cards) {
    cards.push_back({{"owner", c.owner}, {"description", c.description}, {"items", c.items}, {"links", c.links}});
  }
  json bindings = json::array();
  for (const auto& [owner, b] : graph.bindings) {
    bindings.push_back({{"owner", b.owner}, {"target", b.target.str()}});
  }
  return {{"id", graph.id},       {"title", graph.title}, {"revision", graph.revision},
          {"nodes", nodes},       {"notes", notes},       {"relations", relations},
          {"cards", cards},       {"bindings", bindings}};
}

Graph graph_from_json(const json& value) {
  if (!value.is_object()) shape("graph must be an object");
  Graph g;
  if (value.contains("id")) g.id = string_field(value, "id", "graph");
  g.title = string_field(value, "title", "graph");
  if (value.contains("revision")) {
    const json& rev = value["revision"];
    if (!rev.is_number_unsigned() && !(rev.is_number_integer() && rev.get<std::int64_t>() >= 0)) {
      shape("graph.revision must be a non-negative integer");
    }
    g.revision = rev.get<std::uint64_t>();
  }
  for (const auto& j : list(value, "nodes")) {
    Node n;
    n.id = string_field(j, "id", "node");
    const std::string where = "node " + n.id;
    const auto kind = parse_node_kind(string_field(j, "kind", where));
    if (!kind) shape(where + " has an unknown kind");
    n.kind = *kind;
    n.name = string_field(j, "name", where);
    n.position = {coordinate(j, "x", where), coordinate(j, "y", where)};
    if (j.contains("area") && !j["area"].is_null()) {
      n.area = parse_area(string_field(j, "area", where));
      if (!n.area) shape(where + " has an unknown area");
    }
    insert_unique(g.nodes, n.id, n, "node");
  }
  for (const auto& j : list(value, "notes")) {
    TextNote t;
    t.id = string_field(j, "id", "note");
    const std::string where = "note " + t.id;
    t.text = string_field(j, "text", where);
    t.position = {coordinate(j, "x", where), coordinate(j, "y", where)};
    insert_unique(g.notes, t.id, t, "note");
  }
  for (const auto& j : list(value, "relations")) {
    Relation r;
    r.id = string_field(j, "id", "relation");
    const std::string where = "relation " + r.id;
    r.source = string_field(j, "source", where);
    r.target = string_field(j, "target", where);
    if (j.contains("label") && !j["label"].is_null()) r.label = string_field(j, "label", where);
    if (j.contains("directed")) {
      if (!j["directed"].is_boolean()) shape(where + ".directed must be a boolean");
      r.directed = j["directed"].get<bool>();
    }
    insert_unique(g.relations, r.id, r, "relation");
  }
  for (const auto& j : list(value, "cards")) {
    Card c;
    c.owner = string_field(j, "owner", "card");
    const std::string where = "card " + c.owner;
    if (j.contains("description")) c.description = string_field(j, "description", where);
    c.items = string_list(j, "items", where);
    c.links = string_list(j, "links", where);
    insert_unique(g.cards, c.owner, c, "card for");
  }
  for (const auto& j : list(value, "bindings")) {
    Binding b;
    b.owner = string_field(j, "owner", "binding");
    const std::string target = string_field(j, "target", "binding " + b.owner);
    const auto path = KernelPath::parse(target);
    if (!path) shape("binding " + b.owner + " target '" + target + "' is not a kernel path");
    b.target = *path;
    insert_unique(g.bindings, b.owner, b, "binding for");
  }
  return g;
}

json to_json(const Kernel& kernel) {
  json areas = json::array();
  for (const auto& a : kernel.areas) {
    areas.push_back({{"key", a.key}, {"display_name", a.display_name}, {"color", a.color}});
  }
  json alphas = json::array();
  for (const auto& a : kernel.alphas) {
    alphas.push_back({{"name", a.name}, {"area", a.area}, {"states", a.states},
                      {"path", KernelPath{KernelCategory::Alpha, a.name}.str()}});
  }
  json spaces = json::array();
  for (const auto& s : kernel.spaces) {
    spaces.push_back({{"name", s.name}, {"area", s.area}, {"path", KernelPath{KernelCategory::Space, s.name}.str()}});
  }
  json competencies = json::array();
  for (const auto& c : kernel.competencies) {
    competencies.push_back({{"name", c.name}, {"area", c.area}, {"levels", c.levels},
                            {"path", KernelPath{KernelCategory::Competency, c.name}.str()}});
  }
  return {{"title", kernel.title}, {"areas", areas}, {"alphas", alphas}, {"spaces", spaces},
          {"competencies", competencies}};
}

json to_json(const lint::Diagnostic& d) {
  return {{"code", d.code}, {"severity", lint::to_string(d.severity)}, {"subject", d.subject}, {"message", d.message}};
}

json to_json(const std::vector<lint::Diagnostic>& diagnostics) {
  json out = json::array();
  for (const auto& d : diagnostics) out.push_back(to_json(d));
  return out;
}

}  // namespace essencery::json_codec
