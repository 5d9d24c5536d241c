#include "cpsep/io.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cpsep::io {

namespace {

[[noreturn]] void parse_error(const std::string& msg) { throw Error(ErrorKind::Parse, msg); }

std::size_t to_size(const std::string& token, const std::string& what) {
  if (token.empty() || token.find_first_not_of("0123456789") != std::string::npos)
    parse_error("expected a non-negative integer for " + what + ", got '" + token + "'");
  try {
    return std::stoull(token);
  } catch (const std::out_of_range&) {
    parse_error(what + " out of range: " + token);
  }
}

std::vector<std::string> split_ws(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  for (std::string tok; in >> tok;) out.push_back(tok);
  return out;
}

std::string strip_comment(const std::string& line) {
  const auto hash = line.find('#');
  return hash == std::string::npos ? line : line.substr(0, hash);
}

template <typename T>
T get_field(const json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) parse_error(std::string("missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    parse_error(std::string("bad field '") + key + "': " + e.what());
  }
}

std::vector<Elem> elems(const json& j, const char* key) { return get_field<std::vector<Elem>>(j, key); }

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_error("cannot read " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) parse_error("cannot write " + path.string());
  out << text;
}

json read_json_file(const std::filesystem::path& path) {
  try {
    return json::parse(read_text_file(path));
  } catch (const json::parse_error& e) {
    parse_error(path.string() + ": " + e.what());
  }
}

// ---------------------------------------------------------------------------
// groups

FiniteGroup parse_group(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::optional<std::size_t> order;
  std::vector<std::string> names;
  std::optional<std::string> presentation;
  std::vector<std::vector<Elem>> table;
  bool in_table = false;

  for (std::string raw; std::getline(in, raw);) {
    if (!raw.empty() && raw.back() == '\r') raw.pop_back();
    const std::string line = strip_comment(raw);
    auto toks = split_ws(line);
    if (toks.empty()) continue;
    if (in_table) {
      std::vector<Elem> row;
      for (const auto& t : toks) row.push_back(static_cast<Elem>(to_size(t, "table entry")));
      table.push_back(std::move(row));
      continue;
    }
    if (toks[0] == "order") {
      if (toks.size() != 2) parse_error("'order' takes one value");
      order = to_size(toks[1], "order");
    } else if (toks[0] == "names") {
      names.assign(toks.begin() + 1, toks.end());
    } else if (toks[0] == "presentation") {
      // Kept verbatim (minus the keyword), comments included.
      const auto at = raw.find("presentation") + std::string("presentation").size();
      std::string rest = raw.substr(at);
      rest.erase(0, rest.find_first_not_of(" \t"));
      presentation = rest;
    } else if (toks[0] == "table") {
      if (toks.size() != 1) parse_error("'table' must be alone on its line");
      in_table = true;
    } else {
      parse_error("unknown group field '" + toks[0] + "'");
    }
  }
  if (!order) parse_error("group file has no 'order'");
  if (!in_table) parse_error("group file has no 'table'");
  if (table.size() != *order) parse_error("table has " + std::to_string(table.size()) + " rows, expected " + std::to_string(*order));
  for (const auto& row : table)
    if (row.size() != *order) parse_error("table row of length " + std::to_string(row.size()));
  if (!names.empty() && names.size() != *order) parse_error("names must list every element");

  auto g = FiniteGroup::from_table(*order, table, names);
  g.presentation_note = presentation;
  return g;
}

std::string format_group(const FiniteGroup& group) {
  std::string out = "order " + std::to_string(group.order()) + "\n";
  if (!group.names().empty()) {
    out += "names";
    for (const auto& n : group.names()) out += " " + n;
    out += "\n";
  }
  if (group.presentation_note) out += "presentation " + *group.presentation_note + "\n";
  out += "table\n";
  for (const auto& row : group.rows()) {
    for (std::size_t i = 0; i < row.size(); ++i) out += (i ? " " : "") + std::to_string(row[i]);
    out += "\n";
  }
  return out;
}

FiniteGroup load_group(const std::filesystem::path& path) { return parse_group(read_text_file(path)); }

json group_to_json(const FiniteGroup& group) {
  json j{{"order", group.order()}, {"table", group.rows()}};
  if (!group.names().empty()) j["names"] = group.names();
  if (group.presentation_note) j["presentation"] = *group.presentation_note;
  return j;
}

FiniteGroup group_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (j.is_string()) return load_group(base_dir / j.get<std::string>());
  const auto order = get_field<std::size_t>(j, "order");
  const auto table = get_field<std::vector<std::vector<Elem>>>(j, "table");
  if (table.size() != order) parse_error("inline table has the wrong number of rows");
  for (const auto& row : table)
    if (row.size() != order) parse_error("inline table row of the wrong length");
  std::vector<std::string> names;
  if (j.contains("names")) names = get_field<std::vector<std::string>>(j, "names");
  auto g = FiniteGroup::from_table(order, table, names);
  if (j.contains("presentation")) g.presentation_note = get_field<std::string>(j, "presentation");
  return g;
}

// ---------------------------------------------------------------------------
// words

Word parse_word(const AmalgamSpec& spec, std::string_view literal) {
  Word raw;
  for (const auto& tok : split_ws(std::string(literal))) {
    const auto colon = tok.find(':');
    if (colon != 1 || (tok[0] != 'H' && tok[0] != 'K') || tok.size() < 3)
      parse_error("bad syllable '" + tok + "', expected H:<elem> or K:<elem>");
    const Factor f = tok[0] == 'H' ? Factor::H : Factor::K;
    const std::string elem = tok.substr(2);
    const FiniteGroup& group = spec.factor(f);
    if (auto named = group.find_name(elem)) {
      raw.push_back({f, *named});
      continue;
    }
    if (elem.find_first_not_of("0123456789") != std::string::npos)
      parse_error("unknown element '" + elem + "' in " + std::string(1, tok[0]));
    std::size_t x = 0;
    try {
      x = std::stoull(elem);
    } catch (const std::out_of_range&) {
      throw Error(ErrorKind::IndexOutOfRange, "element " + elem + " out of range");
    }
    if (x >= group.order())
      throw Error(ErrorKind::IndexOutOfRange,
                  "element " + elem + " out of range for a factor of order " + std::to_string(group.order()));
    raw.push_back({f, static_cast<Elem>(x)});
  }
  return make_word(spec, raw);
}

std::string format_word(const Word& w) {
  std::string out;
  for (const auto& s : w) {
    if (!out.empty()) out += ' ';
    out += s.factor == Factor::H ? "H:" : "K:";
    out += std::to_string(s.elem);
  }
  return out;
}

// ---------------------------------------------------------------------------
// amalgams

json amalgam_to_json(const AmalgamSpec& spec) {
  json phi = json::array();
  for (Elem a : spec.A().elements()) phi.push_back({a, spec.phi(a)});
  return json{{"H", group_to_json(spec.H())},
              {"K", group_to_json(spec.K())},
              {"A", spec.A().elements()},
              {"B", spec.B().elements()},
              {"phi", phi}};
}

AmalgamSpec amalgam_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) parse_error("amalgam must be a JSON object");
  if (!j.contains("H") || !j.contains("K")) parse_error("amalgam needs H and K");
  auto h = group_from_json(j.at("H"), base_dir);
  auto k = group_from_json(j.at("K"), base_dir);
  const auto a = elems(j, "A");
  const auto b = elems(j, "B");
  std::map<Elem, Elem> phi;
  for (const auto& pr : get_field<std::vector<std::pair<Elem, Elem>>>(j, "phi")) {
    if (!phi.emplace(pr.first, pr.second).second) parse_error("phi lists " + std::to_string(pr.first) + " twice");
  }
  for (Elem x : a)
    if (x >= h.order()) throw Error(ErrorKind::IndexOutOfRange, "A element " + std::to_string(x) + " outside H");
  for (Elem x : b)
    if (x >= k.order()) throw Error(ErrorKind::IndexOutOfRange, "B element " + std::to_string(x) + " outside K");
  return AmalgamSpec::make(std::move(h), std::move(k), a, b, phi);
}

AmalgamSpec load_amalgam(const std::filesystem::path& path) {
  return amalgam_from_json(read_json_file(path), path.parent_path());
}

// ---------------------------------------------------------------------------
// graphs

json graph_to_json(const GroupGraph& gg) {
  json vertices = json::array();
  for (const auto& g : gg.vertex_groups()) vertices.push_back(group_to_json(g));
  json edges = json::array();
  for (std::size_t e = 0; e < gg.graph().edge_count(); ++e) {
    const auto& edge = gg.graph().edge(e);
    const auto& eg = gg.edge_group(e);
    edges.push_back({{"origin", edge.origin},
                     {"terminus", edge.terminus},
                     {"inverse", edge.inverse},
                     {"group", group_to_json(eg.group)},
                     {"rho", eg.rho.images()},
                     {"tau", eg.tau.images()}});
  }
  return json{{"vertices", vertices}, {"edges", edges}};
}

GroupGraph graph_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
    parse_error("graph needs 'vertices' and 'edges'");
  std::vector<FiniteGroup> vertices;
  for (const auto& v : j.at("vertices")) vertices.push_back(group_from_json(v, base_dir));
  const auto& edges = j.at("edges");
  if (!edges.is_array()) parse_error("'edges' must be an array");

  const bool directed = !edges.empty() && edges.front().contains("inverse");
  auto endpoint = [&](const json& e, const char* key) {
    const auto v = get_field<std::size_t>(e, key);
    if (v >= vertices.size())
      throw Error(ErrorKind::GraphAxiom, std::string(key) + " " + std::to_string(v) + " is not a vertex");
    return v;
  };

  if (!directed) {
    std::vector<GeometricEdge> geo;
    for (const auto& e : edges)
      geo.push_back(GeometricEdge{endpoint(e, "origin"), endpoint(e, "terminus"), group_from_json(e.at("group"), base_dir),
                                  elems(e, "rho"), elems(e, "tau")});
    return GroupGraph::from_geometric(std::move(vertices), geo);
  }

  std::vector<Edge> shape;
  std::vector<EdgeGroup> groups;
  for (const auto& e : edges) {
    if (!e.contains("inverse")) parse_error("either every edge or none must give 'inverse'");
    const Edge edge{endpoint(e, "origin"), endpoint(e, "terminus"), get_field<std::size_t>(e, "inverse")};
    auto group = group_from_json(e.at("group"), base_dir);
    auto rho = GroupHom::make(group, vertices[edge.origin], elems(e, "rho"));
    auto tau = GroupHom::make(group, vertices[edge.terminus], elems(e, "tau"));
    shape.push_back(edge);
    groups.push_back(EdgeGroup{std::move(group), std::move(rho), std::move(tau)});
  }
  auto graph = Graph::make(vertices.size(), std::move(shape));
  return GroupGraph::make(std::move(graph), std::move(vertices), std::move(groups));
}

GroupGraph load_graph(const std::filesystem::path& path) {
  return graph_from_json(read_json_file(path), path.parent_path());
}

json pair_to_json(const CompatiblePair& pair) {
  return json{{"R", pair.R.elements()},
              {"S", pair.S.elements()},
              {"proj_H", pair.proj_H.images()},
              {"proj_K", pair.proj_K.images()},
              {"quotient", amalgam_to_json(pair.quotient_spec)}};
}

// ---------------------------------------------------------------------------
// certificates

bool operator==(const Certificate& a, const Certificate& b) {
  return a.spec == b.spec && a.p == b.p && a.f == b.f && a.g == b.g && a.witness.target == b.witness.target &&
         a.witness.psi_H == b.witness.psi_H && a.witness.psi_K == b.witness.psi_K &&
         a.witness.strategy == b.witness.strategy;
}

json certificate_to_json(const Certificate& cert) {
  const auto check = check_witness(cert.spec, cert.witness, cert.f, cert.g, cert.p);
  return json{{"amalgam", amalgam_to_json(cert.spec)},
              {"p", cert.p},
              {"f", format_word(cert.f)},
              {"g", format_word(cert.g)},
              {"target", group_to_json(cert.witness.target)},
              {"psi_H", cert.witness.psi_H.images()},
              {"psi_K", cert.witness.psi_K.images()},
              {"f_image", check.f_image},
              {"g_image", check.g_image},
              {"f_class_rep", check.f_class_rep},
              {"g_class_rep", check.g_class_rep},
              {"strategy", cert.witness.strategy}};
}

Certificate certificate_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object() || !j.contains("amalgam")) parse_error("certificate needs an 'amalgam'");
  auto spec = amalgam_from_json(j.at("amalgam"), base_dir);
  const auto p = get_field<std::size_t>(j, "p");
  auto f = parse_word(spec, get_field<std::string>(j, "f"));
  auto g = parse_word(spec, get_field<std::string>(j, "g"));
  auto target = group_from_json(j.at("target"), base_dir);
  auto psi_H = GroupHom::make(spec.H(), target, elems(j, "psi_H"));
  auto psi_K = GroupHom::make(spec.K(), target, elems(j, "psi_K"));
  Witness w{std::move(target), std::move(psi_H), std::move(psi_K), get_field<std::string>(j, "strategy")};
  return Certificate{std::move(spec), p, std::move(f), std::move(g), std::move(w)};
}

// ---------------------------------------------------------------------------
// config

bool operator==(const WorkspaceConfig& a, const WorkspaceConfig& b) {
  const auto& x = a.budget;
  const auto& y = b.budget;
  return x.p == y.p && x.max_target_order == y.max_target_order && x.max_quotient_index == y.max_quotient_index &&
         x.max_conjugator_length == y.max_conjugator_length && x.extra_targets == y.extra_targets &&
         a.output == b.output && a.group_paths == b.group_paths && a.amalgam_path == b.amalgam_path &&
         a.graph_path == b.graph_path;
}

json config_to_json(const WorkspaceConfig& config) {
  json j{{"p", config.budget.p},
         {"max_target_order", config.budget.max_target_order},
         {"max_quotient_index", config.budget.max_quotient_index},
         {"max_conjugator_length", config.budget.max_conjugator_length},
         {"output", config.output == OutputFormat::json ? "json" : "text"},
         {"groups", config.group_paths}};
  if (config.amalgam_path) j["amalgam"] = *config.amalgam_path;
  if (config.graph_path) j["graph"] = *config.graph_path;
  return j;
}

namespace {

OutputFormat parse_output(const std::string& s) {
  if (s == "text") return OutputFormat::text;
  if (s == "json") return OutputFormat::json;
  parse_error("output must be 'text' or 'json', got '" + s + "'");
}

}  // namespace

WorkspaceConfig config_from_json(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) parse_error("config must be a JSON object");
  static const char* const known[] = {"p", "max_target_order", "max_quotient_index", "max_conjugator_length",
                                      "output", "groups", "amalgam", "graph"};
  for (const auto& item : j.items())
    if (std::find(std::begin(known), std::end(known), item.key()) == std::end(known))
      parse_error("unknown config field '" + item.key() + "'");

  WorkspaceConfig c;
  if (j.contains("p")) c.budget.p = get_field<std::size_t>(j, "p");
  if (j.contains("max_target_order")) c.budget.max_target_order = get_field<std::size_t>(j, "max_target_order");
  if (j.contains("max_quotient_index")) c.budget.max_quotient_index = get_field<std::size_t>(j, "max_quotient_index");
  if (j.contains("max_conjugator_length"))
    c.budget.max_conjugator_length = get_field<std::size_t>(j, "max_conjugator_length");
  if (j.contains("output")) c.output = parse_output(get_field<std::string>(j, "output"));
  if (j.contains("groups")) c.group_paths = get_field<std::vector<std::string>>(j, "groups");
  if (j.contains("amalgam")) c.amalgam_path = get_field<std::string>(j, "amalgam");
  if (j.contains("graph")) c.graph_path = get_field<std::string>(j, "graph");
  for (const auto& path : c.group_paths) c.budget.extra_targets.push_back(load_group(base_dir / path));
  validate_budget(c.budget);
  return c;
}

WorkspaceConfig load_config(const std::filesystem::path& path) {
  return config_from_json(read_json_file(path), path.parent_path());
}

void apply_env_overrides(WorkspaceConfig& config) {
  auto read = [](const char* name, std::size_t& slot) {
    if (const char* v = std::getenv(name)) slot = to_size(v, name);
  };
  read("CPSEP_P", config.budget.p);
  read("CPSEP_MAX_TARGET_ORDER", config.budget.max_target_order);
  read("CPSEP_MAX_QUOTIENT_INDEX", config.budget.max_quotient_index);
  read("CPSEP_MAX_CONJUGATOR_LENGTH", config.budget.max_conjugator_length);
  if (const char* v = std::getenv("CPSEP_OUTPUT")) config.output = parse_output(v);
  validate_budget(config.budget);
}

}  // namespace cpsep::io
