#include "cpsep/graphgroups.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace cpsep {

// ---------------------------------------------------------------------------
// Graph

Graph Graph::make(std::size_t vertex_count, std::vector<Edge> edges) {
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const Edge& d = edges[e];
    const std::string at = "edge " + std::to_string(e);
    if (d.origin >= vertex_count || d.terminus >= vertex_count) throw Error(ErrorKind::GraphAxiom, at + ": unknown vertex");
    if (d.inverse >= edges.size()) throw Error(ErrorKind::GraphAxiom, at + ": unknown inverse");
    if (d.inverse == e) throw Error(ErrorKind::GraphAxiom, at + ": edge is its own inverse");
    const Edge& inv = edges[d.inverse];
    if (inv.inverse != e) throw Error(ErrorKind::GraphAxiom, at + ": inverse is not an involution");
    if (inv.origin != d.terminus || inv.terminus != d.origin)
      throw Error(ErrorKind::GraphAxiom, at + ": inverse must swap origin and terminus");
  }
  Graph g;
  g.vertex_count_ = vertex_count;
  g.edges_ = std::move(edges);
  return g;
}

Graph Graph::from_geometric_edges(std::size_t vertex_count,
                                  const std::vector<std::pair<std::size_t, std::size_t>>& edges) {
  std::vector<Edge> out;
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto [u, v] = edges[i];
    out.push_back({u, v, 2 * i + 1});
    out.push_back({v, u, 2 * i});
  }
  return make(vertex_count, std::move(out));
}

bool Graph::is_connected() const {
  if (vertex_count_ == 0) return false;
  std::vector<bool> seen(vertex_count_, false);
  std::vector<std::size_t> stack{0};
  seen[0] = true;
  std::size_t reached = 1;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    for (const auto& e : edges_) {
      if (e.origin == v && !seen[e.terminus]) {
        seen[e.terminus] = true;
        ++reached;
        stack.push_back(e.terminus);
      }
    }
  }
  return reached == vertex_count_;
}

std::vector<std::size_t> maximal_tree(const Graph& graph) {
  if (!graph.is_connected()) throw Error(ErrorKind::NotConnected, "graph is not connected");
  std::vector<bool> seen(graph.vertex_count(), false);
  std::vector<std::size_t> queue{0}, tree;
  seen[0] = true;
  for (std::size_t i = 0; i < queue.size(); ++i) {
    const std::size_t v = queue[i];
    for (std::size_t e = 0; e < graph.edge_count(); ++e) {
      const Edge& d = graph.edge(e);
      if (d.origin != v || seen[d.terminus]) continue;
      seen[d.terminus] = true;
      queue.push_back(d.terminus);
      tree.push_back(e);
      tree.push_back(d.inverse);
    }
  }
  std::sort(tree.begin(), tree.end());
  return tree;
}

// ---------------------------------------------------------------------------
// GroupGraph

GroupGraph GroupGraph::make(Graph graph, std::vector<FiniteGroup> vertex_groups, std::vector<EdgeGroup> edge_groups) {
  if (!graph.is_connected()) throw Error(ErrorKind::NotConnected, "group graphs live on connected graphs");
  if (vertex_groups.size() != graph.vertex_count()) throw Error(ErrorKind::GraphAxiom, "one group per vertex");
  if (edge_groups.size() != graph.edge_count()) throw Error(ErrorKind::GraphAxiom, "one group per edge");
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    const auto& d = graph.edge(e);
    const auto& eg = edge_groups[e];
    const auto& ig = edge_groups[d.inverse];
    const std::string at = "edge " + std::to_string(e);
    // Re-check the laws; the maps may come straight from a file.
    GroupHom::make(eg.group, vertex_groups[d.origin], eg.rho.images());
    GroupHom::make(eg.group, vertex_groups[d.terminus], eg.tau.images());
    if (!eg.rho.is_injective() || !eg.tau.is_injective()) throw Error(ErrorKind::GraphAxiom, at + ": maps must be injective");
    if (!(eg.group == ig.group)) throw Error(ErrorKind::GraphAxiom, at + ": inverse edge carries a different group");
    if (!(eg.rho == ig.tau) || !(eg.tau == ig.rho)) throw Error(ErrorKind::GraphAxiom, at + ": rho/tau must swap under inverse");
  }
  GroupGraph gg;
  gg.graph_ = std::move(graph);
  gg.vertex_groups_ = std::move(vertex_groups);
  gg.edge_groups_ = std::move(edge_groups);
  return gg;
}

GroupGraph GroupGraph::from_geometric(std::vector<FiniteGroup> vertex_groups, const std::vector<GeometricEdge>& edges) {
  std::vector<std::pair<std::size_t, std::size_t>> ends;
  std::vector<EdgeGroup> groups;
  for (const auto& ge : edges) {
    if (ge.origin >= vertex_groups.size() || ge.terminus >= vertex_groups.size())
      throw Error(ErrorKind::GraphAxiom, "edge endpoint out of range");
    ends.emplace_back(ge.origin, ge.terminus);
    auto rho = GroupHom::make(ge.group, vertex_groups[ge.origin], ge.rho);
    auto tau = GroupHom::make(ge.group, vertex_groups[ge.terminus], ge.tau);
    groups.push_back({ge.group, rho, tau});
    groups.push_back({ge.group, tau, rho});
  }
  auto graph = Graph::from_geometric_edges(vertex_groups.size(), ends);
  return make(std::move(graph), std::move(vertex_groups), std::move(groups));
}

bool operator==(const GroupGraph& a, const GroupGraph& b) {
  if (!(a.graph_ == b.graph_) || a.vertex_groups_ != b.vertex_groups_) return false;
  for (std::size_t e = 0; e < a.edge_groups_.size(); ++e) {
    const auto& x = a.edge_groups_[e];
    const auto& y = b.edge_groups_[e];
    if (!(x.group == y.group) || !(x.rho == y.rho) || !(x.tau == y.tau)) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Presentation

Presentation::Presentation(std::vector<FiniteGroup> vertex_groups, std::vector<std::size_t> stable_edges,
                           std::vector<EdgeRelation> edge_relations)
    : vertex_groups_(std::move(vertex_groups)),
      stable_edges_(std::move(stable_edges)),
      edge_relations_(std::move(edge_relations)) {
  for (std::size_t v = 0; v < vertex_groups_.size(); ++v) {
    vertex_offsets_.push_back(generators_.size());
    for (Elem x = 1; x < vertex_groups_[v].order(); ++x)
      generators_.push_back("v" + std::to_string(v) + "_" + std::to_string(x));
  }
  stable_offset_ = generators_.size();
  for (std::size_t e : stable_edges_) generators_.push_back("t" + std::to_string(e));
}

std::optional<std::size_t> Presentation::stable_generator_for_edge(std::size_t edge) const {
  auto it = std::find(stable_edges_.begin(), stable_edges_.end(), edge);
  if (it == stable_edges_.end()) return std::nullopt;
  return stable_generator(static_cast<std::size_t>(it - stable_edges_.begin()));
}

namespace {

void free_reduce(Relator& r) {
  Relator out;
  for (const Letter& l : r) {
    if (!out.empty() && out.back().generator == l.generator && out.back().inverted != l.inverted)
      out.pop_back();
    else
      out.push_back(l);
  }
  r = std::move(out);
}

}  // namespace

std::vector<Relator> Presentation::relators() const {
  std::vector<Relator> out;
  for (std::size_t v = 0; v < vertex_groups_.size(); ++v) {
    const auto& g = vertex_groups_[v];
    for (Elem x = 1; x < g.order(); ++x) {
      for (Elem y = 1; y < g.order(); ++y) {
        Relator r{{vertex_generator(v, x)}, {vertex_generator(v, y)}};
        const Elem z = g.mul(x, y);
        if (z != 0) r.push_back({vertex_generator(v, z), true});
        out.push_back(std::move(r));
      }
    }
  }
  for (const auto& er : edge_relations_) {
    Relator r;
    if (er.stable_letter) r.push_back({*er.stable_letter, true});
    if (er.from != 0) r.push_back({vertex_generator(er.u, er.from)});
    if (er.stable_letter) r.push_back({*er.stable_letter});
    if (er.to != 0) r.push_back({vertex_generator(er.v, er.to), true});
    free_reduce(r);
    if (!r.empty()) out.push_back(std::move(r));
  }
  return out;
}

std::string Presentation::render(const Relator& r) const {
  std::string s;
  for (std::size_t i = 0; i < r.size(); ++i) {
    if (i) s += ' ';
    s += generators_[r[i].generator];
    if (r[i].inverted) s += "^-1";
  }
  return s;
}

std::string Presentation::to_text() const {
  std::ostringstream os;
  os << "⟨ ";
  for (std::size_t i = 0; i < generators_.size(); ++i) os << (i ? ", " : "") << generators_[i];
  os << " |\n";
  for (const auto& r : relators()) os << render(r) << '\n';
  os << "⟩\n";
  return os.str();
}

namespace {

void check_tree(const Graph& graph, const std::vector<std::size_t>& tree) {
  std::set<std::size_t> t(tree.begin(), tree.end());
  if (t.size() != tree.size()) throw Error(ErrorKind::InvalidTree, "repeated edge");
  for (std::size_t e : t) {
    if (e >= graph.edge_count()) throw Error(ErrorKind::InvalidTree, "unknown edge " + std::to_string(e));
    if (!t.count(graph.edge(e).inverse)) throw Error(ErrorKind::InvalidTree, "tree not closed under inverse");
  }
  if (t.size() != 2 * (graph.vertex_count() - 1)) throw Error(ErrorKind::InvalidTree, "wrong number of edges");
  // With |V| - 1 geometric edges, spanning means acyclic.
  std::vector<std::size_t> parent(graph.vertex_count());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (std::size_t e : t) {
    if (e != graph.canonical(e)) continue;
    const auto a = find(graph.edge(e).origin), b = find(graph.edge(e).terminus);
    if (a == b) throw Error(ErrorKind::InvalidTree, "tree contains a cycle");
    parent[a] = b;
  }
}

}  // namespace

Presentation fundamental_presentation(const GroupGraph& gg, std::optional<std::vector<std::size_t>> tree) {
  const Graph& graph = gg.graph();
  const auto t = tree ? *tree : maximal_tree(graph);
  check_tree(graph, t);
  const std::set<std::size_t> in_tree(t.begin(), t.end());

  std::vector<std::size_t> stable_edges;
  for (std::size_t e = 0; e < graph.edge_count(); ++e)
    if (graph.canonical(e) == e && !in_tree.count(e)) stable_edges.push_back(e);

  std::size_t stable_base = 0;
  for (const auto& g : gg.vertex_groups()) stable_base += g.order() - 1;

  std::vector<EdgeRelation> relations;
  for (std::size_t e = 0; e < graph.edge_count(); ++e) {
    if (graph.canonical(e) != e) continue;
    const auto& d = graph.edge(e);
    const auto& eg = gg.edge_group(e);
    std::optional<std::size_t> letter;
    if (!in_tree.count(e)) {
      const auto pos = std::find(stable_edges.begin(), stable_edges.end(), e) - stable_edges.begin();
      letter = stable_base + static_cast<std::size_t>(pos);
    }
    for (Elem c = 1; c < eg.group.order(); ++c) relations.push_back({e, d.origin, eg.rho(c), d.terminus, eg.tau(c), letter});
  }
  return Presentation(gg.vertex_groups(), std::move(stable_edges), std::move(relations));
}

Presentation amalgam_presentation(const AmalgamSpec& spec) {
  std::vector<EdgeRelation> relations;
  for (Elem a : spec.A().elements())
    if (a != 0) relations.push_back({0, 0, a, 1, spec.phi(a), std::nullopt});
  return Presentation({spec.H(), spec.K()}, {}, std::move(relations));
}

GroupGraph amalgam_as_group_graph(const AmalgamSpec& spec) {
  GeometricEdge edge{0, 1, subgroup_as_group(spec.H(), spec.A()), spec.A().elements(), {}};
  for (Elem a : spec.A().elements()) edge.tau.push_back(spec.phi(a));
  return GroupGraph::from_geometric({spec.H(), spec.K()}, {edge});
}

// ---------------------------------------------------------------------------
// Quotients of presentations

KilledPresentation kill_subgroups(const Presentation& pres, const std::vector<Subgroup>& targets) {
  const auto& groups = pres.vertex_groups();
  if (!targets.empty() && targets.size() != groups.size())
    throw Error(ErrorKind::NotSubgroup, "one target per vertex expected");

  std::vector<Subgroup> killed;
  for (std::size_t v = 0; v < groups.size(); ++v) {
    if (targets.empty()) {
      killed.push_back(Subgroup::trivial(groups[v]));
      continue;
    }
    if (targets[v].parent_order() != groups[v].order())
      throw Error(ErrorKind::NotSubgroup, "target " + std::to_string(v) + " is not a subgroup of its vertex group");
    killed.push_back(normal_closure(groups[v], targets[v].elements()));
  }

  // An edge relation identifies its two sides, so killing one kills the other.
  auto grow = [&](std::size_t v, Elem x) {
    std::vector<Elem> gens = killed[v].elements();
    gens.push_back(x);
    killed[v] = normal_closure(groups[v], gens);
  };
  for (bool changed = true; changed;) {
    changed = false;
    for (const auto& er : pres.edge_relations()) {
      const bool from_dead = killed[er.u].contains(er.from);
      const bool to_dead = killed[er.v].contains(er.to);
      if (from_dead && !to_dead) {
        grow(er.v, er.to);
        changed = true;
      } else if (to_dead && !from_dead) {
        grow(er.u, er.from);
        changed = true;
      }
    }
  }

  std::vector<FiniteGroup> quotients;
  std::vector<GroupHom> projections;
  for (std::size_t v = 0; v < groups.size(); ++v) {
    auto q = quotient(groups[v], killed[v]);
    quotients.push_back(std::move(q.group));
    projections.push_back(std::move(q.projection));
  }

  std::size_t stable_base = 0;
  for (const auto& g : quotients) stable_base += g.order() - 1;
  const std::size_t old_base = pres.stable_generator(0);

  std::vector<EdgeRelation> relations;
  for (const auto& er : pres.edge_relations()) {
    EdgeRelation r = er;
    r.from = projections[er.u](er.from);
    r.to = projections[er.v](er.to);
    if (r.stable_letter) r.stable_letter = stable_base + (*r.stable_letter - old_base);
    if (r.from == 0 && r.to == 0) continue;
    if (std::find(relations.begin(), relations.end(), r) == relations.end()) relations.push_back(r);
  }
  return {Presentation(std::move(quotients), pres.stable_edges(), std::move(relations)), std::move(killed),
          std::move(projections)};
}

DirectProductCollapse collapse_to_direct_product(const Presentation& pres) {
  const auto& groups = pres.vertex_groups();
  if (groups.size() != 2) throw Error(ErrorKind::WrongShape, "expected exactly two vertex groups");
  if (!pres.edge_relations().empty())
    throw Error(ErrorKind::WrongShape, "vertex groups are still identified; expected a free product");

  // Discrete logarithm with respect to the first element of full order.
  std::vector<std::vector<Elem>> logs;
  for (const auto& g : groups) {
    std::optional<Elem> gen;
    for (Elem x = 0; x < g.order() && !gen; ++x)
      if (g.element_order(x) == g.order()) gen = x;
    if (!gen) throw Error(ErrorKind::WrongShape, "vertex group is not cyclic");
    std::vector<Elem> log(g.order());
    Elem y = 0;
    for (Elem k = 0; k < g.order(); ++k, y = g.mul(y, *gen)) log[y] = k;
    logs.push_back(std::move(log));
  }

  const std::size_t m = groups[0].order(), n = groups[1].order();
  DirectProductCollapse out{FiniteGroup::direct_product(FiniteGroup::cyclic(m), FiniteGroup::cyclic(n)), {}, {}};
  out.vertex_images.resize(2);
  for (Elem x = 0; x < m; ++x) out.vertex_images[0].push_back(static_cast<Elem>(logs[0][x] * n));
  for (Elem y = 0; y < n; ++y) out.vertex_images[1].push_back(logs[1][y]);
  for (std::size_t v = 0; v < 2; ++v)
    for (Elem x = 1; x < groups[v].order(); ++x)
      out.generator_images[pres.generators()[pres.vertex_generator(v, x)]] = out.vertex_images[v][x];
  for (std::size_t i = 0; i < pres.stable_edges().size(); ++i)
    out.generator_images[pres.generators()[pres.stable_generator(i)]] = 0;
  return out;
}

}  // namespace cpsep
