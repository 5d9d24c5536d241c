#pragma once

// Graphs of finite groups and presentations of their fundamental groups.
//
// Generators are named v<vertex>_<element> for non-identity vertex-group
// elements and t<edge> for stable letters, one per geometric non-tree edge
// (the lower-numbered orientation). Relators for t_{inverse edge} = t_e^-1 are
// folded in rather than emitted.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpsep/amalgam.hpp"

namespace cpsep {

struct Edge {
  std::size_t origin;
  std::size_t terminus;
  std::size_t inverse;
};

class Graph {
 public:
  // Checks the involution axioms; throws GraphAxiom.
  static Graph make(std::size_t vertex_count, std::vector<Edge> edges);
  // Edge 2i runs u -> v for the i-th pair and 2i+1 is its inverse.
  static Graph from_geometric_edges(std::size_t vertex_count, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const Edge& edge(std::size_t e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  // The lower-numbered orientation of e's geometric edge.
  std::size_t canonical(std::size_t e) const { return std::min(e, edges_[e].inverse); }
  bool is_connected() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_.size() == b.edges_.size() &&
           std::equal(a.edges_.begin(), a.edges_.end(), b.edges_.begin(), [](const Edge& x, const Edge& y) {
             return x.origin == y.origin && x.terminus == y.terminus && x.inverse == y.inverse;
           });
  }

 private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
};

// Breadth-first spanning tree from vertex 0, scanning edges in index order.
// Returns sorted edge ids, closed under inverse. Throws NotConnected.
std::vector<std::size_t> maximal_tree(const Graph& graph);

struct EdgeGroup {
  FiniteGroup group;
  GroupHom rho;  // into the origin's vertex group
  GroupHom tau;  // into the terminus's vertex group
};

struct GeometricEdge {
  std::size_t origin;
  std::size_t terminus;
  FiniteGroup group;
  std::vector<Elem> rho;
  std::vector<Elem> tau;
};

class GroupGraph {
 public:
  // One EdgeGroup per directed edge. Throws NotConnected, GraphAxiom, NotAHom.
  static GroupGraph make(Graph graph, std::vector<FiniteGroup> vertex_groups, std::vector<EdgeGroup> edge_groups);
  // Builds both orientations of every geometric edge.
  static GroupGraph from_geometric(std::vector<FiniteGroup> vertex_groups, const std::vector<GeometricEdge>& edges);

  const Graph& graph() const noexcept { return graph_; }
  const FiniteGroup& vertex_group(std::size_t v) const { return vertex_groups_[v]; }
  const std::vector<FiniteGroup>& vertex_groups() const noexcept { return vertex_groups_; }
  const EdgeGroup& edge_group(std::size_t e) const { return edge_groups_[e]; }

  friend bool operator==(const GroupGraph&, const GroupGraph&);

 private:
  Graph graph_;
  std::vector<FiniteGroup> vertex_groups_;
  std::vector<EdgeGroup> edge_groups_;
};

struct Letter {
  std::size_t generator;
  bool inverted = false;

  friend bool operator==(const Letter&, const Letter&) = default;
};

using Relator = std::vector<Letter>;

// from (in vertex u's group) = to (in vertex v's group), conjugated by the stable
// letter when present: t^-1 from t = to.
struct EdgeRelation {
  std::size_t edge;
  std::size_t u;
  Elem from;
  std::size_t v;
  Elem to;
  std::optional<std::size_t> stable_letter;  // generator index

  friend bool operator==(const EdgeRelation&, const EdgeRelation&) = default;
};

// A structured presentation: vertex groups contribute their full multiplication
// tables, edges contribute identification or conjugation relations.
class Presentation {
 public:
  Presentation(std::vector<FiniteGroup> vertex_groups, std::vector<std::size_t> stable_edges,
               std::vector<EdgeRelation> edge_relations);

  const std::vector<std::string>& generators() const noexcept { return generators_; }
  const std::vector<FiniteGroup>& vertex_groups() const noexcept { return vertex_groups_; }
  const std::vector<std::size_t>& stable_edges() const noexcept { return stable_edges_; }
  const std::vector<EdgeRelation>& edge_relations() const noexcept { return edge_relations_; }

  // Generator index of a non-identity vertex element.
  std::size_t vertex_generator(std::size_t v, Elem x) const { return vertex_offsets_[v] + x - 1; }
  std::size_t stable_generator(std::size_t i) const { return stable_offset_ + i; }
  std::optional<std::size_t> stable_generator_for_edge(std::size_t edge) const;

  // Vertex-table relators first, then edge relations; freely reduced, empty ones dropped.
  std::vector<Relator> relators() const;
  std::string render(const Relator& r) const;
  // ⟨ generators | relators ⟩ with one relator per line.
  std::string to_text() const;

 private:
  std::vector<FiniteGroup> vertex_groups_;
  std::vector<std::size_t> stable_edges_;
  std::vector<EdgeRelation> edge_relations_;
  std::vector<std::string> generators_;
  std::vector<std::size_t> vertex_offsets_;
  std::size_t stable_offset_ = 0;
};

// Throws InvalidTree when `tree` is not a maximal tree closed under inverse.
Presentation fundamental_presentation(const GroupGraph& gg, std::optional<std::vector<std::size_t>> tree = {});

// The presentation of (H * K; A = B, phi) written down directly from the spec.
Presentation amalgam_presentation(const AmalgamSpec& spec);

GroupGraph amalgam_as_group_graph(const AmalgamSpec& spec);

struct KilledPresentation {
  Presentation presentation;
  std::vector<Subgroup> killed;             // per vertex: normal closure intersected with the vertex group
  std::vector<GroupHom> vertex_projections;  // per vertex: G_v -> G_v / killed
};

// Quotient by the normal closure of the targets (one per vertex; an empty
// vector kills nothing). Identifications across edges are followed to a
// fixpoint, vertex groups are replaced by their quotients and relations whose
// sides both became trivial are dropped. Throws NotSubgroup.
KilledPresentation kill_subgroups(const Presentation& pres, const std::vector<Subgroup>& targets);

struct DirectProductCollapse {
  FiniteGroup group;                              // C_m x C_n, (i, j) stored at i*n + j
  std::vector<std::vector<Elem>> vertex_images;   // per vertex, element -> product element
  std::map<std::string, Elem> generator_images;
};

// For a free product of two finite cyclic vertex groups and free stable letters.
// Throws WrongShape.
DirectProductCollapse collapse_to_direct_product(const Presentation& pres);

}  // namespace cpsep
