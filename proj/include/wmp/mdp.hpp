#pragma once

#include "wmp/index_set.hpp"
#include "wmp/rational.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace wmp {

enum class Owner { Player, Random };

struct Edge {
  int src = 0;
  int dst = 0;
  Rational payoff;
  Rational prob;  // zero on player edges
};

class Mdp {
 public:
  int add_vertex(std::string name, Owner owner);
  int add_edge(int src, int dst, Rational payoff, Rational prob = Rational(0));

  // Used by constructions that derive a new MDP from an existing one: the
  // origin is the vertex/edge of the outermost MDP the element stems from.
  int add_derived_vertex(std::string name, Owner owner, int origin);
  int add_derived_edge(int src, int dst, Rational payoff, Rational prob, int origin);
  void set_root_shape(int vertices, int edges);

  int num_vertices() const { return static_cast<int>(owner_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }

  const std::string& name(int v) const { return name_[v]; }
  Owner owner(int v) const { return owner_[v]; }
  bool is_random(int v) const { return owner_[v] == Owner::Random; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::vector<Edge>& edges() const { return edges_; }
  const std::vector<int>& out_edges(int v) const { return out_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_[v]; }

  std::optional<int> find_vertex(std::string_view name) const;
  std::optional<int> find_edge(int src, int dst) const;
  int vertex_named(std::string_view name) const;  // throws Error

  int origin(int v) const { return vorigin_[v]; }
  int edge_origin(int e) const { return eorigin_[e]; }
  int root_vertices() const { return root_vertices_ < 0 ? num_vertices() : root_vertices_; }
  int root_edges() const { return root_edges_ < 0 ? num_edges() : root_edges_; }

  Rational p_min() const;  // 1 when there is no probabilistic edge
  Rational w_max() const;

  VertexSet all() const { return VertexSet(num_vertices(), true); }
  VertexSet none() const { return VertexSet(num_vertices()); }
  VertexSet set_of(const std::vector<std::string>& names) const;
  std::vector<std::string> names_of(const VertexSet& s) const;

 private:
  std::vector<std::string> name_;
  std::vector<Owner> owner_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_, in_;
  std::vector<int> vorigin_, eorigin_;
  std::unordered_map<std::string, int> by_name_;
  int root_vertices_ = -1;
  int root_edges_ = -1;
};

std::vector<std::string> validate(const Mdp& m);
void ensure_valid(const Mdp& m);

// Checks condition (i) (every member keeps an out-neighbour inside) and, when
// `keep_random` is set, condition (ii) (random members keep all their
// out-neighbours). Returns the first offending vertex, if any.
std::optional<int> sub_mdp_violation(const Mdp& m, const VertexSet& v, bool keep_random);

Mdp sub_mdp(const Mdp& m, const VertexSet& v);
Mdp sub_mdp_closure(const Mdp& m, const VertexSet& v);

// Moves sets between an MDP and one derived from it (sub-MDP or closure).
VertexSet lift_to_root(const Mdp& m, const VertexSet& local);
VertexSet from_root(const Mdp& m, const VertexSet& root);
VertexSet to_parent(const Mdp& parent, const Mdp& child, const VertexSet& local);
VertexSet to_child(const Mdp& parent, const Mdp& child, const VertexSet& in_parent);
std::vector<int> root_index_map(const Mdp& m);  // root vertex -> local, -1 when absent

VertexSet sure_attractor(const Mdp& m, const VertexSet& t);
std::vector<int> sure_attractor_ranks(const Mdp& m, const VertexSet& t);  // -1 outside
VertexSet sure_safe(const Mdp& m, const VertexSet& t);
VertexSet pos_cpre(const Mdp& m, const VertexSet& w);

std::vector<VertexSet> strongly_connected_components(const Mdp& m, const VertexSet& within);
std::vector<VertexSet> mec_decomposition(const Mdp& m);

struct ReachStrategy {
  VertexSet region;
  std::vector<int> choice;  // successor for player vertices in region\target, else -1
};
ReachStrategy almost_sure_reach_strategy(const Mdp& m, const VertexSet& t);
VertexSet almost_sure_reach(const Mdp& m, const VertexSet& t);

}  // namespace wmp
