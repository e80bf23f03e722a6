#pragma once

// Small max-flow and matching toolkit for the feasibility checks of the
// polynomial solvers. Graphs here have at most a few hundred nodes.

#include <optional>
#include <vector>

namespace pmanip {

/// Dinic's algorithm on integer capacities.
class FlowNetwork {
 public:
  explicit FlowNetwork(int nodes = 0);

  int add_node();
  int nodes() const { return static_cast<int>(adj_.size()); }
  /// Returns an edge id usable with flow().
  int add_edge(int from, int to, long long capacity);
  long long max_flow(int source, int sink);
  long long flow(int edge) const;

 private:
  struct Edge {
    int to;
    long long cap;
    long long original;
  };

  bool levels(int source, int sink);
  long long push(int u, int sink, long long limit);

  std::vector<Edge> edges_;
  std::vector<std::vector<int>> adj_;
  std::vector<int> level_;
  std::vector<std::size_t> it_;
};

/// Flow with per-edge lower bounds, solved through the usual circulation
/// transformation. feasible() decides whether some s-t flow meets all
/// bounds; flow() then reports per-edge flow including the lower bound.
class BoundedFlow {
 public:
  explicit BoundedFlow(int nodes);

  int add_edge(int from, int to, long long lower, long long upper);
  bool feasible(int source, int sink);
  long long flow(int edge) const;

 private:
  int n_;
  struct Bound {
    int from;
    int to;
    long long lower;
    long long upper;
  };
  std::vector<Bound> bounds_;
  std::vector<int> ids_;
  FlowNetwork net_{0};
};

/// Maximum bipartite matching (Kuhn). adj[l] lists right vertices in
/// preference order. Returns match_left[l] = r or -1.
std::vector<int> bipartite_matching(const std::vector<std::vector<int>>& adj, int right);

/// A perfect matching of the left side if one exists.
std::optional<std::vector<int>> perfect_matching(const std::vector<std::vector<int>>& adj,
                                                 int right);

}  // namespace pmanip
