#include "pmanip/flow.hpp"

#include <algorithm>
#include <limits>
#include <queue>

namespace pmanip {

namespace {
constexpr long long kInf = std::numeric_limits<long long>::max() / 4;
}

FlowNetwork::FlowNetwork(int nodes) : adj_(nodes) {}

int FlowNetwork::add_node() {
  adj_.emplace_back();
  return nodes() - 1;
}

int FlowNetwork::add_edge(int from, int to, long long capacity) {
  const int id = static_cast<int>(edges_.size());
  edges_.push_back({to, capacity, capacity});
  adj_[from].push_back(id);
  edges_.push_back({from, 0, 0});
  adj_[to].push_back(id + 1);
  return id;
}

long long FlowNetwork::flow(int edge) const {
  return edges_[edge].original - edges_[edge].cap;
}

bool FlowNetwork::levels(int source, int sink) {
  level_.assign(nodes(), -1);
  std::queue<int> q;
  level_[source] = 0;
  q.push(source);
  while (!q.empty()) {
    const int u = q.front();
    q.pop();
    for (int id : adj_[u]) {
      const Edge& e = edges_[id];
      if (e.cap > 0 && level_[e.to] < 0) {
        level_[e.to] = level_[u] + 1;
        q.push(e.to);
      }
    }
  }
  return level_[sink] >= 0;
}

long long FlowNetwork::push(int u, int sink, long long limit) {
  if (u == sink) return limit;
  for (; it_[u] < adj_[u].size(); ++it_[u]) {
    const int id = adj_[u][it_[u]];
    Edge& e = edges_[id];
    if (e.cap <= 0 || level_[e.to] != level_[u] + 1) continue;
    const long long got = push(e.to, sink, std::min(limit, e.cap));
    if (got > 0) {
      e.cap -= got;
      edges_[id ^ 1].cap += got;
      return got;
    }
  }
  return 0;
}

long long FlowNetwork::max_flow(int source, int sink) {
  long long total = 0;
  while (levels(source, sink)) {
    it_.assign(nodes(), 0);
    while (long long f = push(source, sink, kInf)) total += f;
  }
  return total;
}

BoundedFlow::BoundedFlow(int nodes) : n_(nodes) {}

int BoundedFlow::add_edge(int from, int to, long long lower, long long upper) {
  bounds_.push_back({from, to, lower, upper});
  return static_cast<int>(bounds_.size()) - 1;
}

bool BoundedFlow::feasible(int source, int sink) {
  // Nodes 0..n-1 as given, then a super source and super sink.
  net_ = FlowNetwork(n_ + 2);
  const int ss = n_;
  const int tt = n_ + 1;
  std::vector<long long> excess(n_, 0);
  ids_.clear();
  for (const auto& b : bounds_) {
    if (b.lower > b.upper) return false;
    ids_.push_back(net_.add_edge(b.from, b.to, b.upper - b.lower));
    excess[b.to] += b.lower;
    excess[b.from] -= b.lower;
  }
  net_.add_edge(sink, source, kInf);
  long long demand = 0;
  for (int v = 0; v < n_; ++v) {
    if (excess[v] > 0) {
      net_.add_edge(ss, v, excess[v]);
      demand += excess[v];
    } else if (excess[v] < 0) {
      net_.add_edge(v, tt, -excess[v]);
    }
  }
  return net_.max_flow(ss, tt) == demand;
}

long long BoundedFlow::flow(int edge) const {
  return bounds_[edge].lower + net_.flow(ids_[edge]);
}

namespace {

bool augment(int l, const std::vector<std::vector<int>>& adj, std::vector<int>& match_right,
             std::vector<char>& seen) {
  for (int r : adj[l]) {
    if (seen[r]) continue;
    seen[r] = 1;
    if (match_right[r] < 0 || augment(match_right[r], adj, match_right, seen)) {
      match_right[r] = l;
      return true;
    }
  }
  return false;
}

}  // namespace

std::vector<int> bipartite_matching(const std::vector<std::vector<int>>& adj, int right) {
  std::vector<int> match_right(right, -1);
  for (int l = 0; l < static_cast<int>(adj.size()); ++l) {
    std::vector<char> seen(right, 0);
    augment(l, adj, match_right, seen);
  }
  std::vector<int> match_left(adj.size(), -1);
  for (int r = 0; r < right; ++r)
    if (match_right[r] >= 0) match_left[match_right[r]] = r;
  return match_left;
}

std::optional<std::vector<int>> perfect_matching(const std::vector<std::vector<int>>& adj,
                                                 int right) {
  auto match = bipartite_matching(adj, right);
  if (std::find(match.begin(), match.end(), -1) != match.end()) return std::nullopt;
  return match;
}

}  // namespace pmanip
