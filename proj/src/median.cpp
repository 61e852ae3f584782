#include <algorithm>

#include "stagecraft/compilers.hpp"

namespace stagecraft {

PixelGraph PixelGraph::from_pixels(const std::vector<GridPoint>& pixels) {
  PixelGraph g;
  g.nodes = pixels;
  std::sort(g.nodes.begin(), g.nodes.end());
  g.nodes.erase(std::unique(g.nodes.begin(), g.nodes.end()), g.nodes.end());
  g.adjacency.resize(g.nodes.size());
  for (int i = 0; i < static_cast<int>(g.nodes.size()); ++i)
    for (Dir d : kDirs) {
      int j = g.index_of(step(g.nodes[i], d));
      if (j >= 0) g.adjacency[i].push_back(j);
    }
  return g;
}

int PixelGraph::index_of(GridPoint p) const {
  auto it = std::lower_bound(nodes.begin(), nodes.end(), p);
  if (it == nodes.end() || !(*it == p)) return -1;
  return static_cast<int>(it - nodes.begin());
}

std::vector<int> component_sizes_without(const PixelGraph& g, int v) {
  std::vector<int> sizes;
  std::vector<char> seen(g.nodes.size(), 0);
  seen[v] = 1;
  for (int s = 0; s < static_cast<int>(g.nodes.size()); ++s) {
    if (seen[s]) continue;
    int count = 0;
    std::vector<int> stack{s};
    seen[s] = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      ++count;
      for (int w : g.adjacency[u])
        if (!seen[w]) {
          seen[w] = 1;
          stack.push_back(w);
        }
    }
    sizes.push_back(count);
  }
  return sizes;
}

namespace {

std::size_t edge_count(const PixelGraph& g) {
  std::size_t e = 0;
  for (const auto& a : g.adjacency) e += a.size();
  return e / 2;
}

}  // namespace

int tree_median(const PixelGraph& tree) {
  const int n = static_cast<int>(tree.nodes.size());
  if (n == 0) throw GeometryError("median of an empty tree");
  if (edge_count(tree) != static_cast<std::size_t>(n - 1) || !is_connected(tree.nodes))
    throw GeometryError("tree_median needs a tree");
  // Subtree sizes from an arbitrary root; the largest remaining component after removing v is
  // the max over child subtrees and the part above v.
  std::vector<int> parent(n, -1), order;
  order.reserve(n);
  std::vector<char> seen(n, 0);
  order.push_back(0);
  seen[0] = 1;
  for (std::size_t i = 0; i < order.size(); ++i)
    for (int w : tree.adjacency[order[i]])
      if (!seen[w]) {
        seen[w] = 1;
        parent[w] = order[i];
        order.push_back(w);
      }
  std::vector<int> sub(n, 1);
  for (int i = n - 1; i > 0; --i) sub[parent[order[i]]] += sub[order[i]];
  int best = -1, best_val = n + 1;
  for (int v = 0; v < n; ++v) {  // nodes are sorted, so the first minimum is the smallest pixel
    int worst = n - sub[v];
    for (int w : tree.adjacency[v])
      if (parent[w] == v) worst = std::max(worst, sub[w]);
    if (worst < best_val) {
      best_val = worst;
      best = v;
    }
  }
  return best;
}

int path_median(const PixelGraph& path) {
  const int n = static_cast<int>(path.nodes.size());
  if (n == 0) throw GeometryError("median of an empty path");
  int end = -1;
  for (int v = 0; v < n; ++v) {
    if (path.adjacency[v].size() > 2) throw GeometryError("path_median needs a path");
    if (path.adjacency[v].size() <= 1 && end < 0) end = v;
  }
  if (end < 0 || edge_count(path) != static_cast<std::size_t>(n - 1)) throw GeometryError("path_median needs a path");
  std::vector<int> seq{end};
  int prev = -1;
  while (static_cast<int>(seq.size()) < n) {
    int cur = seq.back();
    int next = -1;
    for (int w : path.adjacency[cur])
      if (w != prev) next = w;
    prev = cur;
    seq.push_back(next);
  }
  if (n % 2 == 1) return seq[n / 2];
  int a = seq[n / 2 - 1], b = seq[n / 2];
  return path.nodes[a] < path.nodes[b] ? a : b;
}

}  // namespace stagecraft
