#include "rftdist/phylo.hpp"

#include <algorithm>
#include <limits>

#include "rftdist/error.hpp"

namespace rftdist::phylo {

PhyloTree::PhyloTree(std::vector<TreeNode> nodes) : nodes_(std::move(nodes)) {
  if (nodes_.empty() || nodes_.size() % 2 == 0) {
    throw ValidationError("a rooted binary tree has an odd, non-zero node count");
  }
}

double PhyloTree::branch_length(std::size_t i) const {
  const auto& n = nodes_.at(i);
  if (n.parent == kNoNode) return 0.0;
  return std::max(0.0, nodes_[n.parent].height - n.height);
}

std::vector<std::string> PhyloTree::leaves_under(std::size_t i) const {
  std::vector<std::string> out;
  std::vector<std::size_t> stack{i};
  while (!stack.empty()) {
    const auto& n = nodes_.at(stack.back());
    stack.pop_back();
    if (n.is_leaf()) {
      out.push_back(n.label);
    } else {
      stack.push_back(n.left);
      stack.push_back(n.right);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<std::set<std::string>> PhyloTree::clades() const {
  std::vector<std::set<std::string>> out(nodes_.size());
  // Children always precede parents in upgma output but not necessarily in
  // parsed trees, so resolve recursively via leaves_under.
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const auto leaves = leaves_under(i);
    out[i] = std::set<std::string>(leaves.begin(), leaves.end());
  }
  return out;
}

bool PhyloTree::has_clade(const std::set<std::string>& labels) const {
  for (const auto& clade : clades()) {
    if (clade == labels) return true;
  }
  return false;
}

PhyloTree upgma(const metric::DistanceMatrix& matrix) {
  const std::size_t n = matrix.size();
  if (n < 2) throw InvalidArgument("UPGMA needs at least two sequences");
  {
    std::set<std::string> unique(matrix.labels().begin(), matrix.labels().end());
    if (unique.size() != n) throw ValidationError("distance matrix labels are not unique");
  }

  std::vector<TreeNode> nodes;
  nodes.reserve(2 * n - 1);
  for (const auto& label : matrix.labels()) nodes.push_back(TreeNode{label});

  // Active clusters: node index, size, key, and a working distance matrix
  // indexed by slot.
  std::vector<std::size_t> node_of(n);
  std::vector<std::size_t> size(n, 1);
  std::vector<std::string> key(matrix.labels());
  std::vector<bool> active(n, true);
  std::vector<double> dist(matrix.values().begin(), matrix.values().end());
  for (std::size_t i = 0; i < n; ++i) node_of[i] = i;

  for (std::size_t step = 0; step + 1 < n; ++step) {
    std::size_t best_a = 0;
    std::size_t best_b = 0;
    double best = std::numeric_limits<double>::infinity();
    const std::string* best_lo = nullptr;
    const std::string* best_hi = nullptr;
    for (std::size_t a = 0; a < n; ++a) {
      if (!active[a]) continue;
      for (std::size_t b = a + 1; b < n; ++b) {
        if (!active[b]) continue;
        const double d = dist[a * n + b];
        const std::string* lo = &std::min(key[a], key[b]);
        const std::string* hi = &std::max(key[a], key[b]);
        if (d < best || (d == best && std::tie(*lo, *hi) < std::tie(*best_lo, *best_hi))) {
          best = d;
          best_a = a;
          best_b = b;
          best_lo = lo;
          best_hi = hi;
        }
      }
    }

    TreeNode merged;
    merged.height = std::max({best / 2.0, nodes[node_of[best_a]].height,
                              nodes[node_of[best_b]].height});
    merged.left = node_of[best_a];
    merged.right = node_of[best_b];
    const std::size_t merged_index = nodes.size();
    nodes[merged.left].parent = merged_index;
    nodes[merged.right].parent = merged_index;
    nodes.push_back(merged);

    // Slot best_a becomes the merged cluster; best_b retires.
    const auto wa = static_cast<double>(size[best_a]);
    const auto wb = static_cast<double>(size[best_b]);
    for (std::size_t c = 0; c < n; ++c) {
      if (!active[c] || c == best_a || c == best_b) continue;
      const double d = (wa * dist[best_a * n + c] + wb * dist[best_b * n + c]) / (wa + wb);
      dist[best_a * n + c] = d;
      dist[c * n + best_a] = d;
    }
    size[best_a] += size[best_b];
    key[best_a] = std::min(key[best_a], key[best_b]);
    node_of[best_a] = merged_index;
    active[best_b] = false;
  }
  return PhyloTree(std::move(nodes));
}

}  // namespace rftdist::phylo
