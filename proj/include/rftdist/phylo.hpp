#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "rftdist/metric.hpp"

namespace rftdist::phylo {

inline constexpr std::size_t kNoNode = static_cast<std::size_t>(-1);

struct TreeNode {
  std::string label;      // leaves only
  double height = 0.0;    // 0 at leaves; half the merge distance above
  std::size_t left = kNoNode;
  std::size_t right = kNoNode;
  std::size_t parent = kNoNode;

  bool is_leaf() const noexcept { return left == kNoNode; }
};

// Rooted binary ultrametric tree. Leaves occupy node indices [0, n), internal
// nodes follow in merge order, the root is last.
class PhyloTree {
 public:
  PhyloTree() = default;
  explicit PhyloTree(std::vector<TreeNode> nodes);

  std::size_t node_count() const noexcept { return nodes_.size(); }
  std::size_t leaf_count() const noexcept { return (nodes_.size() + 1) / 2; }
  std::size_t root() const noexcept { return nodes_.size() - 1; }
  const TreeNode& node(std::size_t i) const { return nodes_.at(i); }

  // parent height - node height; 0 for the root.
  double branch_length(std::size_t i) const;

  // Sorted leaf labels below node i.
  std::vector<std::string> leaves_under(std::size_t i) const;

  // True if some node's leaf set equals `labels` exactly.
  bool has_clade(const std::set<std::string>& labels) const;

  // Every node's leaf set, in node order.
  std::vector<std::set<std::string>> clades() const;

 private:
  std::vector<TreeNode> nodes_;
};

// Average-linkage (size-weighted) agglomeration. The closest pair of clusters
// merges at height d/2; ties go to the lexicographically smallest pair of
// cluster keys, where a cluster's key is its smallest leaf label.
PhyloTree upgma(const metric::DistanceMatrix& matrix);

// Newick with branch lengths rounded to `decimals` places (trailing zeros
// trimmed). The child holding the smaller leaf label is written first.
std::string to_newick(const PhyloTree& tree, int decimals = 6);

// Reads a rooted binary Newick tree with branch lengths. Node heights are
// measured up from the deepest leaf. Throws ParseError.
PhyloTree parse_newick(std::string_view text);

}  // namespace rftdist::phylo
