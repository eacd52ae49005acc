#include <cctype>
#include <cmath>
#include <cstdio>
#include <memory>
#include <string>

#include "rftdist/error.hpp"
#include "rftdist/phylo.hpp"

namespace rftdist::phylo {

namespace {

bool needs_quotes(const std::string& label) {
  if (label.empty()) return true;
  for (char c : label) {
    if (std::isspace(static_cast<unsigned char>(c)) || c == '(' || c == ')' || c == '[' ||
        c == ']' || c == '\'' || c == ':' || c == ';' || c == ',') {
      return true;
    }
  }
  return false;
}

std::string quote_label(const std::string& label) {
  if (!needs_quotes(label)) return label;
  std::string out = "'";
  for (char c : label) {
    if (c == '\'') out += '\'';
    out += c;
  }
  return out + "'";
}

std::string format_length(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  std::string s = buf;
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.pop_back();
  }
  if (s == "-0") s = "0";
  return s;
}

struct Writer {
  const PhyloTree& tree;
  int decimals;
  std::vector<std::string> min_label;

  const std::string& smallest(std::size_t i) {
    if (!min_label[i].empty()) return min_label[i];
    const auto& n = tree.node(i);
    min_label[i] = n.is_leaf() ? n.label : std::min(smallest(n.left), smallest(n.right));
    return min_label[i];
  }

  void write(std::size_t i, std::string& out) {
    const auto& n = tree.node(i);
    if (n.is_leaf()) {
      out += quote_label(n.label);
    } else {
      std::size_t first = n.left;
      std::size_t second = n.right;
      if (smallest(second) < smallest(first)) std::swap(first, second);
      out += '(';
      write(first, out);
      out += ',';
      write(second, out);
      out += ')';
    }
    if (i != tree.root()) out += ':' + format_length(tree.branch_length(i), decimals);
  }
};

struct ParsedNode {
  std::string label;
  double length = 0.0;
  std::unique_ptr<ParsedNode> left;
  std::unique_ptr<ParsedNode> right;
};

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  std::unique_ptr<ParsedNode> parse() {
    auto root = subtree();
    skip_space();
    if (!consume(';')) fail("expected ';'");
    skip_space();
    if (pos_ != text_.size()) fail("trailing characters after ';'");
    return root;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("newick: " + what + " at offset " + std::to_string(pos_), 1);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool consume(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::string label() {
    skip_space();
    std::string out;
    if (pos_ < text_.size() && text_[pos_] == '\'') {
      ++pos_;
      while (true) {
        if (pos_ >= text_.size()) fail("unterminated quoted label");
        const char c = text_[pos_++];
        if (c == '\'') {
          if (pos_ < text_.size() && text_[pos_] == '\'') {
            out += '\'';
            ++pos_;
            continue;
          }
          break;
        }
        out += c;
      }
      return out;
    }
    while (pos_ < text_.size()) {
      const char c = text_[pos_];
      if (c == '(' || c == ')' || c == ',' || c == ':' || c == ';' ||
          std::isspace(static_cast<unsigned char>(c))) {
        break;
      }
      out += c;
      ++pos_;
    }
    return out;
  }

  double length() {
    if (!consume(':')) return 0.0;
    skip_space();
    const std::string rest(text_.substr(pos_, 64));
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(rest, &used);
    } catch (const std::exception&) {
      fail("bad branch length");
    }
    pos_ += used;
    return v;
  }

  std::unique_ptr<ParsedNode> subtree() {
    auto node = std::make_unique<ParsedNode>();
    if (consume('(')) {
      node->left = subtree();
      if (!consume(',')) fail("expected ',' (only binary trees are supported)");
      node->right = subtree();
      if (!consume(')')) fail("expected ')'");
      node->label = label();
    } else {
      node->label = label();
      if (node->label.empty()) fail("leaf without a label");
    }
    node->length = length();
    return node;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void collect_leaves(const ParsedNode& p, double depth, std::vector<TreeNode>& leaves,
                    double& max_depth) {
  if (!p.left) {
    TreeNode leaf;
    leaf.label = p.label;
    leaf.height = depth;  // depth for now; converted once the max is known
    leaves.push_back(std::move(leaf));
    max_depth = std::max(max_depth, depth);
    return;
  }
  collect_leaves(*p.left, depth + p.left->length, leaves, max_depth);
  collect_leaves(*p.right, depth + p.right->length, leaves, max_depth);
}

// Post-order numbering: leaves keep [0, n), internal nodes follow.
std::size_t place(const ParsedNode& p, double depth, double max_depth, std::size_t& next_leaf,
                  std::vector<TreeNode>& nodes) {
  if (!p.left) {
    const std::size_t i = next_leaf++;
    nodes[i].height = max_depth - depth;
    return i;
  }
  const std::size_t l = place(*p.left, depth + p.left->length, max_depth, next_leaf, nodes);
  const std::size_t r = place(*p.right, depth + p.right->length, max_depth, next_leaf, nodes);
  TreeNode internal;
  internal.height = max_depth - depth;
  internal.left = l;
  internal.right = r;
  nodes.push_back(internal);
  const std::size_t i = nodes.size() - 1;
  nodes[l].parent = i;
  nodes[r].parent = i;
  return i;
}

}  // namespace

std::string to_newick(const PhyloTree& tree, int decimals) {
  Writer writer{tree, decimals, std::vector<std::string>(tree.node_count())};
  std::string out;
  writer.write(tree.root(), out);
  out += ';';
  return out;
}

PhyloTree parse_newick(std::string_view text) {
  const auto root = Parser(text).parse();
  std::vector<TreeNode> nodes;
  double max_depth = 0.0;
  collect_leaves(*root, 0.0, nodes, max_depth);
  std::size_t next_leaf = 0;
  place(*root, 0.0, max_depth, next_leaf, nodes);
  return PhyloTree(std::move(nodes));
}

}  // namespace rftdist::phylo
