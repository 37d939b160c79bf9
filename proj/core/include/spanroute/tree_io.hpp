#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "spanroute/tree.hpp"

namespace spanroute {

/// A parsed tree together with the external vertex names it was read with.
/// external_ids[v] is the token that dense vertex v carried in the file.
struct ParsedTree {
  RootedTree tree;
  std::vector<std::string> external_ids;
};

/// Reads the text format:
///
///   n root
///   parent child weight     (n - 1 lines)
///
/// Blank lines and lines starting with '#' are skipped. When every id is an
/// integer in [0, n) the ids are used as is; otherwise they are numbered in
/// order of first appearance, root first.
ParsedTree read_tree(std::istream& in);
ParsedTree read_tree_file(const std::string& path);

/// Writes the same format. Weights use 17 significant digits so they read
/// back bit-identical. Empty external_ids means "use the dense ids".
void write_tree(std::ostream& out, const RootedTree& tree,
                const std::vector<std::string>& external_ids = {});
void write_tree_file(const std::string& path, const RootedTree& tree,
                     const std::vector<std::string>& external_ids = {});

/// "%.17g"
std::string format_weight(double w);

}  // namespace spanroute
