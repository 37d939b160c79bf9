#include "spanroute/tree_io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <unordered_map>

namespace spanroute {
namespace {

struct RawEdge {
  std::string parent;
  std::string child;
  double weight;
};

bool dense_id(const std::string& token, std::size_t n, Vertex& out) {
  long long value = 0;
  const auto* first = token.data();
  const auto* last = token.data() + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc{} || ptr != last) return false;
  if (value < 0 || static_cast<unsigned long long>(value) >= n) return false;
  out = static_cast<Vertex>(value);
  return true;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw TreeError(TreeErrorKind::kParse,
                  "line " + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", w);
  return buf;
}

ParsedTree read_tree(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0;
  std::string root_token;
  std::vector<RawEdge> raw;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream fields(line);
    if (!have_header) {
      long long count = 0;
      if (!(fields >> count >> root_token) || count < 1) {
        parse_error(line_no, "expected header 'n root'");
      }
      n = static_cast<std::size_t>(count);
      have_header = true;
      continue;
    }
    RawEdge e;
    std::string weight_token;
    if (!(fields >> e.parent >> e.child >> weight_token)) {
      parse_error(line_no, "expected 'parent child weight'");
    }
    try {
      std::size_t used = 0;
      e.weight = std::stod(weight_token, &used);
      if (used != weight_token.size()) throw std::invalid_argument("trailing");
    } catch (const std::exception&) {
      parse_error(line_no, "bad weight '" + weight_token + "'");
    }
    std::string extra;
    if (fields >> extra) parse_error(line_no, "unexpected field '" + extra + "'");
    raw.push_back(std::move(e));
  }
  if (!have_header) parse_error(line_no, "missing header");
  if (raw.size() + 1 != n) {
    throw TreeError(raw.size() + 1 < n ? TreeErrorKind::kDisconnected
                                       : TreeErrorKind::kCycle,
                    "header declares " + std::to_string(n) +
                        " vertices but file has " + std::to_string(raw.size()) +
                        " edges");
  }

  bool all_dense = true;
  Vertex scratch = 0;
  all_dense = dense_id(root_token, n, scratch);
  for (const auto& e : raw) {
    if (!all_dense) break;
    all_dense = dense_id(e.parent, n, scratch) && dense_id(e.child, n, scratch);
  }

  ParsedTree out;
  std::vector<TreeEdge> edges;
  edges.reserve(raw.size());
  if (all_dense) {
    out.external_ids.resize(n);
    for (std::size_t v = 0; v < n; ++v) out.external_ids[v] = std::to_string(v);
    Vertex root = 0;
    dense_id(root_token, n, root);
    for (const auto& e : raw) {
      Vertex u = 0;
      Vertex v = 0;
      dense_id(e.parent, n, u);
      dense_id(e.child, n, v);
      edges.push_back({u, v, e.weight});
    }
    out.tree = RootedTree::build(n, edges, root);
    return out;
  }

  std::unordered_map<std::string, Vertex> ids;
  auto intern = [&](const std::string& token) {
    auto [it, inserted] = ids.emplace(token, static_cast<Vertex>(ids.size()));
    if (inserted) out.external_ids.push_back(token);
    return it->second;
  };
  const Vertex root = intern(root_token);
  for (const auto& e : raw) {
    const Vertex u = intern(e.parent);
    const Vertex v = intern(e.child);
    edges.push_back({u, v, e.weight});
  }
  if (ids.size() != n) {
    throw TreeError(TreeErrorKind::kParse,
                    "header declares " + std::to_string(n) +
                        " vertices but file names " +
                        std::to_string(ids.size()));
  }
  out.tree = RootedTree::build(n, edges, root);
  return out;
}

ParsedTree read_tree_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TreeError(TreeErrorKind::kParse, "cannot open " + path);
  return read_tree(in);
}

void write_tree(std::ostream& out, const RootedTree& tree,
                const std::vector<std::string>& external_ids) {
  auto name = [&](Vertex v) {
    return external_ids.empty() ? std::to_string(v)
                                : external_ids[static_cast<std::size_t>(v)];
  };
  out << tree.size() << ' ' << name(tree.root()) << '\n';
  for (const auto& e : tree.edges()) {
    out << name(e.u) << ' ' << name(e.v) << ' ' << format_weight(e.weight)
        << '\n';
  }
}

void write_tree_file(const std::string& path, const RootedTree& tree,
                     const std::vector<std::string>& external_ids) {
  std::ofstream out(path);
  if (!out) throw TreeError(TreeErrorKind::kParse, "cannot write " + path);
  write_tree(out, tree, external_ids);
}

}  // namespace spanroute
