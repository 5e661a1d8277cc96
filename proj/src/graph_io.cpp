#include <algorithm>
#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "pbis/graph_model.hpp"

namespace pbis {
namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(start, end - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  return lines;
}

// Parses exactly two whitespace-separated integers.
bool parse_pair(std::string_view line, long long& a, long long& b) {
  auto skip_ws = [&](std::size_t i) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    return i;
  };
  const char* base = line.data();
  std::size_t i = skip_ws(0);
  auto r1 = std::from_chars(base + i, base + line.size(), a);
  if (r1.ec != std::errc() || r1.ptr == base + i) return false;
  std::size_t j = static_cast<std::size_t>(r1.ptr - base);
  if (j >= line.size() || (line[j] != ' ' && line[j] != '\t')) return false;
  j = skip_ws(j);
  auto r2 = std::from_chars(base + j, base + line.size(), b);
  if (r2.ec != std::errc() || r2.ptr == base + j) return false;
  return skip_ws(static_cast<std::size_t>(r2.ptr - base)) == line.size();
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw GraphFormatError(FormatErrorKind::kIo, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw GraphFormatError(FormatErrorKind::kIo, "cannot write " + path.string());
  out << text;
  if (!out) throw GraphFormatError(FormatErrorKind::kIo, "write failed for " + path.string());
}

std::string at_line(std::size_t i) { return "line " + std::to_string(i + 1) + ": "; }

}  // namespace

Graph parse_graph(const std::string& text) {
  const auto lines = split_lines(text);
  if (lines.empty()) throw GraphFormatError(FormatErrorKind::kMalformed, "empty graph file");
  long long n = 0;
  long long m = 0;
  if (!parse_pair(lines[0], n, m) || n < 0 || m < 0) {
    throw GraphFormatError(FormatErrorKind::kMalformed, at_line(0) + "expected header \"n m\"");
  }
  if (static_cast<long long>(lines.size()) - 1 != m) {
    throw GraphFormatError(FormatErrorKind::kHeaderMismatch,
                           "header announces " + std::to_string(m) + " edges, file has " +
                               std::to_string(lines.size() - 1));
  }
  std::vector<Edge> edges;
  edges.reserve(static_cast<std::size_t>(m));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    long long u = 0;
    long long v = 0;
    if (!parse_pair(lines[i], u, v)) {
      throw GraphFormatError(FormatErrorKind::kMalformed, at_line(i) + "expected \"u v\"");
    }
    if (u < 0 || v < 0 || u >= n || v >= n) {
      throw GraphFormatError(FormatErrorKind::kIndexOutOfRange,
                             at_line(i) + "vertex index outside [0, " + std::to_string(n) + ")");
    }
    if (u == v) {
      throw GraphFormatError(FormatErrorKind::kSelfLoop,
                             at_line(i) + "self-loop at vertex " + std::to_string(u));
    }
    edges.emplace_back(static_cast<Vertex>(std::min(u, v)), static_cast<Vertex>(std::max(u, v)));
  }
  std::vector<Edge> sorted = edges;
  std::sort(sorted.begin(), sorted.end());
  if (auto it = std::adjacent_find(sorted.begin(), sorted.end()); it != sorted.end()) {
    throw GraphFormatError(FormatErrorKind::kDuplicateEdge,
                           "duplicate edge " + std::to_string(it->first) + " " +
                               std::to_string(it->second));
  }
  return Graph(static_cast<std::size_t>(n), std::move(edges));
}

Assignment parse_assignment(const std::string& text, std::size_t n) {
  const auto lines = split_lines(text);
  if (lines.size() != n) {
    throw GraphFormatError(FormatErrorKind::kHeaderMismatch,
                           "expected " + std::to_string(n) + " assignment lines, found " +
                               std::to_string(lines.size()));
  }
  std::vector<Spin> spins(n, 0);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    long long v = 0;
    long long s = 0;
    if (!parse_pair(lines[i], v, s)) {
      throw GraphFormatError(FormatErrorKind::kMalformed, at_line(i) + "expected \"v s\"");
    }
    if (v < 0 || static_cast<unsigned long long>(v) >= n) {
      throw GraphFormatError(FormatErrorKind::kIndexOutOfRange,
                             at_line(i) + "vertex index outside [0, " + std::to_string(n) + ")");
    }
    if (s != 1 && s != -1) {
      throw GraphFormatError(FormatErrorKind::kBadSpin, at_line(i) + "spin must be -1 or 1");
    }
    if (spins[static_cast<std::size_t>(v)] != 0) {
      throw GraphFormatError(FormatErrorKind::kMalformed,
                             at_line(i) + "vertex " + std::to_string(v) + " listed twice");
    }
    spins[static_cast<std::size_t>(v)] = static_cast<Spin>(s);
  }
  return Assignment(std::move(spins));
}

FrozenAssignment parse_frozen(const std::string& text, std::size_t n) {
  const auto lines = split_lines(text);
  FrozenAssignment f(n);
  for (std::size_t i = 0; i < lines.size(); ++i) {
    long long v = 0;
    long long s = 0;
    if (!parse_pair(lines[i], v, s)) {
      throw GraphFormatError(FormatErrorKind::kMalformed, at_line(i) + "expected \"v s\"");
    }
    if (v < 0 || static_cast<unsigned long long>(v) >= n) {
      throw GraphFormatError(FormatErrorKind::kIndexOutOfRange,
                             at_line(i) + "vertex index outside [0, " + std::to_string(n) + ")");
    }
    if (s != 1 && s != -1) {
      throw GraphFormatError(FormatErrorKind::kBadSpin, at_line(i) + "spin must be -1 or 1");
    }
    if (f.contains(static_cast<Vertex>(v))) {
      throw GraphFormatError(FormatErrorKind::kMalformed,
                             at_line(i) + "vertex " + std::to_string(v) + " listed twice");
    }
    f.set(static_cast<Vertex>(v), static_cast<Spin>(s));
  }
  return f;
}

FrozenAssignment load_frozen(const std::filesystem::path& path, std::size_t n) {
  return parse_frozen(read_file(path), n);
}

std::string format_graph(const Graph& g) {
  std::string out;
  out.reserve(16 + g.num_edges() * 14);
  out += std::to_string(g.num_vertices());
  out += ' ';
  out += std::to_string(g.num_edges());
  out += '\n';
  for (const auto& [u, v] : g.edge_list()) {
    out += std::to_string(u);
    out += ' ';
    out += std::to_string(v);
    out += '\n';
  }
  return out;
}

std::string format_assignment(const Assignment& a) {
  std::string out;
  out.reserve(a.size() * 10);
  for (Vertex v = 0; v < a.size(); ++v) {
    out += std::to_string(v);
    out += a[v] == 1 ? " 1\n" : " -1\n";
  }
  return out;
}

Graph load_graph(const std::filesystem::path& path) { return parse_graph(read_file(path)); }

Assignment load_assignment(const std::filesystem::path& path, std::size_t n) {
  return parse_assignment(read_file(path), n);
}

void store_graph(const Graph& g, const std::filesystem::path& path) {
  write_file(path, format_graph(g));
}

void store_assignment(const Assignment& a, const std::filesystem::path& path) {
  write_file(path, format_assignment(a));
}

void store_instance(const Graph& g, const Assignment& a, const std::filesystem::path& prefix) {
  if (a.size() != g.num_vertices()) throw InvalidArgument("store_instance: size mismatch");
  store_graph(g, prefix.string() + ".edges");
  store_assignment(a, prefix.string() + ".sigma");
}

PlantedInstance load_instance(const std::filesystem::path& prefix) {
  Graph g = load_graph(prefix.string() + ".edges");
  Assignment a = load_assignment(prefix.string() + ".sigma", g.num_vertices());
  return {std::move(g), std::move(a)};
}

}  // namespace pbis
