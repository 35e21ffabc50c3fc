#include "twreduce/graph.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

namespace twr {

namespace {

[[noreturn]] void fail_line(const std::string& what, int line) {
  throw ParseError(what + ", line " + std::to_string(line));
}

// Splits into whitespace tokens; empty result for blank lines.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t')) ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t') ++j;
    if (j > i) out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

std::optional<std::int64_t> to_int(std::string_view tok) {
  std::int64_t value = 0;
  const auto res = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (res.ec != std::errc{} || res.ptr != tok.data() + tok.size()) {
    return std::nullopt;
  }
  return value;
}

struct LineReader {
  std::string_view text;
  std::size_t pos = 0;
  int line_no = 0;

  std::optional<std::string_view> next() {
    if (pos >= text.size()) return std::nullopt;
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    return line;
  }
};

}  // namespace

Graph::Graph(int n, std::vector<GraphEdge> edges) : n_(n) {
  if (n < 0) throw ContractError("Graph: negative vertex count");
  for (GraphEdge& e : edges) {
    if (e.u == e.v) throw ContractError("Graph: self-loop");
    if (e.u < 0 || e.v < 0 || e.u >= n || e.v >= n) {
      throw ContractError("Graph: endpoint out of range");
    }
    if (e.u > e.v) std::swap(e.u, e.v);
  }
  std::sort(edges.begin(), edges.end(), [](const GraphEdge& a, const GraphEdge& b) {
    if (a.u != b.u) return a.u < b.u;
    if (a.v != b.v) return a.v < b.v;
    return a.w < b.w;
  });
  // collapse parallel edges to minimum weight
  for (const GraphEdge& e : edges) {
    if (!edges_.empty() && edges_.back().u == e.u && edges_.back().v == e.v) {
      continue;  // sorted by weight within (u, v); first copy is minimal
    }
    edges_.push_back(e);
  }
  std::vector<int> deg(n_, 0);
  for (const GraphEdge& e : edges_) {
    ++deg[e.u];
    ++deg[e.v];
  }
  adj_offsets_.assign(n_ + 1, 0);
  for (int v = 0; v < n_; ++v) adj_offsets_[v + 1] = adj_offsets_[v] + deg[v];
  adj_.resize(adj_offsets_[n_]);
  std::vector<int> cursor(adj_offsets_.begin(), adj_offsets_.end() - 1);
  for (const GraphEdge& e : edges_) {
    adj_[cursor[e.u]++] = {e.v, e.w};
    adj_[cursor[e.v]++] = {e.u, e.w};
  }
}

std::span<const std::pair<int, Weight>> Graph::neighbors(int v) const {
  return {adj_.data() + adj_offsets_[v],
          adj_.data() + adj_offsets_[v + 1]};
}

int Graph::degree(int v) const { return adj_offsets_[v + 1] - adj_offsets_[v]; }

std::optional<int> Graph::find_edge(int u, int v) const {
  if (u > v) std::swap(u, v);
  const GraphEdge probe{u, v, 0};
  auto it = std::lower_bound(
      edges_.begin(), edges_.end(), probe,
      [](const GraphEdge& a, const GraphEdge& b) {
        if (a.u != b.u) return a.u < b.u;
        return a.v < b.v;
      });
  if (it == edges_.end() || it->u != u || it->v != v) return std::nullopt;
  return static_cast<int>(it - edges_.begin());
}

bool Graph::validate_adjacency() const {
  std::vector<std::vector<std::pair<int, Weight>>> expect(n_);
  for (const GraphEdge& e : edges_) {
    if (e.u == e.v || e.u < 0 || e.v >= n_) return false;
    expect[e.u].push_back({e.v, e.w});
    expect[e.v].push_back({e.u, e.w});
  }
  for (int v = 0; v < n_; ++v) {
    auto got = neighbors(v);
    std::vector<std::pair<int, Weight>> have(got.begin(), got.end());
    std::sort(have.begin(), have.end());
    std::sort(expect[v].begin(), expect[v].end());
    if (have != expect[v]) return false;
  }
  return true;
}

Graph parse_gr(std::string_view text) {
  LineReader reader{text};
  std::int64_t n = -1, m = -1;
  std::vector<GraphEdge> edges;
  std::int64_t seen_edges = 0;
  int last_line = 0;
  while (auto line = reader.next()) {
    last_line = reader.line_no;
    const auto toks = tokenize(*line);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "p") {
      if (n >= 0) fail_line("duplicate problem header", reader.line_no);
      if (toks.size() != 4 || toks[1] != "tw") {
        fail_line("malformed header, expected `p tw <n> <m>`", reader.line_no);
      }
      const auto pn = to_int(toks[2]), pm = to_int(toks[3]);
      if (!pn || !pm || *pn < 0 || *pm < 0) {
        fail_line("malformed header, expected `p tw <n> <m>`", reader.line_no);
      }
      n = *pn;
      m = *pm;
      continue;
    }
    if (n < 0) fail_line("edge before problem header", reader.line_no);
    if (toks.size() != 2 && toks.size() != 3) {
      fail_line("malformed edge line", reader.line_no);
    }
    const auto u = to_int(toks[0]), v = to_int(toks[1]);
    if (!u || !v) fail_line("malformed edge line", reader.line_no);
    if (*u < 1 || *u > n || *v < 1 || *v > n) {
      fail_line("vertex id out of range", reader.line_no);
    }
    if (*u == *v) fail_line("self-loop", reader.line_no);
    Weight w = 1;
    if (toks.size() == 3) {
      const auto pw = to_int(toks[2]);
      if (!pw) fail_line("malformed edge weight", reader.line_no);
      if (*pw < 0) fail_line("negative weight", reader.line_no);
      w = static_cast<Weight>(*pw);
    }
    ++seen_edges;
    if (seen_edges > m) fail_line("more edges than header declared", reader.line_no);
    edges.push_back({static_cast<int>(*u - 1), static_cast<int>(*v - 1), w});
  }
  if (n < 0) throw ParseError("missing problem header");
  if (seen_edges != m) {
    fail_line("edge count mismatch: header declared " + std::to_string(m) +
                  ", found " + std::to_string(seen_edges),
              last_line);
  }
  return Graph(static_cast<int>(n), std::move(edges));
}

std::string write_gr(const Graph& g) {
  std::ostringstream os;
  os << "p tw " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (const GraphEdge& e : g.edges()) {
    os << e.u + 1 << ' ' << e.v + 1;
    if (e.w != 1) os << ' ' << e.w;
    os << '\n';
  }
  return os.str();
}

std::vector<int> parse_terminals(std::string_view text, int n) {
  std::vector<int> out;
  LineReader reader{text};
  while (auto line = reader.next()) {
    for (const auto tok : tokenize(*line)) {
      if (tok == "c") break;  // comment tail
      const auto v = to_int(tok);
      if (!v) fail_line("malformed terminal id", reader.line_no);
      if (*v < 1 || *v > n) fail_line("terminal id out of range", reader.line_no);
      out.push_back(static_cast<int>(*v - 1));
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  if (out.empty()) throw ParseError("Steiner requires >=1 terminal");
  return out;
}

}  // namespace twr
