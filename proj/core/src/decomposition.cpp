#include "twreduce/decomposition.hpp"

#include <algorithm>
#include <charconv>
#include <functional>
#include <optional>
#include <set>
#include <sstream>

namespace twr {

namespace {

[[noreturn]] void fail_line(const std::string& what, int line) {
  throw ParseError(what + ", line " + std::to_string(line));
}

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

int TreeDecomposition::width() const {
  std::size_t mx = 0;
  for (const auto& bag : bags) mx = std::max(mx, bag.size());
  return static_cast<int>(mx) - 1;
}

TreeDecomposition parse_td(std::string_view text, int n_vertices) {
  TreeDecomposition td;
  std::int64_t nbags = -1, declared_n = -1;
  std::vector<bool> bag_seen;
  LineReader reader{text};
  while (auto line = reader.next()) {
    const int line_no = reader.line_no;
    const auto toks = tokenize(*line);
    if (toks.empty() || toks[0] == "c") continue;
    if (toks[0] == "s") {
      if (nbags >= 0) fail_line("duplicate solution header", line_no);
      if (toks.size() != 5 || toks[1] != "td") {
        fail_line("malformed header, expected `s td <#bags> <width+1> <n>`",
                  line_no);
      }
      const auto b = to_int(toks[2]), w = to_int(toks[3]), n = to_int(toks[4]);
      if (!b || !w || !n || *b < 0 || *w < 0 || *n < 0) {
        fail_line("malformed header, expected `s td <#bags> <width+1> <n>`",
                  line_no);
      }
      nbags = *b;
      td.declared_width = static_cast<int>(*w) - 1;
      declared_n = *n;
      td.bags.assign(static_cast<std::size_t>(nbags), {});
      bag_seen.assign(static_cast<std::size_t>(nbags), false);
      continue;
    }
    if (nbags < 0) fail_line("content before solution header", line_no);
    if (toks[0] == "b") {
      if (toks.size() < 2) fail_line("malformed bag line", line_no);
      const auto id = to_int(toks[1]);
      if (!id || *id < 1 || *id > nbags) fail_line("bag id out of range", line_no);
      if (bag_seen[*id - 1]) fail_line("duplicate bag id", line_no);
      bag_seen[*id - 1] = true;
      auto& bag = td.bags[*id - 1];
      for (std::size_t k = 2; k < toks.size(); ++k) {
        const auto v = to_int(toks[k]);
        if (!v || *v < 1 || *v > declared_n) {
          fail_line("bag vertex out of range", line_no);
        }
        bag.push_back(static_cast<int>(*v - 1));
      }
      std::sort(bag.begin(), bag.end());
      bag.erase(std::unique(bag.begin(), bag.end()), bag.end());
    } else {
      if (toks.size() != 2) fail_line("malformed tree edge line", line_no);
      const auto a = to_int(toks[0]), b = to_int(toks[1]);
      if (!a || !b || *a < 1 || *a > nbags || *b < 1 || *b > nbags) {
        fail_line("tree edge node id out of range", line_no);
      }
      td.tree_edges.push_back({static_cast<int>(*a - 1), static_cast<int>(*b - 1)});
    }
  }
  if (nbags < 0) throw ParseError("missing solution header");
  if (n_vertices >= 0 && declared_n != n_vertices) {
    throw ParseError("decomposition declares " + std::to_string(declared_n) +
                     " vertices but the graph has " + std::to_string(n_vertices));
  }
  return td;
}

std::string write_td(const TreeDecomposition& td, int n_vertices) {
  std::ostringstream os;
  os << "s td " << td.bags.size() << ' ' << td.width() + 1 << ' ' << n_vertices
     << '\n';
  for (std::size_t i = 0; i < td.bags.size(); ++i) {
    os << "b " << i + 1;
    for (int v : td.bags[i]) os << ' ' << v + 1;
    os << '\n';
  }
  for (const auto& [a, b] : td.tree_edges) os << a + 1 << ' ' << b + 1 << '\n';
  return os.str();
}

void validate_decomposition(const TreeDecomposition& td, const Graph& g) {
  const int nb = static_cast<int>(td.bags.size());
  if (nb == 0) {
    if (g.vertex_count() == 0) return;
    throw ValidationError("vertex coverage violated: vertex 1 is in no bag");
  }
  // tree structure
  if (static_cast<int>(td.tree_edges.size()) != nb - 1) {
    throw ValidationError(
        "tree structure violated: " + std::to_string(nb) + " bags need " +
        std::to_string(nb - 1) + " tree edges, got " +
        std::to_string(td.tree_edges.size()));
  }
  std::vector<std::vector<int>> adj(nb);
  for (const auto& [a, b] : td.tree_edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  {
    std::vector<bool> seen(nb, false);
    std::vector<int> stack{0};
    seen[0] = true;
    int count = 1;
    while (!stack.empty()) {
      const int u = stack.back();
      stack.pop_back();
      for (int v : adj[u]) {
        if (!seen[v]) {
          seen[v] = true;
          ++count;
          stack.push_back(v);
        }
      }
    }
    if (count != nb) {
      for (int i = 0; i < nb; ++i) {
        if (!seen[i]) {
          throw ValidationError(
              "tree structure violated: bag " + std::to_string(i + 1) +
              " is disconnected from bag 1");
        }
      }
    }
  }
  // vertex coverage + per-vertex occurrence counting
  const int n = g.vertex_count();
  std::vector<int> occurrences(n, 0);
  for (const auto& bag : td.bags) {
    for (int v : bag) {
      if (v < 0 || v >= n) {
        throw ValidationError("bag vertex out of range: vertex " +
                              std::to_string(v + 1));
      }
      ++occurrences[v];
    }
  }
  for (int v = 0; v < n; ++v) {
    if (occurrences[v] == 0) {
      throw ValidationError("vertex coverage violated: vertex " +
                            std::to_string(v + 1) + " is in no bag");
    }
  }
  // connectivity: occurrences of v form a subtree iff the number of tree
  // edges whose both bags contain v equals occurrences - 1
  std::vector<int> internal_edges(n, 0);
  for (const auto& [a, b] : td.tree_edges) {
    const auto& ba = td.bags[a];
    const auto& bb = td.bags[b];
    std::size_t i = 0, j = 0;
    while (i < ba.size() && j < bb.size()) {
      if (ba[i] < bb[j]) {
        ++i;
      } else if (ba[i] > bb[j]) {
        ++j;
      } else {
        ++internal_edges[ba[i]];
        ++i;
        ++j;
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (internal_edges[v] != occurrences[v] - 1) {
      throw ValidationError("vertex connectivity violated: vertex " +
                            std::to_string(v + 1) +
                            " does not induce a connected subtree");
    }
  }
  // edge coverage
  std::vector<std::vector<int>> bags_of(n);
  for (int b = 0; b < nb; ++b) {
    for (int v : td.bags[b]) bags_of[v].push_back(b);
  }
  for (const GraphEdge& e : g.edges()) {
    const auto& lu = bags_of[e.u];
    const auto& lv = bags_of[e.v];
    std::size_t i = 0, j = 0;
    bool covered = false;
    while (i < lu.size() && j < lv.size()) {
      if (lu[i] < lv[j]) {
        ++i;
      } else if (lu[i] > lv[j]) {
        ++j;
      } else {
        covered = true;
        break;
      }
    }
    if (!covered) {
      throw ValidationError("edge coverage violated: edge (" +
                            std::to_string(e.u + 1) + "," +
                            std::to_string(e.v + 1) + ") is in no bag");
    }
  }
  // declared width
  if (td.declared_width >= 0 && td.declared_width != td.width()) {
    throw ValidationError(
        "width declaration violated: declared " +
        std::to_string(td.declared_width) + ", actual " +
        std::to_string(td.width()));
  }
}

namespace {

// Elimination-game skeleton. `rescore` recomputes the greedy key of one
// vertex after its neighborhood changed; the lowest (score, id) pair is
// eliminated next.
TreeDecomposition eliminate(
    const Graph& g,
    const std::function<std::int64_t(int, const std::vector<std::set<int>>&)>&
        rescore) {
  const int n = g.vertex_count();
  TreeDecomposition td;
  if (n == 0) {
    td.bags.push_back({});
    td.declared_width = td.width();
    return td;
  }
  std::vector<std::set<int>> adj(n);
  for (const GraphEdge& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  std::set<std::pair<std::int64_t, int>> queue;
  std::vector<std::int64_t> key(n);
  for (int v = 0; v < n; ++v) {
    key[v] = rescore(v, adj);
    queue.insert({key[v], v});
  }
  auto refresh = [&](int v) {
    const std::int64_t s = rescore(v, adj);
    if (s != key[v]) {
      queue.erase({key[v], v});
      key[v] = s;
      queue.insert({s, v});
    }
  };
  std::vector<int> elim_index(n, -1);
  std::vector<std::vector<int>> bags;
  for (int step = 0; step < n; ++step) {
    const int best = queue.begin()->second;
    queue.erase(queue.begin());
    std::vector<int> bag(adj[best].begin(), adj[best].end());
    bag.push_back(best);
    std::sort(bag.begin(), bag.end());
    bags.push_back(std::move(bag));
    elim_index[best] = step;
    // make the neighborhood a clique, then remove the vertex
    std::vector<int> nbrs(adj[best].begin(), adj[best].end());
    for (std::size_t i = 0; i < nbrs.size(); ++i) {
      for (std::size_t j = i + 1; j < nbrs.size(); ++j) {
        adj[nbrs[i]].insert(nbrs[j]);
        adj[nbrs[j]].insert(nbrs[i]);
      }
    }
    for (int u : nbrs) adj[u].erase(best);
    adj[best].clear();
    // only the neighborhood (and, for fill scores, its neighbors) changed;
    // two rings cover both greedy keys used here
    std::set<int> touched(nbrs.begin(), nbrs.end());
    for (int u : nbrs) touched.insert(adj[u].begin(), adj[u].end());
    for (int u : touched) {
      if (elim_index[u] < 0) refresh(u);
    }
  }
  td.bags = std::move(bags);
  // bag i hangs below the bag of the next-eliminated vertex it contains
  for (int i = 0; i < n - 1; ++i) {
    int parent = i + 1;  // fallback keeps the tree connected
    int best_step = n;
    for (int v : td.bags[i]) {
      if (elim_index[v] > i && elim_index[v] < best_step) best_step = elim_index[v];
    }
    if (best_step < n) parent = best_step;
    td.tree_edges.push_back({i, parent});
  }
  td.declared_width = td.width();
  return td;
}

}  // namespace

TreeDecomposition heuristic_decompose(const Graph& g, DecomposeStrategy strategy) {
  TreeDecomposition td;
  if (strategy == DecomposeStrategy::MinDegree) {
    td = eliminate(g, [](int v, const std::vector<std::set<int>>& adj) {
      return static_cast<std::int64_t>(adj[v].size());
    });
  } else {
    td = eliminate(g, [](int v, const std::vector<std::set<int>>& adj) {
      // number of missing edges among the neighbors
      std::int64_t fill = 0;
      const auto& nv = adj[v];
      for (auto it = nv.begin(); it != nv.end(); ++it) {
        auto jt = it;
        for (++jt; jt != nv.end(); ++jt) {
          if (!adj[*it].contains(*jt)) ++fill;
        }
      }
      return fill;
    });
  }
  validate_decomposition(td, g);
  return td;
}

}  // namespace twr
