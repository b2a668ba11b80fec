#include "gf/folding.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>

namespace gf {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<size_t>(x)] != x) {
      parent[static_cast<size_t>(x)] = parent[static_cast<size_t>(parent[static_cast<size_t>(x)])];
      x = parent[static_cast<size_t>(x)];
    }
    return x;
  }
  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    parent[static_cast<size_t>(std::max(a, b))] = std::min(a, b);
    return true;
  }
};

struct RawEdge {
  int from, gen, to;
};

} // namespace

int SubgroupGraph::edge_count() const {
  int e = 0;
  for (const auto& row : out)
    for (int t : row)
      if (t >= 0) ++e;
  return e;
}

int SubgroupGraph::rank() const { return edge_count() - n_states + 1; }

bool SubgroupGraph::operator==(const SubgroupGraph& o) const {
  return alphabet == o.alphabet && n_states == o.n_states && base == o.base &&
         out == o.out && in == o.in;
}

SubgroupGraph fold_subgroup(const Alphabet& a, const std::vector<Word>& generators) {
  std::vector<RawEdge> edges;
  int n = 1; // state 0 is the base
  for (const Word& w : generators) {
    if (w.empty()) continue;
    int cur = 0;
    for (size_t i = 0; i < w.size(); ++i) {
      const Letter& l = w.letters[i];
      int next = (i + 1 == w.size()) ? 0 : n++;
      if (l.sign > 0)
        edges.push_back({cur, l.gen, next});
      else
        edges.push_back({next, l.gen, cur});
      cur = next;
    }
  }

  UnionFind uf(n);
  // Fold to a fixpoint: merge targets of equal-labeled edges sharing a source
  // (and sources sharing a target).
  bool changed = true;
  while (changed) {
    changed = false;
    std::map<std::pair<int, int>, int> out_seen, in_seen;
    for (const RawEdge& e : edges) {
      int f = uf.find(e.from), t = uf.find(e.to);
      auto [oit, ofresh] = out_seen.emplace(std::make_pair(f, e.gen), t);
      if (!ofresh && oit->second != t) {
        uf.unite(oit->second, t);
        changed = true;
        break;
      }
      auto [iit, ifresh] = in_seen.emplace(std::make_pair(t, e.gen), f);
      if (!ifresh && iit->second != f) {
        uf.unite(iit->second, f);
        changed = true;
        break;
      }
    }
  }

  // Deduplicate edges between merged states.
  std::map<std::pair<int, int>, int> out_map; // (state, gen) -> target
  for (const RawEdge& e : edges)
    out_map[{uf.find(e.from), e.gen}] = uf.find(e.to);

  int base = uf.find(0);

  // Core trim: drop non-base states of total degree <= 1.
  std::map<int, int> degree;
  for (const auto& [key, t] : out_map) {
    degree[key.first]++;
    degree[t]++;
  }
  bool trimmed = true;
  while (trimmed) {
    trimmed = false;
    for (auto it = out_map.begin(); it != out_map.end();) {
      int f = it->first.first, t = it->second;
      if ((f != base && degree[f] <= 1) || (t != base && degree[t] <= 1)) {
        degree[f]--;
        degree[t]--;
        it = out_map.erase(it);
        trimmed = true;
      } else {
        ++it;
      }
    }
  }

  // Canonical renumbering: BFS from base, labels in order, out before in.
  int na = a.size();
  std::map<int, std::map<int, int>> adj_out, adj_in;
  for (const auto& [key, t] : out_map) {
    adj_out[key.first][key.second] = t;
    adj_in[t][key.second] = key.first;
  }
  std::map<int, int> renum;
  renum[base] = 0;
  std::queue<int> q;
  q.push(base);
  int next_id = 1;
  while (!q.empty()) {
    int s = q.front();
    q.pop();
    for (int g = 0; g < na; ++g) {
      auto visit = [&](int to) {
        if (renum.find(to) == renum.end()) {
          renum[to] = next_id++;
          q.push(to);
        }
      };
      auto o = adj_out[s].find(g);
      if (o != adj_out[s].end()) visit(o->second);
      auto i = adj_in[s].find(g);
      if (i != adj_in[s].end()) visit(i->second);
    }
  }

  SubgroupGraph g;
  g.alphabet = a;
  g.n_states = next_id;
  g.base = 0;
  g.out.assign(static_cast<size_t>(next_id), std::vector<int>(static_cast<size_t>(na), -1));
  g.in.assign(static_cast<size_t>(next_id), std::vector<int>(static_cast<size_t>(na), -1));
  for (const auto& [key, t] : out_map) {
    int f = renum.at(key.first), to = renum.at(t);
    g.out[static_cast<size_t>(f)][static_cast<size_t>(key.second)] = to;
    g.in[static_cast<size_t>(to)][static_cast<size_t>(key.second)] = f;
  }
  return g;
}

bool subgroup_member(const SubgroupGraph& g, const Word& w) {
  int cur = g.base;
  for (const Letter& l : w.letters) {
    int next = l.sign > 0 ? g.out[static_cast<size_t>(cur)][static_cast<size_t>(l.gen)]
                          : g.in[static_cast<size_t>(cur)][static_cast<size_t>(l.gen)];
    if (next < 0) return false;
    cur = next;
  }
  return cur == g.base;
}

std::vector<Word> subgroup_elements(const SubgroupGraph& g, int max_len, size_t cap) {
  std::vector<Word> found;
  struct Node {
    Word w;
    int state;
  };
  std::vector<Node> frontier{{Word{}, g.base}};
  found.push_back(Word{});
  for (int len = 1; len <= max_len; ++len) {
    std::vector<Node> next;
    for (const Node& nd : frontier) {
      for (int k = 0; k < g.alphabet.size() * 2; ++k) {
        Letter l{k / 2, k % 2 == 0 ? 1 : -1};
        if (!nd.w.empty() && nd.w.letters.back() == l.inverse()) continue;
        int to = l.sign > 0 ? g.out[static_cast<size_t>(nd.state)][static_cast<size_t>(l.gen)]
                            : g.in[static_cast<size_t>(nd.state)][static_cast<size_t>(l.gen)];
        if (to < 0) continue;
        Word w = nd.w;
        w.letters.push_back(l);
        if (to == g.base) found.push_back(w);
        next.push_back({std::move(w), to});
        if (next.size() > cap || found.size() > cap)
          fail(ErrorKind::resource, "subgroup_elements: enumeration cap exceeded");
      }
    }
    frontier = std::move(next);
  }
  return found;
}

} // namespace gf
