#include <algorithm>
#include <deque>
#include <limits>

#include "subshift/error.hpp"
#include "subshift/language.hpp"

namespace subshift {

namespace {

struct RauzyGraph {
  std::size_t vertices = 0;
  std::vector<std::size_t> tail, head;  // per edge
  std::vector<std::vector<std::size_t>> out;
  const std::vector<Word>* edge_words = nullptr;
  const std::vector<Word>* vertex_words = nullptr;
};

RauzyGraph rauzy_graph(const FactorLanguage& lang, std::size_t n) {
  if (n == 0) throw PreconditionError("visiting time needs n >= 1");
  RauzyGraph g;
  g.vertex_words = &lang.factors(n - 1);
  g.edge_words = &lang.factors(n);
  const auto& vs = *g.vertex_words;
  g.vertices = vs.size();
  g.out.resize(g.vertices);
  auto index = [&](Word w) {
    auto it = std::lower_bound(vs.begin(), vs.end(), w);
    if (it == vs.end() || *it != w) throw PreconditionError("language is not factorial");
    return static_cast<std::size_t>(it - vs.begin());
  };
  for (const auto& e : *g.edge_words) {
    g.tail.push_back(index(Word(e.begin(), e.end() - 1)));
    g.head.push_back(index(Word(e.begin() + 1, e.end())));
    g.out[g.tail.back()].push_back(g.tail.size() - 1);
  }
  return g;
}

// Successive shortest paths on a small graph with unit or zero costs.
class MinCostFlow {
 public:
  explicit MinCostFlow(std::size_t nodes) : adj_(nodes) {}

  std::size_t add_arc(std::size_t from, std::size_t to, std::int64_t cap, std::int64_t cost) {
    adj_[from].push_back(arcs_.size());
    arcs_.push_back({to, cap, cost, 0});
    adj_[to].push_back(arcs_.size());
    arcs_.push_back({from, 0, -cost, 0});
    return arcs_.size() - 2;
  }

  std::pair<std::int64_t, std::int64_t> run(std::size_t s, std::size_t t) {
    std::int64_t flow = 0, cost = 0;
    const std::size_t n = adj_.size();
    constexpr std::int64_t kInf = std::numeric_limits<std::int64_t>::max() / 4;
    while (true) {
      std::vector<std::int64_t> dist(n, kInf);
      std::vector<std::size_t> via(n, arcs_.size());
      std::vector<bool> queued(n, false);
      std::deque<std::size_t> q{s};
      dist[s] = 0;
      while (!q.empty()) {
        std::size_t u = q.front();
        q.pop_front();
        queued[u] = false;
        for (std::size_t id : adj_[u]) {
          const Arc& a = arcs_[id];
          if (a.cap - a.flow <= 0 || dist[u] + a.cost >= dist[a.to]) continue;
          dist[a.to] = dist[u] + a.cost;
          via[a.to] = id;
          if (!queued[a.to]) {
            queued[a.to] = true;
            q.push_back(a.to);
          }
        }
      }
      if (dist[t] == kInf) break;
      std::int64_t push = kInf;
      for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to)
        push = std::min(push, arcs_[via[v]].cap - arcs_[via[v]].flow);
      for (std::size_t v = t; v != s; v = arcs_[via[v] ^ 1].to) {
        arcs_[via[v]].flow += push;
        arcs_[via[v] ^ 1].flow -= push;
      }
      flow += push;
      cost += push * dist[t];
    }
    return {flow, cost};
  }

  std::int64_t flow_on(std::size_t arc) const { return arcs_[arc].flow; }

 private:
  struct Arc {
    std::size_t to;
    std::int64_t cap, cost, flow;
  };
  std::vector<std::vector<std::size_t>> adj_;
  std::vector<Arc> arcs_;
};

}  // namespace

VisitingTime visiting_time_search(const FactorLanguage& lang, std::size_t n,
                                  std::size_t state_cap) {
  const RauzyGraph g = rauzy_graph(lang, n);
  const std::size_t edges = g.tail.size();
  if (edges >= 63 || (g.vertices << edges) > state_cap || (g.vertices << edges) >> edges != g.vertices)
    throw CapExceeded("covering-walk search exceeds the state cap at n = " + std::to_string(n));
  const std::uint64_t full = (1ull << edges) - 1;
  std::vector<bool> seen(g.vertices << edges, false);
  std::vector<std::pair<std::size_t, std::uint64_t>> frontier;
  for (std::size_t v = 0; v < g.vertices; ++v) {
    seen[v << edges] = true;
    frontier.push_back({v, 0});
  }
  VisitingTime r;
  r.n = n;
  r.method = "search";
  std::size_t depth = 0;
  while (!frontier.empty()) {
    std::vector<std::pair<std::size_t, std::uint64_t>> next;
    for (auto [v, mask] : frontier) {
      ++r.states;
      if (mask == full) {
        r.value = depth + n - 1;
        return r;
      }
      for (std::size_t e : g.out[v]) {
        std::size_t w = g.head[e];
        std::uint64_t m = mask | (1ull << e);
        std::size_t key = (w << edges) | m;
        if (!seen[key]) {
          seen[key] = true;
          next.push_back({w, m});
        }
      }
    }
    frontier = std::move(next);
    ++depth;
  }
  throw PreconditionError("no walk covers every word of length " + std::to_string(n));
}

VisitingTime visiting_time_flow(const FactorLanguage& lang, std::size_t n) {
  const RauzyGraph g = rauzy_graph(lang, n);
  const std::size_t V = g.vertices;
  const std::size_t E = g.tail.size();
  // Nodes: graph vertices, jump-in, jump-out, source, sink.
  const std::size_t jin = V, jout = V + 1, src = V + 2, snk = V + 3;
  MinCostFlow mcf(V + 4);
  constexpr std::int64_t kBig = 1 << 30;
  std::vector<std::int64_t> excess(V, 0);
  std::vector<std::size_t> extra(E);
  for (std::size_t e = 0; e < E; ++e) {
    excess[g.head[e]] += 1;
    excess[g.tail[e]] -= 1;
    extra[e] = mcf.add_arc(g.tail[e], g.head[e], kBig, 1);
  }
  std::vector<std::size_t> into_jump(V), out_of_jump(V);
  for (std::size_t v = 0; v < V; ++v) {
    into_jump[v] = mcf.add_arc(v, jin, kBig, 0);
    out_of_jump[v] = mcf.add_arc(jout, v, kBig, 0);
  }
  mcf.add_arc(jin, jout, 1, 0);
  std::int64_t demand = 0;
  for (std::size_t v = 0; v < V; ++v) {
    if (excess[v] > 0) {
      mcf.add_arc(src, v, excess[v], 0);
      demand += excess[v];
    } else if (excess[v] < 0) {
      mcf.add_arc(v, snk, -excess[v], 0);
    }
  }
  auto [flow, cost] = mcf.run(src, snk);
  if (flow != demand)
    throw PreconditionError("no walk covers every word of length " + std::to_string(n));

  // Euler trail on the multigraph of traversals, starting where the jump lands.
  std::vector<std::vector<std::size_t>> mult_out(V);
  std::size_t total = 0;
  for (std::size_t e = 0; e < E; ++e) {
    auto copies = 1 + static_cast<std::size_t>(mcf.flow_on(extra[e]));
    for (std::size_t c = 0; c < copies; ++c) mult_out[g.tail[e]].push_back(e);
    total += copies;
  }
  std::size_t start = g.tail.empty() ? 0 : g.tail.front();
  std::optional<std::size_t> jump_from, jump_to;
  for (std::size_t v = 0; v < V; ++v) {
    if (mcf.flow_on(into_jump[v]) > 0) jump_from = v;
    if (mcf.flow_on(out_of_jump[v]) > 0) jump_to = v;
  }
  if (jump_to && jump_from && *jump_to != *jump_from) start = *jump_to;
  std::vector<std::size_t> cursor(V, 0), trail, stack_v{start}, stack_e;
  while (!stack_v.empty()) {
    std::size_t v = stack_v.back();
    if (cursor[v] < mult_out[v].size()) {
      std::size_t e = mult_out[v][cursor[v]++];
      stack_v.push_back(g.head[e]);
      stack_e.push_back(e);
    } else {
      stack_v.pop_back();
      if (!stack_e.empty()) {
        trail.push_back(stack_e.back());
        stack_e.pop_back();
      }
    }
  }
  if (trail.size() != total)
    throw PreconditionError("traversal multigraph is disconnected at n = " + std::to_string(n));
  std::reverse(trail.begin(), trail.end());

  VisitingTime r;
  r.n = n;
  r.method = "flow";
  r.value = total + n - 1;
  if (!trail.empty()) {
    const Word& first = (*g.edge_words)[trail.front()];
    r.walk.assign(first.begin(), first.end() - 1);
    for (std::size_t e : trail) r.walk.push_back((*g.edge_words)[e].back());
  }
  (void)cost;
  return r;
}

VisitingTime visiting_time(const FactorLanguage& lang, std::size_t n, std::size_t state_cap) {
  if (n == 0) throw PreconditionError("visiting time needs n >= 1");
  const std::size_t vertices = lang.factors(n - 1).size();
  const std::size_t edges = lang.factors(n).size();
  if (edges < 63 && (vertices << edges) >> edges == vertices && (vertices << edges) <= state_cap)
    return visiting_time_search(lang, n, state_cap);
  return visiting_time_flow(lang, n);
}

}  // namespace subshift
