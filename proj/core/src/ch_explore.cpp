#include <deque>
#include <unordered_map>

#include "pimvar/ch.hpp"

namespace pimvar::ch {

namespace {

struct KeyHash {
  std::size_t operator()(const Key128& k) const noexcept { return k.lo ^ (k.hi * 0x9e3779b97f4a7c15ull); }
};

struct Node {
  std::vector<std::uint32_t> succ;
  bool success = false;
  bool frontier = false;
};

// Marks every node that can reach a seed node.
std::vector<bool> backward(const std::vector<Node>& g, const std::vector<std::vector<std::uint32_t>>& pred,
                           auto seed) {
  std::vector<bool> mark(g.size(), false);
  std::vector<std::uint32_t> stack;
  for (std::uint32_t i = 0; i < g.size(); ++i)
    if (seed(g[i])) {
      mark[i] = true;
      stack.push_back(i);
    }
  while (!stack.empty()) {
    auto v = stack.back();
    stack.pop_back();
    for (auto p : pred[v])
      if (!mark[p]) {
        mark[p] = true;
        stack.push_back(p);
      }
  }
  return mark;
}

}  // namespace

ChVerdict verdict(const ChState& s, const VerdictOptions& opt) {
  const bool macro = opt.scheduler == Scheduler::Macro;
  std::vector<Node> g;
  std::unordered_map<Key128, std::uint32_t, KeyHash> index;
  struct Item {
    ChState state;
    std::uint32_t id;
    std::uint64_t depth;
  };
  std::deque<Item> queue;

  ChState root = s;
  bool root_capped = macro && !settle(root, opt.macro);
  g.push_back({});
  g[0].frontier = root_capped;
  index.emplace(canonical_key(root), 0);
  if (!root_capped) queue.push_back({std::move(root), 0, 0});

  std::vector<bool> capped;
  while (!queue.empty()) {
    Item it = std::move(queue.front());
    queue.pop_front();
    if (is_successful(it.state)) {
      g[it.id].success = true;
      continue;
    }
    if (it.depth >= opt.depth_bound || g.size() >= opt.max_states) {
      g[it.id].frontier = true;
      continue;
    }
    auto succ = macro ? macro_step(it.state, &capped, opt.macro) : step(it.state);
    for (std::size_t k = 0; k < succ.size(); ++k) {
      auto key = canonical_key(succ[k]);
      auto [pos, fresh] = index.try_emplace(key, static_cast<std::uint32_t>(g.size()));
      if (fresh) {
        g.push_back({});
        if (macro && capped[k])
          g.back().frontier = true;
        else
          queue.push_back({std::move(succ[k]), pos->second, it.depth + 1});
      }
      g[it.id].succ.push_back(pos->second);
    }
  }

  std::vector<std::vector<std::uint32_t>> pred(g.size());
  for (std::uint32_t v = 0; v < g.size(); ++v)
    for (auto w : g[v].succ) pred[w].push_back(v);
  auto may = backward(g, pred, [](const Node& n) { return n.success; });
  auto open = backward(g, pred, [](const Node& n) { return n.frontier; });

  ChVerdict v;
  v.explored = g.size();
  v.depth_bound = opt.depth_bound;
  v.may = may[0] ? Tri::True : open[0] ? Tri::Unknown : Tri::False;
  bool refuted = false, unresolved = false;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!may[i] && !open[i]) refuted = true;
    if (!may[i] || g[i].frontier) unresolved = true;
  }
  v.should = refuted ? Tri::False : unresolved ? Tri::Unknown : Tri::True;
  return v;
}

}  // namespace pimvar::ch
