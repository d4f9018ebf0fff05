#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "pimvar/classify.hpp"

namespace pimvar::classify {

namespace {

std::string state_key(const abs::State& s, std::uint8_t extra) {
  std::string k(s.pos.begin(), s.pos.end());
  k += static_cast<char>(extra);
  for (auto v : s.env) k.append({static_cast<char>(v & 0xff), static_cast<char>(v >> 8)});
  for (auto v : s.content) k.append({static_cast<char>(v & 0xff), static_cast<char>(v >> 8)});
  for (auto v : s.checks)
    for (int b = 0; b < 4; ++b) k += static_cast<char>((v >> (8 * b)) & 0xff);
  return k;
}

// Thread order in the overlap system.
enum : std::size_t { kS = 0, kR = 1, kS2 = 2, kR2 = 3 };

// Prefix/suffix thread sets for the four ways of splitting an execution.
constexpr std::uint8_t kPrefix[4] = {
    (1 << kS) | (1 << kR),
    (1 << kS2) | (1 << kR2),
    (1 << kS) | (1 << kR2),
    (1 << kS2) | (1 << kR),
};

enum : std::uint8_t { kInPrefix = 0, kInSuffix = 1, kDead = 2 };

std::uint8_t advance(std::uint8_t split, std::size_t thread) {
  std::uint8_t next = 0;
  for (int o = 0; o < 4; ++o) {
    std::uint8_t st = (split >> (2 * o)) & 3;
    const bool in_prefix_set = (kPrefix[o] >> thread) & 1;
    if (st == kInPrefix && !in_prefix_set) st = kInSuffix;
    else if (st == kInSuffix && in_prefix_set) st = kDead;
    next |= static_cast<std::uint8_t>(st << (2 * o));
  }
  return next;
}

bool splittable(std::uint8_t split) {
  for (int o = 0; o < 4; ++o)
    if (((split >> (2 * o)) & 3) != kDead) return true;
  return false;
}

class OverlapSearch {
 public:
  OverlapSearch(const abs::Program& p, DeadlockPolicy policy) : p_(p), policy_(policy) {}

  // true when some maximal execution violates the split property
  bool violated(const abs::State& s, std::uint8_t split) {
    if (!seen_.insert(state_key(s, split)).second) return false;
    bool moved = false;
    for (std::size_t t = 0; t < p_.threads.size(); ++t) {
      if (!abs::enabled(p_, s, t)) continue;
      moved = true;
      abs::State n = s;
      abs::fire(p_, n, t);
      if (violated(n, advance(split, t))) return true;
    }
    if (moved) return false;
    if (!abs::is_complete(p_, s) && policy_ == DeadlockPolicy::Violation) return true;
    return !splittable(split);
  }

 private:
  const abs::Program& p_;
  DeadlockPolicy policy_;
  std::unordered_set<std::string> seen_;
};

}  // namespace

std::string to_string(Label l) {
  switch (l) {
    case Label::NonCommunicating:
      return "NonCommunicating";
    case Label::NonExecutable:
      return "NonExecutable";
    case Label::Overlapping:
      return "Overlapping";
    default:
      return "Candidate";
  }
}

std::string to_string(DeadlockPolicy p) { return p == DeadlockPolicy::Violation ? "violation" : "split"; }

DeadlockPolicy parse_policy(const std::string& s) {
  if (s == "violation") return DeadlockPolicy::Violation;
  if (s == "split") return DeadlockPolicy::Split;
  throw std::invalid_argument("unknown deadlock policy: " + s);
}

bool is_communicating(const gstb::Translation& t) {
  return std::any_of(t.send.begin(), t.send.end(), [](const gstb::Action& a) { return a.op == gstb::Op::TakeC; });
}

bool is_executable(const gstb::Translation& t) {
  abs::Program p;
  auto x = p.intern("x"), m = p.intern("m"), y = p.intern("y", true);
  auto [s, r] = gstb::instantiate(t, x, m, y);
  p.threads = {s, r};
  p.n_checks = t.n_checks();
  std::unordered_set<std::string> seen;
  std::vector<abs::State> stack{abs::initial(p)};
  while (!stack.empty()) {
    abs::State cur = std::move(stack.back());
    stack.pop_back();
    if (abs::is_complete(p, cur)) return true;
    if (!seen.insert(state_key(cur, 0)).second) continue;
    for (auto& [th, n] : abs::step(p, cur)) stack.push_back(std::move(n));
  }
  return false;
}

bool is_overlap_free(const gstb::Translation& t, DeadlockPolicy policy) {
  abs::Program p;
  auto x = p.intern("x");
  auto m1 = p.intern("m1"), m2 = p.intern("m2");
  auto y1 = p.intern("y1", true), y2 = p.intern("y2", true);
  auto [s1, r1] = gstb::instantiate(t, x, m1, y1);
  auto [s2, r2] = gstb::instantiate(t, x, m2, y2);
  p.threads = {s1, r1, s2, r2};
  p.n_checks = t.n_checks();
  OverlapSearch search(p, policy);
  return !search.violated(abs::initial(p), 0);
}

Label classify(const gstb::Translation& t, DeadlockPolicy policy) {
  if (!is_communicating(t)) return Label::NonCommunicating;
  if (!is_executable(t)) return Label::NonExecutable;
  if (!is_overlap_free(t, policy)) return Label::Overlapping;
  return Label::Candidate;
}

}  // namespace pimvar::classify
