#include <algorithm>
#include <deque>
#include <map>
#include <unordered_map>

#include "json.hpp"

#include "pimvar/abstract.hpp"

namespace pimvar::abs {

NameId Program::intern(const std::string& name, bool is_binder) {
  auto it = std::find(names.begin(), names.end(), name);
  if (it != names.end()) return static_cast<NameId>(it - names.begin());
  names.push_back(name);
  binder.push_back(is_binder);
  return static_cast<NameId>(names.size() - 1);
}

std::string Program::print(const Action& a) const {
  auto nm = [&](NameId n) { return n == kNone ? std::string("?") : names.at(n); };
  switch (a.op) {
    case Op::PutS:
      return "putS_" + nm(a.chan) + " " + nm(a.arg);
    case Op::TakeS:
      return "takeS_" + nm(a.chan) + " " + nm(a.arg);
    case Op::PutC:
      return "putC" + std::to_string(a.idx) + "_" + nm(a.chan);
    case Op::TakeC:
      return "takeC" + std::to_string(a.idx) + "_" + nm(a.chan);
    default:
      return "stop";
  }
}

State initial(const Program& p) {
  State s;
  s.pos.assign(p.threads.size(), 0);
  s.env.assign(p.names.size(), kNone);
  s.content.assign(p.names.size(), kNone);
  s.checks.assign(p.names.size(), 0);
  return s;
}

NameId resolve(const State& s, NameId n) { return n != kNone && s.env[n] != kNone ? s.env[n] : n; }

bool is_successful(const Program& p, const State& s) {
  for (std::size_t t = 0; t < p.threads.size(); ++t)
    if (s.pos[t] < p.threads[t].size() && p.threads[t][s.pos[t]].op == Op::Stop) return true;
  return false;
}

bool is_complete(const Program& p, const State& s) {
  for (std::size_t t = 0; t < p.threads.size(); ++t)
    if (s.pos[t] < p.threads[t].size()) return false;
  return true;
}

bool enabled(const Program& p, const State& s, std::size_t t) {
  if (s.pos[t] >= p.threads[t].size()) return false;
  const Action& a = p.threads[t][s.pos[t]];
  if (a.op == Op::Stop) return false;
  NameId x = resolve(s, a.chan);
  const std::uint32_t bit = std::uint32_t{1} << a.idx;
  switch (a.op) {
    case Op::PutS:
      return s.content[x] == kNone;
    case Op::TakeS:
      return s.content[x] != kNone;
    case Op::PutC:
      return (s.checks[x] & bit) == 0;
    default:
      return (s.checks[x] & bit) != 0;
  }
}

Action fire(const Program& p, State& s, std::size_t t) {
  Action a = p.threads[t][s.pos[t]++];
  a.chan = resolve(s, a.chan);
  const std::uint32_t bit = std::uint32_t{1} << a.idx;
  switch (a.op) {
    case Op::PutS:
      a.arg = resolve(s, a.arg);
      s.content[a.chan] = a.arg;
      break;
    case Op::TakeS:
      s.env[a.arg] = s.content[a.chan];
      s.content[a.chan] = kNone;
      break;
    case Op::PutC:
      s.checks[a.chan] |= bit;
      break;
    case Op::TakeC:
      s.checks[a.chan] &= ~bit;
      break;
    default:
      break;
  }
  return a;
}

std::vector<std::pair<std::size_t, State>> step(const Program& p, const State& s) {
  std::vector<std::pair<std::size_t, State>> out;
  for (std::size_t t = 0; t < p.threads.size(); ++t) {
    if (!enabled(p, s, t)) continue;
    State n = s;
    fire(p, n, t);
    out.emplace_back(t, std::move(n));
  }
  return out;
}

std::string canonical_key(const Program& p, const State& s) {
  std::vector<std::string> parts;
  parts.reserve(p.threads.size());
  for (std::size_t t = 0; t < p.threads.size(); ++t) {
    const auto& seq = p.threads[t];
    if (s.pos[t] >= seq.size()) continue;
    std::string k;
    for (std::size_t i = s.pos[t]; i < seq.size(); ++i) {
      const Action& a = seq[i];
      NameId c = resolve(s, a.chan), m = resolve(s, a.arg);
      k += static_cast<char>(a.op);
      k += static_cast<char>(a.idx);
      k += static_cast<char>(c & 0xff);
      k += static_cast<char>(c >> 8);
      k += static_cast<char>(m & 0xff);
      k += static_cast<char>(m >> 8);
    }
    parts.push_back(std::move(k));
  }
  std::sort(parts.begin(), parts.end());
  std::string key;
  for (const auto& k : parts) {
    key += k;
    key += '\xff';
  }
  key += '|';
  for (std::size_t n = 0; n < p.names.size(); ++n) {
    if (p.binder[n]) continue;
    key += static_cast<char>(s.content[n] & 0xff);
    key += static_cast<char>(s.content[n] >> 8);
    for (int b = 0; b < 4; ++b) key += static_cast<char>((s.checks[n] >> (8 * b)) & 0xff);
  }
  return key;
}

namespace {

class Explorer {
 public:
  Explorer(const Program& p, const VerdictOptions& opt) : p_(p), opt_(opt) {}

  Verdict run(const State& s) {
    const bool success = is_successful(p_, s);
    if (success && opt_.freeze_success) return {true, true};
    std::string key;
    if (opt_.memo) {
      key = canonical_key(p_, s);
      if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    }
    Verdict v{success, true};
    bool any = false;
    for (std::size_t t = 0; t < p_.threads.size(); ++t) {
      if (!enabled(p_, s, t)) continue;
      any = true;
      State n = s;
      fire(p_, n, t);
      auto c = run(n);
      v.may = v.may || c.may;
      v.should = v.should && c.should;
    }
    if (!any) v.should = success;
    v.should = v.should && v.may;
    if (opt_.memo) memo_.emplace(std::move(key), v);
    return v;
  }

 private:
  const Program& p_;
  VerdictOptions opt_;
  std::unordered_map<std::string, Verdict> memo_;
};

}  // namespace

Verdict verdict(const Program& p, const VerdictOptions& opt) {
  Explorer e(p, opt);
  return e.run(initial(p));
}

namespace {

// Positional key; keeps thread identities apart, unlike canonical_key.
std::string raw_key(const State& s) {
  std::string k(s.pos.begin(), s.pos.end());
  for (auto v : s.env) k.append({static_cast<char>(v & 0xff), static_cast<char>(v >> 8)});
  for (auto v : s.content) k.append({static_cast<char>(v & 0xff), static_cast<char>(v >> 8)});
  for (auto v : s.checks)
    for (int b = 0; b < 4; ++b) k += static_cast<char>((v >> (8 * b)) & 0xff);
  return k;
}

}  // namespace

std::vector<TraceEntry> trace(const Program& p) {
  // breadth-first search for a shortest successful run
  std::map<std::string, std::pair<std::string, TraceEntry>> parent;
  std::deque<State> queue{initial(p)};
  const std::string root = raw_key(queue.front());
  parent.emplace(root, std::pair{std::string(), TraceEntry{0, {}}});
  while (!queue.empty()) {
    State s = std::move(queue.front());
    queue.pop_front();
    if (is_successful(p, s)) {
      std::vector<TraceEntry> out;
      for (auto k = raw_key(s); k != root;) {
        auto& [prev, e] = parent.at(k);
        out.push_back(e);
        k = prev;
      }
      std::reverse(out.begin(), out.end());
      return out;
    }
    const auto key = raw_key(s);
    for (std::size_t t = 0; t < p.threads.size(); ++t) {
      if (!enabled(p, s, t)) continue;
      State n = s;
      Action a = fire(p, n, t);
      auto nk = raw_key(n);
      if (parent.try_emplace(nk, std::pair{key, TraceEntry{t, a}}).second) queue.push_back(std::move(n));
    }
  }
  std::vector<TraceEntry> out;
  State s = initial(p);
  for (;;) {
    std::size_t t = 0;
    while (t < p.threads.size() && !enabled(p, s, t)) ++t;
    if (t == p.threads.size()) break;
    out.push_back({t, fire(p, s, t)});
  }
  return out;
}

namespace {

nlohmann::json action_json(const Program& p, const Action& a) {
  auto nm = [&](NameId n) { return n == kNone ? std::string("?") : p.names.at(n); };
  switch (a.op) {
    case Op::PutS:
      return {"putS", nm(a.chan), nm(a.arg)};
    case Op::TakeS:
      return {"takeS", nm(a.chan), nm(a.arg)};
    case Op::PutC:
      return {"putC", a.idx, nm(a.chan)};
    case Op::TakeC:
      return {"takeC", a.idx, nm(a.chan)};
    default:
      return nlohmann::json::array({"stop"});
  }
}

}  // namespace

std::string trace_json(const Program& p, const std::vector<TraceEntry>& t) {
  nlohmann::json steps = nlohmann::json::array();
  for (const auto& e : t) steps.push_back({{"thread", e.thread}, {"action", action_json(p, e.action)}});
  return nlohmann::json{{"trace", steps}}.dump();
}

std::string to_json(const Program& p) {
  nlohmann::json threads = nlohmann::json::array();
  for (const auto& seq : p.threads) {
    nlohmann::json th = nlohmann::json::array();
    for (const auto& a : seq) th.push_back(action_json(p, a));
    threads.push_back(th);
  }
  return nlohmann::json{{"threads", threads}, {"names", p.names}, {"checks", p.n_checks}}.dump();
}

}  // namespace pimvar::abs
