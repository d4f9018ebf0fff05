#include <algorithm>
#include <deque>
#include <unordered_map>

#include "pimvar/errors.hpp"
#include "pimvar/pi.hpp"

namespace pimvar::pi {

namespace {

SeqThread sequential(const ProcPtr& p) {
  SeqThread t;
  const Process* cur = p.get();
  for (;;) {
    if (auto o = std::get_if<Out>(&cur->node)) {
      t.prefixes.push_back({true, o->chan, o->msg});
      cur = o->cont.get();
    } else if (auto i = std::get_if<In>(&cur->node)) {
      t.prefixes.push_back({false, i->chan, i->binder});
      cur = i->cont.get();
    } else if (std::holds_alternative<Nil>(cur->node)) {
      t.tail = Tail::Nil;
      return t;
    } else if (std::holds_alternative<Stop>(cur->node)) {
      t.tail = Tail::Stop;
      return t;
    } else if (std::holds_alternative<Nu>(cur->node)) {
      throw FragmentError("restriction under a prefix: " + print(*p));
    } else if (std::holds_alternative<Par>(cur->node)) {
      throw FragmentError("parallel composition under a prefix: " + print(*p));
    } else if (std::holds_alternative<Repl>(cur->node)) {
      throw FragmentError("replication: " + print(*p));
    } else {
      throw FragmentError("context hole in process");
    }
  }
}

void flatten(const ProcPtr& p, Soup& s) {
  const auto& n = p->node;
  if (auto v = std::get_if<Nu>(&n)) {
    s.restricted.insert(v->name);
    flatten(v->body, s);
  } else if (auto q = std::get_if<Par>(&n)) {
    flatten(q->left, s);
    flatten(q->right, s);
  } else if (std::holds_alternative<Nil>(n)) {
    return;
  } else {
    s.threads.push_back(sequential(p));
  }
}

void subst(std::vector<Prefix>& ps, std::size_t from, const Name& y, const Name& z) {
  for (std::size_t k = from; k < ps.size(); ++k) {
    if (ps[k].chan == y) ps[k].chan = z;
    if (ps[k].output && ps[k].arg == y) ps[k].arg = z;
  }
}

}  // namespace

std::string print(const SeqThread& t) {
  std::string s;
  for (const auto& p : t.prefixes) {
    if (!s.empty()) s += '.';
    s += p.chan;
    s += p.output ? "<" : "(";
    s += p.arg;
    s += p.output ? ">" : ")";
  }
  if (t.tail == Tail::Stop) {
    if (!s.empty()) s += '.';
    s += "stop";
  } else if (s.empty()) {
    s = "0";
  }
  return s;
}

Soup normalize(const ProcPtr& p) {
  Soup s;
  flatten(freshen(p), s);
  canonicalize(s);
  return s;
}

void canonicalize(Soup& s) {
  std::erase_if(s.threads, [](const SeqThread& t) { return t.prefixes.empty() && t.tail == Tail::Nil; });
  std::vector<std::pair<std::string, SeqThread>> keyed;
  keyed.reserve(s.threads.size());
  for (auto& t : s.threads) keyed.emplace_back(print(t), std::move(t));
  std::sort(keyed.begin(), keyed.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  s.threads.clear();
  for (auto& [k, t] : keyed) s.threads.push_back(std::move(t));
}

std::string key(const Soup& s) {
  std::string k;
  for (const auto& t : s.threads) {
    if (!k.empty()) k += " | ";
    k += print(t);
  }
  return k;
}

ProcPtr to_process(const Soup& s) {
  std::vector<ProcPtr> parts;
  for (const auto& t : s.threads) {
    ProcPtr p = t.tail == Tail::Stop ? stop() : nil();
    for (auto it = t.prefixes.rbegin(); it != t.prefixes.rend(); ++it)
      p = it->output ? out(it->chan, it->arg, p) : in(it->chan, it->arg, p);
    parts.push_back(p);
  }
  return nu(std::vector<Name>(s.restricted.begin(), s.restricted.end()), par(parts));
}

std::string print(const Soup& s) { return print(*to_process(s)); }

std::size_t prefix_count(const Soup& s) {
  std::size_t n = 0;
  for (const auto& t : s.threads) n += t.prefixes.size();
  return n;
}

bool is_successful(const Soup& s) {
  return std::any_of(s.threads.begin(), s.threads.end(),
                     [](const SeqThread& t) { return t.prefixes.empty() && t.tail == Tail::Stop; });
}

std::vector<Soup> step(const Soup& s) {
  std::vector<Soup> succ;
  std::vector<std::string> seen;
  for (std::size_t r = 0; r < s.threads.size(); ++r) {
    const auto& rt = s.threads[r];
    if (rt.prefixes.empty() || rt.prefixes.front().output) continue;
    const Name& x = rt.prefixes.front().chan;
    for (std::size_t w = 0; w < s.threads.size(); ++w) {
      const auto& wt = s.threads[w];
      if (w == r || wt.prefixes.empty() || !wt.prefixes.front().output || wt.prefixes.front().chan != x)
        continue;
      Soup next{s.restricted, s.threads};
      auto& recv = next.threads[r].prefixes;
      Name y = recv.front().arg;
      subst(recv, 1, y, wt.prefixes.front().arg);
      recv.erase(recv.begin());
      auto& send = next.threads[w].prefixes;
      send.erase(send.begin());
      canonicalize(next);
      auto k = key(next);
      if (std::find(seen.begin(), seen.end(), k) != seen.end()) continue;
      seen.push_back(std::move(k));
      succ.push_back(std::move(next));
    }
  }
  return succ;
}

namespace {

struct Explorer {
  std::unordered_map<std::string, Verdict> memo;

  Verdict run(const Soup& s) {
    if (is_successful(s)) return {true, true};
    auto k = key(s);
    if (auto it = memo.find(k); it != memo.end()) return it->second;
    Verdict v{false, true};
    bool any = false;
    for (const auto& n : step(s)) {
      any = true;
      auto c = run(n);
      v.may = v.may || c.may;
      v.should = v.should && c.should;
    }
    if (!any) v = {false, false};
    v.should = v.should && v.may;
    memo.emplace(std::move(k), v);
    return v;
  }
};

}  // namespace

Verdict verdict(const Soup& s) {
  Explorer e;
  return e.run(s);
}

std::vector<Soup> trace(const Soup& s) {
  // Keys carry a leading '#' so the empty string can mark the root.
  auto tag = [](const Soup& x) { return "#" + key(x); };
  std::unordered_map<std::string, std::pair<std::string, Soup>> parent;
  std::deque<Soup> queue{s};
  parent.emplace(tag(s), std::make_pair(std::string(), s));
  while (!queue.empty()) {
    auto cur = std::move(queue.front());
    queue.pop_front();
    if (is_successful(cur)) {
      std::vector<Soup> path;
      for (auto k = tag(cur); !k.empty(); k = parent.at(k).first) path.push_back(parent.at(k).second);
      std::reverse(path.begin(), path.end());
      return path;
    }
    auto ck = tag(cur);
    for (auto& n : step(cur)) {
      auto nk = tag(n);
      if (parent.count(nk)) continue;
      parent.emplace(nk, std::make_pair(ck, n));
      queue.push_back(std::move(n));
    }
  }
  std::vector<Soup> path{s};
  for (;;) {
    auto next = step(path.back());
    if (next.empty()) return path;
    path.push_back(std::move(next.front()));
  }
}

}  // namespace pimvar::pi
