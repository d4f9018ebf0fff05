#include "pimvar/corpus.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "json.hpp"

namespace pimvar::corpus {

namespace {

// A coded thread: per prefix three bytes (direction, channel, argument), then
// one tail byte. Global names are small codes, binders are kBinder + local
// index in order of introduction.
using Code = std::string;
constexpr unsigned char kOut = 'o';
constexpr unsigned char kIn = 'i';
constexpr unsigned char kBinder = 64;
constexpr unsigned char kNilTail = 'N';
constexpr unsigned char kStopTail = 'S';
constexpr char kSep = '\xff';

struct Coded {
  std::vector<Code> threads;
  unsigned globals = 0;  // codes 0..globals-1 may occur
};

std::string join_sorted(std::vector<Code> threads) {
  std::sort(threads.begin(), threads.end());
  std::string out;
  for (const auto& t : threads) {
    out += t;
    out += kSep;
  }
  return out;
}

std::vector<unsigned> used_globals(const std::vector<Code>& threads) {
  std::vector<unsigned> used;
  for (const auto& t : threads) {
    for (std::size_t i = 0; i + 1 < t.size(); i += 3) {
      for (std::size_t j = i + 1; j <= i + 2; ++j) {
        auto c = static_cast<unsigned char>(t[j]);
        if (c < kBinder && std::find(used.begin(), used.end(), c) == used.end()) used.push_back(c);
      }
    }
  }
  std::sort(used.begin(), used.end());
  return used;
}

// Minimum over bijections from the used global codes onto 0..k-1.
std::string min_key(const std::vector<Code>& threads) {
  auto used = used_globals(threads);
  std::vector<unsigned> perm(used.size());
  std::iota(perm.begin(), perm.end(), 0u);
  std::string best;
  bool first = true;
  std::vector<Code> mapped;
  do {
    unsigned char map[kBinder] = {};
    for (std::size_t i = 0; i < used.size(); ++i) map[used[i]] = static_cast<unsigned char>(perm[i]);
    mapped = threads;
    for (auto& t : mapped) {
      for (std::size_t i = 0; i + 1 < t.size(); i += 3) {
        for (std::size_t j = i + 1; j <= i + 2; ++j) {
          auto c = static_cast<unsigned char>(t[j]);
          if (c < kBinder) t[j] = static_cast<char>(map[c]);
        }
      }
    }
    auto k = join_sorted(mapped);
    if (first || k < best) {
      best = std::move(k);
      first = false;
    }
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

Code code_thread(const pi::SeqThread& t, std::map<pi::Name, unsigned>& globals) {
  Code c;
  std::map<pi::Name, unsigned> binders;
  auto code = [&](const pi::Name& n) -> unsigned char {
    if (auto it = binders.find(n); it != binders.end()) return static_cast<unsigned char>(kBinder + it->second);
    auto [it, _] = globals.try_emplace(n, static_cast<unsigned>(globals.size()));
    if (it->second >= kBinder) throw std::invalid_argument("too many names for a corpus key");
    return static_cast<unsigned char>(it->second);
  };
  for (const auto& p : t.prefixes) {
    c += static_cast<char>(p.output ? kOut : kIn);
    c += static_cast<char>(code(p.chan));
    if (p.output) {
      c += static_cast<char>(code(p.arg));
    } else {
      auto local = static_cast<unsigned>(binders.size());
      binders[p.arg] = local;
      c += static_cast<char>(kBinder + local);
    }
  }
  c += static_cast<char>(t.tail == pi::Tail::Stop ? kStopTail : kNilTail);
  return c;
}

std::string global_name(unsigned g) {
  static const char* pool[] = {"x", "y", "z", "w", "v", "u", "t", "s"};
  if (g < 8) return pool[g];
  return "n" + std::to_string(g);
}

pi::ProcPtr decode(const std::vector<Code>& threads) {
  std::vector<pi::ProcPtr> parts;
  unsigned next_binder = 0;
  for (const auto& t : threads) {
    std::vector<std::string> local;
    auto name = [&](unsigned char c) {
      return c >= kBinder ? local.at(c - kBinder) : global_name(c);
    };
    struct P {
      bool output;
      std::string chan, arg;
    };
    std::vector<P> pre;
    for (std::size_t i = 0; i + 1 < t.size(); i += 3) {
      bool output = static_cast<unsigned char>(t[i]) == kOut;
      auto chan = name(static_cast<unsigned char>(t[i + 1]));
      if (output) {
        pre.push_back({true, chan, name(static_cast<unsigned char>(t[i + 2]))});
      } else {
        local.push_back("b" + std::to_string(++next_binder));
        pre.push_back({false, chan, local.back()});
      }
    }
    auto body = static_cast<unsigned char>(t.back()) == kStopTail ? pi::stop() : pi::nil();
    for (auto it = pre.rbegin(); it != pre.rend(); ++it)
      body = it->output ? pi::out(it->chan, it->arg, body) : pi::in(it->chan, it->arg, body);
    parts.push_back(body);
  }
  return pi::close(pi::par(parts));
}

// All coded threads with exactly `depth` prefixes over `pool` global names.
void threads_of_depth(const CorpusSpec& spec, unsigned depth, std::vector<Code>& out) {
  Code cur;
  auto rec = [&](auto&& self, unsigned left, unsigned binders) -> void {
    if (left == 0) {
      cur += static_cast<char>(kNilTail);
      out.push_back(cur);
      cur.pop_back();
      if (spec.include_stop_tails) {
        cur += static_cast<char>(kStopTail);
        out.push_back(cur);
        cur.pop_back();
      }
      return;
    }
    std::vector<unsigned char> names;
    for (unsigned g = 0; g < spec.name_pool; ++g) names.push_back(static_cast<unsigned char>(g));
    for (unsigned b = 0; b < binders; ++b) names.push_back(static_cast<unsigned char>(kBinder + b));
    for (auto ch : names) {
      for (auto arg : names) {
        if (!spec.self_communication && arg == ch) continue;
        cur += static_cast<char>(kOut);
        cur += static_cast<char>(ch);
        cur += static_cast<char>(arg);
        self(self, left - 1, binders);
        cur.resize(cur.size() - 3);
      }
      cur += static_cast<char>(kIn);
      cur += static_cast<char>(ch);
      cur += static_cast<char>(kBinder + binders);
      self(self, left - 1, binders + 1);
      cur.resize(cur.size() - 3);
    }
  };
  rec(rec, depth, 0);
}

}  // namespace

CorpusSpec default_spec() { return {}; }

CorpusSpec spec_from_json(const std::string& text) {
  CorpusSpec s;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("corpus spec: ") + e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("corpus spec: expected an object");
  auto count_field = [&](const char* key, unsigned& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_unsigned() || j[key].get<unsigned>() < 1)
      throw std::invalid_argument(std::string("corpus spec: ") + key + " must be a positive integer");
    field = j[key].get<unsigned>();
  };
  auto flag_field = [&](const char* key, bool& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_boolean()) throw std::invalid_argument(std::string("corpus spec: ") + key + " must be a boolean");
    field = j[key].get<bool>();
  };
  count_field("maxThreads", s.max_threads);
  count_field("maxPrefixDepth", s.max_prefix_depth);
  count_field("namePool", s.name_pool);
  count_field("sizeBound", s.size_bound);
  flag_field("includeStopTails", s.include_stop_tails);
  flag_field("selfCommunication", s.self_communication);
  if (s.name_pool >= kBinder) throw std::invalid_argument("corpus spec: namePool too large");
  return s;
}

std::string to_json(const CorpusSpec& s) {
  nlohmann::ordered_json j;
  j["maxThreads"] = s.max_threads;
  j["maxPrefixDepth"] = s.max_prefix_depth;
  j["namePool"] = s.name_pool;
  j["includeStopTails"] = s.include_stop_tails;
  j["sizeBound"] = s.size_bound;
  j["selfCommunication"] = s.self_communication;
  return j.dump();
}

std::string canonical_key(const pi::Soup& s) {
  std::map<pi::Name, unsigned> globals;
  std::vector<Code> threads;
  for (const auto& t : s.threads) threads.push_back(code_thread(t, globals));
  return min_key(threads);
}

void generate(const CorpusSpec& spec, const std::function<void(const pi::ProcPtr&)>& visit) {
  if (spec.max_threads == 0 || spec.max_prefix_depth == 0 || spec.name_pool == 0) return;
  // Threads sorted by code, grouped by depth so that combinations with a
  // fixed total size can be enumerated directly.
  std::vector<Code> all;
  std::vector<unsigned> depth_of;
  for (unsigned d = 1; d <= spec.max_prefix_depth && d <= spec.size_bound; ++d) {
    std::vector<Code> ts;
    threads_of_depth(spec, d, ts);
    all.insert(all.end(), ts.begin(), ts.end());
  }
  std::sort(all.begin(), all.end());
  for (const auto& t : all) depth_of.push_back(static_cast<unsigned>(t.size() / 3));

  std::vector<std::size_t> pick;
  std::vector<Code> chosen;
  for (unsigned size = 1; size <= spec.size_bound; ++size) {
    auto rec = [&](auto&& self, std::size_t from, unsigned left) -> void {
      if (left == 0) {
        chosen.clear();
        for (auto i : pick) chosen.push_back(all[i]);
        auto identity = join_sorted(chosen);
        if (identity == min_key(chosen)) visit(decode(chosen));
        return;
      }
      if (pick.size() == spec.max_threads) return;
      for (std::size_t i = from; i < all.size(); ++i) {
        if (depth_of[i] > left) continue;
        pick.push_back(i);
        self(self, i, left - depth_of[i]);
        pick.pop_back();
      }
    };
    rec(rec, 0, size);
  }
}

std::vector<pi::ProcPtr> generate(const CorpusSpec& spec) {
  std::vector<pi::ProcPtr> out;
  generate(spec, [&](const pi::ProcPtr& p) { out.push_back(p); });
  return out;
}

std::uint64_t count(const CorpusSpec& spec) {
  std::uint64_t n = 0;
  generate(spec, [&](const pi::ProcPtr&) { ++n; });
  return n;
}

const std::vector<Fixture>& fixtures() {
  static const std::vector<Fixture> all = [] {
    std::vector<std::pair<std::string, std::string>> src = {
        {"send-then-receive", "x<y>.x(y).stop"},
        {"send-receive-idle", "x<y>.x(z).stop | x(w)"},
        {"send-stop", "x<y>.stop | x(y)"},
        {"two-relays", "x<z>.z<a>.stop | x<w>.w<a>.stop | x(y).y(u)"},
        {"crossed-receivers", "x<y>.x(z).z<q> | x(z) | x(z) | x<z> | y(u).stop"},
        {"converging", "x(z).0 | x<y>.stop"},
        {"diverging", "x(z).0 | x<y>.0"},
        {"may-converging", "x<y>.0 | x(z).stop | x(z).0"},
    };
    std::vector<Fixture> out;
    for (auto& [name, text] : src) out.push_back({name, pi::close(pi::parse(text))});
    return out;
  }();
  return all;
}

const Fixture& fixture(const std::string& name) {
  for (const auto& f : fixtures())
    if (f.name == name) return f;
  throw std::out_of_range("unknown fixture: " + name);
}

bool can_refute(const pi::Soup& s) {
  return std::any_of(s.threads.begin(), s.threads.end(),
                     [](const pi::SeqThread& t) { return t.tail == pi::Tail::Stop; });
}

std::vector<pi::ProcPtr> survey_corpus(const CorpusSpec& spec) {
  std::vector<pi::ProcPtr> out;
  std::set<std::string> seen;
  for (const auto& f : fixtures()) {
    auto s = pi::normalize(f.process);
    if (!can_refute(s) || !seen.insert(canonical_key(s)).second) continue;
    out.push_back(f.process);
  }
  generate(spec, [&](const pi::ProcPtr& p) {
    auto s = pi::normalize(p);
    if (can_refute(s) && seen.insert(canonical_key(s)).second) out.push_back(p);
  });
  return out;
}

}  // namespace pimvar::corpus
