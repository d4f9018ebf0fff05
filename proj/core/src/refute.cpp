#include "pimvar/refute.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include "json.hpp"
#include "pimvar/abstract.hpp"
#include "pimvar/translate.hpp"

namespace pimvar::refute {

PreparedCorpus::PreparedCorpus(std::vector<pi::ProcPtr> processes) : processes_(std::move(processes)) {
  soups_.reserve(processes_.size());
  before_.reserve(processes_.size());
  for (const auto& p : processes_) {
    soups_.push_back(pi::normalize(p));
    before_.push_back(pi::verdict(soups_.back()));
  }
}

Verdict after(const gstb::Translation& t, const pi::Soup& s) {
  return abs::verdict(translate::to_abstract(t, s));
}

std::vector<Counterexample> test_translation(const gstb::Translation& t, const PreparedCorpus& corpus,
                                             bool exhaustive) {
  std::vector<Counterexample> out;
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    auto v = after(t, corpus.soup(i));
    if (v == corpus.before(i)) continue;
    out.push_back({t, corpus.process(i), corpus.before(i), v});
    if (!exhaustive) break;
  }
  return out;
}

std::vector<Counterexample> test_translation(const gstb::Translation& t, const std::vector<pi::ProcPtr>& corpus,
                                             bool exhaustive) {
  std::vector<Counterexample> out;
  for (const auto& p : corpus) {
    auto s = pi::normalize(p);
    auto before = pi::verdict(s);
    auto v = after(t, s);
    if (v == before) continue;
    out.push_back({t, p, before, v});
    if (!exhaustive) break;
  }
  return out;
}

namespace {

// Runs work(i) for i in [0, n) on `jobs` threads; work must only write to
// its own slot.
template <class F>
void parallel_for(std::size_t n, unsigned jobs, F&& work) {
  jobs = std::max(1u, std::min<unsigned>(jobs, static_cast<unsigned>(std::max<std::size_t>(n, 1))));
  if (jobs == 1) {
    for (std::size_t i = 0; i < n; ++i) work(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned j = 0; j < jobs; ++j)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) work(i);
    });
  for (auto& th : pool) th.join();
}

constexpr classify::Label kLabels[] = {classify::Label::NonCommunicating, classify::Label::NonExecutable,
                                       classify::Label::Overlapping, classify::Label::Candidate};

}  // namespace

bool is_slow(const gstb::Regime& r) {
  switch (r.kind) {
    case gstb::Regime::Kind::Interprocess: return r.n >= 4;
    case gstb::Regime::Kind::FreeSingleUse: return r.n >= 3;
    case gstb::Regime::Kind::SingleMVarMultiUse: return r.n >= 5;
  }
  return true;
}

SweepStats survey(const gstb::Regime& r, const corpus::CorpusSpec& spec, const SurveyOptions& opt) {
  PreparedCorpus c(corpus::survey_corpus(spec));
  return survey(r, c, spec, opt);
}

SweepStats survey(const gstb::Regime& r, const PreparedCorpus& corpus, const corpus::CorpusSpec& spec,
                  const SurveyOptions& opt) {
  auto start = std::chrono::steady_clock::now();
  SweepStats s;
  s.regime = r;
  s.corpus_spec = spec;
  s.corpus_size = corpus.size();
  auto ts = gstb::enumerate(r);
  std::vector<char> refuted(ts.size(), 0);
  std::vector<classify::Label> labels(ts.size(), classify::Label::Candidate);
  parallel_for(ts.size(), opt.jobs, [&](std::size_t i) {
    refuted[i] = !test_translation(ts[i], corpus).empty();
    if (opt.classify) labels[i] = classify::classify(ts[i], opt.policy);
  });
  s.total = ts.size();
  if (opt.classify)
    for (auto l : kLabels) s.class_counts[l] = 0;
  for (std::size_t i = 0; i < ts.size(); ++i) {
    if (refuted[i])
      ++s.refuted;
    else
      s.survivors.push_back(ts[i]);
    if (opt.classify) ++s.class_counts[labels[i]];
  }
  s.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return s;
}

std::string to_json(const SweepStats& s, bool timing) {
  nlohmann::ordered_json j;
  j["regime"] = gstb::to_string(s.regime);
  j["total"] = s.total;
  j["refuted"] = s.refuted;
  j["survivors"] = nlohmann::ordered_json::array();
  for (const auto& t : s.survivors) j["survivors"].push_back(gstb::print(t));
  j["classCounts"] = nlohmann::ordered_json::object();
  for (auto l : kLabels)
    if (auto it = s.class_counts.find(l); it != s.class_counts.end()) j["classCounts"][classify::to_string(l)] = it->second;
  j["corpusSpec"] = nlohmann::ordered_json::parse(corpus::to_json(s.corpus_spec));
  j["corpusSize"] = s.corpus_size;
  if (timing) j["wallSeconds"] = s.wall_seconds;
  return j.dump(2);
}

std::string to_text(const SweepStats& s) {
  std::ostringstream o;
  o << "regime=" << gstb::to_string(s.regime) << " total=" << s.total << " refuted=" << s.refuted
    << " survivors=" << s.survivors.size() << "\n";
  if (!s.class_counts.empty()) {
    o << "classes:";
    for (auto l : kLabels)
      if (auto it = s.class_counts.find(l); it != s.class_counts.end())
        o << " " << classify::to_string(l) << "=" << it->second;
    o << "\n";
  }
  for (const auto& t : s.survivors) o << "survivor " << gstb::print(t) << "\n";
  return o.str();
}

std::vector<pi::ProcPtr> minimal_refuting_set(const gstb::Regime& r, const PreparedCorpus& corpus, unsigned jobs) {
  auto ts = gstb::enumerate(r);
  // refuters[i]: corpus indices refuting translation i.
  std::vector<std::vector<std::size_t>> refuters(ts.size());
  parallel_for(ts.size(), jobs, [&](std::size_t i) {
    for (std::size_t k = 0; k < corpus.size(); ++k)
      if (after(ts[i], corpus.soup(k)) != corpus.before(k)) refuters[i].push_back(k);
  });
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (!refuters[i].empty()) todo.push_back(i);

  std::vector<std::size_t> picked;
  std::vector<char> covered(ts.size(), 0);
  std::size_t left = todo.size();
  while (left > 0) {
    std::vector<std::size_t> gain(corpus.size(), 0);
    for (auto i : todo)
      if (!covered[i])
        for (auto k : refuters[i]) ++gain[k];
    // Ties go to the earliest corpus entry, so fixtures win.
    auto best = static_cast<std::size_t>(std::max_element(gain.begin(), gain.end()) - gain.begin());
    picked.push_back(best);
    for (auto i : todo)
      if (!covered[i] && std::binary_search(refuters[i].begin(), refuters[i].end(), best)) {
        covered[i] = 1;
        --left;
      }
  }
  // Drop members whose translations are all covered by the others.
  for (std::size_t m = picked.size(); m-- > 0;) {
    bool needed = false;
    for (auto i : todo) {
      bool other = false;
      for (std::size_t q = 0; q < picked.size() && !other; ++q)
        if (q != m && std::binary_search(refuters[i].begin(), refuters[i].end(), picked[q])) other = true;
      if (!other) {
        needed = true;
        break;
      }
    }
    if (!needed) picked.erase(picked.begin() + static_cast<std::ptrdiff_t>(m));
  }
  std::vector<pi::ProcPtr> out;
  for (auto k : picked) out.push_back(corpus.process(k));
  return out;
}

std::uint64_t refuted_count(const gstb::Regime& r, const std::vector<pi::ProcPtr>& set) {
  PreparedCorpus c(set);
  std::uint64_t n = 0;
  gstb::enumerate(r, [&](const gstb::Translation& t) {
    if (!test_translation(t, c).empty()) ++n;
  });
  return n;
}

std::string to_string(Status s) {
  switch (s) {
    case Status::Match: return "match";
    case Status::Mismatch: return "mismatch";
    case Status::Inconclusive: return "inconclusive";
  }
  return "?";
}

DifferentialReport differential(const std::vector<pi::ProcPtr>& corpus,
                                const std::function<ch::ChState(const pi::ProcPtr&)>& encode,
                                const ch::VerdictOptions& opt) {
  DifferentialReport rep;
  for (const auto& p : corpus) {
    DifferentialRow row;
    row.process = p;
    row.before = pi::verdict(p);
    row.after = ch::verdict(encode(p), opt);
    if (row.after.may == ch::Tri::Unknown || row.after.should == ch::Tri::Unknown) {
      row.status = Status::Inconclusive;
      ++rep.inconclusive;
    } else if ((row.after.may == ch::Tri::True) == row.before.may &&
               (row.after.should == ch::Tri::True) == row.before.should) {
      row.status = Status::Match;
      ++rep.matches;
    } else {
      row.status = Status::Mismatch;
      ++rep.mismatches;
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

DifferentialReport differential_tau0(const std::vector<pi::ProcPtr>& corpus, const ch::VerdictOptions& opt) {
  return differential(corpus, [](const pi::ProcPtr& p) { return translate::tau0(p); }, opt);
}

std::string to_text(const DifferentialReport& r) {
  std::ostringstream o;
  for (const auto& row : r.rows)
    o << to_string(row.status) << "\t" << pi::print(row.process) << "\tpi " << to_string(row.before) << "\tch may="
      << ch::to_string(row.after.may) << " should=" << ch::to_string(row.after.should) << "\n";
  o << "matches=" << r.matches << " mismatches=" << r.mismatches << " inconclusive=" << r.inconclusive << "\n";
  return o.str();
}

bool audit(const Counterexample& c) {
  auto s = pi::normalize(pi::parse(pi::print(c.process)));
  auto before = pi::verdict(s);
  abs::VerdictOptions plain;
  plain.memo = false;
  auto after = abs::verdict(translate::to_abstract(c.translation, s), plain);
  return before == c.before && after == c.after && before != after;
}

std::vector<TableRow> table1() {
  static const std::pair<const char*, const char*> rows[] = {
      {"([putC,putS],[takeC,takeS])", "send-then-receive"}, {"([putC,putS],[takeS,takeC])", "send-then-receive"},
      {"([putS,putC],[takeC,takeS])", "send-then-receive"}, {"([putS,putC],[takeS,takeC])", "send-then-receive"},
      {"([takeC,putS],[putC,takeS])", "send-receive-idle"}, {"([takeC,putS],[takeS,putC])", "send-stop"},
      {"([putS,takeC],[putC,takeS])", "send-receive-idle"}, {"([putS,takeC],[takeS,putC])", "two-relays"},
  };
  std::vector<TableRow> out;
  for (auto [t, f] : rows) {
    TableRow row;
    row.translation = gstb::parse(t);
    row.process = corpus::fixture(f).process;
    auto s = pi::normalize(row.process);
    row.before = pi::verdict(s);
    row.after = after(row.translation, s);
    out.push_back(std::move(row));
  }
  return out;
}

std::string table_csv(const std::vector<TableRow>& rows) {
  std::ostringstream o;
  o << "translation,counterexample,may_before,should_before,may_after,should_after\n";
  for (const auto& r : rows)
    o << '"' << gstb::print(r.translation) << "\",\"" << pi::print(r.process) << "\"," << yn(r.before.may) << ","
      << yn(r.before.should) << "," << yn(r.after.may) << "," << yn(r.after.should) << "\n";
  return o.str();
}

bool check_expectations(const SweepStats& s, const std::string& expectations_json, std::vector<std::string>& problems) {
  auto all = nlohmann::json::parse(expectations_json);
  auto name = gstb::to_string(s.regime);
  auto before = problems.size();
  if (!all.contains(name)) {
    problems.push_back(name + ": no expectations");
    return false;
  }
  const auto& e = all[name];
  auto num = [&](const char* key, std::uint64_t got) {
    if (!e.contains(key)) return;
    auto want = e[key].get<std::uint64_t>();
    if (want != got)
      problems.push_back(name + ": " + key + " expected " + std::to_string(want) + " got " + std::to_string(got));
  };
  num("total", s.total);
  num("refuted", s.refuted);
  num("survivorCount", s.survivors.size());
  if (e.contains("survivors")) {
    std::set<gstb::Translation> want, got;
    for (const auto& t : e["survivors"]) want.insert(gstb::canonical(gstb::parse(t.get<std::string>())));
    for (const auto& t : s.survivors) got.insert(gstb::canonical(t));
    for (const auto& t : want)
      if (!got.count(t)) problems.push_back(name + ": expected survivor " + gstb::print(t) + " was refuted");
    for (const auto& t : got)
      if (!want.count(t)) problems.push_back(name + ": unexpected survivor " + gstb::print(t));
  }
  if (e.contains("survivorsInclude")) {
    std::set<gstb::Translation> got;
    for (const auto& t : s.survivors) got.insert(gstb::canonical(t));
    for (const auto& t : e["survivorsInclude"]) {
      auto c = gstb::canonical(gstb::parse(t.get<std::string>()));
      if (!got.count(c)) problems.push_back(name + ": expected survivor " + gstb::print(c) + " was refuted");
    }
  }
  if (e.contains("classCounts")) {
    for (const auto& [label, want] : e["classCounts"].items()) {
      std::uint64_t got = 0;
      for (auto l : kLabels)
        if (classify::to_string(l) == label)
          if (auto it = s.class_counts.find(l); it != s.class_counts.end()) got = it->second;
      if (got != want.get<std::uint64_t>())
        problems.push_back(name + ": class " + label + " expected " + std::to_string(want.get<std::uint64_t>()) +
                           " got " + std::to_string(got));
    }
  }
  return problems.size() == before;
}

}  // namespace pimvar::refute
