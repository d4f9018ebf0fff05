#pragma once

// Bounded generation of closed flat pi processes, deduplicated up to name
// renaming and thread permutation, plus the named fixture processes.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "pimvar/pi.hpp"

namespace pimvar::corpus {

struct CorpusSpec {
  unsigned max_threads = 2;
  unsigned max_prefix_depth = 2;
  unsigned name_pool = 2;
  bool include_stop_tails = true;
  /// Upper bound on the total number of prefixes.
  unsigned size_bound = 4;
  /// Generate outputs whose message is their own channel, as in x<x>.
  bool self_communication = true;

  friend bool operator==(const CorpusSpec&, const CorpusSpec&) = default;
};

CorpusSpec default_spec();
/// {"maxThreads":2,"maxPrefixDepth":2,"namePool":2,"includeStopTails":true,
///  "sizeBound":4,"selfCommunication":true}; missing keys keep their defaults.
/// Throws std::invalid_argument on malformed input or a zero bound.
CorpusSpec spec_from_json(const std::string& text);
std::string to_json(const CorpusSpec& spec);

/// Key of a flat process up to renaming of its free and restricted names,
/// renaming of binders, and thread order.
std::string canonical_key(const pi::Soup& s);

/// Every process within the bounds, ν-closed, one per canonical class, in
/// order of increasing size. Each thread holds at least one prefix.
void generate(const CorpusSpec& spec, const std::function<void(const pi::ProcPtr&)>& visit);
std::vector<pi::ProcPtr> generate(const CorpusSpec& spec);
std::uint64_t count(const CorpusSpec& spec);

struct Fixture {
  std::string name;
  pi::ProcPtr process;
};

/// Table counterexamples, the two-process refuting set for two checks, and
/// the convergence examples, all closed.
const std::vector<Fixture>& fixtures();
const Fixture& fixture(const std::string& name);

/// Some thread ends in Stop. Without one, no translation can change the
/// verdict (N,N).
bool can_refute(const pi::Soup& s);

/// Fixtures followed by the generated processes that are not canonically
/// equal to a fixture, keeping only processes that can refute.
std::vector<pi::ProcPtr> survey_corpus(const CorpusSpec& spec);

}  // namespace pimvar::corpus
