#pragma once

// Abstract programs: per-thread sequences of content/check MVar operations,
// executed over a store holding one content MVar and n check MVars per name.

#include <cstdint>
#include <string>
#include <vector>

#include "pimvar/verdict.hpp"

namespace pimvar::abs {

using NameId = std::uint16_t;
inline constexpr NameId kNone = 0xffff;

enum class Op : std::uint8_t { PutS, TakeS, PutC, TakeC, Stop };

struct Action {
  Op op = Op::Stop;
  NameId chan = kNone;
  NameId arg = kNone;  // message for PutS, binder for TakeS
  std::uint8_t idx = 0;

  friend bool operator==(const Action&, const Action&) = default;
};

struct Program {
  std::vector<std::vector<Action>> threads;
  std::vector<std::string> names;
  std::vector<bool> binder;
  unsigned n_checks = 0;

  NameId intern(const std::string& name, bool is_binder = false);
  std::string print(const Action& a) const;
};

/// One slot per name. `env` maps bound binders to received names.
struct State {
  std::vector<std::uint8_t> pos;
  std::vector<NameId> env;
  std::vector<NameId> content;  // kNone when empty
  std::vector<std::uint32_t> checks;
};

State initial(const Program& p);
NameId resolve(const State& s, NameId n);
bool is_successful(const Program& p, const State& s);
bool is_complete(const Program& p, const State& s);
/// Whether thread t's head action can fire.
bool enabled(const Program& p, const State& s, std::size_t t);
/// Fires thread t's head action (must be enabled) and returns the action
/// with its names resolved.
Action fire(const Program& p, State& s, std::size_t t);
/// Successor states tagged with the thread that moved, in thread order.
std::vector<std::pair<std::size_t, State>> step(const Program& p, const State& s);

/// Canonical key: sorted multiset of resolved remaining suffixes plus the
/// store of every non-binder name.
std::string canonical_key(const Program& p, const State& s);

struct VerdictOptions {
  bool memo = true;
  /// Continue exploring past success states (they stay successful).
  bool freeze_success = true;
};

Verdict verdict(const Program& p, const VerdictOptions& opt = {});

struct TraceEntry {
  std::size_t thread;
  Action action;
};

/// One execution: a shortest run to success if there is one, otherwise the
/// maximal run that always moves the lowest enabled thread.
std::vector<TraceEntry> trace(const Program& p);
std::string trace_json(const Program& p, const std::vector<TraceEntry>& t);
/// {"threads":[[["putS","x","y"],["takeC",1,"x"],...],...],"names":[...],"checks":n}
std::string to_json(const Program& p);

}  // namespace pimvar::abs
