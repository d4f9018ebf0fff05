#pragma once

#include <string>

namespace pimvar {

/// May/should convergence pair. `should` implies `may`.
struct Verdict {
  bool may = false;
  bool should = false;

  friend bool operator==(const Verdict&, const Verdict&) = default;
};

inline std::string yn(bool b) { return b ? "Y" : "N"; }

inline std::string to_string(const Verdict& v) {
  return "may=" + yn(v.may) + " should=" + yn(v.should);
}

}  // namespace pimvar
