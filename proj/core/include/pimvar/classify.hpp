#pragma once

// Static classification of translations by running one or two sender and
// receiver instances on a single channel.

#include <string>

#include "pimvar/gstb.hpp"

namespace pimvar::classify {

enum class Label : std::uint8_t { NonCommunicating, NonExecutable, Overlapping, Candidate };

/// How maximal but incomplete executions of the two-pair system count when
/// judging overlap-freeness: as violations, or by the split criterion alone.
enum class DeadlockPolicy : std::uint8_t { Violation, Split };

std::string to_string(Label l);
std::string to_string(DeadlockPolicy p);
DeadlockPolicy parse_policy(const std::string& s);

/// The send sequence contains some takeC.
bool is_communicating(const gstb::Translation& t);
/// One sender and one receiver can both run to completion.
bool is_executable(const gstb::Translation& t);
/// Every execution of two senders s, s' and two receivers r, r' splits into a
/// prefix and a suffix, one holding only actions of {s,r} (or {s,r'}) and the
/// other only actions of the complementary pair.
bool is_overlap_free(const gstb::Translation& t, DeadlockPolicy policy = DeadlockPolicy::Violation);
/// First failing check wins: communicating, executable, overlap-free.
Label classify(const gstb::Translation& t, DeadlockPolicy policy = DeadlockPolicy::Violation);

}  // namespace pimvar::classify
