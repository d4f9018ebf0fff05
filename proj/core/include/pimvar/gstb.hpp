#pragma once

// Send/receive action-sequence translations over a content MVar and check
// MVars, their validation and symmetry-reduced enumeration.

#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "pimvar/abstract.hpp"

namespace pimvar::gstb {

enum class Op : std::uint8_t { PutC, TakeC, PutS, TakeS };

struct Action {
  Op op;
  unsigned idx = 0;  // check index, 1-based; 0 for PutS/TakeS

  friend auto operator<=>(const Action&, const Action&) = default;
};

struct Translation {
  std::vector<Action> send;
  std::vector<Action> receive;

  /// Largest check index used.
  unsigned n_checks() const;

  friend auto operator<=>(const Translation&, const Translation&) = default;
};

struct Regime {
  enum class Kind : std::uint8_t { Interprocess, FreeSingleUse, SingleMVarMultiUse };
  Kind kind = Kind::Interprocess;
  /// Check count, or the exact number of uses for SingleMVarMultiUse.
  unsigned n = 1;

  friend bool operator==(const Regime&, const Regime&) = default;
};

/// "interprocess:3", "free:2", "multi:6". Throws std::invalid_argument.
Regime parse_regime(std::string_view text);
std::string to_string(const Regime& r);

/// "([takeC1,putS],[putC1,takeS])"; a missing index means 1. Throws ParseError.
Translation parse(std::string_view text);
/// Indices are omitted when only one check MVar is used.
std::string print(const Translation& t);

/// The definitional constraints: putS once in send and not in receive, takeS
/// once in receive and not in send, every putC^i matched by some takeC^i,
/// check indices 1..n all used, first occurrences in send ascending.
bool is_valid(const Translation& t);
bool validate(const Translation& t, const Regime& r);

/// Representative of t's class under check-index renaming: indices
/// relabelled in order of first occurrence, scanning send then receive.
Translation canonical(const Translation& t);

/// All valid translations of the regime up to index renaming, each in
/// canonical form. Order: lexicographic on (send, receive) where a sequence
/// that ends sorts first and actions compare putC1 < takeC1 < putC2 < ... <
/// putS/takeS.
void enumerate(const Regime& r, const std::function<void(const Translation&)>& visit);
std::vector<Translation> enumerate(const Regime& r);
std::uint64_t count(const Regime& r);
/// n!·2^n·(n+1)^2.
std::uint64_t interprocess_formula(unsigned n);

/// Instantiates the sequences at channel `x`; the send side transmits `msg`,
/// the receive side binds `binder`.
std::pair<std::vector<abs::Action>, std::vector<abs::Action>> instantiate(const Translation& t,
                                                                          abs::NameId x,
                                                                          abs::NameId msg,
                                                                          abs::NameId binder);

/// The six interprocess(3) survivors and the two free(2) survivors, 1-based.
const Translation& named(int k);
/// The free(3) survivor listed as an example next to the counts.
const Translation& free3_example();

}  // namespace pimvar::gstb
