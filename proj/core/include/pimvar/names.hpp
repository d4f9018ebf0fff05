#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace pimvar {

/// Interned identifier used by the CH machine. Values below kFreshBase index
/// a process-wide string table; values at or above it are machine-generated
/// fresh names that print as "_<n>".
using Sym = std::uint32_t;

inline constexpr Sym kFreshBase = 0x80000000u;

Sym intern(std::string_view text);
std::string sym_name(Sym s);

inline bool is_fresh(Sym s) { return s >= kFreshBase; }
inline Sym fresh_sym(std::uint32_t counter) { return kFreshBase + counter; }

}  // namespace pimvar
