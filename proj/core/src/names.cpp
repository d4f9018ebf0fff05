#include "pimvar/names.hpp"

#include <deque>
#include <mutex>
#include <unordered_map>

namespace pimvar {
namespace {

struct SymbolTable {
  std::mutex mu;
  std::deque<std::string> names;
  std::unordered_map<std::string_view, Sym> index;
};

SymbolTable& table() {
  static SymbolTable t;
  return t;
}

}  // namespace

Sym intern(std::string_view text) {
  auto& t = table();
  std::lock_guard lock(t.mu);
  if (auto it = t.index.find(text); it != t.index.end()) return it->second;
  const auto id = static_cast<Sym>(t.names.size());
  t.names.emplace_back(text);
  t.index.emplace(t.names.back(), id);
  return id;
}

std::string sym_name(Sym s) {
  if (is_fresh(s)) return "_" + std::to_string(s - kFreshBase);
  auto& t = table();
  std::lock_guard lock(t.mu);
  return t.names.at(s);
}

}  // namespace pimvar
