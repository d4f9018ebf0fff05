#pragma once

// Synchronous pi-calculus with Stop: syntax, parsing, structural normal form
// for the flat replication-free fragment, reduction and convergence.

#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "pimvar/verdict.hpp"

namespace pimvar::pi {

using Name = std::string;

struct Process;
using ProcPtr = std::shared_ptr<const Process>;

struct Nu {
  Name name;
  ProcPtr body;
};
struct Out {
  Name chan;
  Name msg;
  ProcPtr cont;
};
struct In {
  Name chan;
  Name binder;
  ProcPtr cont;
};
struct Repl {
  ProcPtr body;
};
struct Par {
  ProcPtr left;
  ProcPtr right;
};
struct Nil {};
struct Stop {};
/// Context hole; only appears in terms built as contexts.
struct Hole {};

struct Process {
  std::variant<Nu, Out, In, Repl, Par, Nil, Stop, Hole> node;
};

ProcPtr nil();
ProcPtr stop();
ProcPtr hole();
ProcPtr nu(Name name, ProcPtr body);
ProcPtr nu(const std::vector<Name>& names, ProcPtr body);
ProcPtr out(Name chan, Name msg, ProcPtr cont = nil());
ProcPtr in(Name chan, Name binder, ProcPtr cont = nil());
ProcPtr repl(ProcPtr body);
ProcPtr par(ProcPtr left, ProcPtr right);
/// Right-nested parallel composition; a single element is returned as is.
ProcPtr par(const std::vector<ProcPtr>& parts);

std::set<Name> free_names(const Process& p);
/// Every name occurring in p, free or bound.
std::set<Name> all_names(const Process& p);
/// Capture-free replacement of the free name `from` by `to`.
ProcPtr substitute(const ProcPtr& p, const Name& from, const Name& to);
/// Renames binders so they are pairwise distinct and distinct from free names.
ProcPtr freshen(const ProcPtr& p);
/// Wraps p in restrictions over all its free names, in sorted order.
ProcPtr close(const ProcPtr& p);
bool alpha_equal(const Process& a, const Process& b);
bool contains_hole(const Process& p);
/// Replaces the (single) hole of `context` by `filler`.
ProcPtr plug(const ProcPtr& context, const ProcPtr& filler);

/// Parses the concrete grammar and freshens binders. Throws ParseError.
ProcPtr parse(std::string_view text);
/// Like parse, but also accepts "[]" as the context hole.
ProcPtr parse_context(std::string_view text);
std::string print(const Process& p);
inline std::string print(const ProcPtr& p) { return print(*p); }

// ---------------------------------------------------------------------------
// Flat fragment

struct Prefix {
  bool output = false;  // chan<arg> when true, chan(arg) otherwise
  Name chan;
  Name arg;

  friend auto operator<=>(const Prefix&, const Prefix&) = default;
};

enum class Tail { Nil, Stop };

struct SeqThread {
  std::vector<Prefix> prefixes;
  Tail tail = Tail::Nil;

  friend bool operator==(const SeqThread&, const SeqThread&) = default;
};

std::string print(const SeqThread& t);

/// Canonical flat form: top-level restrictions plus a sorted multiset of
/// sequential threads. Empty Nil threads are never stored.
struct Soup {
  std::set<Name> restricted;
  std::vector<SeqThread> threads;

  friend bool operator==(const Soup&, const Soup&) = default;
};

/// Throws FragmentError for replication, holes, or a restriction or parallel
/// composition under a prefix.
Soup normalize(const ProcPtr& p);
void canonicalize(Soup& s);
std::string print(const Soup& s);
/// Thread-multiset key used for memoization; ignores `restricted`.
std::string key(const Soup& s);
ProcPtr to_process(const Soup& s);
std::size_t prefix_count(const Soup& s);

bool is_successful(const Soup& s);
std::vector<Soup> step(const Soup& s);
Verdict verdict(const Soup& s);
/// A shortest reduction sequence to a successful state, starting with s;
/// when none exists, the run that always takes the first successor.
std::vector<Soup> trace(const Soup& s);
inline Verdict verdict(const ProcPtr& p) { return verdict(normalize(p)); }

}  // namespace pimvar::pi
