#pragma once

// Core Concurrent Haskell calculus: expressions, machine states, the
// call-by-name standard reduction and bounded convergence checking.

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "pimvar/names.hpp"

namespace pimvar::ch {

enum class Kind : std::uint8_t {
  Var,
  Lam,
  App,
  Con,
  Case,
  Letrec,
  Seq,
  Return,
  Bind,
  Fork,
  Take,
  NewMVar,
  Put,
  NewEmpty,
  Hole,
};

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Alt {
  Sym tag;
  std::vector<Sym> vars;
  ExprPtr body;
};

/// Field use by kind:
///   Var: sym.  Lam: sym (binder), kids[0] body.  App: kids = {fun, arg}.
///   Con: sym (tag), kids = args.  Case: kids[0] scrutinee, alts.
///   Letrec: binders, kids = {e_1..e_n, body}.  Seq/Bind/Put: kids = {a, b}.
///   Return/Fork/Take/NewMVar: kids[0].  NewEmpty/Hole: nothing.
struct Expr {
  Kind kind;
  Sym sym = 0;
  std::vector<ExprPtr> kids;
  std::vector<Sym> binders;
  std::vector<Alt> alts;
};

// Constructor tags.
Sym tag_unit();
Sym tag_true();
Sym tag_false();
Sym tag_nil();
Sym tag_cons();
Sym tag_pair();
/// Channel constructor with k check MVars; arity k + 1.
Sym tag_chan(unsigned k);
/// Arity of a known constructor tag; throws for unknown tags.
unsigned arity(Sym tag);

ExprPtr var(Sym x);
ExprPtr lam(Sym x, ExprPtr body);
ExprPtr app(ExprPtr f, ExprPtr a);
ExprPtr con(Sym tag, std::vector<ExprPtr> args = {});
ExprPtr unit();
ExprPtr case_(ExprPtr scrutinee, std::vector<Alt> alts);
ExprPtr letrec(std::vector<std::pair<Sym, ExprPtr>> bindings, ExprPtr body);
ExprPtr seq(ExprPtr a, ExprPtr b);
ExprPtr ret(ExprPtr e);
ExprPtr bind(ExprPtr a, ExprPtr b);
ExprPtr fork(ExprPtr e);
ExprPtr take(ExprPtr e);
ExprPtr new_mvar(ExprPtr e);
ExprPtr put(ExprPtr m, ExprPtr e);
ExprPtr new_empty();
ExprPtr hole();

/// Simultaneous capture-free substitution of free variables. Substituted
/// expressions must not mention binders they are pushed under.
ExprPtr substitute(const ExprPtr& e, const std::map<Sym, ExprPtr>& s);
bool alpha_equal(const Expr& a, const Expr& b);
bool contains_hole(const Expr& e);
ExprPtr plug(const ExprPtr& context, const ExprPtr& filler);
std::size_t size(const Expr& e);
bool is_value(const Expr& e);

std::string print(const Expr& e);
inline std::string print(const ExprPtr& e) { return print(*e); }

// ---------------------------------------------------------------------------
// Machine states

struct Thread {
  std::uint32_t id = 0;
  bool main = false;
  ExprPtr expr;
  /// Set by the macro scheduler when the thread's deterministic run loops.
  bool diverged = false;
};

/// Introduced names (MVars and global bindings) are restricted; they are the
/// keys of `mvars` and `bindings`. An MVar maps to nullptr when empty.
struct ChState {
  std::vector<Thread> threads;
  std::map<Sym, ExprPtr> mvars;
  std::map<Sym, ExprPtr> bindings;
  std::uint32_t next_fresh = 0;
  std::uint32_t next_thread = 0;
};

ChState initial_state(ExprPtr main_expr);

enum class Rule : std::uint8_t {
  Cpce,
  Mkbinds,
  Beta,
  Case,
  Seq,
  Lunit,
  Tmvar,
  Pmvar,
  Nmvar,
  NewEmpty,
  Fork,
  Blocked,   // takeMVar on empty or putMVar on full
  Finished,  // thread is `return e`
  Stuck,     // no rule applies (free variable in head position, diverged)
};

std::string to_string(Rule r);

/// Throws WellFormednessError when the invariants are violated.
void check_well_formed(const ChState& s);
bool is_successful(const ChState& s);

/// The rule thread `i` would fire next.
Rule next_rule(const ChState& s, std::size_t i);
/// Fires the next rule of thread `i` in place; returns the rule. Blocked,
/// Finished and Stuck leave the state untouched. Throws WellFormednessError
/// on a dynamic type error (failed pattern match, applying a non-function).
Rule step_thread(ChState& s, std::size_t i);

/// All single-rule successors, in thread order. Empty for successful states.
std::vector<ChState> step(const ChState& s);

struct MacroOptions {
  std::uint64_t micro_cap = 100000;
};

/// Runs every thread's deterministic rules until it is at (tmvar)/(pmvar),
/// finished or stuck. Returns false if some thread hit `micro_cap`.
bool settle(ChState& s, const MacroOptions& opt = {});
/// Successors branching only at (tmvar)/(pmvar): one per enabled MVar
/// operation, each settled. `s` must be settled. `capped`, when given,
/// receives one flag per successor that could not be settled within the cap.
std::vector<ChState> macro_step(const ChState& s, std::vector<bool>* capped = nullptr,
                                const MacroOptions& opt = {});

/// Canonical serialization: unreachable store entries and finished non-main
/// threads omitted, other threads sorted by shape, machine names renumbered
/// in order of first occurrence.
std::string canonical_form(const ChState& s);

struct Key128 {
  std::uint64_t hi = 0, lo = 0;
  friend bool operator==(const Key128&, const Key128&) = default;
};
Key128 canonical_key(const ChState& s);

/// Stable human-readable dump: one line per thread, then MVars, then
/// bindings, in map order.
std::string print(const ChState& s);

// ---------------------------------------------------------------------------
// Convergence

enum class Tri : std::uint8_t { False, True, Unknown };
std::string to_string(Tri t);

enum class Scheduler : std::uint8_t { Micro, Macro };

struct ChVerdict {
  Tri may = Tri::Unknown;
  Tri should = Tri::Unknown;
  std::uint64_t explored = 0;
  std::uint64_t depth_bound = 0;
};

struct VerdictOptions {
  std::uint64_t depth_bound = 100000;
  std::uint64_t max_states = 20000000;
  Scheduler scheduler = Scheduler::Macro;
  MacroOptions macro;
};

ChVerdict verdict(const ChState& s, const VerdictOptions& opt = {});

}  // namespace pimvar::ch
