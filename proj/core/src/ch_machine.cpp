#include <algorithm>
#include <functional>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "pimvar/ch.hpp"
#include "pimvar/errors.hpp"

namespace pimvar::ch {

namespace {

[[noreturn]] void type_error(const std::string& what, const Expr& e) {
  throw WellFormednessError(what + ": " + print(e));
}

// Locates the redex of one thread through the M, F and E contexts and, unless
// `dry`, rewrites it. Side effects on the store go straight into `s`.
class Stepper {
 public:
  Stepper(ChState& s, bool dry) : s_(s), dry_(dry) {}

  Rule rule = Rule::Stuck;
  std::vector<ExprPtr> forks;

  ExprPtr monadic(const ExprPtr& e) {
    switch (e->kind) {
      case Kind::Bind: {
        const auto& l = e->kids[0];
        if (l->kind == Kind::Return) {
          rule = Rule::Lunit;
          return dry_ ? nullptr : app(e->kids[1], l->kids[0]);
        }
        auto nl = monadic(l);
        return nl ? bind(nl, e->kids[1]) : nullptr;
      }
      case Kind::Return:
        rule = Rule::Finished;
        return nullptr;
      case Kind::Take: {
        const auto& a = e->kids[0];
        if (a->kind == Kind::Var) {
          if (auto it = s_.mvars.find(a->sym); it != s_.mvars.end()) {
            if (!it->second) {
              rule = Rule::Blocked;
              return nullptr;
            }
            rule = Rule::Tmvar;
            if (dry_) return nullptr;
            auto content = it->second;
            it->second = nullptr;
            return ret(content);
          }
        }
        auto na = functional(a);
        return na ? take(na) : nullptr;
      }
      case Kind::Put: {
        const auto& a = e->kids[0];
        if (a->kind == Kind::Var) {
          if (auto it = s_.mvars.find(a->sym); it != s_.mvars.end()) {
            if (it->second) {
              rule = Rule::Blocked;
              return nullptr;
            }
            rule = Rule::Pmvar;
            if (dry_) return nullptr;
            it->second = e->kids[1];
            return ret(unit());
          }
        }
        auto na = functional(a);
        return na ? put(na, e->kids[1]) : nullptr;
      }
      case Kind::NewMVar:
      case Kind::NewEmpty: {
        rule = e->kind == Kind::NewMVar ? Rule::Nmvar : Rule::NewEmpty;
        if (dry_) return nullptr;
        Sym x = fresh_sym(s_.next_fresh++);
        s_.mvars.emplace(x, e->kind == Kind::NewMVar ? e->kids[0] : nullptr);
        return ret(var(x));
      }
      case Kind::Fork:
        rule = Rule::Fork;
        if (dry_) return nullptr;
        forks.push_back(e->kids[0]);
        return ret(unit());
      default:
        return functional(e);
    }
  }

  ExprPtr functional(const ExprPtr& e) {
    switch (e->kind) {
      case Kind::Var: {
        auto it = s_.bindings.find(e->sym);
        if (it == s_.bindings.end()) {
          rule = Rule::Stuck;
          return nullptr;
        }
        rule = Rule::Cpce;
        return dry_ ? nullptr : it->second;
      }
      case Kind::App: {
        const auto& f = e->kids[0];
        if (f->kind == Kind::Lam) {
          rule = Rule::Beta;
          return dry_ ? nullptr : substitute(f->kids[0], {{f->sym, e->kids[1]}});
        }
        if (is_value(*f)) type_error("application of a non-function", *e);
        auto nf = functional(f);
        return nf ? app(nf, e->kids[1]) : nullptr;
      }
      case Kind::Seq: {
        if (is_value(*e->kids[0])) {
          rule = Rule::Seq;
          return dry_ ? nullptr : e->kids[1];
        }
        auto na = functional(e->kids[0]);
        return na ? seq(na, e->kids[1]) : nullptr;
      }
      case Kind::Case: {
        const auto& sc = e->kids[0];
        if (sc->kind == Kind::Con) {
          auto alt = std::find_if(e->alts.begin(), e->alts.end(), [&](const Alt& a) { return a.tag == sc->sym; });
          if (alt == e->alts.end() || alt->vars.size() != sc->kids.size())
            type_error("pattern match failure", *e);
          rule = Rule::Case;
          if (dry_) return nullptr;
          std::map<Sym, ExprPtr> sub;
          for (std::size_t k = 0; k < alt->vars.size(); ++k) sub[alt->vars[k]] = sc->kids[k];
          return substitute(alt->body, sub);
        }
        if (is_value(*sc)) type_error("case on a non-constructor", *e);
        auto ns = functional(sc);
        if (!ns) return nullptr;
        return case_(ns, e->alts);
      }
      case Kind::Letrec: {
        rule = Rule::Mkbinds;
        if (dry_) return nullptr;
        std::map<Sym, ExprPtr> sub;
        std::vector<Sym> fresh;
        for (Sym b : e->binders) {
          Sym x = fresh_sym(s_.next_fresh++);
          fresh.push_back(x);
          sub[b] = var(x);
        }
        for (std::size_t k = 0; k < fresh.size(); ++k) s_.bindings.emplace(fresh[k], substitute(e->kids[k], sub));
        return substitute(e->kids.back(), sub);
      }
      case Kind::Hole:
        type_error("context hole in a machine state", *e);
      default:
        type_error("value in evaluation position", *e);
    }
  }

 private:
  ChState& s_;
  bool dry_;
};

bool mvar_rule(Rule r) { return r == Rule::Tmvar || r == Rule::Pmvar; }
bool inert(Rule r) { return r == Rule::Blocked || r == Rule::Finished || r == Rule::Stuck; }

// Binary or textual serializer with first-occurrence renaming of machine names.
class Canon {
 public:
  Canon(const ChState& s, bool text) : s_(s), text_(text) {}

  std::string run() {
    std::vector<std::size_t> order;
    std::optional<std::size_t> main;
    for (std::size_t i = 0; i < s_.threads.size(); ++i) {
      const auto& t = s_.threads[i];
      if (t.main) {
        main = i;
        continue;
      }
      if (t.expr->kind == Kind::Return) continue;
      order.push_back(i);
    }
    std::vector<std::string> shapes(s_.threads.size());
    for (auto i : order) shapes[i] = shape(s_.threads[i]);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return shapes[a] < shapes[b]; });
    if (main) order.insert(order.begin(), *main);
    for (auto i : order) {
      const auto& t = s_.threads[i];
      tok(t.main ? "main" : "thread");
      if (t.diverged) tok("diverged");
      expr(*t.expr);
      sep('\n');
    }
    for (std::size_t k = 0; k < worklist_.size(); ++k) {
      Sym x = worklist_[k];
      if (auto b = s_.bindings.find(x); b != s_.bindings.end()) {
        tok("bind");
        name(x);
        expr(*b->second);
      } else if (auto m = s_.mvars.find(x); m != s_.mvars.end()) {
        tok("mvar");
        name(x);
        if (m->second)
          expr(*m->second);
        else
          tok("empty");
      } else {
        tok("unbound");
        name(x);
      }
      sep('\n');
    }
    return std::move(out_);
  }

 private:
  std::string shape(const Thread& t) {
    std::string saved = std::move(out_);
    out_.clear();
    anonymous_ = true;
    if (t.diverged) tok("diverged");
    expr(*t.expr);
    anonymous_ = false;
    std::swap(saved, out_);
    return saved;
  }

  void sep(char c) {
    if (text_) out_ += c;
  }
  void tok(const char* t) {
    if (text_) {
      if (!out_.empty() && out_.back() != '\n' && out_.back() != '(') out_ += ' ';
      out_ += t;
    } else {
      out_ += t[0];
      out_ += t[1] ? t[1] : '.';
    }
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_ += static_cast<char>((v >> (8 * i)) & 0xff);
  }
  void name(Sym x) {
    if (!is_fresh(x)) {
      if (text_) {
        tok("");
        out_ += sym_name(x);
      } else {
        out_ += 's';
        u32(x);
      }
      return;
    }
    if (anonymous_) {
      tok("_");
      return;
    }
    auto [it, inserted] = rename_.try_emplace(x, static_cast<std::uint32_t>(rename_.size()));
    if (inserted) worklist_.push_back(x);
    if (text_) {
      tok("");
      out_ += "_" + std::to_string(it->second);
    } else {
      out_ += 'f';
      u32(it->second);
    }
  }
  void open() {
    if (text_) {
      if (!out_.empty() && out_.back() != '\n' && out_.back() != '(') out_ += ' ';
      out_ += '(';
    } else {
      out_ += '(';
    }
  }
  void close() { out_ += ')'; }

  void expr(const Expr& e) {
    static const char* names[] = {"var", "lam", "app", "con", "case", "letrec", "seq", "return",
                                  "bind", "fork", "take", "newMVar", "put", "newEmpty", "hole"};
    if (e.kind == Kind::Var) {
      name(e.sym);
      return;
    }
    open();
    if (text_)
      tok(names[static_cast<int>(e.kind)]);
    else
      out_ += static_cast<char>('A' + static_cast<int>(e.kind));
    switch (e.kind) {
      case Kind::Lam:
      case Kind::Con:
        name(e.sym);
        break;
      case Kind::Letrec:
        for (Sym b : e.binders) name(b);
        break;
      default:
        break;
    }
    for (const auto& k : e.kids) expr(*k);
    for (const auto& a : e.alts) {
      open();
      name(a.tag);
      for (Sym v : a.vars) name(v);
      expr(*a.body);
      close();
    }
    close();
  }

  const ChState& s_;
  bool text_;
  bool anonymous_ = false;
  std::string out_;
  std::unordered_map<Sym, std::uint32_t> rename_;
  std::vector<Sym> worklist_;
};

std::uint64_t fnv1a(std::string_view s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

}  // namespace

std::string to_string(Rule r) {
  static const char* names[] = {"cpce", "mkbinds", "beta", "case",    "seq",      "lunit", "tmvar",
                                "pmvar", "nmvar", "newEmptyMVar", "fork", "blocked", "finished", "stuck"};
  return names[static_cast<int>(r)];
}

std::string to_string(Tri t) {
  switch (t) {
    case Tri::False:
      return "N";
    case Tri::True:
      return "Y";
    default:
      return "?";
  }
}

ChState initial_state(ExprPtr main_expr) {
  ChState s;
  s.threads.push_back({0, true, std::move(main_expr), false});
  s.next_thread = 1;
  return s;
}

void check_well_formed(const ChState& s) {
  int mains = 0;
  std::unordered_set<std::uint32_t> ids;
  for (const auto& t : s.threads) {
    mains += t.main;
    if (!ids.insert(t.id).second) throw WellFormednessError("duplicate thread id " + std::to_string(t.id));
    if (!t.expr) throw WellFormednessError("thread without expression");
  }
  if (mains > 1) throw WellFormednessError("more than one main thread");
  for (const auto& [x, e] : s.bindings)
    if (s.mvars.contains(x)) throw WellFormednessError("name introduced twice: " + sym_name(x));
}

bool is_successful(const ChState& s) {
  return std::any_of(s.threads.begin(), s.threads.end(),
                     [](const Thread& t) { return t.main && t.expr->kind == Kind::Return; });
}

Rule next_rule(const ChState& s, std::size_t i) {
  const auto& t = s.threads[i];
  if (t.diverged) return Rule::Stuck;
  Stepper st(const_cast<ChState&>(s), true);
  st.monadic(t.expr);
  return st.rule;
}

Rule step_thread(ChState& s, std::size_t i) {
  if (s.threads[i].diverged) return Rule::Stuck;
  Stepper st(s, false);
  auto ne = st.monadic(s.threads[i].expr);
  if (!ne) return st.rule;
  s.threads[i].expr = std::move(ne);
  for (auto& f : st.forks) s.threads.push_back({s.next_thread++, false, std::move(f), false});
  return st.rule;
}

std::vector<ChState> step(const ChState& s) {
  std::vector<ChState> out;
  if (is_successful(s)) return out;
  for (std::size_t i = 0; i < s.threads.size(); ++i) {
    if (inert(next_rule(s, i))) continue;
    ChState n = s;
    step_thread(n, i);
    out.push_back(std::move(n));
  }
  return out;
}

namespace {

// Deterministic run of one thread; false when the cap was hit.
bool run_thread(ChState& s, std::size_t i, const MacroOptions& opt) {
  constexpr std::uint64_t kWatchAfter = 1000;
  std::unordered_set<std::string> seen;
  for (std::uint64_t n = 0;; ++n) {
    Rule r = next_rule(s, i);
    if (inert(r) || mvar_rule(r)) return true;
    if (n >= opt.micro_cap) return false;
    auto sizes = std::tuple(s.bindings.size(), s.mvars.size(), s.threads.size());
    step_thread(s, i);
    if (n < kWatchAfter) continue;
    if (sizes != std::tuple(s.bindings.size(), s.mvars.size(), s.threads.size())) {
      seen.clear();
      continue;
    }
    // a repeated expression with an unchanged store means the run never leaves this loop
    if (!seen.insert(print(*s.threads[i].expr)).second) {
      s.threads[i].diverged = true;
      return true;
    }
  }
}

}  // namespace

bool settle(ChState& s, const MacroOptions& opt) {
  bool ok = true;
  for (std::size_t i = 0; i < s.threads.size(); ++i) ok = run_thread(s, i, opt) && ok;
  return ok;
}

std::vector<ChState> macro_step(const ChState& s, std::vector<bool>* capped, const MacroOptions& opt) {
  std::vector<ChState> out;
  if (capped) capped->clear();
  if (is_successful(s)) return out;
  for (std::size_t i = 0; i < s.threads.size(); ++i) {
    if (!mvar_rule(next_rule(s, i))) continue;
    ChState n = s;
    step_thread(n, i);
    bool ok = settle(n, opt);
    if (capped) capped->push_back(!ok);
    out.push_back(std::move(n));
  }
  return out;
}

std::string canonical_form(const ChState& s) { return Canon(s, true).run(); }

Key128 canonical_key(const ChState& s) {
  auto bin = Canon(s, false).run();
  return {fnv1a(bin, 0xcbf29ce484222325ull), std::hash<std::string>{}(bin)};
}

std::string print(const ChState& s) {
  std::string out;
  for (const auto& t : s.threads) {
    out += (t.main ? "main[" : "thread[") + std::to_string(t.id) + "]";
    if (t.diverged) out += " diverged";
    out += ": " + print(*t.expr) + "\n";
  }
  for (const auto& [x, e] : s.mvars) out += "mvar " + sym_name(x) + " = " + (e ? print(*e) : "empty") + "\n";
  for (const auto& [x, e] : s.bindings) out += "bind " + sym_name(x) + " = " + print(*e) + "\n";
  return out;
}

}  // namespace pimvar::ch
