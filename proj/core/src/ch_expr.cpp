#include <algorithm>
#include <stdexcept>

#include "pimvar/ch.hpp"

namespace pimvar::ch {

namespace {

ExprPtr make(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

ExprPtr make(Kind k, std::vector<ExprPtr> kids, Sym sym = 0) {
  Expr e{k, sym, std::move(kids), {}, {}};
  return make(std::move(e));
}

using Subst = std::map<Sym, ExprPtr>;

Subst without(const Subst& s, const std::vector<Sym>& bound) {
  Subst r = s;
  for (Sym b : bound) r.erase(b);
  return r;
}

bool binds_any(const Subst& s, const std::vector<Sym>& bound) {
  return std::any_of(bound.begin(), bound.end(), [&](Sym b) { return s.contains(b); });
}

ExprPtr subst_rec(const ExprPtr& e, const Subst& s) {
  if (s.empty()) return e;
  switch (e->kind) {
    case Kind::Var: {
      auto it = s.find(e->sym);
      return it == s.end() ? e : it->second;
    }
    case Kind::Lam: {
      if (s.contains(e->sym)) {
        auto inner = without(s, {e->sym});
        auto b = subst_rec(e->kids[0], inner);
        return b == e->kids[0] ? e : lam(e->sym, b);
      }
      auto b = subst_rec(e->kids[0], s);
      return b == e->kids[0] ? e : lam(e->sym, b);
    }
    case Kind::Case: {
      Expr c = *e;
      bool changed = false;
      c.kids[0] = subst_rec(e->kids[0], s);
      changed |= c.kids[0] != e->kids[0];
      for (auto& a : c.alts) {
        auto nb = binds_any(s, a.vars) ? subst_rec(a.body, without(s, a.vars)) : subst_rec(a.body, s);
        changed |= nb != a.body;
        a.body = nb;
      }
      return changed ? make(std::move(c)) : e;
    }
    case Kind::Letrec: {
      const Subst* use = &s;
      Subst inner;
      if (binds_any(s, e->binders)) {
        inner = without(s, e->binders);
        use = &inner;
      }
      Expr c = *e;
      bool changed = false;
      for (auto& k : c.kids) {
        auto nk = subst_rec(k, *use);
        changed |= nk != k;
        k = nk;
      }
      return changed ? make(std::move(c)) : e;
    }
    default: {
      if (e->kids.empty()) return e;
      Expr c = *e;
      bool changed = false;
      for (auto& k : c.kids) {
        auto nk = subst_rec(k, s);
        changed |= nk != k;
        k = nk;
      }
      return changed ? make(std::move(c)) : e;
    }
  }
}

struct AlphaEnv {
  std::vector<std::pair<Sym, Sym>> pairs;

  bool same(Sym x, Sym y) const {
    for (auto it = pairs.rbegin(); it != pairs.rend(); ++it) {
      bool lx = it->first == x, ly = it->second == y;
      if (lx || ly) return lx && ly;
    }
    return x == y;
  }
};

bool alpha_rec(const Expr& a, const Expr& b, AlphaEnv& env) {
  if (a.kind != b.kind || a.kids.size() != b.kids.size()) return false;
  switch (a.kind) {
    case Kind::Var:
      return env.same(a.sym, b.sym);
    case Kind::Lam: {
      env.pairs.emplace_back(a.sym, b.sym);
      bool ok = alpha_rec(*a.kids[0], *b.kids[0], env);
      env.pairs.pop_back();
      return ok;
    }
    case Kind::Con:
      if (a.sym != b.sym) return false;
      break;
    case Kind::Case: {
      if (a.alts.size() != b.alts.size() || !alpha_rec(*a.kids[0], *b.kids[0], env)) return false;
      for (std::size_t i = 0; i < a.alts.size(); ++i) {
        const auto &x = a.alts[i], &y = b.alts[i];
        if (x.tag != y.tag || x.vars.size() != y.vars.size()) return false;
        for (std::size_t k = 0; k < x.vars.size(); ++k) env.pairs.emplace_back(x.vars[k], y.vars[k]);
        bool ok = alpha_rec(*x.body, *y.body, env);
        env.pairs.resize(env.pairs.size() - x.vars.size());
        if (!ok) return false;
      }
      return true;
    }
    case Kind::Letrec: {
      if (a.binders.size() != b.binders.size()) return false;
      for (std::size_t k = 0; k < a.binders.size(); ++k) env.pairs.emplace_back(a.binders[k], b.binders[k]);
      bool ok = true;
      for (std::size_t k = 0; ok && k < a.kids.size(); ++k) ok = alpha_rec(*a.kids[k], *b.kids[k], env);
      env.pairs.resize(env.pairs.size() - a.binders.size());
      return ok;
    }
    default:
      break;
  }
  for (std::size_t k = 0; k < a.kids.size(); ++k)
    if (!alpha_rec(*a.kids[k], *b.kids[k], env)) return false;
  return true;
}

void print_rec(const Expr& e, std::string& out) {
  auto kid = [&](std::size_t i) { print_rec(*e.kids[i], out); };
  switch (e.kind) {
    case Kind::Var:
      out += sym_name(e.sym);
      return;
    case Kind::Lam:
      out += "(\\" + sym_name(e.sym) + " -> ";
      kid(0);
      out += ')';
      return;
    case Kind::App:
      out += '(';
      kid(0);
      out += ' ';
      kid(1);
      out += ')';
      return;
    case Kind::Con:
      if (e.sym == tag_pair() && e.kids.size() == 2) {
        out += '(';
        kid(0);
        out += ", ";
        kid(1);
        out += ')';
        return;
      }
      if (e.kids.empty()) {
        out += sym_name(e.sym);
        return;
      }
      out += '(' + sym_name(e.sym);
      for (std::size_t i = 0; i < e.kids.size(); ++i) {
        out += ' ';
        kid(i);
      }
      out += ')';
      return;
    case Kind::Case:
      out += "(case ";
      kid(0);
      out += " of {";
      for (std::size_t i = 0; i < e.alts.size(); ++i) {
        const auto& a = e.alts[i];
        if (i) out += "; ";
        out += sym_name(a.tag);
        for (Sym v : a.vars) out += ' ' + sym_name(v);
        out += " -> ";
        print_rec(*a.body, out);
      }
      out += "})";
      return;
    case Kind::Letrec:
      out += "(letrec ";
      for (std::size_t i = 0; i < e.binders.size(); ++i) {
        if (i) out += ", ";
        out += sym_name(e.binders[i]) + " = ";
        kid(i);
      }
      out += " in ";
      kid(e.kids.size() - 1);
      out += ')';
      return;
    case Kind::Seq:
      out += "(seq ";
      kid(0);
      out += ' ';
      kid(1);
      out += ')';
      return;
    case Kind::Return:
      out += "(return ";
      kid(0);
      out += ')';
      return;
    case Kind::Bind:
      out += '(';
      kid(0);
      out += " >>= ";
      kid(1);
      out += ')';
      return;
    case Kind::Fork:
      out += "(forkIO ";
      kid(0);
      out += ')';
      return;
    case Kind::Take:
      out += "(takeMVar ";
      kid(0);
      out += ')';
      return;
    case Kind::NewMVar:
      out += "(newMVar ";
      kid(0);
      out += ')';
      return;
    case Kind::Put:
      out += "(putMVar ";
      kid(0);
      out += ' ';
      kid(1);
      out += ')';
      return;
    case Kind::NewEmpty:
      out += "newEmptyMVar";
      return;
    case Kind::Hole:
      out += "[.]";
      return;
  }
}

}  // namespace

Sym tag_unit() {
  static const Sym s = intern("()");
  return s;
}
Sym tag_true() {
  static const Sym s = intern("True");
  return s;
}
Sym tag_false() {
  static const Sym s = intern("False");
  return s;
}
Sym tag_nil() {
  static const Sym s = intern("Nil");
  return s;
}
Sym tag_cons() {
  static const Sym s = intern("Cons");
  return s;
}
Sym tag_pair() {
  static const Sym s = intern("Pair");
  return s;
}
Sym tag_chan(unsigned k) { return intern(k == 0 ? std::string("Chan") : "Chan" + std::to_string(k)); }

unsigned arity(Sym tag) {
  if (tag == tag_unit() || tag == tag_true() || tag == tag_false() || tag == tag_nil()) return 0;
  if (tag == tag_cons() || tag == tag_pair()) return 2;
  auto name = sym_name(tag);
  if (name == "Chan") return 1;
  if (name.starts_with("Chan")) return static_cast<unsigned>(std::stoul(name.substr(4))) + 1;
  throw std::invalid_argument("unknown constructor " + name);
}

ExprPtr var(Sym x) { return make(Kind::Var, {}, x); }
ExprPtr lam(Sym x, ExprPtr body) { return make(Kind::Lam, {std::move(body)}, x); }
ExprPtr app(ExprPtr f, ExprPtr a) { return make(Kind::App, {std::move(f), std::move(a)}); }
ExprPtr con(Sym tag, std::vector<ExprPtr> args) {
  if (args.size() != arity(tag)) throw std::invalid_argument("constructor arity mismatch for " + sym_name(tag));
  return make(Kind::Con, std::move(args), tag);
}
ExprPtr unit() {
  static const ExprPtr u = con(tag_unit());
  return u;
}
ExprPtr case_(ExprPtr scrutinee, std::vector<Alt> alts) {
  Expr e{Kind::Case, 0, {std::move(scrutinee)}, {}, std::move(alts)};
  return make(std::move(e));
}
ExprPtr letrec(std::vector<std::pair<Sym, ExprPtr>> bindings, ExprPtr body) {
  Expr e{Kind::Letrec, 0, {}, {}, {}};
  for (auto& [x, v] : bindings) {
    e.binders.push_back(x);
    e.kids.push_back(std::move(v));
  }
  e.kids.push_back(std::move(body));
  return make(std::move(e));
}
ExprPtr seq(ExprPtr a, ExprPtr b) { return make(Kind::Seq, {std::move(a), std::move(b)}); }
ExprPtr ret(ExprPtr e) { return make(Kind::Return, {std::move(e)}); }
ExprPtr bind(ExprPtr a, ExprPtr b) { return make(Kind::Bind, {std::move(a), std::move(b)}); }
ExprPtr fork(ExprPtr e) { return make(Kind::Fork, {std::move(e)}); }
ExprPtr take(ExprPtr e) { return make(Kind::Take, {std::move(e)}); }
ExprPtr new_mvar(ExprPtr e) { return make(Kind::NewMVar, {std::move(e)}); }
ExprPtr put(ExprPtr m, ExprPtr e) { return make(Kind::Put, {std::move(m), std::move(e)}); }
ExprPtr new_empty() {
  static const ExprPtr e = make(Kind::NewEmpty, {});
  return e;
}
ExprPtr hole() {
  static const ExprPtr e = make(Kind::Hole, {});
  return e;
}

ExprPtr substitute(const ExprPtr& e, const std::map<Sym, ExprPtr>& s) { return subst_rec(e, s); }

bool alpha_equal(const Expr& a, const Expr& b) {
  AlphaEnv env;
  return alpha_rec(a, b, env);
}

bool contains_hole(const Expr& e) {
  if (e.kind == Kind::Hole) return true;
  for (const auto& k : e.kids)
    if (contains_hole(*k)) return true;
  for (const auto& a : e.alts)
    if (contains_hole(*a.body)) return true;
  return false;
}

ExprPtr plug(const ExprPtr& context, const ExprPtr& filler) {
  if (context->kind == Kind::Hole) return filler;
  if (!contains_hole(*context)) return context;
  Expr c = *context;
  for (auto& k : c.kids) k = plug(k, filler);
  for (auto& a : c.alts) a.body = plug(a.body, filler);
  return make(std::move(c));
}

std::size_t size(const Expr& e) {
  std::size_t n = 1;
  for (const auto& k : e.kids) n += size(*k);
  for (const auto& a : e.alts) n += size(*a.body);
  return n;
}

bool is_value(const Expr& e) {
  switch (e.kind) {
    case Kind::Lam:
    case Kind::Con:
    case Kind::Return:
    case Kind::Bind:
    case Kind::Fork:
    case Kind::Take:
    case Kind::NewMVar:
    case Kind::Put:
    case Kind::NewEmpty:
      return true;
    default:
      return false;
  }
}

std::string print(const Expr& e) {
  std::string s;
  print_rec(e, s);
  return s;
}

}  // namespace pimvar::ch
