#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>

#include "pimvar/errors.hpp"
#include "pimvar/pi.hpp"

namespace pimvar::pi {

namespace {

ProcPtr make(auto node) { return std::make_shared<const Process>(Process{std::move(node)}); }

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

void collect_free(const Process& p, std::vector<Name>& bound, std::set<Name>& out) {
  auto use = [&](const Name& n) {
    if (std::find(bound.begin(), bound.end(), n) == bound.end()) out.insert(n);
  };
  std::visit(overloaded{
                 [&](const Nu& n) {
                   bound.push_back(n.name);
                   collect_free(*n.body, bound, out);
                   bound.pop_back();
                 },
                 [&](const Out& o) {
                   use(o.chan);
                   use(o.msg);
                   collect_free(*o.cont, bound, out);
                 },
                 [&](const In& i) {
                   use(i.chan);
                   bound.push_back(i.binder);
                   collect_free(*i.cont, bound, out);
                   bound.pop_back();
                 },
                 [&](const Repl& r) { collect_free(*r.body, bound, out); },
                 [&](const Par& q) {
                   collect_free(*q.left, bound, out);
                   collect_free(*q.right, bound, out);
                 },
                 [](const auto&) {},
             },
             p.node);
}

void collect_all(const Process& p, std::set<Name>& out) {
  std::visit(overloaded{
                 [&](const Nu& n) {
                   out.insert(n.name);
                   collect_all(*n.body, out);
                 },
                 [&](const Out& o) {
                   out.insert(o.chan);
                   out.insert(o.msg);
                   collect_all(*o.cont, out);
                 },
                 [&](const In& i) {
                   out.insert(i.chan);
                   out.insert(i.binder);
                   collect_all(*i.cont, out);
                 },
                 [&](const Repl& r) { collect_all(*r.body, out); },
                 [&](const Par& q) {
                   collect_all(*q.left, out);
                   collect_all(*q.right, out);
                 },
                 [](const auto&) {},
             },
             p.node);
}

class Freshener {
 public:
  explicit Freshener(std::set<Name> used) : used_(std::move(used)) {}

  ProcPtr run(const ProcPtr& p, std::map<Name, Name>& env) {
    return std::visit(
        overloaded{
            [&](const Nu& n) -> ProcPtr {
              Name fresh = pick(n.name);
              auto saved = shadow(env, n.name, fresh);
              auto body = run(n.body, env);
              restore(env, n.name, saved);
              return nu(fresh, body);
            },
            [&](const Out& o) -> ProcPtr {
              return out(look(env, o.chan), look(env, o.msg), run(o.cont, env));
            },
            [&](const In& i) -> ProcPtr {
              Name chan = look(env, i.chan);
              Name fresh = pick(i.binder);
              auto saved = shadow(env, i.binder, fresh);
              auto cont = run(i.cont, env);
              restore(env, i.binder, saved);
              return in(chan, fresh, cont);
            },
            [&](const Repl& r) -> ProcPtr { return repl(run(r.body, env)); },
            [&](const Par& q) -> ProcPtr {
              auto l = run(q.left, env);
              return par(l, run(q.right, env));
            },
            [&](const auto&) -> ProcPtr { return p; },
        },
        p->node);
  }

 private:
  Name pick(const Name& base) {
    Name n = base;
    for (int k = 1; used_.contains(n); ++k) n = base + "_" + std::to_string(k);
    used_.insert(n);
    return n;
  }
  static std::optional<Name> shadow(std::map<Name, Name>& env, const Name& k, const Name& v) {
    std::optional<Name> old;
    if (auto it = env.find(k); it != env.end()) old = it->second;
    env[k] = v;
    return old;
  }
  static void restore(std::map<Name, Name>& env, const Name& k, const std::optional<Name>& old) {
    if (old)
      env[k] = *old;
    else
      env.erase(k);
  }
  static const Name& look(const std::map<Name, Name>& env, const Name& n) {
    auto it = env.find(n);
    return it == env.end() ? n : it->second;
  }

  std::set<Name> used_;
};

bool alpha_rec(const Process& a, const Process& b, std::vector<std::pair<Name, Name>>& env) {
  if (a.node.index() != b.node.index()) return false;
  // innermost binding wins; free names must match literally
  auto same = [&](const Name& x, const Name& y) {
    for (auto it = env.rbegin(); it != env.rend(); ++it) {
      bool lx = it->first == x, ly = it->second == y;
      if (lx || ly) return lx && ly;
    }
    return x == y;
  };
  auto bind = [&](const Name& x, const Name& y, const Process& l, const Process& r) {
    env.emplace_back(x, y);
    bool ok = alpha_rec(l, r, env);
    env.pop_back();
    return ok;
  };
  return std::visit(
      overloaded{
          [&](const Nu& n) {
            const auto& m = std::get<Nu>(b.node);
            return bind(n.name, m.name, *n.body, *m.body);
          },
          [&](const Out& o) {
            const auto& q = std::get<Out>(b.node);
            return same(o.chan, q.chan) && same(o.msg, q.msg) && alpha_rec(*o.cont, *q.cont, env);
          },
          [&](const In& i) {
            const auto& j = std::get<In>(b.node);
            return same(i.chan, j.chan) && bind(i.binder, j.binder, *i.cont, *j.cont);
          },
          [&](const Repl& r) { return alpha_rec(*r.body, *std::get<Repl>(b.node).body, env); },
          [&](const Par& p) {
            const auto& q = std::get<Par>(b.node);
            return alpha_rec(*p.left, *q.left, env) && alpha_rec(*p.right, *q.right, env);
          },
          [](const auto&) { return true; },
      },
      a.node);
}

void print_rec(const Process& p, std::string& out) {
  std::visit(overloaded{
                 [&](const Nu& n) {
                   out += "new ";
                   out += n.name;
                   const Process* body = n.body.get();
                   while (auto inner = std::get_if<Nu>(&body->node)) {
                     out += ',';
                     out += inner->name;
                     body = inner->body.get();
                   }
                   out += '.';
                   print_rec(*body, out);
                 },
                 [&](const Out& o) {
                   out += o.chan + "<" + o.msg + ">";
                   if (!std::holds_alternative<Nil>(o.cont->node)) {
                     out += '.';
                     print_rec(*o.cont, out);
                   }
                 },
                 [&](const In& i) {
                   out += i.chan + "(" + i.binder + ")";
                   if (!std::holds_alternative<Nil>(i.cont->node)) {
                     out += '.';
                     print_rec(*i.cont, out);
                   }
                 },
                 [&](const Repl& r) {
                   out += '!';
                   print_rec(*r.body, out);
                 },
                 [&](const Par& q) {
                   out += '(';
                   print_rec(*q.left, out);
                   out += " | ";
                   print_rec(*q.right, out);
                   out += ')';
                 },
                 [&](const Nil&) { out += '0'; },
                 [&](const Stop&) { out += "stop"; },
                 [&](const Hole&) { out += "[]"; },
             },
             p.node);
}

}  // namespace

ProcPtr nil() {
  static const ProcPtr p = make(Nil{});
  return p;
}
ProcPtr stop() {
  static const ProcPtr p = make(Stop{});
  return p;
}
ProcPtr hole() {
  static const ProcPtr p = make(Hole{});
  return p;
}
ProcPtr nu(Name name, ProcPtr body) { return make(Nu{std::move(name), std::move(body)}); }
ProcPtr nu(const std::vector<Name>& names, ProcPtr body) {
  for (auto it = names.rbegin(); it != names.rend(); ++it) body = nu(*it, std::move(body));
  return body;
}
ProcPtr out(Name chan, Name msg, ProcPtr cont) {
  return make(Out{std::move(chan), std::move(msg), std::move(cont)});
}
ProcPtr in(Name chan, Name binder, ProcPtr cont) {
  return make(In{std::move(chan), std::move(binder), std::move(cont)});
}
ProcPtr repl(ProcPtr body) { return make(Repl{std::move(body)}); }
ProcPtr par(ProcPtr left, ProcPtr right) { return make(Par{std::move(left), std::move(right)}); }
ProcPtr par(const std::vector<ProcPtr>& parts) {
  if (parts.empty()) return nil();
  ProcPtr acc = parts.back();
  for (auto it = parts.rbegin() + 1; it != parts.rend(); ++it) acc = par(*it, acc);
  return acc;
}

std::set<Name> free_names(const Process& p) {
  std::vector<Name> bound;
  std::set<Name> out;
  collect_free(p, bound, out);
  return out;
}

std::set<Name> all_names(const Process& p) {
  std::set<Name> out;
  collect_all(p, out);
  return out;
}

namespace {

// A variant of `base` not occurring in `body` and different from `avoid`.
Name away(const Process& body, const Name& base, const Name& avoid) {
  auto used = all_names(body);
  Name n = base;
  for (int k = 1; n == base || n == avoid || used.contains(n); ++k) n = base + "_" + std::to_string(k);
  return n;
}

}  // namespace

ProcPtr substitute(const ProcPtr& p, const Name& from, const Name& to) {
  auto r = [&](const Name& n) { return n == from ? to : n; };
  return std::visit(
      overloaded{
          [&](const Nu& n) -> ProcPtr {
            if (n.name == from || !free_names(*n.body).contains(from)) return p;
            if (n.name != to) return nu(n.name, substitute(n.body, from, to));
            auto b = away(*n.body, n.name, from);
            return nu(b, substitute(substitute(n.body, n.name, b), from, to));
          },
          [&](const Out& o) -> ProcPtr { return out(r(o.chan), r(o.msg), substitute(o.cont, from, to)); },
          [&](const In& i) -> ProcPtr {
            if (i.binder == from || !free_names(*i.cont).contains(from)) return in(r(i.chan), i.binder, i.cont);
            if (i.binder != to) return in(r(i.chan), i.binder, substitute(i.cont, from, to));
            auto b = away(*i.cont, i.binder, from);
            return in(r(i.chan), b, substitute(substitute(i.cont, i.binder, b), from, to));
          },
          [&](const Repl& q) -> ProcPtr { return repl(substitute(q.body, from, to)); },
          [&](const Par& q) -> ProcPtr {
            return par(substitute(q.left, from, to), substitute(q.right, from, to));
          },
          [&](const auto&) -> ProcPtr { return p; },
      },
      p->node);
}

ProcPtr freshen(const ProcPtr& p) {
  Freshener f(free_names(*p));
  std::map<Name, Name> env;
  return f.run(p, env);
}

ProcPtr close(const ProcPtr& p) {
  auto fn = free_names(*p);
  return nu(std::vector<Name>(fn.begin(), fn.end()), p);
}

bool alpha_equal(const Process& a, const Process& b) {
  std::vector<std::pair<Name, Name>> env;
  return alpha_rec(a, b, env);
}

bool contains_hole(const Process& p) {
  return std::visit(overloaded{
                        [](const Nu& n) { return contains_hole(*n.body); },
                        [](const Out& o) { return contains_hole(*o.cont); },
                        [](const In& i) { return contains_hole(*i.cont); },
                        [](const Repl& r) { return contains_hole(*r.body); },
                        [](const Par& q) { return contains_hole(*q.left) || contains_hole(*q.right); },
                        [](const Hole&) { return true; },
                        [](const auto&) { return false; },
                    },
                    p.node);
}

ProcPtr plug(const ProcPtr& context, const ProcPtr& filler) {
  return std::visit(
      overloaded{
          [&](const Nu& n) -> ProcPtr { return nu(n.name, plug(n.body, filler)); },
          [&](const Out& o) -> ProcPtr { return out(o.chan, o.msg, plug(o.cont, filler)); },
          [&](const In& i) -> ProcPtr { return in(i.chan, i.binder, plug(i.cont, filler)); },
          [&](const Repl& r) -> ProcPtr { return repl(plug(r.body, filler)); },
          [&](const Par& q) -> ProcPtr { return par(plug(q.left, filler), plug(q.right, filler)); },
          [&](const Hole&) -> ProcPtr { return filler; },
          [&](const auto&) -> ProcPtr { return context; },
      },
      context->node);
}

std::string print(const Process& p) {
  std::string s;
  print_rec(p, s);
  return s;
}

}  // namespace pimvar::pi
