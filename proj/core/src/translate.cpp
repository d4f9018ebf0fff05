#include "pimvar/translate.hpp"

#include <functional>
#include <optional>

namespace pimvar::translate {

namespace {

using namespace pimvar::ch;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

Sym stop_name() {
  static const Sym s = intern("stop");
  return s;
}

class Builder {
 public:
  Builder(const Options& opt, std::optional<gstb::Translation> t) : opt_(opt), t_(std::move(t)) {}

  ExprPtr run(const pi::ProcPtr& p) {
    return std::visit(
        overloaded{
            [&](const pi::Out& o) { return t_ ? induced_send(o) : private_send(o); },
            [&](const pi::In& i) { return t_ ? induced_receive(i) : private_receive(i); },
            [&](const pi::Par& q) { return then(fork(run(q.right)), run(q.left)); },
            [&](const pi::Nu& n) { return t_ ? induced_nu(n) : private_nu(n); },
            [&](const pi::Nil&) { return ret(unit()); },
            [&](const pi::Stop&) { return take(var(stop_name())); },
            [&](const pi::Repl& r) {
              Sym f = fresh("f");
              return letrec({{f, then(fork(run(r.body)), var(f))}}, var(f));
            },
            [&](const pi::Hole&) { return ch::hole(); },
        },
        p->node);
  }

 private:
  Sym fresh(const std::string& base) { return intern(base + "$" + std::to_string(counter_++)); }
  static Sym name(const pi::Name& n) { return intern(n); }

  static ExprPtr then(ExprPtr a, ExprPtr b) {
    static const Sym wild = intern("_");
    return bind(std::move(a), lam(wild, std::move(b)));
  }

  ExprPtr new_empty_then(Sym x, ExprPtr rest) {
    if (!opt_.literal_empty_mvar) return bind(new_empty(), lam(x, std::move(rest)));
    Sym b = fresh("bot");
    auto bottom = letrec({{b, var(b)}}, var(b));
    return bind(new_mvar(bottom), lam(x, then(take(var(x)), std::move(rest))));
  }

  ExprPtr unchan(ExprPtr e) {
    Sym m = fresh("m");
    return case_(std::move(e), {Alt{tag_chan(0), {m}, var(m)}});
  }

  ExprPtr private_send(const pi::Out& o) {
    Sym check = fresh("check");
    auto body = then(put(unchan(var(name(o.chan))), con(tag_pair(), {var(name(o.msg)), var(check)})),
                     then(put(var(check), unit()), run(o.cont)));
    return bind(new_mvar(unit()), lam(check, body));
  }

  ExprPtr private_receive(const pi::In& i) {
    Sym check = fresh("check"), z = fresh("z");
    auto rest = then(take(var(check)), run(i.cont));
    auto split = case_(var(z), {Alt{tag_pair(), {name(i.binder), check}, rest}});
    return bind(take(unchan(var(name(i.chan)))), lam(z, split));
  }

  ExprPtr private_nu(const pi::Nu& n) {
    Sym chan = fresh("chan");
    return new_empty_then(chan, letrec({{name(n.name), con(tag_chan(0), {var(chan)})}}, run(n.body)));
  }

  // One channel operation scrutinizing x; `body` receives the content MVar
  // and the check MVars.
  ExprPtr on_channel(Sym x, const std::function<ExprPtr(Sym, const std::vector<Sym>&)>& body) {
    const unsigned n = t_->n_checks();
    Sym c = fresh("c");
    std::vector<Sym> checks;
    for (unsigned i = 0; i < n; ++i) checks.push_back(fresh("a"));
    std::vector<Sym> vars{c};
    vars.insert(vars.end(), checks.begin(), checks.end());
    return case_(var(x), {Alt{tag_chan(n), vars, body(c, checks)}});
  }

  ExprPtr action(const gstb::Action& a, Sym x, Sym y, ExprPtr rest) {
    return on_channel(x, [&](Sym c, const std::vector<Sym>& checks) -> ExprPtr {
      switch (a.op) {
        case gstb::Op::PutS:
          return then(put(var(c), var(y)), rest);
        case gstb::Op::TakeS:
          return bind(take(var(c)), lam(y, rest));
        case gstb::Op::PutC:
          return then(put(var(checks[a.idx - 1]), unit()), rest);
        default:
          return then(take(var(checks[a.idx - 1])), rest);
      }
    });
  }

  ExprPtr chain(const std::vector<gstb::Action>& seq, Sym x, Sym y, const pi::ProcPtr& cont) {
    ExprPtr e = run(cont);
    for (auto it = seq.rbegin(); it != seq.rend(); ++it) e = action(*it, x, y, e);
    return e;
  }

  ExprPtr induced_send(const pi::Out& o) { return chain(t_->send, name(o.chan), name(o.msg), o.cont); }
  ExprPtr induced_receive(const pi::In& i) { return chain(t_->receive, name(i.chan), name(i.binder), i.cont); }

  ExprPtr induced_nu(const pi::Nu& n) {
    const unsigned k = t_->n_checks();
    Sym cont = fresh("cont");
    std::vector<Sym> checks;
    for (unsigned i = 0; i < k; ++i) checks.push_back(fresh("check"));
    std::vector<ExprPtr> fields{var(cont)};
    for (Sym c : checks) fields.push_back(var(c));
    ExprPtr e = letrec({{name(n.name), con(tag_chan(k), fields)}}, run(n.body));
    for (auto it = checks.rbegin(); it != checks.rend(); ++it) e = new_empty_then(*it, e);
    return new_empty_then(cont, e);
  }

  Options opt_;
  std::optional<gstb::Translation> t_;
  std::uint32_t counter_ = 0;
};

ChState wrap(ExprPtr body, const pi::ProcPtr& p, std::vector<std::string>* warnings) {
  if (warnings)
    for (const auto& n : pi::free_names(*p)) warnings->push_back("free name " + n + " in translated process");
  Sym s = stop_name();
  static const Sym wild = intern("_");
  auto main = bind(new_mvar(unit()), lam(s, bind(fork(std::move(body)), lam(wild, put(var(s), unit())))));
  return initial_state(main);
}

}  // namespace

ExprPtr tau(const pi::ProcPtr& p, const Options& opt) { return Builder(opt, std::nullopt).run(p); }

ExprPtr tau_context(const pi::ProcPtr& context, const Options& opt) { return tau(context, opt); }

ChState tau0(const pi::ProcPtr& p, const Options& opt, std::vector<std::string>* warnings) {
  return wrap(tau(p, opt), p, warnings);
}

ExprPtr induced(const gstb::Translation& t, const pi::ProcPtr& p, const Options& opt) {
  return Builder(opt, t).run(p);
}

ChState induced0(const gstb::Translation& t, const pi::ProcPtr& p, const Options& opt,
                 std::vector<std::string>* warnings) {
  return wrap(induced(t, p, opt), p, warnings);
}

abs::Program to_abstract(const gstb::Translation& t, const pi::Soup& s) {
  abs::Program prog;
  prog.n_checks = t.n_checks();
  for (const auto& th : s.threads)
    for (const auto& pf : th.prefixes)
      if (!pf.output) prog.intern(pf.arg, true);
  for (const auto& th : s.threads) {
    std::vector<abs::Action> seq;
    for (const auto& pf : th.prefixes) {
      auto x = prog.intern(pf.chan);
      auto a = prog.intern(pf.arg, !pf.output);
      auto [send, receive] = gstb::instantiate(t, x, a, a);
      const auto& part = pf.output ? send : receive;
      seq.insert(seq.end(), part.begin(), part.end());
    }
    if (th.tail == pi::Tail::Stop) seq.push_back({abs::Op::Stop});
    prog.threads.push_back(std::move(seq));
  }
  return prog;
}

abs::Program to_abstract(const gstb::Translation& t, const pi::ProcPtr& p) {
  return to_abstract(t, pi::normalize(p));
}

}  // namespace pimvar::translate
