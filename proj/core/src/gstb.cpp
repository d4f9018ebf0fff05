#include "pimvar/gstb.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <map>
#include <stdexcept>

#include "pimvar/errors.hpp"

namespace pimvar::gstb {

namespace {

bool is_check(const Action& a) { return a.op == Op::PutC || a.op == Op::TakeC; }

struct Usage {
  unsigned put_send = 0, take_send = 0, put_recv = 0, take_recv = 0;
  unsigned puts() const { return put_send + put_recv; }
  unsigned takes() const { return take_send + take_recv; }
};

std::map<unsigned, Usage> usage(const Translation& t) {
  std::map<unsigned, Usage> u;
  for (const auto& a : t.send) {
    if (a.op == Op::PutC) ++u[a.idx].put_send;
    if (a.op == Op::TakeC) ++u[a.idx].take_send;
  }
  for (const auto& a : t.receive) {
    if (a.op == Op::PutC) ++u[a.idx].put_recv;
    if (a.op == Op::TakeC) ++u[a.idx].take_recv;
  }
  return u;
}

class Generator {
 public:
  Generator(const Regime& r, const std::function<void(const Translation&)>& visit) : r_(r), visit_(visit) {
    const bool multi = r.kind == Regime::Kind::SingleMVarMultiUse;
    labels_ = multi ? 1 : r.n;
    const unsigned uses = multi ? r.n : 1;
    for (unsigned l = 0; l < labels_; ++l) left_[l] = {uses, uses};
  }

  void run() {
    if (labels_ == 0 || labels_ > kMaxLabels || r_.n == 0) return;
    send_phase();
  }

 private:
  static constexpr unsigned kMaxLabels = 8;

  bool allowed(const std::vector<Action>& seq, unsigned label, Op op) const {
    if (r_.kind != Regime::Kind::Interprocess) return true;
    Op other = op == Op::PutC ? Op::TakeC : Op::PutC;
    return std::none_of(seq.begin(), seq.end(), [&](const Action& a) { return a.op == other && a.idx == label + 1; });
  }

  // Tries every check action that may come next in `seq`, then `tail`.
  template <class Next>
  void place_checks(std::vector<Action>& seq, Next next) {
    const unsigned limit = std::min(introduced_ + 1, labels_);
    for (unsigned l = 0; l < limit; ++l) {
      for (int k = 0; k < 2; ++k) {
        if (left_[l][k] == 0) continue;
        const Op op = k == 0 ? Op::PutC : Op::TakeC;
        if (!allowed(seq, l, op)) continue;
        const bool intro = l == introduced_;
        --left_[l][k];
        introduced_ += intro;
        seq.push_back({op, l + 1});
        next();
        seq.pop_back();
        introduced_ -= intro;
        ++left_[l][k];
      }
    }
  }

  void send_phase() {
    if (put_s_) receive_phase();
    place_checks(t_.send, [&] { send_phase(); });
    if (!put_s_) {
      put_s_ = true;
      t_.send.push_back({Op::PutS, 0});
      send_phase();
      t_.send.pop_back();
      put_s_ = false;
    }
  }

  void receive_phase() {
    bool done = take_s_;
    for (unsigned l = 0; l < labels_ && done; ++l) done = left_[l][0] == 0 && left_[l][1] == 0;
    if (done) {
      visit_(t_);
      return;
    }
    place_checks(t_.receive, [&] { receive_phase(); });
    if (!take_s_) {
      take_s_ = true;
      t_.receive.push_back({Op::TakeS, 0});
      receive_phase();
      t_.receive.pop_back();
      take_s_ = false;
    }
  }

  Regime r_;
  const std::function<void(const Translation&)>& visit_;
  unsigned labels_ = 0;
  unsigned introduced_ = 0;
  std::array<std::array<unsigned, 2>, kMaxLabels> left_{};
  bool put_s_ = false, take_s_ = false;
  Translation t_;
};

class TextParser {
 public:
  explicit TextParser(std::string_view s) : s_(s) {}

  Translation run() {
    Translation t;
    expect('(');
    t.send = seq();
    expect(',');
    t.receive = seq();
    expect(')');
    skip();
    if (i_ != s_.size()) fail("trailing input");
    return t;
  }

 private:
  std::vector<Action> seq() {
    std::vector<Action> out;
    expect('[');
    skip();
    if (peek() == ']') {
      ++i_;
      return out;
    }
    do out.push_back(action());
    while (accept(','));
    expect(']');
    return out;
  }

  Action action() {
    skip();
    std::size_t b = i_;
    while (i_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[i_]))) ++i_;
    auto word = s_.substr(b, i_ - b);
    Op op;
    if (word == "putS")
      op = Op::PutS;
    else if (word == "takeS")
      op = Op::TakeS;
    else if (word == "putC")
      op = Op::PutC;
    else if (word == "takeC")
      op = Op::TakeC;
    else {
      i_ = b;
      fail("unknown action");
    }
    if (op == Op::PutS || op == Op::TakeS) return {op, 0};
    if (peek() == '^') ++i_;
    unsigned idx = 1;
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      auto [p, ec] = std::from_chars(s_.data() + i_, s_.data() + s_.size(), idx);
      i_ = static_cast<std::size_t>(p - s_.data());
      if (ec != std::errc() || idx == 0) fail("bad check index");
    }
    return {op, idx};
  }

  char peek() const { return i_ < s_.size() ? s_[i_] : '\0'; }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  bool accept(char c) {
    skip();
    if (peek() != c) return false;
    ++i_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }
  [[noreturn]] void fail(const std::string& m) { throw ParseError("translation: " + m, i_); }

  std::string_view s_;
  std::size_t i_ = 0;
};

}  // namespace

unsigned Translation::n_checks() const {
  unsigned n = 0;
  for (const auto* seq : {&send, &receive})
    for (const auto& a : *seq) n = std::max(n, a.idx);
  return n;
}

Regime parse_regime(std::string_view text) {
  auto colon = text.find(':');
  if (colon == std::string_view::npos) throw std::invalid_argument("regime needs the form kind:n");
  auto kind = text.substr(0, colon);
  unsigned n = 0;
  auto num = text.substr(colon + 1);
  auto [p, ec] = std::from_chars(num.data(), num.data() + num.size(), n);
  if (ec != std::errc() || p != num.data() + num.size() || n == 0)
    throw std::invalid_argument("bad regime size: " + std::string(num));
  if (kind == "interprocess") return {Regime::Kind::Interprocess, n};
  if (kind == "free") return {Regime::Kind::FreeSingleUse, n};
  if (kind == "multi") return {Regime::Kind::SingleMVarMultiUse, n};
  throw std::invalid_argument("unknown regime kind: " + std::string(kind));
}

std::string to_string(const Regime& r) {
  switch (r.kind) {
    case Regime::Kind::Interprocess:
      return "interprocess:" + std::to_string(r.n);
    case Regime::Kind::FreeSingleUse:
      return "free:" + std::to_string(r.n);
    default:
      return "multi:" + std::to_string(r.n);
  }
}

Translation parse(std::string_view text) { return TextParser(text).run(); }

std::string print(const Translation& t) {
  const bool indexed = t.n_checks() > 1;
  auto seq = [&](const std::vector<Action>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (i) s += ',';
      switch (v[i].op) {
        case Op::PutS:
          s += "putS";
          break;
        case Op::TakeS:
          s += "takeS";
          break;
        case Op::PutC:
          s += "putC";
          break;
        case Op::TakeC:
          s += "takeC";
          break;
      }
      if (is_check(v[i]) && indexed) s += std::to_string(v[i].idx);
    }
    return s + "]";
  };
  return "(" + seq(t.send) + "," + seq(t.receive) + ")";
}

bool is_valid(const Translation& t) {
  auto cnt = [](const std::vector<Action>& v, Op op) {
    return std::count_if(v.begin(), v.end(), [&](const Action& a) { return a.op == op; });
  };
  if (cnt(t.send, Op::PutS) != 1 || cnt(t.send, Op::TakeS) != 0) return false;
  if (cnt(t.receive, Op::TakeS) != 1 || cnt(t.receive, Op::PutS) != 0) return false;
  for (const auto* seq : {&t.send, &t.receive})
    for (const auto& a : *seq)
      if (is_check(a) != (a.idx != 0)) return false;
  auto u = usage(t);
  const unsigned n = t.n_checks();
  if (u.size() != n) return false;
  for (const auto& [i, use] : u)
    if (use.puts() > 0 && use.takes() == 0) return false;
  unsigned last = 0;
  std::vector<bool> seen(n + 1, false);
  for (const auto& a : t.send) {
    if (!is_check(a) || seen[a.idx]) continue;
    if (a.idx < last) return false;
    seen[a.idx] = true;
    last = a.idx;
  }
  return true;
}

bool validate(const Translation& t, const Regime& r) {
  if (!is_valid(t)) return false;
  auto u = usage(t);
  switch (r.kind) {
    case Regime::Kind::Interprocess:
      if (t.n_checks() != r.n) return false;
      return std::all_of(u.begin(), u.end(), [](const auto& kv) {
        const auto& x = kv.second;
        return x.puts() == 1 && x.takes() == 1 && x.put_send != x.take_send;
      });
    case Regime::Kind::FreeSingleUse:
      if (t.n_checks() != r.n) return false;
      return std::all_of(u.begin(), u.end(),
                         [](const auto& kv) { return kv.second.puts() == 1 && kv.second.takes() == 1; });
    case Regime::Kind::SingleMVarMultiUse:
      return t.n_checks() == 1 && u[1].puts() == r.n && u[1].takes() == r.n;
  }
  return false;
}

Translation canonical(const Translation& t) {
  std::map<unsigned, unsigned> relabel;
  for (const auto* seq : {&t.send, &t.receive})
    for (const auto& a : *seq)
      if (is_check(a)) relabel.try_emplace(a.idx, static_cast<unsigned>(relabel.size()) + 1);
  Translation c = t;
  for (auto* seq : {&c.send, &c.receive})
    for (auto& a : *seq)
      if (is_check(a)) a.idx = relabel.at(a.idx);
  return c;
}

void enumerate(const Regime& r, const std::function<void(const Translation&)>& visit) {
  Generator(r, visit).run();
}

std::vector<Translation> enumerate(const Regime& r) {
  std::vector<Translation> out;
  enumerate(r, [&](const Translation& t) { out.push_back(t); });
  return out;
}

std::uint64_t count(const Regime& r) {
  std::uint64_t n = 0;
  enumerate(r, [&](const Translation&) { ++n; });
  return n;
}

std::uint64_t interprocess_formula(unsigned n) {
  std::uint64_t f = 1;
  for (unsigned k = 2; k <= n; ++k) f *= k;
  return f * (std::uint64_t{1} << n) * (n + 1) * (n + 1);
}

std::pair<std::vector<abs::Action>, std::vector<abs::Action>> instantiate(const Translation& t, abs::NameId x,
                                                                          abs::NameId msg, abs::NameId binder) {
  auto conv = [&](const Action& a) {
    switch (a.op) {
      case Op::PutS:
        return abs::Action{abs::Op::PutS, x, msg, 0};
      case Op::TakeS:
        return abs::Action{abs::Op::TakeS, x, binder, 0};
      case Op::PutC:
        return abs::Action{abs::Op::PutC, x, abs::kNone, static_cast<std::uint8_t>(a.idx)};
      default:
        return abs::Action{abs::Op::TakeC, x, abs::kNone, static_cast<std::uint8_t>(a.idx)};
    }
  };
  std::pair<std::vector<abs::Action>, std::vector<abs::Action>> out;
  for (const auto& a : t.send) out.first.push_back(conv(a));
  for (const auto& a : t.receive) out.second.push_back(conv(a));
  return out;
}

const Translation& named(int k) {
  static const std::vector<Translation> all = [] {
    std::vector<Translation> v;
    for (const char* s : {
             "([putS,putC1,takeC2,putC3],[takeC1,putC2,takeC3,takeS])",
             "([takeC1,putS,takeC2,takeC3],[putC3,putC1,takeS,putC2])",
             "([putC1,putS,takeC2,putC3],[takeS,putC2,takeC3,takeC1])",
             "([putC1,putC2,takeC3,putS],[takeC2,putC3,takeS,takeC1])",
             "([takeC1,putS,takeC2,takeC3],[putC1,putC2,takeS,putC3])",
             "([putC1,takeC2,putS,takeC3],[takeC1,putC2,takeS,putC3])",
             "([putC1,putS,takeC2,takeC1],[takeS,putC2])",
             "([takeC1,putS],[putC2,putC1,takeS,takeC2])",
         })
      v.push_back(parse(s));
    return v;
  }();
  if (k < 1 || k > static_cast<int>(all.size())) throw std::out_of_range("named translation index");
  return all[static_cast<std::size_t>(k - 1)];
}

const Translation& free3_example() {
  static const Translation t = parse("([putC1,putS,takeC2,takeC1],[putC3,takeS,putC2,takeC3])");
  return t;
}

}  // namespace pimvar::gstb
