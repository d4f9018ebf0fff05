#include <gtest/gtest.h>

#include <algorithm>
#include <map>

#include "pimvar/corpus.hpp"
#include "pimvar/errors.hpp"
#include "pimvar/pi.hpp"

using namespace pimvar;
using pi::ProcPtr;

namespace {

// Reference semantics over raw terms: the top level is kept as a list of
// prefixed components, and each communication is resolved by hand.
class RawOracle {
 public:
  Verdict run(const ProcPtr& p) {
    std::vector<ProcPtr> comps;
    flatten(p, comps);
    return eval(comps);
  }

 private:
  std::map<std::string, Verdict> memo_;

  static void flatten(const ProcPtr& p, std::vector<ProcPtr>& out) {
    if (auto n = std::get_if<pi::Nu>(&p->node)) return flatten(n->body, out);
    if (auto q = std::get_if<pi::Par>(&p->node)) {
      flatten(q->left, out);
      flatten(q->right, out);
      return;
    }
    if (std::holds_alternative<pi::Nil>(p->node)) return;
    out.push_back(p);
  }

  // Binders are pairwise distinct after parsing, so plain replacement of
  // free occurrences cannot capture.
  static ProcPtr rename(const ProcPtr& p, const std::string& from, const std::string& to) {
    auto r = [&](const std::string& n) { return n == from ? to : n; };
    if (auto o = std::get_if<pi::Out>(&p->node)) return pi::out(r(o->chan), r(o->msg), rename(o->cont, from, to));
    if (auto i = std::get_if<pi::In>(&p->node)) {
      if (i->binder == from) return pi::in(r(i->chan), i->binder, i->cont);
      return pi::in(r(i->chan), i->binder, rename(i->cont, from, to));
    }
    if (auto q = std::get_if<pi::Par>(&p->node)) return pi::par(rename(q->left, from, to), rename(q->right, from, to));
    return p;
  }

  Verdict eval(const std::vector<ProcPtr>& comps) {
    for (const auto& c : comps)
      if (std::holds_alternative<pi::Stop>(c->node)) return {true, true};
    std::vector<std::string> printed;
    for (const auto& c : comps) printed.push_back(pi::print(c));
    std::sort(printed.begin(), printed.end());
    std::string key;
    for (const auto& s : printed) key += s + "\n";
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;

    bool any = false, may = false, should = true;
    for (std::size_t i = 0; i < comps.size(); ++i) {
      auto o = std::get_if<pi::Out>(&comps[i]->node);
      if (!o) continue;
      for (std::size_t j = 0; j < comps.size(); ++j) {
        auto in = std::get_if<pi::In>(&comps[j]->node);
        if (i == j || !in || in->chan != o->chan) continue;
        std::vector<ProcPtr> next;
        for (std::size_t k = 0; k < comps.size(); ++k)
          if (k != i && k != j) next.push_back(comps[k]);
        flatten(o->cont, next);
        flatten(rename(in->cont, in->binder, o->msg), next);
        auto v = eval(next);
        any = true;
        may = may || v.may;
        should = should && v.should;
      }
    }
    Verdict v = any ? Verdict{may, should && may} : Verdict{false, false};
    memo_[key] = v;
    return v;
  }
};

std::vector<ProcPtr> sample_corpus() {
  std::vector<ProcPtr> out;
  for (const auto& f : corpus::fixtures()) out.push_back(f.process);
  for (auto spec : {corpus::CorpusSpec{2, 2, 2, true, 4, true}, corpus::CorpusSpec{3, 1, 2, true, 3, true},
                    corpus::CorpusSpec{1, 3, 2, true, 3, true}})
    corpus::generate(spec, [&](const ProcPtr& p) { out.push_back(p); });
  return out;
}

Verdict V(bool may, bool should) { return {may, should}; }

}  // namespace

TEST(PiParse, PrintsCanonicalSurfaceSyntax) {
  EXPECT_EQ(pi::print(pi::parse("new x,y.(x(z).0 | x<y>.stop)")), "new x,y.(x(z) | x<y>.stop)");
  EXPECT_EQ(pi::print(pi::parse("0")), "0");
  EXPECT_EQ(pi::print(pi::parse("!x(y).y<y>")), "!x(y).y<y>");
  EXPECT_EQ(pi::print(pi::parse("a<b> | c<d> | e<f>")), "(a<b> | (c<d> | e<f>))");
}

TEST(PiParse, FreshensBindersThatClash) {
  auto p = pi::parse("x<y>.x(y).stop");
  EXPECT_EQ(pi::print(p), "x<y>.x(y_1).stop");
  EXPECT_EQ(pi::free_names(*p), (std::set<std::string>{"x", "y"}));
}

TEST(PiParse, RejectsMalformedText) {
  for (auto bad : {"x<y", "new .0", "x(y).", "(0 | 0", "x<y>.stop)", "[]", "x y"})
    EXPECT_THROW(pi::parse(bad), ParseError) << bad;
}

TEST(PiParse, ContextHoleOnlyInContexts) {
  auto c = pi::parse_context("new x.(x(y).[] | x<x>)");
  EXPECT_TRUE(pi::contains_hole(*c));
  auto p = pi::plug(c, pi::stop());
  EXPECT_FALSE(pi::contains_hole(*p));
  EXPECT_EQ(pi::verdict(p), V(true, true));
}

TEST(PiParse, RoundTripIsAlphaEqual) {
  for (const auto& p : sample_corpus()) {
    auto q = pi::parse(pi::print(p));
    EXPECT_TRUE(pi::alpha_equal(*p, *q)) << pi::print(p);
  }
}

TEST(PiSyntax, CloseBindsEveryFreeName) {
  auto p = pi::close(pi::parse("x<y>.stop | z(w)"));
  EXPECT_TRUE(pi::free_names(*p).empty());
  EXPECT_EQ(pi::print(p), "new x,y,z.(x<y>.stop | z(w))");
}

TEST(PiSyntax, SubstituteAvoidsCapture) {
  auto p = pi::parse_context("x(y).y<z>");
  auto q = pi::substitute(p, "z", "y");
  // The bound y must be renamed away from the incoming y.
  auto in = std::get_if<pi::In>(&q->node);
  ASSERT_NE(in, nullptr);
  EXPECT_NE(in->binder, "y");
  EXPECT_EQ(pi::free_names(*q), (std::set<std::string>{"x", "y"}));
}

TEST(PiSoup, NormalizeRejectsNonFlatProcesses) {
  EXPECT_THROW(pi::normalize(pi::parse("!x(y)")), FragmentError);
  EXPECT_THROW(pi::normalize(pi::parse("x(y).(y<y> | y<y>)")), FragmentError);
  EXPECT_THROW(pi::normalize(pi::parse("x(y).new z.y<z>")), FragmentError);
  EXPECT_THROW(pi::normalize(pi::parse_context("x(y).[]")), FragmentError);
}

TEST(PiSoup, NormalFormIsIndependentOfThreadOrder) {
  auto a = pi::normalize(pi::parse("new x,y.(x<y>.stop | x(z) | 0)"));
  auto b = pi::normalize(pi::parse("new y,x.(x(z) | new q.x<y>.stop)"));
  EXPECT_EQ(pi::key(a), pi::key(b));
  EXPECT_EQ(a.threads.size(), 2u);
}

TEST(PiReduce, ConvergenceExamples) {
  EXPECT_EQ(pi::verdict(pi::parse("new x,y.(x(z).0 | x<y>.stop)")), V(true, true));
  EXPECT_EQ(pi::verdict(pi::parse("new x,y.(x(z).0 | x<y>.0)")), V(false, false));
  EXPECT_EQ(pi::verdict(pi::parse("new x,y.(x<y>.0 | x(z).stop | x(z).0)")), V(true, false));
  EXPECT_EQ(pi::verdict(pi::parse("0")), V(false, false));
  EXPECT_EQ(pi::verdict(pi::parse("stop")), V(true, true));
}

TEST(PiReduce, TableCounterexampleVerdicts) {
  EXPECT_EQ(pi::verdict(corpus::fixture("send-then-receive").process), V(false, false));
  EXPECT_EQ(pi::verdict(corpus::fixture("send-stop").process), V(true, true));
  EXPECT_EQ(pi::verdict(corpus::fixture("send-receive-idle").process), V(false, false));
  EXPECT_EQ(pi::verdict(corpus::fixture("two-relays").process), V(true, true));
}

TEST(PiReduce, MayConvergingExampleHasTwoSuccessors) {
  auto s = pi::normalize(pi::parse("new x,y.(x<y>.0 | x(z).stop | x(z).0)"));
  EXPECT_EQ(pi::step(s).size(), 2u);
}

TEST(PiReduce, SubstitutesReceivedName) {
  auto s = pi::normalize(pi::parse("new x,y.(x<y>.0 | x(z).z<z>.stop | y(w))"));
  auto next = pi::step(s);
  ASSERT_EQ(next.size(), 1u);
  EXPECT_EQ(pi::verdict(next[0]), V(true, true));
}

TEST(PiReduce, SuccessfulStatesHaveNoSuccessors) {
  auto s = pi::normalize(pi::parse("new x.(stop | x<x> | x(y))"));
  EXPECT_TRUE(pi::is_successful(s));
}

TEST(PiReduce, AgreesWithRawTermOracle) {
  RawOracle oracle;
  for (const auto& p : sample_corpus()) EXPECT_EQ(pi::verdict(p), oracle.run(p)) << pi::print(p);
}

TEST(PiReduce, ShouldImpliesMay) {
  for (const auto& p : sample_corpus()) {
    auto v = pi::verdict(p);
    EXPECT_TRUE(!v.should || v.may) << pi::print(p);
  }
}

TEST(PiReduce, EachStepConsumesTwoPrefixes) {
  for (const auto& p : sample_corpus()) {
    auto s = pi::normalize(p);
    for (const auto& n : pi::step(s)) EXPECT_EQ(pi::prefix_count(n) + 2, pi::prefix_count(s)) << pi::print(p);
  }
}

TEST(PiReduce, TraceEndsInSuccessExactlyWhenMayConverges) {
  for (const auto& p : sample_corpus()) {
    auto s = pi::normalize(p);
    auto t = pi::trace(s);
    ASSERT_FALSE(t.empty());
    EXPECT_EQ(pi::key(t.front()), pi::key(s));
    EXPECT_EQ(pi::is_successful(t.back()), pi::verdict(s).may) << pi::print(p);
    if (!pi::is_successful(t.back())) EXPECT_TRUE(pi::step(t.back()).empty());
  }
}
