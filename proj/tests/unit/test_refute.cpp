#include <gtest/gtest.h>

#include <set>

#include "pimvar/refute.hpp"
#include "pimvar/translate.hpp"

using namespace pimvar;
using gstb::Regime;

namespace {

const refute::PreparedCorpus& default_corpus() {
  static const refute::PreparedCorpus c(corpus::survey_corpus(corpus::default_spec()));
  return c;
}

std::set<std::string> printed(const std::vector<gstb::Translation>& ts) {
  std::set<std::string> out;
  for (const auto& t : ts) out.insert(gstb::print(gstb::canonical(t)));
  return out;
}

Verdict V(char may, char should) { return {may == 'Y', should == 'Y'}; }

}  // namespace

TEST(Refute, SingleCheckTable) {
  struct Row {
    const char* t;
    const char* p;
    Verdict before, after;
  };
  const Row want[] = {
      {"([putC,putS],[takeC,takeS])", "x<y>.x(y).stop", V('N', 'N'), V('Y', 'Y')},
      {"([putC,putS],[takeS,takeC])", "x<y>.x(y).stop", V('N', 'N'), V('Y', 'Y')},
      {"([putS,putC],[takeC,takeS])", "x<y>.x(y).stop", V('N', 'N'), V('Y', 'Y')},
      {"([putS,putC],[takeS,takeC])", "x<y>.x(y).stop", V('N', 'N'), V('Y', 'Y')},
      {"([takeC,putS],[putC,takeS])", "x<y>.x(z).stop | x(w)", V('N', 'N'), V('Y', 'N')},
      {"([takeC,putS],[takeS,putC])", "x<y>.stop | x(y)", V('Y', 'Y'), V('N', 'N')},
      {"([putS,takeC],[putC,takeS])", "x<y>.x(z).stop | x(w)", V('N', 'N'), V('Y', 'N')},
      {"([putS,takeC],[takeS,putC])", "x<z>.z<a>.stop | x<w>.w<a>.stop | x(y).y(u)", V('Y', 'Y'), V('Y', 'N')},
  };
  auto rows = refute::table1();
  ASSERT_EQ(rows.size(), 8u);
  for (std::size_t i = 0; i < 8; ++i) {
    EXPECT_EQ(rows[i].translation, gstb::parse(want[i].t)) << i;
    EXPECT_TRUE(pi::alpha_equal(*rows[i].process, *pi::close(pi::parse(want[i].p)))) << i;
    EXPECT_EQ(rows[i].before, want[i].before) << i;
    EXPECT_EQ(rows[i].after, want[i].after) << i;
  }
  auto csv = refute::table_csv(rows);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "translation,counterexample,may_before,should_before,may_after,should_after");
}

TEST(Refute, TableRowsAreConfirmedInCH) {
  for (const auto& row : refute::table1()) {
    auto v = ch::verdict(translate::induced0(row.translation, row.process));
    EXPECT_EQ(v.may, row.after.may ? ch::Tri::True : ch::Tri::False) << gstb::print(row.translation);
    EXPECT_EQ(v.should, row.after.should ? ch::Tri::True : ch::Tri::False) << gstb::print(row.translation);
  }
}

TEST(Refute, TestTranslationFindsCounterexample) {
  std::vector<pi::ProcPtr> one{corpus::fixture("send-then-receive").process};
  auto ces = refute::test_translation(gstb::parse("([putC,putS],[takeC,takeS])"), one);
  ASSERT_EQ(ces.size(), 1u);
  EXPECT_EQ(ces[0].before, V('N', 'N'));
  EXPECT_EQ(ces[0].after, V('Y', 'Y'));
  EXPECT_TRUE(refute::audit(ces[0]));
  auto bogus = ces[0];
  bogus.after = bogus.before;
  EXPECT_FALSE(refute::audit(bogus));
}

TEST(Refute, EmptyCorpusRefutesNothing) {
  EXPECT_TRUE(refute::test_translation(gstb::named(5), std::vector<pi::ProcPtr>{}).empty());
  refute::PreparedCorpus empty(std::vector<pi::ProcPtr>{});
  auto s = refute::survey({Regime::Kind::Interprocess, 1}, empty, corpus::default_spec());
  EXPECT_EQ(s.total, 8u);
  EXPECT_EQ(s.refuted, 0u);
  EXPECT_EQ(s.survivors.size(), 8u);
}

TEST(Refute, ExhaustiveListsEveryCounterexample) {
  const auto& t = gstb::parse("([putC,putS],[takeC,takeS])");
  auto first = refute::test_translation(t, default_corpus());
  auto all = refute::test_translation(t, default_corpus(), true);
  ASSERT_EQ(first.size(), 1u);
  EXPECT_GT(all.size(), 1u);
  EXPECT_EQ(pi::print(all[0].process), pi::print(first[0].process));
}

TEST(Refute, TableFixturesRefuteAllSingleCheckTranslations) {
  std::vector<pi::ProcPtr> set;
  for (auto name : {"send-then-receive", "send-receive-idle", "send-stop", "two-relays"})
    set.push_back(corpus::fixture(name).process);
  EXPECT_EQ(refute::refuted_count({Regime::Kind::Interprocess, 1}, set), 8u);
}

TEST(Refute, SurveyOneCheck) {
  auto s = refute::survey({Regime::Kind::Interprocess, 1}, default_corpus(), corpus::default_spec());
  EXPECT_EQ(s.total, 8u);
  EXPECT_EQ(s.refuted, 8u);
  EXPECT_TRUE(s.survivors.empty());
  EXPECT_EQ(s.class_counts[classify::Label::NonCommunicating], 4u);
  EXPECT_EQ(s.class_counts[classify::Label::Candidate], 0u);
}

TEST(Refute, SurveyTwoChecksRefutesAll) {
  auto s = refute::survey({Regime::Kind::Interprocess, 2}, default_corpus(), corpus::default_spec());
  EXPECT_EQ(s.total, 72u);
  EXPECT_EQ(s.refuted, 72u);
}

TEST(Refute, MinimalRefutingSetForTwoChecks) {
  Regime r{Regime::Kind::Interprocess, 2};
  auto set = refute::minimal_refuting_set(r, default_corpus());
  EXPECT_LE(set.size(), 2u);
  EXPECT_EQ(refute::refuted_count(r, set), 72u);
}

TEST(Refute, FreeTwoSurvivors) {
  auto s = refute::survey({Regime::Kind::FreeSingleUse, 2}, default_corpus(), corpus::default_spec());
  EXPECT_EQ(s.total, 420u);
  EXPECT_EQ(printed(s.survivors), printed({gstb::named(7), gstb::named(8)}));
}

TEST(Refute, CorrectTranslationsSurviveSeveralCorpora) {
  for (auto spec : {corpus::default_spec(), corpus::CorpusSpec{3, 1, 2, true, 3, true},
                    corpus::CorpusSpec{1, 4, 2, true, 4, true}, corpus::CorpusSpec{2, 3, 3, true, 4, false}}) {
    refute::PreparedCorpus c(corpus::survey_corpus(spec));
    for (int k : {1, 2, 3, 4, 7, 8})
      EXPECT_TRUE(refute::test_translation(gstb::named(k), c).empty()) << k << " " << corpus::to_json(spec);
  }
}

TEST(Refute, OverlappingThreeCheckTranslationIsRefutedByCrossedReceivers) {
  std::vector<pi::ProcPtr> one{corpus::fixture("crossed-receivers").process};
  auto ces = refute::test_translation(gstb::named(5), one);
  ASSERT_EQ(ces.size(), 1u);
  EXPECT_EQ(ces[0].before, V('N', 'N'));
  EXPECT_EQ(ces[0].after, V('Y', 'N'));
  auto v = ch::verdict(translate::induced0(gstb::named(5), ces[0].process));
  EXPECT_EQ(v.may, ch::Tri::True);
  EXPECT_TRUE(refute::test_translation(gstb::named(1), one).empty());
}

TEST(Refute, ParallelSurveyIsDeterministic) {
  Regime r{Regime::Kind::FreeSingleUse, 2};
  refute::SurveyOptions one, two;
  two.jobs = 2;
  auto a = refute::survey(r, default_corpus(), corpus::default_spec(), one);
  auto b = refute::survey(r, default_corpus(), corpus::default_spec(), two);
  auto c = refute::survey(r, default_corpus(), corpus::default_spec(), one);
  EXPECT_EQ(refute::to_json(a, false), refute::to_json(b, false));
  EXPECT_EQ(refute::to_json(a, false), refute::to_json(c, false));
}

TEST(Refute, StatsJsonKeyOrder) {
  auto s = refute::survey({Regime::Kind::Interprocess, 1}, default_corpus(), corpus::default_spec());
  auto j = refute::to_json(s, false);
  auto at = [&](const char* k) { return j.find(std::string("\"") + k + "\""); };
  EXPECT_LT(at("regime"), at("total"));
  EXPECT_LT(at("total"), at("refuted"));
  EXPECT_LT(at("refuted"), at("survivors"));
  EXPECT_LT(at("survivors"), at("classCounts"));
  EXPECT_EQ(at("wallSeconds"), std::string::npos);
  EXPECT_NE(refute::to_json(s, true).find("wallSeconds"), std::string::npos);
  EXPECT_EQ(refute::to_text(s).rfind("regime=interprocess:1 total=8 refuted=8 survivors=0", 0), 0u);
}

TEST(Refute, ExpectationsDetectMismatches) {
  auto s = refute::survey({Regime::Kind::FreeSingleUse, 2}, default_corpus(), corpus::default_spec());
  std::vector<std::string> problems;
  std::string good = R"({"free:2":{"total":420,"survivorCount":2,"survivors":[")" + gstb::print(gstb::named(8)) +
                     R"(",")" + gstb::print(gstb::named(7)) + R"("]}})";
  EXPECT_TRUE(refute::check_expectations(s, good, problems));
  EXPECT_TRUE(problems.empty());
  EXPECT_FALSE(refute::check_expectations(s, R"({"free:2":{"refuted":1}})", problems));
  EXPECT_EQ(problems.size(), 1u);
  problems.clear();
  std::string wrong = R"({"free:2":{"survivorsInclude":[")" + gstb::print(gstb::named(5)) + R"("]}})";
  EXPECT_FALSE(refute::check_expectations(s, wrong, problems));
  problems.clear();
  EXPECT_FALSE(refute::check_expectations(s, R"({"interprocess:3":{"total":1}})", problems));
  EXPECT_NE(problems.back().find("no expectations"), std::string::npos);
}

TEST(Refute, Tau0DifferentialMatchesOnFixtures) {
  std::vector<pi::ProcPtr> ps;
  for (const auto& f : corpus::fixtures()) ps.push_back(f.process);
  auto r = refute::differential_tau0(ps);
  EXPECT_EQ(r.rows.size(), ps.size());
  EXPECT_EQ(r.matches, ps.size());
  EXPECT_EQ(r.mismatches, 0u);
  EXPECT_EQ(r.inconclusive, 0u);
}

TEST(Refute, DifferentialFlagsBrokenEncoding) {
  std::vector<pi::ProcPtr> ps{corpus::fixture("send-then-receive").process};
  auto r = refute::differential(ps, [](const pi::ProcPtr& p) {
    return translate::induced0(gstb::parse("([putC,putS],[takeC,takeS])"), p);
  });
  EXPECT_EQ(r.mismatches, 1u);
  EXPECT_EQ(r.rows[0].status, refute::Status::Mismatch);
  ch::VerdictOptions tiny;
  tiny.depth_bound = 1;
  tiny.scheduler = ch::Scheduler::Micro;
  auto u = refute::differential_tau0(ps, tiny);
  EXPECT_EQ(u.inconclusive, 1u);
}

TEST(Refute, SlowRegimes) {
  EXPECT_FALSE(refute::is_slow({Regime::Kind::Interprocess, 3}));
  EXPECT_TRUE(refute::is_slow({Regime::Kind::Interprocess, 4}));
  EXPECT_TRUE(refute::is_slow({Regime::Kind::FreeSingleUse, 3}));
  EXPECT_FALSE(refute::is_slow({Regime::Kind::SingleMVarMultiUse, 4}));
  EXPECT_TRUE(refute::is_slow({Regime::Kind::SingleMVarMultiUse, 5}));
}
