#include <gtest/gtest.h>

#include <map>

#include "pimvar/classify.hpp"
#include "pimvar/gstb.hpp"

using namespace pimvar;
using classify::DeadlockPolicy;
using classify::Label;

namespace {

// Path-enumerating oracle straight over gstb actions: one content MVar and a
// bitmask of check MVars, every maximal interleaving visited explicitly.
struct PathOracle {
  std::vector<const std::vector<gstb::Action>*> seqs;
  DeadlockPolicy policy;
  bool violated = false;
  bool completed = false;

  bool enabled(const gstb::Action& a, bool content, unsigned checks) const {
    switch (a.op) {
      case gstb::Op::PutS:
        return !content;
      case gstb::Op::TakeS:
        return content;
      case gstb::Op::PutC:
        return !(checks >> a.idx & 1);
      default:
        return checks >> a.idx & 1;
    }
  }

  static bool splits(const std::vector<int>& run) {
    const unsigned pairs[4] = {0b0011, 0b1100, 0b1001, 0b0110};
    for (unsigned pre : pairs) {
      std::size_t k = 0;
      while (k < run.size() && (pre >> run[k] & 1)) ++k;
      while (k < run.size() && !(pre >> run[k] & 1)) ++k;
      if (k == run.size()) return true;
    }
    return false;
  }

  void walk(std::vector<std::size_t>& pos, bool content, unsigned checks, std::vector<int>& run) {
    bool moved = false;
    for (std::size_t t = 0; t < seqs.size() && !violated; ++t) {
      if (pos[t] >= seqs[t]->size()) continue;
      const auto& a = (*seqs[t])[pos[t]];
      if (!enabled(a, content, checks)) continue;
      moved = true;
      bool c = content;
      unsigned k = checks;
      if (a.op == gstb::Op::PutS || a.op == gstb::Op::TakeS) c = !c;
      else k ^= 1u << a.idx;
      ++pos[t];
      run.push_back(static_cast<int>(t));
      walk(pos, c, k, run);
      run.pop_back();
      --pos[t];
    }
    if (moved) return;
    bool done = true;
    for (std::size_t t = 0; t < seqs.size(); ++t) done = done && pos[t] == seqs[t]->size();
    completed = completed || done;
    if (seqs.size() == 4 && ((!done && policy == DeadlockPolicy::Violation) || !splits(run))) violated = true;
  }

  static bool executable(const gstb::Translation& t) {
    PathOracle o{{&t.send, &t.receive}, DeadlockPolicy::Violation};
    std::vector<std::size_t> pos(2, 0);
    std::vector<int> run;
    o.walk(pos, false, 0, run);
    return o.completed;
  }

  static bool overlap_free(const gstb::Translation& t, DeadlockPolicy p) {
    PathOracle o{{&t.send, &t.receive, &t.send, &t.receive}, p};
    std::vector<std::size_t> pos(4, 0);
    std::vector<int> run;
    o.walk(pos, false, 0, run);
    return !o.violated;
  }
};

std::map<Label, unsigned> partition(const gstb::Regime& r, DeadlockPolicy p = DeadlockPolicy::Violation) {
  std::map<Label, unsigned> m;
  for (auto l : {Label::NonCommunicating, Label::NonExecutable, Label::Overlapping, Label::Candidate}) m[l] = 0;
  for (const auto& t : gstb::enumerate(r)) ++m[classify::classify(t, p)];
  return m;
}

}  // namespace

TEST(Overlap, PartitionOneCheck) {
  auto m = partition({gstb::Regime::Kind::Interprocess, 1});
  EXPECT_EQ(m[Label::NonCommunicating], 4u);
  EXPECT_EQ(m[Label::NonExecutable], 1u);
  EXPECT_EQ(m[Label::Overlapping], 3u);
  EXPECT_EQ(m[Label::Candidate], 0u);
}

TEST(Overlap, PartitionTwoChecks) {
  auto m = partition({gstb::Regime::Kind::Interprocess, 2});
  EXPECT_EQ(m[Label::NonCommunicating], 18u);
  EXPECT_EQ(m[Label::NonExecutable], 21u);
  EXPECT_EQ(m[Label::Overlapping], 33u);
  EXPECT_EQ(m[Label::Candidate], 0u);
}

TEST(Overlap, PartitionThreeChecks) {
  auto m = partition({gstb::Regime::Kind::Interprocess, 3});
  EXPECT_EQ(m[Label::NonCommunicating], 96u);
  EXPECT_EQ(m[Label::NonExecutable], 350u);
  EXPECT_EQ(m[Label::Overlapping], 318u);
  EXPECT_EQ(m[Label::Candidate], 4u);
}

TEST(Overlap, NamedTranslations) {
  for (int k : {1, 2, 3, 4, 7, 8}) EXPECT_EQ(classify::classify(gstb::named(k)), Label::Candidate) << k;
  for (int k : {5, 6}) EXPECT_EQ(classify::classify(gstb::named(k)), Label::Overlapping) << k;
}

TEST(Overlap, PoliciesAgreeOnEnumeratedSpaces) {
  for (auto r : {gstb::Regime{gstb::Regime::Kind::Interprocess, 2}, gstb::Regime{gstb::Regime::Kind::Interprocess, 3},
                 gstb::Regime{gstb::Regime::Kind::FreeSingleUse, 2}})
    EXPECT_EQ(partition(r, DeadlockPolicy::Violation), partition(r, DeadlockPolicy::Split)) << gstb::to_string(r);
}

TEST(Overlap, AgreesWithPathOracle) {
  for (auto r : {gstb::Regime{gstb::Regime::Kind::Interprocess, 1}, gstb::Regime{gstb::Regime::Kind::Interprocess, 2},
                 gstb::Regime{gstb::Regime::Kind::FreeSingleUse, 1}, gstb::Regime{gstb::Regime::Kind::SingleMVarMultiUse, 2}})
    for (const auto& t : gstb::enumerate(r)) {
      EXPECT_EQ(classify::is_executable(t), PathOracle::executable(t)) << gstb::print(t);
      for (auto p : {DeadlockPolicy::Violation, DeadlockPolicy::Split})
        EXPECT_EQ(classify::is_overlap_free(t, p), PathOracle::overlap_free(t, p)) << gstb::print(t);
    }
}

TEST(Overlap, ClassificationOrder) {
  auto t = gstb::parse("([putC,putS],[takeS,takeC])");
  EXPECT_EQ(classify::classify(t), Label::NonCommunicating);
  EXPECT_TRUE(classify::is_executable(t));
  EXPECT_FALSE(classify::is_communicating(gstb::parse("([putS],[takeS])")));
}

TEST(Overlap, PolicyNames) {
  EXPECT_EQ(classify::parse_policy("split"), DeadlockPolicy::Split);
  EXPECT_EQ(classify::to_string(DeadlockPolicy::Violation), "violation");
  EXPECT_THROW(classify::parse_policy("other"), std::invalid_argument);
}
