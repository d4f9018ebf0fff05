#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "pimvar/errors.hpp"
#include "pimvar/gstb.hpp"

using namespace pimvar;
using gstb::Op;

namespace {

// Brute force: distribute a multiset of check actions over the two sides in
// every way, order each side in every way, and count classes under all
// permutations of check indices.
struct Orbits {
  std::set<std::string> classes;
  unsigned labels;

  static std::string encode(const std::vector<gstb::Action>& s, const std::vector<gstb::Action>& r,
                            const std::vector<unsigned>& perm) {
    std::string out;
    for (const auto* side : {&s, &r}) {
      for (const auto& a : *side) {
        out += static_cast<char>('a' + static_cast<int>(a.op));
        out += a.idx ? static_cast<char>('0' + perm[a.idx - 1]) : '-';
      }
      out += '|';
    }
    return out;
  }

  void add(std::vector<gstb::Action> s, std::vector<gstb::Action> r) {
    std::vector<unsigned> perm(labels);
    std::iota(perm.begin(), perm.end(), 1u);
    std::string best;
    do {
      auto e = encode(s, r, perm);
      if (best.empty() || e < best) best = e;
    } while (std::next_permutation(perm.begin(), perm.end()));
    classes.insert(best);
  }
};

// `checks` lists check actions; `ok` filters a complete placement.
std::size_t brute_force(unsigned labels, const std::vector<gstb::Action>& checks,
                        bool (*ok)(const std::vector<gstb::Action>&, const std::vector<gstb::Action>&)) {
  Orbits orbits{{}, labels};
  const std::size_t m = checks.size();
  for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
    std::vector<gstb::Action> s{{Op::PutS, 0}}, r{{Op::TakeS, 0}};
    for (std::size_t i = 0; i < m; ++i) (mask >> i & 1 ? s : r).push_back(checks[i]);
    std::sort(s.begin(), s.end());
    std::sort(r.begin(), r.end());
    std::set<std::vector<gstb::Action>> ss, rs;
    do ss.insert(s);
    while (std::next_permutation(s.begin(), s.end()));
    do rs.insert(r);
    while (std::next_permutation(r.begin(), r.end()));
    for (const auto& a : ss)
      for (const auto& b : rs)
        if (ok(a, b)) orbits.add(a, b);
  }
  return orbits.classes.size();
}

std::vector<gstb::Action> single_use(unsigned n) {
  std::vector<gstb::Action> v;
  for (unsigned i = 1; i <= n; ++i) {
    v.push_back({Op::PutC, i});
    v.push_back({Op::TakeC, i});
  }
  return v;
}

bool any_placement(const std::vector<gstb::Action>&, const std::vector<gstb::Action>&) { return true; }

bool same_side(const std::vector<gstb::Action>& side) {
  for (const auto& a : side)
    for (const auto& b : side)
      if (a.idx && a.idx == b.idx && a.op != b.op) return true;
  return false;
}

bool split_pairs(const std::vector<gstb::Action>& s, const std::vector<gstb::Action>& r) {
  return !same_side(s) && !same_side(r);
}

}  // namespace

TEST(GstbParse, RoundTrip) {
  auto t = gstb::parse("([takeC1,putS],[putC1,takeS])");
  EXPECT_EQ(t.send.size(), 2u);
  EXPECT_EQ(gstb::print(t), "([takeC,putS],[putC,takeS])");
  EXPECT_EQ(gstb::parse("([takeC,putS],[putC,takeS])"), t);
  auto u = gstb::parse("([putC1,putS,takeC2,takeC1],[putC3,takeS,putC2,takeC3])");
  EXPECT_EQ(gstb::print(u), "([putC1,putS,takeC2,takeC1],[putC3,takeS,putC2,takeC3])");
  EXPECT_EQ(u.n_checks(), 3u);
}

TEST(GstbParse, RejectsBadText) {
  for (auto bad : {"", "([putS],[takeS]", "([putX],[takeS])", "[putS],[takeS]", "([putS] [takeS])"})
    EXPECT_THROW(gstb::parse(bad), ParseError) << bad;
}

TEST(GstbParse, Regimes) {
  EXPECT_EQ(gstb::parse_regime("interprocess:3"), (gstb::Regime{gstb::Regime::Kind::Interprocess, 3}));
  EXPECT_EQ(gstb::to_string(gstb::parse_regime("free:2")), "free:2");
  EXPECT_EQ(gstb::to_string(gstb::parse_regime("multi:6")), "multi:6");
  for (auto bad : {"interprocess", "free:x", "other:2", "free:0"})
    EXPECT_THROW(gstb::parse_regime(bad), std::invalid_argument) << bad;
}

TEST(GstbValid, DefinitionalConstraints) {
  EXPECT_TRUE(gstb::is_valid(gstb::parse("([putC,putS],[takeC,takeS])")));
  // putS twice, takeS on the sender side, unmatched put.
  EXPECT_FALSE(gstb::is_valid(gstb::parse("([putS,putS],[takeS])")));
  EXPECT_FALSE(gstb::is_valid(gstb::parse("([putS,takeS],[takeS])")));
  EXPECT_FALSE(gstb::is_valid(gstb::parse("([putC1,putS],[takeS])")));
  EXPECT_TRUE(gstb::validate(gstb::named(1), {gstb::Regime::Kind::Interprocess, 3}));
  EXPECT_FALSE(gstb::validate(gstb::named(7), {gstb::Regime::Kind::Interprocess, 2}));
  EXPECT_TRUE(gstb::validate(gstb::named(7), {gstb::Regime::Kind::FreeSingleUse, 2}));
}

TEST(GstbEnumerate, InterprocessCountsMatchFormula) {
  for (unsigned n = 1; n <= 3; ++n)
    EXPECT_EQ(gstb::count({gstb::Regime::Kind::Interprocess, n}), gstb::interprocess_formula(n));
  EXPECT_EQ(gstb::interprocess_formula(1), 8u);
  EXPECT_EQ(gstb::interprocess_formula(2), 72u);
  EXPECT_EQ(gstb::interprocess_formula(3), 768u);
  EXPECT_EQ(gstb::interprocess_formula(4), 9600u);
}

TEST(GstbEnumerate, MatchesBruteForceOrbitCount) {
  for (unsigned n = 1; n <= 2; ++n) {
    EXPECT_EQ(gstb::count({gstb::Regime::Kind::Interprocess, n}), brute_force(n, single_use(n), split_pairs));
    EXPECT_EQ(gstb::count({gstb::Regime::Kind::FreeSingleUse, n}), brute_force(n, single_use(n), any_placement));
  }
  for (unsigned u = 1; u <= 3; ++u) {
    std::vector<gstb::Action> checks;
    for (unsigned k = 0; k < u; ++k) {
      checks.push_back({Op::PutC, 1});
      checks.push_back({Op::TakeC, 1});
    }
    EXPECT_EQ(gstb::count({gstb::Regime::Kind::SingleMVarMultiUse, u}), brute_force(1, checks, any_placement));
  }
}

TEST(GstbEnumerate, KnownCounts) {
  EXPECT_EQ(gstb::count({gstb::Regime::Kind::FreeSingleUse, 1}), 20u);
  EXPECT_EQ(gstb::count({gstb::Regime::Kind::FreeSingleUse, 2}), 420u);
  EXPECT_EQ(gstb::count({gstb::Regime::Kind::FreeSingleUse, 3}), 10080u);
}

TEST(GstbEnumerate, OutputIsCanonicalValidAndDistinct) {
  for (auto r : {gstb::Regime{gstb::Regime::Kind::Interprocess, 3}, gstb::Regime{gstb::Regime::Kind::FreeSingleUse, 2},
                 gstb::Regime{gstb::Regime::Kind::SingleMVarMultiUse, 3}}) {
    std::set<gstb::Translation> seen;
    for (const auto& t : gstb::enumerate(r)) {
      EXPECT_TRUE(gstb::validate(t, r)) << gstb::print(t);
      EXPECT_EQ(gstb::canonical(t), t);
      EXPECT_TRUE(seen.insert(t).second) << gstb::print(t);
    }
  }
}

TEST(GstbEnumerate, SingleCheckOrder) {
  std::vector<std::string> got;
  for (const auto& t : gstb::enumerate({gstb::Regime::Kind::Interprocess, 1})) got.push_back(gstb::print(t));
  std::vector<std::string> want = {
      "([putC,putS],[takeC,takeS])", "([putC,putS],[takeS,takeC])", "([takeC,putS],[putC,takeS])",
      "([takeC,putS],[takeS,putC])", "([putS,putC],[takeC,takeS])", "([putS,putC],[takeS,takeC])",
      "([putS,takeC],[putC,takeS])", "([putS,takeC],[takeS,putC])"};
  EXPECT_EQ(got, want);
}

TEST(GstbEnumerate, NamedSurvivorsBelongToTheirRegimes) {
  auto ip3 = gstb::enumerate({gstb::Regime::Kind::Interprocess, 3});
  for (int k = 1; k <= 6; ++k)
    EXPECT_NE(std::find(ip3.begin(), ip3.end(), gstb::canonical(gstb::named(k))), ip3.end()) << k;
  auto f2 = gstb::enumerate({gstb::Regime::Kind::FreeSingleUse, 2});
  for (int k = 7; k <= 8; ++k)
    EXPECT_NE(std::find(f2.begin(), f2.end(), gstb::canonical(gstb::named(k))), f2.end()) << k;
}

TEST(GstbCanonical, InvariantUnderIndexRenaming) {
  auto a = gstb::parse("([putC2,putS,takeC1,takeC2],[takeS,putC1])");
  auto b = gstb::parse("([putC1,putS,takeC2,takeC1],[takeS,putC2])");
  EXPECT_EQ(gstb::canonical(a), gstb::canonical(b));
  EXPECT_EQ(gstb::canonical(a), b);
}

TEST(GstbInstantiate, ProducesAbstractActions) {
  auto [s, r] = gstb::instantiate(gstb::parse("([takeC1,putS],[putC1,takeS])"), 0, 1, 2);
  ASSERT_EQ(s.size(), 2u);
  ASSERT_EQ(r.size(), 2u);
  EXPECT_EQ(s[0].op, abs::Op::TakeC);
  EXPECT_EQ(s[0].idx, 1);
  EXPECT_EQ(s[1].op, abs::Op::PutS);
  EXPECT_EQ(s[1].arg, 1);
  EXPECT_EQ(r[1].op, abs::Op::TakeS);
  EXPECT_EQ(r[1].arg, 2);
}
