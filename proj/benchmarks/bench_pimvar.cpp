#include <benchmark/benchmark.h>

#include "pimvar/classify.hpp"
#include "pimvar/corpus.hpp"
#include "pimvar/refute.hpp"
#include "pimvar/translate.hpp"

using namespace pimvar;

namespace {

const std::vector<pi::ProcPtr>& corpus_procs() {
  static const auto ps = corpus::generate(corpus::default_spec());
  return ps;
}

void BM_CorpusGenerate(benchmark::State& state) {
  for (auto _ : state) benchmark::DoNotOptimize(corpus::count(corpus::default_spec()));
}
BENCHMARK(BM_CorpusGenerate)->Unit(benchmark::kMillisecond);

void BM_PiVerdictCorpus(benchmark::State& state) {
  for (auto _ : state)
    for (const auto& p : corpus_procs()) benchmark::DoNotOptimize(pi::verdict(p));
}
BENCHMARK(BM_PiVerdictCorpus)->Unit(benchmark::kMillisecond);

void BM_AbstractVerdictCorpus(benchmark::State& state) {
  const auto& t = gstb::named(1);
  std::vector<pi::Soup> soups;
  for (const auto& p : corpus_procs()) soups.push_back(pi::normalize(p));
  for (auto _ : state)
    for (const auto& s : soups) benchmark::DoNotOptimize(refute::after(t, s));
}
BENCHMARK(BM_AbstractVerdictCorpus)->Unit(benchmark::kMillisecond);

void BM_ChVerdictFixture(benchmark::State& state) {
  auto s = translate::tau0(corpus::fixture("two-relays").process);
  const bool macro = state.range(0) != 0;
  ch::VerdictOptions opt;
  opt.scheduler = macro ? ch::Scheduler::Macro : ch::Scheduler::Micro;
  for (auto _ : state) benchmark::DoNotOptimize(ch::verdict(s, opt));
  state.SetLabel(macro ? "macro" : "micro");
}
BENCHMARK(BM_ChVerdictFixture)->Arg(0)->Arg(1)->Unit(benchmark::kMillisecond);

void BM_EnumerateInterprocess(benchmark::State& state) {
  gstb::Regime r{gstb::Regime::Kind::Interprocess, static_cast<unsigned>(state.range(0))};
  for (auto _ : state) benchmark::DoNotOptimize(gstb::count(r));
}
BENCHMARK(BM_EnumerateInterprocess)->DenseRange(1, 3)->Unit(benchmark::kMicrosecond);

void BM_ClassifyInterprocess2(benchmark::State& state) {
  auto ts = gstb::enumerate({gstb::Regime::Kind::Interprocess, 2});
  for (auto _ : state)
    for (const auto& t : ts) benchmark::DoNotOptimize(classify::classify(t));
}
BENCHMARK(BM_ClassifyInterprocess2)->Unit(benchmark::kMillisecond);

void BM_SurveyInterprocess2(benchmark::State& state) {
  refute::PreparedCorpus c(corpus::survey_corpus(corpus::default_spec()));
  refute::SurveyOptions opt;
  opt.classify = false;
  for (auto _ : state)
    benchmark::DoNotOptimize(refute::survey({gstb::Regime::Kind::Interprocess, 2}, c, corpus::default_spec(), opt));
}
BENCHMARK(BM_SurveyInterprocess2)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
