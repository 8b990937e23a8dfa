#include <benchmark/benchmark.h>

#include "subshift/autgroup.hpp"
#include "subshift/io.hpp"
#include "subshift/kernels.hpp"
#include "subshift/language.hpp"
#include "subshift/realize.hpp"

using namespace subshift;

namespace {

Execution mode(const benchmark::State& state) {
  return state.range(0) == 0 ? Execution::serial : Execution::parallel;
}

const Word& thue_morse_prefix() {
  static const Word w = [] {
    Substitution tm(Alphabet::of_size(2), {{0, 1}, {1, 0}});
    return tm.iterate(0, 22);
  }();
  return w;
}

void BM_WindowCount(benchmark::State& state) {
  const Word& w = thue_morse_prefix();
  for (auto _ : state) benchmark::DoNotOptimize(count_packed_windows(w, 40, 1, mode(state)));
  state.SetItemsProcessed(static_cast<std::int64_t>(state.iterations() * w.size()));
}
BENCHMARK(BM_WindowCount)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_WindowProfile(benchmark::State& state) {
  const Word& w = thue_morse_prefix();
  for (auto _ : state) benchmark::DoNotOptimize(packed_window_profile(w, 16, 1, mode(state)));
}
BENCHMARK(BM_WindowProfile)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_RuleSearch(benchmark::State& state) {
  const auto lang = FactorLanguage::from_substitution(load_substitution(SUBSHIFT_FIXTURE_DIR "/tm.json"));
  SearchOptions opts;
  opts.radius = 2;
  opts.execution = mode(state);
  for (auto _ : state) benchmark::DoNotOptimize(search_automorphisms(lang, opts));
}
BENCHMARK(BM_RuleSearch)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

void BM_Realizations(benchmark::State& state) {
  std::vector<FiniteGroup> groups;
  for (const auto& ng : group_catalog())
    if (ng.group.order() <= 8) groups.push_back(ng.group);
  for (auto _ : state) benchmark::DoNotOptimize(verify_realizations(groups, mode(state)));
}
BENCHMARK(BM_Realizations)->Arg(0)->Arg(1)->ArgName("parallel")->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
