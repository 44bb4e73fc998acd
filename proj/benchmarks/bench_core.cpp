#include <random>

#include <benchmark/benchmark.h>

#include "repwitness/homology.hpp"
#include "repwitness/solver.hpp"

using namespace repwitness;

namespace {

IntMatrix random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
  std::uniform_int_distribution<int> entry(-9, 9);
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = entry(rng);
  return m;
}

void BM_SmithNormalForm(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const auto n = static_cast<std::size_t>(state.range(0));
  const IntMatrix m = random_matrix(rng, n, n);
  for (auto _ : state) benchmark::DoNotOptimize(smith_normal_form(m));
}
BENCHMARK(BM_SmithNormalForm)->Arg(4)->Arg(8)->Arg(16);

void BM_LambdaForm(benchmark::State& state) {
  std::string s;
  for (int k = 0; k < state.range(0); ++k) s += "[x1 x2^2 x3^-1, x4 x1^-1][x2 x3, x4^3]";
  const Word w = parse_word(s, 4);
  for (auto _ : state) benchmark::DoNotOptimize(lambda_form(w));
}
BENCHMARK(BM_LambdaForm)->Arg(1)->Arg(16)->Arg(256);

void BM_WordEval(benchmark::State& state) {
  std::mt19937_64 rng(2);
  const QTuple g{random_unit_quat(rng), random_unit_quat(rng), random_unit_quat(rng), random_unit_quat(rng)};
  const Word w = parse_word("[x1,x3][x2,x4]x1^5 x2^-3", 4);
  for (auto _ : state) benchmark::DoNotOptimize(word_eval(w, g));
}
BENCHMARK(BM_WordEval);

void BM_AnalyzeGenus3(benchmark::State& state) {
  const Presentation p(6, {parse_word("[x1,x4][x2,x5][x3,x6]", 6)});
  for (auto _ : state) benchmark::DoNotOptimize(analyze(p));
}
BENCHMARK(BM_AnalyzeGenus3);

void BM_SolveHopf(benchmark::State& state) {
  const Presentation p(2, {parse_word("[x1,x2]", 2)});
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_thm2(p, {}, std::nullopt, {}, seed++));
}
BENCHMARK(BM_SolveHopf);

void BM_SolveGenus2(benchmark::State& state) {
  const Presentation p(4, {parse_word("[x1,x3][x2,x4]", 4)});
  const std::vector<Word> gammas{parse_word("x1", 4), parse_word("x3", 4)};
  std::uint64_t seed = 0;
  for (auto _ : state) benchmark::DoNotOptimize(solve_thm2(p, gammas, std::nullopt, {}, seed++));
}
BENCHMARK(BM_SolveGenus2);

}  // namespace
BENCHMARK_MAIN();
