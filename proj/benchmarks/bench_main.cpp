#include <benchmark/benchmark.h>

#include "nichols/paperdata.hpp"

using namespace nichols;

namespace {

std::shared_ptr<BraidedSpace> a2() {
  FieldSpec fs = FieldSpec::generic();
  Fq q = Fq::q(fs);
  return BraidedSpace::diagonal(fs, {{q, Fq::one(fs)}, {q.inv(), q}});
}

void BM_FieldMulGeneric(benchmark::State& state) {
  FieldSpec fs = FieldSpec::generic();
  Fq q = Fq::q(fs);
  Fq a = (q.pow(5) - Fq::one(fs)) / (q - Fq::one(fs));
  Fq b = (q.pow(7) + Fq::integer(fs, 3)) / (q.pow(2) + Fq::one(fs));
  for (auto _ : state) {
    Fq c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_FieldMulGeneric);

void BM_FieldMulCyclotomic(benchmark::State& state) {
  FieldSpec fs = FieldSpec::cyclotomic(static_cast<uint32_t>(state.range(0)));
  Fq z = Fq::q(fs);
  Fq a = z.pow(3) + Fq::integer(fs, 2) * z + Fq::rational(fs, 1, 2);
  Fq b = a.inv();
  for (auto _ : state) {
    Fq c = a * b;
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_FieldMulCyclotomic)->Arg(5)->Arg(12);

void BM_QBinomial(benchmark::State& state) {
  FieldSpec fs = FieldSpec::generic();
  Fq q = Fq::q(fs);
  for (auto _ : state) {
    Fq c = q_binomial(static_cast<uint32_t>(state.range(0)), static_cast<uint32_t>(state.range(0)) / 2, q);
    benchmark::DoNotOptimize(c);
  }
}
BENCHMARK(BM_QBinomial)->Arg(8)->Arg(12);

void BM_Symmetrizer(benchmark::State& state) {
  auto sp = a2();
  uint32_t n = static_cast<uint32_t>(state.range(0));
  Word w;
  for (uint32_t i = 0; i < n; ++i) w.push_back(static_cast<Letter>(i % 2));
  TensorVector v = TensorVector::monomial(w, Fq::one(sp->field()));
  for (auto _ : state) {
    TensorVector s = quantum_symmetrizer(*sp, n, v, n);
    benchmark::DoNotOptimize(s);
  }
  state.SetComplexityN(n);
}
BENCHMARK(BM_Symmetrizer)->DenseRange(3, 7)->Complexity();

void BM_BuildA2Generic(benchmark::State& state) {
  auto sp = a2();
  EngineConfig cfg;
  cfg.cutoff = static_cast<uint32_t>(state.range(0));
  for (auto _ : state) {
    auto m = NicholsModel::build(sp, cfg);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_BuildA2Generic)->Arg(6)->Arg(8);

void BM_BuildB2Cyclo5(benchmark::State& state) {
  auto sp = cartan_space("B2", 2, FieldSpec::cyclotomic(5));
  EngineConfig cfg;
  cfg.cutoff = 30;
  for (auto _ : state) {
    auto m = NicholsModel::build(sp, cfg);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_BuildB2Cyclo5);

void BM_ProjectWord(benchmark::State& state) {
  auto sp = cartan_space("A", 3, FieldSpec::generic());
  EngineConfig cfg;
  cfg.cutoff = 7;
  auto m = NicholsModel::build(sp, cfg);
  Word w = {0, 1, 2, 1, 0, 2, 1};
  for (auto _ : state) {
    auto e = m->projectWord(w);
    benchmark::DoNotOptimize(e);
  }
}
BENCHMARK(BM_ProjectWord);

}  // namespace

BENCHMARK_MAIN();
