// Serial reference path against the OpenMP path for grid verification.

#include <benchmark/benchmark.h>

#include "ellcyc/corpus.hpp"
#include "ellcyc/cyclic.hpp"
#include "ellcyc/master.hpp"

using namespace ellcyc;

namespace {

std::vector<const IdentitySpec*> corpus_subset(const char* prefix) {
    std::vector<const IdentitySpec*> out;
    for (const auto& s : builtin_corpus().identities) {
        if (!s.has_flag("erratum") && s.id.rfind(prefix, 0) == 0) out.push_back(&s);
    }
    return out;
}

void run(benchmark::State& state, const char* prefix, ExecPolicy policy) {
    const auto specs = corpus_subset(prefix);
    const SampleGrid grid = default_grid(20240501);
    for (auto _ : state) {
        auto reports = verify_all(specs, grid, 1e-9, policy);
        benchmark::DoNotOptimize(reports);
    }
    state.counters["identities"] = static_cast<double>(specs.size());
}

void BM_verify_serial(benchmark::State& s) { run(s, "A.MI1", ExecPolicy::serial()); }
void BM_verify_parallel(benchmark::State& s) { run(s, "A.MI1", ExecPolicy::parallel(static_cast<int>(s.range(0)))); }
void BM_verify_all_serial(benchmark::State& s) { run(s, "", ExecPolicy::serial()); }
void BM_verify_all_parallel(benchmark::State& s) { run(s, "", ExecPolicy::parallel()); }

void BM_gamma_set(benchmark::State& state) {
    const ModulusContext c = make_context(0.5);
    const int p = static_cast<int>(state.range(0));
    const double a = 2 * c.K / p;
    auto f = [&](cplx z) {
        const auto t = sncndn_complex(z, c.m), u = sncndn_complex(z + a, c.m);
        return t.dn * t.dn * u.dn * u.dn;
    };
    for (auto _ : state) benchmark::DoNotOptimize(gamma_set(f, p, PeriodKind::TwoK, GammaVariant::ordinary, c, 4));
}

void BM_archetypal(benchmark::State& state) {
    const ModulusContext c = make_context(0.9);
    for (auto _ : state) benchmark::DoNotOptimize(archetypal(ArchetypalKind::sigma2, cplx(0.3, 0.1), c, 5));
}

}  // namespace

BENCHMARK(BM_verify_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_parallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_all_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_verify_all_parallel)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_gamma_set)->Arg(3)->Arg(8);
BENCHMARK(BM_archetypal);

BENCHMARK_MAIN();
