#include <benchmark/benchmark.h>

#include <fstream>
#include <sstream>

#include "qdt/oracle.hpp"

using namespace qdt;

namespace {

QuiverModel load(const std::string& name) {
    std::ifstream in(std::string(QDT_MODEL_DIR) + "/" + name);
    std::ostringstream os;
    os << in.rdbuf();
    return parse_model(os.str());
}

} // namespace

static void BM_MotiveArith(benchmark::State& state) {
    MotivicScalar v = MotivicScalar::half_lefschetz();
    MotivicScalar L = v * v;
    MotivicScalar one = MotivicScalar(1);
    for (auto _ : state) {
        MotivicScalar x = (L * L - one) / (L - one) + (L - one) * v;
        benchmark::DoNotOptimize(x);
    }
}
BENCHMARK(BM_MotiveArith);

static void BM_PlethysticExp1Var(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    MotivicScalar v = MotivicScalar::half_lefschetz();
    MotivicScalar L = v * v;
    MotivicScalar one = MotivicScalar(1);
    std::vector<ClosedFormTerm> terms{{(L + L - one) / (L - one), {1}, {1}}};
    MSeries f = expand_closed_form(terms, 1, N);
    for (auto _ : state) {
        MSeries e = plethystic_exp(f);
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_PlethysticExp1Var)->Arg(4)->Arg(6)->Arg(8);

static void BM_PlethysticLogRoundtrip(benchmark::State& state) {
    TheoremSpec spec{Family::Conifold, 0, Branch::Generic()};
    MSeries e = theorem_series(spec, 4);
    for (auto _ : state) {
        MSeries f = plethystic_log(e);
        benchmark::DoNotOptimize(f);
    }
}
BENCHMARK(BM_PlethysticLogRoundtrip);

static void BM_TheoremSeriesConifold(benchmark::State& state) {
    int N = static_cast<int>(state.range(0));
    TheoremSpec spec{Family::Conifold, 0, Branch::Generic()};
    for (auto _ : state) {
        MSeries e = theorem_series(spec, N);
        benchmark::DoNotOptimize(e);
    }
}
BENCHMARK(BM_TheoremSeriesConifold)->Arg(3)->Arg(5);

static void BM_CyclicDerivatives(benchmark::State& state) {
    auto m = load("cyclic_2.qp");
    for (auto _ : state) {
        for (int a = 0; a < static_cast<int>(m.arrows.size()); ++a) {
            NCPoly d = cyclic_derivative(m, a);
            benchmark::DoNotOptimize(d);
        }
    }
}
BENCHMARK(BM_CyclicDerivatives);

static void BM_CountQuantumScalar(benchmark::State& state) {
    long p = state.range(0);
    auto m = load("q1_quantum.qp");
    CountTask t;
    t.presentation = reduced_presentation(m, *m.cut);
    t.alpha = {1};
    t.p = p;
    t.param_values = {{"q", 2}};
    for (auto _ : state) {
        OracleReport r = count_representations(t);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_CountQuantumScalar)->Arg(5)->Arg(11)->Arg(17);

static void BM_CountConifold11(benchmark::State& state) {
    long p = state.range(0);
    auto m = load("conifold.qp");
    CountTask t;
    t.presentation = reduced_presentation(m, *m.cut);
    t.alpha = {1, 1};
    t.p = p;
    t.param_values = {{"q", 2}};
    for (auto _ : state) {
        OracleReport r = count_representations(t);
        benchmark::DoNotOptimize(r);
    }
}
BENCHMARK(BM_CountConifold11)->Arg(3)->Arg(5);

BENCHMARK_MAIN();
