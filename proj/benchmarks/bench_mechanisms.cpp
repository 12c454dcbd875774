#include <benchmark/benchmark.h>

#include "impartial/axioms.hpp"
#include "impartial/blocking.hpp"
#include "impartial/decisive.hpp"
#include "impartial/impossibility.hpp"

using namespace impartial;

namespace {

RankingProfile random_profile(int n, std::uint64_t& state) {
    std::vector<Permutation> rankings;
    rankings.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rankings.push_back(random_permutation(n, state));
    return RankingProfile(std::move(rankings));
}

void BM_BlockingRank(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BlockingMechanism mech =
        n == 4 ? BlockingMechanism::n4_table() : BlockingMechanism::fixture(n);
    std::uint64_t rng = 1;
    std::vector<RankingProfile> profiles;
    for (int i = 0; i < 64; ++i) profiles.push_back(random_profile(n, rng));
    std::size_t next = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mech.rank(profiles[next++ & 63]));
    }
}
BENCHMARK(BM_BlockingRank)->Arg(4)->Arg(6)->Arg(10);

void BM_WeakUnanimityRank(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const DecisiveMechanism mech(n);
    std::uint64_t rng = 2;
    std::vector<RankingProfile> profiles;
    for (int i = 0; i < 64; ++i) profiles.push_back(random_profile(n, rng));
    std::size_t next = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(mech.rank(profiles[next++ & 63]));
    }
}
BENCHMARK(BM_WeakUnanimityRank)->Arg(5)->Arg(7)->Arg(10);

void BM_MessageSpaceSweep(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const BlockingMechanism mech = BlockingMechanism::fixture(n);
    for (auto _ : state) {
        benchmark::DoNotOptimize(verify_message_space(mech));
    }
}
BENCHMARK(BM_MessageSpaceSweep)->Arg(8)->Arg(10);

void BM_RandomMultigraph(benchmark::State& state) {
    const int n = static_cast<int>(state.range(0));
    const RhoVector rho = RhoVector::cyclic(n);
    std::uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(random_multigraph(n, rho, ++seed));
    }
}
BENCHMARK(BM_RandomMultigraph)->Arg(12)->Arg(16);

void BM_RefuteN3(benchmark::State& state) {
    for (auto _ : state) {
        benchmark::DoNotOptimize(refute_impartial_ifr(3));
    }
}
BENCHMARK(BM_RefuteN3);

void BM_UnanimityChainAudit(benchmark::State& state) {
    const DecisiveMechanism mech(7);
    for (auto _ : state) {
        benchmark::DoNotOptimize(unanimity_chain_audit(mech));
    }
}
BENCHMARK(BM_UnanimityChainAudit);

}  // namespace

BENCHMARK_MAIN();
