// Benchmarks for the dominant costs: whole-system assembly, transfer
// function samples, the explicit-form transform, and the eigensolve.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include <dss/algebra.hpp>
#include <dss/elements.hpp>
#include <dss/modal.hpp>
#include <dss/network.hpp>
#include <dss/transform.hpp>

namespace {

// RC shunts at every node, inductive links along a chain.
dss::Network ladder_network(int n_nodes) {
    dss::Network net;
    for (int i = 0; i < n_nodes; ++i) net.nodes.push_back("n" + std::to_string(i));
    int id = 0;
    for (int i = 0; i < n_nodes; ++i) {
        dss::Branch r;
        r.id = "r" + std::to_string(id++);
        r.kind = dss::BranchKind::R;
        r.from = net.nodes[static_cast<size_t>(i)];
        r.to = dss::kGround;
        r.r = 2.0 + 0.1 * i;
        net.branches.push_back(r);

        dss::Branch c;
        c.id = "c" + std::to_string(id++);
        c.kind = dss::BranchKind::C;
        c.from = net.nodes[static_cast<size_t>(i)];
        c.to = dss::kGround;
        c.c = 0.5 + 0.05 * i;
        net.branches.push_back(c);
    }
    for (int i = 0; i + 1 < n_nodes; ++i) {
        dss::Branch l;
        l.id = "l" + std::to_string(id++);
        l.kind = dss::BranchKind::L;
        l.from = net.nodes[static_cast<size_t>(i)];
        l.to = net.nodes[static_cast<size_t>(i + 1)];
        l.l = 0.3 + 0.02 * i;
        net.branches.push_back(l);
    }
    return net;
}

dss::DssModel ladder_system(int n_nodes) {
    const dss::Network net = ladder_network(n_nodes);
    return dss::whole_system(dss::network_admittance(net), dss::apparatus_stack(net));
}

void BM_whole_system_build(benchmark::State& state) {
    const dss::Network net = ladder_network(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(
            dss::whole_system(dss::network_admittance(net), dss::apparatus_stack(net)));
    }
}
BENCHMARK(BM_whole_system_build)->Arg(4)->Arg(8)->Arg(16);

void BM_eval_tf(benchmark::State& state) {
    const dss::DssModel sys = ladder_system(static_cast<int>(state.range(0)));
    double w = 0.7;
    for (auto _ : state) {
        benchmark::DoNotOptimize(dss::eval_tf(sys, dss::Complex(0.0, w)));
        w += 0.1;
    }
}
BENCHMARK(BM_eval_tf)->Arg(4)->Arg(8)->Arg(16);

void BM_to_ss(benchmark::State& state) {
    const dss::DssModel sys = ladder_system(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dss::to_ss(sys));
    }
}
BENCHMARK(BM_to_ss)->Arg(4)->Arg(8);

void BM_generalized_eig(benchmark::State& state) {
    const dss::DssModel sys = ladder_system(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(dss::generalized_eig(sys));
    }
}
BENCHMARK(BM_generalized_eig)->Arg(4)->Arg(8)->Arg(16);

} // namespace

BENCHMARK_MAIN();
