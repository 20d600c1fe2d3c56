#include <benchmark/benchmark.h>

#include <vector>

#include "nftpos/bytes.hpp"
#include "nftpos/chain.hpp"
#include "nftpos/identity.hpp"
#include "nftpos/rng.hpp"
#include "nftpos/sim.hpp"
#include "nftpos/stake.hpp"
#include "nftpos/tx.hpp"

namespace {

using namespace nftpos;

struct World {
  IdentityRegistry registry;
  std::vector<Session> sessions;

  explicit World(std::uint32_t users) {
    for (std::uint32_t k = 1; k <= users; ++k) {
      const std::string label = "user-" + std::to_string(k);
      const std::string secret = label + "-secret";
      mint_identity(registry, label, as_bytes(secret));
      sessions.push_back(authenticate(registry, k, as_bytes(secret), 0));
    }
  }
};

void BM_HashHeader(benchmark::State& state) {
  BlockHeader h;
  h.height = 12345;
  h.timestamp_ms = 987654;
  h.validator_id = 42;
  for (auto _ : state) {
    benchmark::DoNotOptimize(hash_header(h));
  }
}
BENCHMARK(BM_HashHeader);

void BM_SerializeTx(benchmark::State& state) {
  World world(1);
  Mempool pool;
  const Transaction tx = create_transaction(pool, world.sessions[0],
                                            world.registry, as_bytes("p"), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(serialize_tx(tx));
  }
}
BENCHMARK(BM_SerializeTx);

void BM_ValidateTx(benchmark::State& state) {
  World world(1);
  Mempool pool;
  const Transaction tx = create_transaction(pool, world.sessions[0],
                                            world.registry, as_bytes("p"), 1);
  for (auto _ : state) {
    benchmark::DoNotOptimize(validate_tx(tx, world.registry));
  }
}
BENCHMARK(BM_ValidateTx);

void BM_AppendBlock(benchmark::State& state) {
  World world(4);
  Mempool pool;
  std::vector<Transaction> txs;
  for (int i = 0; i < state.range(0); ++i) {
    txs.push_back(create_transaction(pool, world.sessions[i % 4],
                                     world.registry, as_bytes("p"), i));
  }
  for (auto _ : state) {
    Chain chain = genesis_chain();
    chain = append_block(std::move(chain), txs, 1, 1000);
    benchmark::DoNotOptimize(chain);
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_AppendBlock)->Arg(10)->Arg(100)->Arg(1000);

void BM_VerifyChain(benchmark::State& state) {
  World world(4);
  Mempool pool;
  DetRng rng(1);
  Chain chain = genesis_chain();
  for (int b = 0; b < state.range(0); ++b) {
    std::vector<Transaction> txs;
    for (int i = 0; i < 20; ++i) {
      txs.push_back(create_transaction(pool, world.sessions[i % 4],
                                       world.registry, as_bytes("p"), b));
    }
    pool.queue.clear();
    chain = append_block(std::move(chain), txs, 1 + b % 4, (b + 1) * 1000);
  }
  for (auto _ : state) {
    benchmark::DoNotOptimize(verify_chain(chain));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_VerifyChain)->Arg(10)->Arg(100)->Arg(500);

void BM_ElectValidator(benchmark::State& state) {
  StakeLedger ledger;
  DetRng rng(2);
  for (int i = 0; i < state.range(0); ++i) {
    ledger.stakes[i + 1] = rng.uniform_index(1000000) + 1;
  }
  for (const auto& [id, stake] : ledger.stakes) ledger.total += stake;
  for (auto _ : state) {
    benchmark::DoNotOptimize(elect_validator(ledger, 0));
  }
}
BENCHMARK(BM_ElectValidator)->Arg(10)->Arg(1000)->Arg(100000);

void BM_RunSimulation(benchmark::State& state) {
  SimConfig cfg;
  cfg.seed = 1;
  cfg.num_users = 10;
  cfg.tx_rate_per_sec = static_cast<double>(state.range(0));
  cfg.duration_s = 60;
  cfg.window_s = 60;
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_simulation(cfg));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0) * 60);
}
BENCHMARK(BM_RunSimulation)->Arg(10)->Arg(100)->Arg(1000)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
