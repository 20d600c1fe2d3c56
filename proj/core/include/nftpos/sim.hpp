#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "nftpos/chain.hpp"
#include "nftpos/identity.hpp"
#include "nftpos/metrics.hpp"
#include "nftpos/stake.hpp"
#include "nftpos/tx.hpp"

namespace nftpos {

enum class ConsensusMode { PoS, PowBaseline };
enum class ArrivalMode { Poisson, FixedInterval };
// Single variant today (strict richest-stakeholder argmax); the enum keeps a
// slot for stake-weighted randomized election without a config break.
enum class ElectionMode { Richest };

struct StakeDistribution {
  enum class Kind { Uniform, Linear, OneWhale };
  Kind kind = Kind::Uniform;
  std::uint64_t amount = 100;    // uniform: stake per user
  std::uint64_t unit = 1;        // linear: user k holds unit*k
  std::uint64_t total = 10000;   // one_whale: total to distribute
  double whale_fraction = 0.52;  // one_whale: share held by nft id 1

  bool operator==(const StakeDistribution&) const = default;
};

struct SimConfig {
  std::uint64_t seed = 1;
  std::uint32_t num_users = 10;
  StakeDistribution initial_stakes{};
  double tx_rate_per_sec = 10.0;  // aggregate arrival rate
  std::uint32_t block_interval_ms = 1000;
  std::uint32_t max_txs_per_block = kDefaultMaxTxsPerBlock;
  std::uint32_t duration_s = 60;
  std::uint32_t window_s = 60;
  ConsensusMode consensus_mode = ConsensusMode::PoS;
  double pow_success_prob = 0.01;  // per 10 ms trial, PowBaseline only
  std::uint64_t reward_per_block = 1;
  ArrivalMode arrival_mode = ArrivalMode::Poisson;
  ElectionMode election_mode = ElectionMode::Richest;
  std::uint64_t delivery_delay_ms = 0;  // per-tx delivery delay hook

  bool operator==(const SimConfig&) const = default;
};

/// Throws ConfigInvalid naming the offending field.
void validate_config(const SimConfig& cfg);

/// Strict JSON: exact field names, unknown fields rejected, every field
/// optional with the defaults above. Throws ConfigInvalid.
SimConfig parse_config_json(const std::string& text);
SimConfig load_config_file(const std::string& path);  // IoFailure if unreadable

struct SimEvent {
  enum class Kind { TxArrival, RoundBoundary, PowSolved };
  std::uint64_t at_ms = 0;
  Kind kind = Kind::TxArrival;
  std::uint32_t sender_index = 0;  // TxArrival only
  std::uint64_t seq = 0;           // tie-break after (at_ms, kind)
};

struct EventCounts {
  std::uint64_t created = 0;
  std::uint64_t validated = 0;
  std::uint64_t dropped = 0;
  std::uint64_t pooled = 0;  // still queued at simulation end

  bool operator==(const EventCounts&) const = default;
};

struct SimResult {
  Chain chain;
  IdentityRegistry registry;
  StakeLedger initial_ledger;
  StakeLedger final_ledger;
  std::vector<ElectionResult> rounds;  // one entry per produced block
  MetricsReport metrics;
  EventCounts counts;

  bool operator==(const SimResult&) const = default;
};

/// Deterministic end-to-end run: mint identities, assign stakes, generate
/// seeded arrivals, produce blocks per the consensus mode, reward the
/// producer, and report windowed throughput. Equal configs (including seed)
/// give equal results.
SimResult run_simulation(const SimConfig& cfg);

/// One independent run per value with seed = base.seed + index. axis is one
/// of "tx_rate_per_sec", "num_users", "max_txs_per_block"; anything else
/// throws UnknownAxis. An empty value list throws ConfigInvalid.
std::vector<std::pair<double, MetricsReport>> run_sweep(
    const SimConfig& base, const std::string& axis,
    std::span<const double> values);

}  // namespace nftpos
