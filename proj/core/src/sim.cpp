#include "nftpos/sim.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>

#include "nftpos/bytes.hpp"
#include "nftpos/errors.hpp"
#include "nftpos/rng.hpp"

namespace nftpos {

namespace {

// RNG substreams. Each subsystem draws from its own stream so that, e.g., a
// PoS run and a PowBaseline run with the same seed see identical arrivals.
constexpr std::uint64_t kArrivalStream = 1;
constexpr std::uint64_t kTxContentStream = 2;
constexpr std::uint64_t kConsensusStream = 3;

constexpr std::uint64_t kPowTrialStepMs = 10;

void config_error(const std::string& field, const std::string& why) {
  fail(ErrorCode::ConfigInvalid, field + ": " + why);
}

void assign_initial_stakes(StakeLedger& ledger,
                           const IdentityRegistry& registry,
                           const SimConfig& cfg) {
  const StakeDistribution& dist = cfg.initial_stakes;
  switch (dist.kind) {
    case StakeDistribution::Kind::Uniform:
      for (std::uint64_t id = 1; id <= cfg.num_users; ++id) {
        record_stake(ledger, registry, id, dist.amount);
      }
      break;
    case StakeDistribution::Kind::Linear:
      for (std::uint64_t id = 1; id <= cfg.num_users; ++id) {
        record_stake(ledger, registry, id, dist.unit * id);
      }
      break;
    case StakeDistribution::Kind::OneWhale: {
      // nft id 1 is the whale; everyone else splits the remainder evenly
      // (integer division; the leftover stays unassigned).
      std::uint64_t whale = static_cast<std::uint64_t>(
          std::llround(static_cast<double>(dist.total) * dist.whale_fraction));
      if (whale == 0) whale = 1;
      if (whale > dist.total) whale = dist.total;
      record_stake(ledger, registry, 1, whale);
      if (cfg.num_users > 1) {
        const std::uint64_t share =
            (dist.total - whale) / (cfg.num_users - 1);
        if (share > 0) {
          for (std::uint64_t id = 2; id <= cfg.num_users; ++id) {
            record_stake(ledger, registry, id, share);
          }
        }
      }
      break;
    }
  }
}

}  // namespace

void validate_config(const SimConfig& cfg) {
  if (cfg.num_users == 0) config_error("num_users", "must be positive");
  if (!std::isfinite(cfg.tx_rate_per_sec) || cfg.tx_rate_per_sec <= 0.0) {
    config_error("tx_rate_per_sec", "must be positive and finite");
  }
  if (cfg.block_interval_ms == 0) {
    config_error("block_interval_ms", "must be positive");
  }
  if (cfg.max_txs_per_block == 0) {
    config_error("max_txs_per_block", "must be positive");
  }
  if (cfg.duration_s == 0) config_error("duration_s", "must be positive");
  if (cfg.window_s == 0 || cfg.duration_s % cfg.window_s != 0) {
    config_error("window_s",
                 "duration_s must be a positive multiple of window_s");
  }
  if (cfg.consensus_mode == ConsensusMode::PowBaseline &&
      (!std::isfinite(cfg.pow_success_prob) || cfg.pow_success_prob <= 0.0 ||
       cfg.pow_success_prob > 1.0)) {
    config_error("pow_success_prob", "must be in (0, 1]");
  }
  const StakeDistribution& dist = cfg.initial_stakes;
  switch (dist.kind) {
    case StakeDistribution::Kind::Uniform:
      if (dist.amount == 0) {
        config_error("initial_stakes.amount", "must be positive");
      }
      break;
    case StakeDistribution::Kind::Linear:
      if (dist.unit == 0) {
        config_error("initial_stakes.unit", "must be positive");
      }
      if (dist.unit > std::numeric_limits<std::uint64_t>::max() /
                          cfg.num_users) {
        config_error("initial_stakes.unit", "too large for num_users");
      }
      break;
    case StakeDistribution::Kind::OneWhale:
      if (dist.total == 0) {
        config_error("initial_stakes.total", "must be positive");
      }
      if (!std::isfinite(dist.whale_fraction) || dist.whale_fraction <= 0.0 ||
          dist.whale_fraction >= 1.0) {
        config_error("initial_stakes.whale_fraction", "must be in (0, 1)");
      }
      break;
  }
}

SimResult run_simulation(const SimConfig& cfg) {
  validate_config(cfg);

  SimResult result;

  IdentityRegistry registry;
  std::vector<Session> sessions;
  sessions.reserve(cfg.num_users);
  for (std::uint32_t k = 1; k <= cfg.num_users; ++k) {
    const std::string label = "user-" + std::to_string(k);
    const std::string secret = label + "-secret";
    mint_identity(registry, label, as_bytes(secret));
    sessions.push_back(authenticate(registry, k, as_bytes(secret), 0));
  }

  StakeLedger ledger;
  assign_initial_stakes(ledger, registry, cfg);
  result.initial_ledger = ledger;

  DetRng arrival_rng(substream_seed(cfg.seed, kArrivalStream));
  DetRng tx_rng(substream_seed(cfg.seed, kTxContentStream));
  DetRng consensus_rng(substream_seed(cfg.seed, kConsensusStream));

  const std::uint64_t duration_ms = std::uint64_t{cfg.duration_s} * 1000;

  Mempool pool;
  Chain chain = genesis_chain();
  EventCounts counts;
  std::uint64_t seq = 0;

  // Lazy arrival generator. The sender is drawn when the event is generated
  // (it is part of the event); the payload is drawn when it is processed.
  double arrival_clock_ms = 0.0;
  std::uint64_t arrival_index = 0;
  auto next_arrival = [&]() -> std::optional<SimEvent> {
    if (cfg.arrival_mode == ArrivalMode::Poisson) {
      arrival_clock_ms += arrival_rng.exponential(cfg.tx_rate_per_sec) * 1000.0;
    } else {
      arrival_clock_ms = 1000.0 * static_cast<double>(arrival_index + 1) /
                         cfg.tx_rate_per_sec;
    }
    if (!(arrival_clock_ms < static_cast<double>(duration_ms))) {
      return std::nullopt;
    }
    SimEvent ev;
    ev.kind = SimEvent::Kind::TxArrival;
    ev.at_ms = static_cast<std::uint64_t>(arrival_clock_ms) +
               cfg.delivery_delay_ms;
    ev.sender_index =
        static_cast<std::uint32_t>(tx_rng.uniform_index(cfg.num_users));
    ev.seq = seq++;
    ++arrival_index;
    return ev;
  };

  // Lazy block-production generator: fixed round boundaries in PoS mode, the
  // first successful Bernoulli trial on a 10 ms grid in PowBaseline mode.
  std::uint64_t round = 0;
  std::uint64_t pow_clock_ms = 0;
  auto next_block_event = [&]() -> std::optional<SimEvent> {
    SimEvent ev;
    if (cfg.consensus_mode == ConsensusMode::PoS) {
      const std::uint64_t t = (round + 1) * std::uint64_t{cfg.block_interval_ms};
      if (t > duration_ms) return std::nullopt;
      ev.kind = SimEvent::Kind::RoundBoundary;
      ev.at_ms = t;
    } else {
      std::uint64_t t = pow_clock_ms;
      for (;;) {
        t += kPowTrialStepMs;
        if (t > duration_ms) return std::nullopt;
        if (consensus_rng.bernoulli(cfg.pow_success_prob)) break;
      }
      pow_clock_ms = t;
      ev.kind = SimEvent::Kind::PowSolved;
      ev.at_ms = t;
    }
    ev.seq = seq++;
    return ev;
  };

  auto process_arrival = [&](const SimEvent& ev) {
    const std::uint64_t created_at = ev.at_ms - cfg.delivery_delay_ms;
    std::array<std::uint8_t, 8> payload{};
    put_u64_be(payload.data(), tx_rng.next_u64());
    create_transaction(pool, sessions[ev.sender_index], registry, payload,
                       created_at);
    ++counts.created;
  };

  auto process_block = [&](const SimEvent& ev) {
    ElectionResult er;
    if (cfg.consensus_mode == ConsensusMode::PoS) {
      er = elect_validator(ledger, round);
    } else {
      er.round = round;
      er.validator_id = consensus_rng.uniform_index(cfg.num_users) + 1;
      const auto it = ledger.stakes.find(er.validator_id);
      er.validator_stake = it == ledger.stakes.end() ? 0 : it->second;
      er.stake_fraction =
          Rational(static_cast<long long>(er.validator_stake),
                   static_cast<long long>(ledger.total));
    }
    result.rounds.push_back(er);

    const std::vector<Transaction> drained =
        drain_for_block(pool, cfg.max_txs_per_block);
    std::vector<Transaction> valid;
    valid.reserve(drained.size());
    for (const Transaction& tx : drained) {
      if (validate_tx(tx, registry)) {
        valid.push_back(tx);
      } else {
        ++counts.dropped;
      }
    }
    chain = append_block(std::move(chain), valid, er.validator_id, ev.at_ms,
                         cfg.max_txs_per_block);
    counts.validated += valid.size();
    apply_reward(ledger, registry, er.validator_id, cfg.reward_per_block);
    ++round;
  };

  // Merge the two monotone event streams. Ties at the same millisecond go to
  // arrivals first, then generation order.
  std::optional<SimEvent> arrival = next_arrival();
  std::optional<SimEvent> block_event = next_block_event();
  while (arrival || block_event) {
    const bool take_arrival =
        arrival && (!block_event || arrival->at_ms <= block_event->at_ms);
    if (take_arrival) {
      process_arrival(*arrival);
      arrival = next_arrival();
    } else {
      process_block(*block_event);
      block_event = next_block_event();
    }
  }

  counts.pooled = pool.queue.size();

  const VerifyReport report = verify_chain(chain);
  if (!report.ok) {
    fail(ErrorCode::ChainInvalid,
         "simulation produced an invalid chain: " + report.detail);
  }

  result.metrics = windowed_report(chain, cfg.window_s, cfg.duration_s);
  result.chain = std::move(chain);
  result.registry = std::move(registry);
  result.final_ledger = std::move(ledger);
  result.counts = counts;
  return result;
}

std::vector<std::pair<double, MetricsReport>> run_sweep(
    const SimConfig& base, const std::string& axis,
    std::span<const double> values) {
  enum class Axis { Rate, Users, MaxTxs };
  Axis a;
  if (axis == "tx_rate_per_sec") {
    a = Axis::Rate;
  } else if (axis == "num_users") {
    a = Axis::Users;
  } else if (axis == "max_txs_per_block") {
    a = Axis::MaxTxs;
  } else {
    fail(ErrorCode::UnknownAxis, "unknown sweep axis: " + axis);
  }
  if (values.empty()) {
    fail(ErrorCode::ConfigInvalid, "values: must be non-empty");
  }

  const auto as_positive_u32 = [&](double v) -> std::uint32_t {
    if (!(v >= 1.0) || v > 4294967295.0 || v != std::floor(v)) {
      fail(ErrorCode::ConfigInvalid,
           axis + ": sweep values must be positive integers");
    }
    return static_cast<std::uint32_t>(v);
  };

  std::vector<std::pair<double, MetricsReport>> out;
  out.reserve(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) {
    SimConfig cfg = base;
    cfg.seed = base.seed + i;
    switch (a) {
      case Axis::Rate:
        cfg.tx_rate_per_sec = values[i];
        break;
      case Axis::Users:
        cfg.num_users = as_positive_u32(values[i]);
        break;
      case Axis::MaxTxs:
        cfg.max_txs_per_block = as_positive_u32(values[i]);
        break;
    }
    validate_config(cfg);
    out.emplace_back(values[i], run_simulation(cfg).metrics);
  }
  return out;
}

}  // namespace nftpos
