#include <cstdint>
#include <fstream>
#include <limits>
#include <string>

#include <json.hpp>

#include "nftpos/errors.hpp"
#include "nftpos/sim.hpp"

namespace nftpos {

namespace {

using nlohmann::json;

[[noreturn]] void bad_field(const std::string& field, const std::string& why) {
  fail(ErrorCode::ConfigInvalid, field + ": " + why);
}

std::uint64_t get_u64(const json& v, const std::string& field) {
  if (v.is_number_unsigned()) return v.get<std::uint64_t>();
  if (v.is_number_integer() && v.get<std::int64_t>() >= 0) {
    return static_cast<std::uint64_t>(v.get<std::int64_t>());
  }
  bad_field(field, "must be a non-negative integer");
}

std::uint32_t get_u32(const json& v, const std::string& field) {
  const std::uint64_t x = get_u64(v, field);
  if (x > std::numeric_limits<std::uint32_t>::max()) {
    bad_field(field, "out of range");
  }
  return static_cast<std::uint32_t>(x);
}

double get_number(const json& v, const std::string& field) {
  if (!v.is_number()) bad_field(field, "must be a number");
  return v.get<double>();
}

std::string get_string(const json& v, const std::string& field) {
  if (!v.is_string()) bad_field(field, "must be a string");
  return v.get<std::string>();
}

StakeDistribution parse_distribution(const json& v) {
  if (!v.is_object()) bad_field("initial_stakes", "must be an object");
  StakeDistribution dist;
  bool have_kind = false;
  for (const auto& [key, value] : v.items()) {
    const std::string field = "initial_stakes." + key;
    if (key == "kind") {
      const std::string kind = get_string(value, field);
      if (kind == "uniform") {
        dist.kind = StakeDistribution::Kind::Uniform;
      } else if (kind == "linear") {
        dist.kind = StakeDistribution::Kind::Linear;
      } else if (kind == "one_whale") {
        dist.kind = StakeDistribution::Kind::OneWhale;
      } else {
        bad_field(field, "must be \"uniform\", \"linear\" or \"one_whale\"");
      }
      have_kind = true;
    } else if (key == "amount") {
      dist.amount = get_u64(value, field);
    } else if (key == "unit") {
      dist.unit = get_u64(value, field);
    } else if (key == "total") {
      dist.total = get_u64(value, field);
    } else if (key == "whale_fraction") {
      dist.whale_fraction = get_number(value, field);
    } else {
      bad_field(field, "unknown field");
    }
  }
  if (!have_kind) bad_field("initial_stakes.kind", "is required");
  return dist;
}

}  // namespace

SimConfig parse_config_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorCode::ConfigInvalid,
         std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) {
    fail(ErrorCode::ConfigInvalid, "config: top level must be a JSON object");
  }

  SimConfig cfg;
  for (const auto& [key, value] : j.items()) {
    if (key == "seed") {
      cfg.seed = get_u64(value, key);
    } else if (key == "num_users") {
      cfg.num_users = get_u32(value, key);
    } else if (key == "initial_stakes") {
      cfg.initial_stakes = parse_distribution(value);
    } else if (key == "tx_rate_per_sec") {
      cfg.tx_rate_per_sec = get_number(value, key);
    } else if (key == "block_interval_ms") {
      cfg.block_interval_ms = get_u32(value, key);
    } else if (key == "max_txs_per_block") {
      cfg.max_txs_per_block = get_u32(value, key);
    } else if (key == "duration_s") {
      cfg.duration_s = get_u32(value, key);
    } else if (key == "window_s") {
      cfg.window_s = get_u32(value, key);
    } else if (key == "consensus_mode") {
      const std::string mode = get_string(value, key);
      if (mode == "PoS") {
        cfg.consensus_mode = ConsensusMode::PoS;
      } else if (mode == "PowBaseline") {
        cfg.consensus_mode = ConsensusMode::PowBaseline;
      } else {
        bad_field(key, "must be \"PoS\" or \"PowBaseline\"");
      }
    } else if (key == "pow_success_prob") {
      cfg.pow_success_prob = get_number(value, key);
    } else if (key == "reward_per_block") {
      cfg.reward_per_block = get_u64(value, key);
    } else if (key == "arrival_mode") {
      const std::string mode = get_string(value, key);
      if (mode == "poisson") {
        cfg.arrival_mode = ArrivalMode::Poisson;
      } else if (mode == "fixed_interval") {
        cfg.arrival_mode = ArrivalMode::FixedInterval;
      } else {
        bad_field(key, "must be \"poisson\" or \"fixed_interval\"");
      }
    } else if (key == "election_mode") {
      if (get_string(value, key) != "richest") {
        bad_field(key, "only \"richest\" is implemented");
      }
      cfg.election_mode = ElectionMode::Richest;
    } else if (key == "delivery_delay_ms") {
      cfg.delivery_delay_ms = get_u64(value, key);
    } else {
      fail(ErrorCode::ConfigInvalid, "unknown config field: " + key);
    }
  }

  validate_config(cfg);
  return cfg;
}

SimConfig load_config_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::IoFailure, "cannot open config file " + path);
  }
  std::string text((std::istreambuf_iterator<char>(in)),
                   std::istreambuf_iterator<char>());
  if (in.bad()) {
    fail(ErrorCode::IoFailure, "read failed for config file " + path);
  }
  return parse_config_json(text);
}

}  // namespace nftpos
