// nftpos: run seeded consensus simulations, sweep load axes, and inspect or
// verify stored chains.
//
// Exit codes are stable: 0 success, 1 config/usage error, 2 I/O error,
// 3 chain verification failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nftpos/bytes.hpp"
#include "nftpos/errors.hpp"
#include "nftpos/metrics.hpp"
#include "nftpos/sim.hpp"
#include "nftpos/store.hpp"

namespace {

using namespace nftpos;

int exit_code_for(const Error& e) {
  switch (e.code()) {
    case ErrorCode::ConfigInvalid:
    case ErrorCode::UnknownAxis:
      return 1;
    case ErrorCode::IoFailure:
      return 2;
    case ErrorCode::BadMagic:
    case ErrorCode::UnsupportedVersion:
    case ErrorCode::CorruptRecord:
    case ErrorCode::ChainInvalid:
    case ErrorCode::TipMismatch:
    case ErrorCode::InvalidChain:
    case ErrorCode::SnapshotInvalid:
      return 3;
    default:
      return 1;
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    fail(ErrorCode::IoFailure, "cannot create " + path);
  }
  out << text;
  if (!out) {
    fail(ErrorCode::IoFailure, "write failed for " + path);
  }
}

std::vector<double> parse_values(const std::string& list) {
  std::vector<double> values;
  std::size_t pos = 0;
  while (pos <= list.size()) {
    const std::size_t comma = list.find(',', pos);
    const std::string item = list.substr(
        pos, comma == std::string::npos ? std::string::npos : comma - pos);
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      fail(ErrorCode::ConfigInvalid, "values: '" + item + "' is not a number");
    }
    if (used != item.size()) {
      fail(ErrorCode::ConfigInvalid, "values: '" + item + "' is not a number");
    }
    values.push_back(v);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return values;
}

std::string value_label(double v) {
  if (v == std::floor(v) && std::fabs(v) < 1e15) {
    return std::to_string(static_cast<long long>(v));
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6g", v);
  return buf;
}

// emit_csv output without its header line
std::string csv_rows(const MetricsReport& report, const std::string& label) {
  std::string text = emit_csv(report, label);
  return text.erase(0, text.find('\n') + 1);
}

int cmd_run(const std::string& config_path, const std::string& out_csv,
            const std::string& out_chain, const std::string& out_state) {
  const SimConfig cfg = load_config_file(config_path);
  const SimResult result = run_simulation(cfg);

  write_text_file(out_csv, emit_csv(result.metrics, "run"));
  store_chain(result.chain, out_chain);
  if (!out_state.empty()) {
    store_snapshot(result.registry, result.final_ledger, out_state);
  }

  std::cout << "blocks=" << result.chain.size() << "\n"
            << "total_validated=" << result.counts.validated << "\n"
            << "mean_tps=" << format_fixed6(result.metrics.mean_tps) << "\n"
            << "cv_tps=" << format_fixed6(result.metrics.cv_tps) << "\n";
  return 0;
}

int cmd_sweep(const std::string& config_path, const std::string& axis,
              const std::string& values_list, const std::string& out_csv) {
  const SimConfig base = load_config_file(config_path);
  const std::vector<double> values = parse_values(values_list);
  const auto points = run_sweep(base, axis, values);

  std::string csv = std::string(kCsvHeader) + "\n";
  for (const auto& [value, report] : points) {
    const std::string label = axis + "=" + value_label(value);
    csv += csv_rows(report, label);
    std::cout << label << " mean_tps=" << format_fixed6(report.mean_tps)
              << " cv_tps=" << format_fixed6(report.cv_tps) << "\n";
  }
  write_text_file(out_csv, csv);
  return 0;
}

int cmd_verify(const std::string& chain_path) {
  const Chain chain = load_chain(chain_path);
  std::cout << "ok blocks=" << chain.size()
            << " tip_height=" << chain.tip().header.height << " tip_digest="
            << to_hex(chain.tip_digest) << "\n";
  return 0;
}

int cmd_inspect(const std::string& chain_path) {
  const Chain chain = load_chain(chain_path);
  for (const Block& block : chain.blocks) {
    std::cout << "height=" << block.header.height
              << " time_ms=" << block.header.timestamp_ms
              << " validator=" << block.header.validator_id
              << " tx_count=" << block.header.tx_count
              << " digest=" << to_hex(hash_header(block.header)) << "\n";
  }
  std::cout << "blocks=" << chain.size() << "\n";
  return 0;
}

// Illustrative scenario: makes stake concentration visible by reporting the
// majority-holder detector together with who actually wins every round.
int cmd_demo_51(const std::string& config_path) {
  const SimConfig cfg = load_config_file(config_path);
  const SimResult result = run_simulation(cfg);

  const auto holder = majority_stake_holder(result.initial_ledger);
  std::uint64_t whale_id;
  if (holder) {
    std::cout << "majority_stake_holder=" << holder->first
              << " fraction=" << format_fixed6(holder->second)
              << " threshold=0.510000\n";
    whale_id = holder->first;
  } else {
    std::cout << "majority_stake_holder=none threshold=0.510000\n";
    whale_id = elect_validator(result.initial_ledger, 0).validator_id;
  }

  const std::size_t n = result.rounds.size();
  const std::size_t step = n > 10 ? n / 10 : 1;
  for (std::size_t r = 0; r < n; r += step) {
    const ElectionResult& er = result.rounds[r];
    std::cout << "round=" << er.round << " leader=" << er.validator_id
              << " leader_fraction=" << format_fixed6(er.stake_fraction)
              << "\n";
  }
  if (n > 0 && (n - 1) % step != 0) {
    const ElectionResult& er = result.rounds[n - 1];
    std::cout << "round=" << er.round << " leader=" << er.validator_id
              << " leader_fraction=" << format_fixed6(er.stake_fraction)
              << "\n";
  }

  std::uint64_t whale_blocks = 0;
  const std::size_t produced = result.chain.size() - 1;
  for (const Block& block : result.chain.blocks) {
    if (block.header.height > 0 && block.header.validator_id == whale_id) {
      ++whale_blocks;
    }
  }
  const double share =
      produced == 0 ? 0.0
                    : static_cast<double>(whale_blocks) /
                          static_cast<double>(produced);
  std::cout << "whale=" << whale_id << " whale_blocks=" << whale_blocks
            << " produced=" << produced
            << " whale_blocks_fraction=" << format_fixed6(share) << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "NFT-identity proof-of-stake chain engine and simulation harness"};
  app.require_subcommand(1);

  std::string config_path, out_csv, out_chain, out_state, axis, values,
      chain_path;

  auto* run = app.add_subcommand("run", "Run one simulation scenario");
  run->add_option("--config", config_path, "Scenario config (JSON)")
      ->required();
  run->add_option("--out", out_csv, "Output CSV path")->required();
  run->add_option("--chain", out_chain, "Output chain file path")->required();
  run->add_option("--state", out_state,
                  "Optional registry/ledger snapshot path");

  auto* sweep = app.add_subcommand(
      "sweep", "Run one simulation per value along a config axis");
  sweep->add_option("--config", config_path, "Base config (JSON)")->required();
  sweep
      ->add_option("--axis", axis,
                   "tx_rate_per_sec | num_users | max_txs_per_block")
      ->required();
  sweep->add_option("--values", values, "Comma-separated sweep values")
      ->required();
  sweep->add_option("--out", out_csv, "Output CSV path")->required();

  auto* verify =
      app.add_subcommand("verify", "Load a chain file and verify every link");
  verify->add_option("--chain", chain_path, "Chain file path")->required();

  auto* inspect =
      app.add_subcommand("inspect", "Print a per-block summary of a chain file");
  inspect->add_option("--chain", chain_path, "Chain file path")->required();

  auto* demo = app.add_subcommand(
      "demo-51",
      "Illustrative: show the majority-stake detector and who wins each round");
  demo->add_option("--config", config_path, "Scenario config (JSON)")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) return cmd_run(config_path, out_csv, out_chain, out_state);
    if (sweep->parsed()) return cmd_sweep(config_path, axis, values, out_csv);
    if (verify->parsed()) return cmd_verify(chain_path);
    if (inspect->parsed()) return cmd_inspect(chain_path);
    if (demo->parsed()) return cmd_demo_51(config_path);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
