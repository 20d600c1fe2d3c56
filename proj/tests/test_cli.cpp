#include <doctest.h>

#include <cstdlib>
#include <fstream>
#include <string>
#include <sys/wait.h>

#include "helpers.hpp"
#include "nftpos/store.hpp"

using nftpos::test::TempDir;
using nftpos::test::read_bytes;

namespace {

struct CliResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

CliResult run_cli(const TempDir& dir, const std::string& args) {
  const auto log = dir.file("cli-log.txt");
  const std::string cmd = std::string(NFTPOS_CLI_PATH) + " " + args + " > " +
                          log.string() + " 2>&1";
  const int status = std::system(cmd.c_str());
  CliResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  std::ifstream in(log);
  result.output.assign(std::istreambuf_iterator<char>(in),
                       std::istreambuf_iterator<char>());
  return result;
}

void write_config(const std::filesystem::path& path, const std::string& json) {
  std::ofstream out(path);
  out << json;
}

}  // namespace

TEST_CASE("cli run writes CSV and chain and prints a summary") {
  TempDir dir("cli-run");
  write_config(dir.file("cfg.json"),
               R"({"seed": 2, "num_users": 4, "tx_rate_per_sec": 5})");

  const auto result = run_cli(
      dir, "run --config " + dir.file("cfg.json").string() + " --out " +
               dir.file("out.csv").string() + " --chain " +
               dir.file("chain.bin").string() + " --state " +
               dir.file("state.bin").string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("total_validated=") != std::string::npos);
  CHECK(result.output.find("mean_tps=") != std::string::npos);
  CHECK(result.output.find("cv_tps=") != std::string::npos);
  CHECK(std::filesystem::exists(dir.file("out.csv")));
  CHECK(std::filesystem::exists(dir.file("chain.bin")));
  CHECK(std::filesystem::exists(dir.file("state.bin")));

  // the stored chain loads and verifies
  CHECK(nftpos::load_chain(dir.file("chain.bin")).size() == 61);
  const auto [registry, ledger] = nftpos::load_snapshot(dir.file("state.bin"));
  CHECK(registry.identities.size() == 4);
  CHECK(ledger.total > 0);
}

TEST_CASE("cli exit codes are stable contracts") {
  TempDir dir("cli-codes");

  SUBCASE("invalid config value -> 1, message names the field") {
    write_config(dir.file("bad.json"), R"({"tx_rate_per_sec": -3})");
    const auto result = run_cli(
        dir, "run --config " + dir.file("bad.json").string() + " --out " +
                 dir.file("o.csv").string() + " --chain " +
                 dir.file("c.bin").string());
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("tx_rate_per_sec") != std::string::npos);
  }

  SUBCASE("unknown config field -> 1") {
    write_config(dir.file("bad.json"), R"({"speed": 3})");
    const auto result = run_cli(
        dir, "run --config " + dir.file("bad.json").string() + " --out " +
                 dir.file("o.csv").string() + " --chain " +
                 dir.file("c.bin").string());
    CHECK(result.exit_code == 1);
    CHECK(result.output.find("speed") != std::string::npos);
  }

  SUBCASE("missing config file -> 2") {
    const auto result = run_cli(
        dir, "run --config " + dir.file("absent.json").string() + " --out " +
                 dir.file("o.csv").string() + " --chain " +
                 dir.file("c.bin").string());
    CHECK(result.exit_code == 2);
  }

  SUBCASE("unwritable output path -> 2") {
    write_config(dir.file("cfg.json"), "{}");
    const auto result = run_cli(
        dir, "run --config " + dir.file("cfg.json").string() +
                 " --out /nonexistent-dir/out.csv --chain " +
                 dir.file("c.bin").string());
    CHECK(result.exit_code == 2);
  }

  SUBCASE("missing required flag -> 1") {
    const auto result = run_cli(dir, "run");
    CHECK(result.exit_code == 1);
  }
}

TEST_CASE("cli verify distinguishes intact, tampered and missing files") {
  TempDir dir("cli-verify");
  write_config(dir.file("cfg.json"), R"({"seed": 3, "duration_s": 10, "window_s": 10})");
  REQUIRE(run_cli(dir, "run --config " + dir.file("cfg.json").string() +
                           " --out " + dir.file("o.csv").string() +
                           " --chain " + dir.file("c.bin").string())
              .exit_code == 0);

  CHECK(run_cli(dir, "verify --chain " + dir.file("c.bin").string())
            .exit_code == 0);

  auto bytes = read_bytes(dir.file("c.bin"));
  bytes[bytes.size() / 2] ^= 0x10;
  nftpos::test::write_bytes(dir.file("c.bin"), bytes);
  const auto tampered =
      run_cli(dir, "verify --chain " + dir.file("c.bin").string());
  CHECK(tampered.exit_code == 3);
  CHECK(tampered.output.find("height") != std::string::npos);

  CHECK(run_cli(dir, "verify --chain " + dir.file("missing.bin").string())
            .exit_code == 2);
}

TEST_CASE("cli inspect prints one line per block") {
  TempDir dir("cli-inspect");
  write_config(dir.file("cfg.json"), R"({"duration_s": 5, "window_s": 5})");
  REQUIRE(run_cli(dir, "run --config " + dir.file("cfg.json").string() +
                           " --out " + dir.file("o.csv").string() +
                           " --chain " + dir.file("c.bin").string())
              .exit_code == 0);
  const auto result =
      run_cli(dir, "inspect --chain " + dir.file("c.bin").string());
  CHECK(result.exit_code == 0);
  CHECK(result.output.find("height=0") != std::string::npos);
  CHECK(result.output.find("height=5") != std::string::npos);
  CHECK(result.output.find("blocks=6") != std::string::npos);
}

TEST_CASE("cli sweep emits one labeled block per point") {
  TempDir dir("cli-sweep");
  write_config(dir.file("cfg.json"),
               R"({"seed": 7, "duration_s": 10, "window_s": 10})");
  const auto result = run_cli(
      dir, "sweep --config " + dir.file("cfg.json").string() +
               " --axis tx_rate_per_sec --values 5,10,20 --out " +
               dir.file("sweep.csv").string());
  CHECK(result.exit_code == 0);

  std::ifstream in(dir.file("sweep.csv"));
  std::string csv((std::istreambuf_iterator<char>(in)),
                  std::istreambuf_iterator<char>());
  CHECK(csv.find("tx_rate_per_sec=5,") != std::string::npos);
  CHECK(csv.find("tx_rate_per_sec=10,") != std::string::npos);
  CHECK(csv.find("tx_rate_per_sec=20,") != std::string::npos);
  // single header line
  CHECK(csv.find("label,window_index") == 0);
  CHECK(csv.find("label,window_index", 1) == std::string::npos);

  SUBCASE("unknown axis -> 1") {
    const auto bad = run_cli(
        dir, "sweep --config " + dir.file("cfg.json").string() +
                 " --axis block_interval_ms --values 5 --out " +
                 dir.file("x.csv").string());
    CHECK(bad.exit_code == 1);
  }

  SUBCASE("unparseable values -> 1") {
    const auto bad = run_cli(
        dir, "sweep --config " + dir.file("cfg.json").string() +
                 " --axis tx_rate_per_sec --values 5,abc --out " +
                 dir.file("x.csv").string());
    CHECK(bad.exit_code == 1);
  }
}

TEST_CASE("cli demo-51 reports the detector and the whale's share") {
  TempDir dir("cli-demo");

  SUBCASE("52% whale fires the detector and wins every block") {
    write_config(
        dir.file("whale.json"),
        R"({"seed": 5, "initial_stakes": {"kind": "one_whale", "total": 10000, "whale_fraction": 0.52}})");
    const auto result =
        run_cli(dir, "demo-51 --config " + dir.file("whale.json").string());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("majority_stake_holder=1") != std::string::npos);
    CHECK(result.output.find("whale_blocks_fraction=1.000000") !=
          std::string::npos);
  }

  SUBCASE("uniform stakes: detector silent, smallest id still wins") {
    write_config(dir.file("uniform.json"),
                 R"({"initial_stakes": {"kind": "uniform", "amount": 100}})");
    const auto result =
        run_cli(dir, "demo-51 --config " + dir.file("uniform.json").string());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("majority_stake_holder=none") !=
          std::string::npos);
    CHECK(result.output.find("whale=1 ") != std::string::npos);
    CHECK(result.output.find("whale_blocks_fraction=1.000000") !=
          std::string::npos);
  }

  SUBCASE("exactly 50% whale: detector silent, whale still wins argmax") {
    write_config(
        dir.file("half.json"),
        R"({"initial_stakes": {"kind": "one_whale", "total": 10000, "whale_fraction": 0.50}})");
    const auto result =
        run_cli(dir, "demo-51 --config " + dir.file("half.json").string());
    CHECK(result.exit_code == 0);
    CHECK(result.output.find("majority_stake_holder=none") !=
          std::string::npos);
    CHECK(result.output.find("whale_blocks_fraction=1.000000") !=
          std::string::npos);
  }
}

TEST_CASE("cli run is byte-deterministic across executions") {
  TempDir dir("cli-det");
  write_config(dir.file("cfg.json"),
               R"({"seed": 11, "tx_rate_per_sec": 20, "duration_s": 20, "window_s": 10})");
  for (const char* tag : {"a", "b"}) {
    REQUIRE(run_cli(dir, std::string("run --config ") +
                             dir.file("cfg.json").string() + " --out " +
                             dir.file(std::string("out-") + tag + ".csv").string() +
                             " --chain " +
                             dir.file(std::string("chain-") + tag + ".bin").string())
                .exit_code == 0);
  }
  CHECK(read_bytes(dir.file("out-a.csv")) == read_bytes(dir.file("out-b.csv")));
  CHECK(read_bytes(dir.file("chain-a.bin")) ==
        read_bytes(dir.file("chain-b.bin")));
}
