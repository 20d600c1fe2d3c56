#pragma once

#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

#include "nftpos/bytes.hpp"
#include "nftpos/chain.hpp"
#include "nftpos/identity.hpp"
#include "nftpos/rng.hpp"
#include "nftpos/tx.hpp"

namespace nftpos::test {

// Unique scratch directory, removed on destruction.
struct TempDir {
  std::filesystem::path path;

  explicit TempDir(const std::string& tag) {
    path = std::filesystem::temp_directory_path() /
           ("nftpos-" + tag + "-" + std::to_string(::getpid()) + "-" +
            std::to_string(counter()++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::filesystem::path file(const std::string& name) const {
    return path / name;
  }

 private:
  static int& counter() {
    static int n = 0;
    return n;
  }
};

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline void write_bytes(const std::filesystem::path& p,
                        const std::vector<std::uint8_t>& bytes) {
  std::ofstream out(p, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
}

// Registry with n users labelled user-1..user-n, secret "user-k-secret".
struct Fixture {
  IdentityRegistry registry;
  std::vector<Session> sessions;

  explicit Fixture(std::uint32_t n) {
    for (std::uint32_t k = 1; k <= n; ++k) {
      const std::string label = "user-" + std::to_string(k);
      const std::string secret = label + "-secret";
      mint_identity(registry, label, as_bytes(secret));
      sessions.push_back(authenticate(registry, k, as_bytes(secret), 0));
    }
  }
};

// Chain of `blocks` appended blocks with rng-sized bodies (0..max_txs txs).
inline Chain random_chain(DetRng& rng, std::uint32_t blocks,
                          std::uint32_t max_txs, Fixture& fx, Mempool& pool) {
  Chain chain = genesis_chain();
  std::uint64_t t = 0;
  for (std::uint32_t b = 0; b < blocks; ++b) {
    const std::uint64_t n_txs = rng.uniform_index(max_txs + 1);
    std::vector<Transaction> txs;
    for (std::uint64_t i = 0; i < n_txs; ++i) {
      const auto sender =
          static_cast<std::uint32_t>(rng.uniform_index(fx.sessions.size()));
      std::array<std::uint8_t, 8> payload{};
      put_u64_be(payload.data(), rng.next_u64());
      txs.push_back(create_transaction(pool, fx.sessions[sender], fx.registry,
                                       payload, t));
    }
    t += rng.uniform_index(2000);
    const std::uint64_t validator = rng.uniform_index(fx.sessions.size()) + 1;
    chain = append_block(std::move(chain), txs, validator, t);
    pool.queue.clear();  // txs already consumed into the block
  }
  return chain;
}

}  // namespace nftpos::test
