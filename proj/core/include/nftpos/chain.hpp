#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "nftpos/hash.hpp"
#include "nftpos/tx.hpp"

namespace nftpos {

// Canonical header encoding (92 bytes), all integers big-endian:
//   height u64 | prev_hash 32B | timestamp_ms u64 | validator_id u64 |
//   tx_count u32 | tx_root 32B
inline constexpr std::size_t kHeaderWireSize = 92;
inline constexpr std::uint32_t kDefaultMaxTxsPerBlock = 1000;

struct BlockHeader {
  std::uint64_t height = 0;
  Hash256 prev_hash{};  // all-zero for genesis
  std::uint64_t timestamp_ms = 0;
  std::uint64_t validator_id = 0;  // 0 reserved for genesis
  std::uint32_t tx_count = 0;
  Hash256 tx_root{};  // SHA-256 over the block body

  std::array<std::uint8_t, kHeaderWireSize> encode() const;
  static BlockHeader decode(std::span<const std::uint8_t> bytes);

  bool operator==(const BlockHeader&) const = default;
};

struct Block {
  BlockHeader header;
  std::vector<std::uint8_t> body;  // tx_count * 50 bytes

  // header bytes followed by body bytes
  std::vector<std::uint8_t> encode() const;
  static Block decode(std::span<const std::uint8_t> bytes);

  bool operator==(const Block&) const = default;
};

// A single linear chain rooted at genesis. tip_digest is the digest of the
// last header; append_block maintains it and verify_chain checks it, which
// makes every bit of the tip header tamper-evident even though no later
// block covers it.
struct Chain {
  std::vector<Block> blocks;
  Hash256 tip_digest{};

  const Block& tip() const { return blocks.back(); }
  std::size_t size() const { return blocks.size(); }

  bool operator==(const Chain&) const = default;
};

struct VerifyReport {
  bool ok = true;
  std::uint64_t failure_height = 0;  // meaningful when !ok
  std::string detail;

  explicit operator bool() const { return ok; }
};

/// SHA-256 of the canonical 92-byte header encoding.
Hash256 hash_header(const BlockHeader& header);

/// Height 0, zero prev hash, validator 0, empty body, timestamp 0.
Block make_genesis();

/// A chain holding exactly the genesis block.
Chain genesis_chain();

/// Returns the chain extended by one block containing the given
/// transactions. The argument is taken by value: callers keep their own
/// chain unless they move it in. Throws EmptyValidator, NonMonotoneTime or
/// OversizedBlock.
Chain append_block(Chain chain, std::span<const Transaction> txs,
                   std::uint64_t validator_id, std::uint64_t timestamp_ms,
                   std::uint32_t max_txs_per_block = kDefaultMaxTxsPerBlock);

/// Checks every structural invariant; failures are reported, never thrown.
/// A broken hash link between heights h and h+1 is attributed to height h,
/// so any single-bit tamper is reported at or before the tampered height.
VerifyReport verify_chain(const Chain& chain);

}  // namespace nftpos
