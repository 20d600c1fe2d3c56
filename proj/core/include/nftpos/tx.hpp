#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <map>
#include <span>
#include <vector>

#include "nftpos/identity.hpp"

namespace nftpos {

// Fixed 50-byte wire layout, all integers big-endian:
//   bytes 0-7 nonce | 8-15 sender_id | 16-23 created_at_ms |
//   24-41 payload (18 bytes, zero-padded) | 42-49 auth_tag
inline constexpr std::size_t kTxWireSize = 50;
inline constexpr std::size_t kTxPayloadSize = 18;
inline constexpr std::size_t kAuthTagSize = 8;

struct Transaction {
  std::uint64_t nonce = 0;
  std::uint64_t sender_id = 0;
  std::uint64_t created_at_ms = 0;
  std::array<std::uint8_t, kTxPayloadSize> payload{};
  std::array<std::uint8_t, kAuthTagSize> auth_tag{};

  bool operator==(const Transaction&) const = default;
};

// FIFO buffer of authenticated transactions awaiting block inclusion, plus
// the per-sender nonce counters.
struct Mempool {
  std::deque<Transaction> queue;
  std::map<std::uint64_t, std::uint64_t> next_nonce;

  bool operator==(const Mempool&) const = default;
};

/// First 8 bytes of SHA-256(commitment || nonce BE || payload).
std::array<std::uint8_t, kAuthTagSize> make_auth_tag(
    const Hash256& commitment, std::uint64_t nonce,
    std::span<const std::uint8_t> padded_payload);

/// Builds, tags and enqueues a transaction for the session's identity.
/// Throws InvalidSession or PayloadTooLarge.
Transaction create_transaction(Mempool& pool, const Session& session,
                               const IdentityRegistry& registry,
                               std::span<const std::uint8_t> payload,
                               std::uint64_t now_ms);

std::array<std::uint8_t, kTxWireSize> serialize_tx(const Transaction& tx);

/// Field-wise inverse of serialize_tx. Structural only: the auth tag is not
/// checked here (that is validate_tx's job). Throws WrongLength.
Transaction deserialize_tx(std::span<const std::uint8_t> bytes);

/// True iff the sender is registered and the auth tag recomputes.
bool validate_tx(const Transaction& tx, const IdentityRegistry& registry);

/// Removes and returns up to max_n oldest transactions, FIFO order.
std::vector<Transaction> drain_for_block(Mempool& pool, std::size_t max_n);

}  // namespace nftpos
