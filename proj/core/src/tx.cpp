#include "nftpos/tx.hpp"

#include <algorithm>

#include "nftpos/bytes.hpp"
#include "nftpos/errors.hpp"

namespace nftpos {

std::array<std::uint8_t, kAuthTagSize> make_auth_tag(
    const Hash256& commitment, std::uint64_t nonce,
    std::span<const std::uint8_t> padded_payload) {
  std::array<std::uint8_t, 32 + 8 + kTxPayloadSize> buf{};
  std::copy(commitment.begin(), commitment.end(), buf.data());
  put_u64_be(buf.data() + 32, nonce);
  std::copy(padded_payload.begin(), padded_payload.end(), buf.data() + 40);
  const Hash256 digest = sha256(buf);
  std::array<std::uint8_t, kAuthTagSize> tag{};
  std::copy(digest.begin(), digest.begin() + kAuthTagSize, tag.begin());
  return tag;
}

Transaction create_transaction(Mempool& pool, const Session& session,
                               const IdentityRegistry& registry,
                               std::span<const std::uint8_t> payload,
                               std::uint64_t now_ms) {
  if (!session_valid(registry, session)) {
    fail(ErrorCode::InvalidSession, "session token does not verify");
  }
  if (payload.size() > kTxPayloadSize) {
    fail(ErrorCode::PayloadTooLarge,
         "payload " + std::to_string(payload.size()) + " bytes exceeds 18");
  }
  const Hash256& commitment =
      registry.identities.at(session.nft_id).credential_commitment;

  Transaction tx;
  tx.sender_id = session.nft_id;
  tx.created_at_ms = now_ms;
  tx.nonce = pool.next_nonce[session.nft_id]++;
  std::copy(payload.begin(), payload.end(), tx.payload.begin());
  tx.auth_tag = make_auth_tag(commitment, tx.nonce, tx.payload);
  pool.queue.push_back(tx);
  return tx;
}

std::array<std::uint8_t, kTxWireSize> serialize_tx(const Transaction& tx) {
  std::array<std::uint8_t, kTxWireSize> out{};
  put_u64_be(out.data(), tx.nonce);
  put_u64_be(out.data() + 8, tx.sender_id);
  put_u64_be(out.data() + 16, tx.created_at_ms);
  std::copy(tx.payload.begin(), tx.payload.end(), out.data() + 24);
  std::copy(tx.auth_tag.begin(), tx.auth_tag.end(), out.data() + 42);
  return out;
}

Transaction deserialize_tx(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kTxWireSize) {
    fail(ErrorCode::WrongLength, "transaction must be exactly 50 bytes, got " +
                                     std::to_string(bytes.size()));
  }
  Transaction tx;
  tx.nonce = read_u64_be(bytes.data());
  tx.sender_id = read_u64_be(bytes.data() + 8);
  tx.created_at_ms = read_u64_be(bytes.data() + 16);
  std::copy(bytes.begin() + 24, bytes.begin() + 42, tx.payload.begin());
  std::copy(bytes.begin() + 42, bytes.begin() + 50, tx.auth_tag.begin());
  return tx;
}

bool validate_tx(const Transaction& tx, const IdentityRegistry& registry) {
  const auto it = registry.identities.find(tx.sender_id);
  if (it == registry.identities.end()) return false;
  return tx.auth_tag ==
         make_auth_tag(it->second.credential_commitment, tx.nonce, tx.payload);
}

std::vector<Transaction> drain_for_block(Mempool& pool, std::size_t max_n) {
  const std::size_t n = std::min(max_n, pool.queue.size());
  std::vector<Transaction> out;
  out.reserve(n);
  out.insert(out.end(), pool.queue.begin(), pool.queue.begin() + n);
  pool.queue.erase(pool.queue.begin(), pool.queue.begin() + n);
  return out;
}

}  // namespace nftpos
