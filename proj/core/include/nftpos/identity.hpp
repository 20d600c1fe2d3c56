#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <string>
#include <string_view>

#include "nftpos/hash.hpp"

namespace nftpos {

inline constexpr std::size_t kMaxOwnerLabelBytes = 64;

// One NFT per user; the token id doubles as the login principal. Id 0 is
// reserved for genesis/unauthenticated contexts and is never minted.
struct NftIdentity {
  std::uint64_t nft_id = 0;
  std::string owner_label;
  Hash256 credential_commitment{};  // SHA-256 of the user's secret

  bool operator==(const NftIdentity&) const = default;
};

struct IdentityRegistry {
  std::map<std::uint64_t, NftIdentity> identities;
  std::uint64_t next_id = 1;

  bool operator==(const IdentityRegistry&) const = default;
};

struct Session {
  std::uint64_t nft_id = 0;
  std::uint64_t issued_at_ms = 0;
  Hash256 session_token{};  // SHA-256(nft_id BE || commitment || issued_at BE)

  bool operator==(const Session&) const = default;
};

/// Mints a fresh identity with nft_id = registry.next_id.
/// Throws EmptySecret or LabelTooLong.
const NftIdentity& mint_identity(IdentityRegistry& registry,
                                 std::string_view owner_label,
                                 std::span<const std::uint8_t> secret);

/// Succeeds iff the id exists and SHA-256(secret) matches the stored
/// commitment. The UnknownNft and BadCredential failures carry identical
/// messages so callers cannot leak which ids exist.
Session authenticate(const IdentityRegistry& registry, std::uint64_t nft_id,
                     std::span<const std::uint8_t> secret,
                     std::uint64_t now_ms);

bool is_registered(const IdentityRegistry& registry, std::uint64_t nft_id);

Hash256 session_token_for(std::uint64_t nft_id, const Hash256& commitment,
                          std::uint64_t issued_at_ms);

/// True iff the session's token recomputes from the registered commitment.
bool session_valid(const IdentityRegistry& registry, const Session& session);

}  // namespace nftpos
