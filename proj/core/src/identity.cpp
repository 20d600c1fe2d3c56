#include "nftpos/identity.hpp"

#include <vector>

#include "nftpos/bytes.hpp"
#include "nftpos/errors.hpp"

namespace nftpos {

namespace {

// One message for both failure modes so rendered errors cannot be used to
// enumerate which ids exist.
constexpr const char* kAuthFailedMessage = "authentication failed";

}  // namespace

const NftIdentity& mint_identity(IdentityRegistry& registry,
                                 std::string_view owner_label,
                                 std::span<const std::uint8_t> secret) {
  if (secret.empty()) {
    fail(ErrorCode::EmptySecret, "secret must be non-empty");
  }
  if (owner_label.size() > kMaxOwnerLabelBytes) {
    fail(ErrorCode::LabelTooLong, "owner_label exceeds 64 bytes");
  }
  NftIdentity identity;
  identity.nft_id = registry.next_id++;
  identity.owner_label = std::string(owner_label);
  identity.credential_commitment = sha256(secret);
  auto [it, inserted] =
      registry.identities.emplace(identity.nft_id, std::move(identity));
  (void)inserted;  // next_id is monotone, collisions are impossible
  return it->second;
}

Hash256 session_token_for(std::uint64_t nft_id, const Hash256& commitment,
                          std::uint64_t issued_at_ms) {
  std::array<std::uint8_t, 8 + 32 + 8> buf{};
  put_u64_be(buf.data(), nft_id);
  std::copy(commitment.begin(), commitment.end(), buf.data() + 8);
  put_u64_be(buf.data() + 40, issued_at_ms);
  return sha256(buf);
}

Session authenticate(const IdentityRegistry& registry, std::uint64_t nft_id,
                     std::span<const std::uint8_t> secret,
                     std::uint64_t now_ms) {
  const auto it = registry.identities.find(nft_id);
  if (it == registry.identities.end()) {
    fail(ErrorCode::UnknownNft, kAuthFailedMessage);
  }
  if (sha256(secret) != it->second.credential_commitment) {
    fail(ErrorCode::BadCredential, kAuthFailedMessage);
  }
  Session session;
  session.nft_id = nft_id;
  session.issued_at_ms = now_ms;
  session.session_token =
      session_token_for(nft_id, it->second.credential_commitment, now_ms);
  return session;
}

bool is_registered(const IdentityRegistry& registry, std::uint64_t nft_id) {
  return registry.identities.contains(nft_id);
}

bool session_valid(const IdentityRegistry& registry, const Session& session) {
  const auto it = registry.identities.find(session.nft_id);
  if (it == registry.identities.end()) return false;
  return session.session_token ==
         session_token_for(session.nft_id, it->second.credential_commitment,
                           session.issued_at_ms);
}

}  // namespace nftpos
