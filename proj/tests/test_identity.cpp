#include <doctest.h>

#include <set>
#include <string>

#include "nftpos/bytes.hpp"
#include "nftpos/errors.hpp"
#include "nftpos/identity.hpp"
#include "nftpos/rng.hpp"

using namespace nftpos;

TEST_CASE("mint assigns sequential ids starting at 1") {
  IdentityRegistry registry;
  const NftIdentity& alice = mint_identity(registry, "alice", as_bytes("s1"));
  const NftIdentity& bob = mint_identity(registry, "bob", as_bytes("s2"));
  CHECK(alice.nft_id == 1);
  CHECK(bob.nft_id == 2);
  CHECK(registry.next_id == 3);
  CHECK(alice.credential_commitment == sha256(as_bytes("s1")));
}

TEST_CASE("mint preconditions") {
  IdentityRegistry registry;
  CHECK_THROWS_AS(mint_identity(registry, "carol", {}), Error);
  const std::string long_label(65, 'x');
  try {
    mint_identity(registry, long_label, as_bytes("s"));
    FAIL("expected LabelTooLong");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LabelTooLong);
  }
  // 64 bytes is still fine
  CHECK_NOTHROW(mint_identity(registry, std::string(64, 'y'), as_bytes("s")));
}

TEST_CASE("property: ids stay unique and the registry is append-only") {
  IdentityRegistry registry;
  std::set<std::uint64_t> ids;
  for (int i = 0; i < 10000; ++i) {
    const auto& identity =
        mint_identity(registry, "u" + std::to_string(i), as_bytes("s"));
    CHECK(ids.insert(identity.nft_id).second);
  }
  CHECK(registry.identities.size() == 10000);
  CHECK(registry.next_id == 10001);
  // earlier entries are untouched by later mints
  CHECK(registry.identities.at(1).owner_label == "u0");
}

TEST_CASE("authenticate success and the documented token derivation") {
  IdentityRegistry registry;
  mint_identity(registry, "alice", as_bytes("s1"));

  const Session session = authenticate(registry, 1, as_bytes("s1"), 12345);
  CHECK(session.nft_id == 1);
  CHECK(session.issued_at_ms == 12345);
  // pinned from an independent SHA-256 over (id BE || commitment || t BE)
  CHECK(to_hex(session.session_token) ==
        "e3fa11e7c66c5b176b76d02bc240d88b0553748b9bb283985899fae8f76b6b43");

  // same inputs, same token
  const Session again = authenticate(registry, 1, as_bytes("s1"), 12345);
  CHECK(again.session_token == session.session_token);
  CHECK(session_valid(registry, session));
}

TEST_CASE("authenticate failures are externally indistinguishable") {
  IdentityRegistry registry;
  mint_identity(registry, "alice", as_bytes("s1"));

  std::string unknown_msg, bad_msg;
  try {
    authenticate(registry, 99, as_bytes("s1"), 0);
    FAIL("expected UnknownNft");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownNft);
    unknown_msg = e.what();
  }
  try {
    authenticate(registry, 1, as_bytes("wrong"), 0);
    FAIL("expected BadCredential");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::BadCredential);
    bad_msg = e.what();
  }
  // distinct codes internally, identical rendered message
  CHECK(unknown_msg == bad_msg);
}

TEST_CASE("is_registered") {
  IdentityRegistry registry;
  mint_identity(registry, "alice", as_bytes("s1"));
  CHECK(is_registered(registry, 1));
  CHECK_FALSE(is_registered(registry, 0));  // reserved
  CHECK_FALSE(is_registered(registry, 123456789));
}

TEST_CASE("property: random wrong secrets never authenticate") {
  IdentityRegistry registry;
  mint_identity(registry, "alice", as_bytes("s1"));
  DetRng rng(11);
  int failures = 0;
  for (int i = 0; i < 100000; ++i) {
    std::array<std::uint8_t, 16> secret{};
    put_u64_be(secret.data(), rng.next_u64());
    put_u64_be(secret.data() + 8, rng.next_u64());
    try {
      authenticate(registry, 1, secret, 0);
    } catch (const Error&) {
      ++failures;
    }
  }
  CHECK(failures == 100000);
}
