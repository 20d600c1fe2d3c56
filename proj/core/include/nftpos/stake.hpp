#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

#include "nftpos/identity.hpp"
#include "nftpos/rational.hpp"

namespace nftpos {

// Shared-resource (stake) accounting per NFT id. Stakes are integer units;
// exact ties are possible and broken deterministically at election time.
struct StakeLedger {
  std::map<std::uint64_t, std::uint64_t> stakes;  // only positive entries
  std::uint64_t total = 0;                        // cached sum

  bool operator==(const StakeLedger&) const = default;
};

struct ElectionResult {
  std::uint64_t round = 0;
  std::uint64_t validator_id = 0;
  std::uint64_t validator_stake = 0;
  Rational stake_fraction{0};  // validator_stake / total at election time

  bool operator==(const ElectionResult&) const = default;
};

/// Adds amount to the id's stake. Throws UnregisteredId, ZeroAmount or
/// StakeOverflow (total would exceed the 64-bit range).
void record_stake(StakeLedger& ledger, const IdentityRegistry& registry,
                  std::uint64_t nft_id, std::uint64_t amount);

/// Richest-stakeholder rule: the id with maximum stake wins; ties go to the
/// smallest id. Pure function of the ledger; the round number is only echoed
/// into the result. Throws NoStake when total == 0.
ElectionResult elect_validator(const StakeLedger& ledger, std::uint64_t round);

/// Credits the block reward. reward == 0 leaves the ledger untouched.
/// Throws UnregisteredId or StakeOverflow.
void apply_reward(StakeLedger& ledger, const IdentityRegistry& registry,
                  std::uint64_t validator_id, std::uint64_t reward);

/// The id whose stake fraction strictly exceeds threshold_num/threshold_den,
/// if any; at most one exists for thresholds >= 1/2. The comparison is exact
/// (128-bit cross-multiplication). Throws NoStake when total == 0.
std::optional<std::pair<std::uint64_t, Rational>> majority_stake_holder(
    const StakeLedger& ledger, std::uint64_t threshold_num = 51,
    std::uint64_t threshold_den = 100);

}  // namespace nftpos
