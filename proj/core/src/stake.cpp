#include "nftpos/stake.hpp"

#include <limits>

#include "nftpos/errors.hpp"

namespace nftpos {

void record_stake(StakeLedger& ledger, const IdentityRegistry& registry,
                  std::uint64_t nft_id, std::uint64_t amount) {
  if (amount == 0) {
    fail(ErrorCode::ZeroAmount, "stake amount must be positive");
  }
  if (!is_registered(registry, nft_id)) {
    fail(ErrorCode::UnregisteredId,
         "nft id " + std::to_string(nft_id) + " is not registered");
  }
  if (amount > std::numeric_limits<std::uint64_t>::max() - ledger.total) {
    fail(ErrorCode::StakeOverflow, "total stake would exceed 64-bit range");
  }
  ledger.stakes[nft_id] += amount;
  ledger.total += amount;
}

ElectionResult elect_validator(const StakeLedger& ledger, std::uint64_t round) {
  if (ledger.total == 0) {
    fail(ErrorCode::NoStake, "no stake recorded; cannot elect a validator");
  }
  // std::map iterates in ascending id order, so keeping the first strict
  // maximum implements the smallest-id tie-break.
  std::uint64_t best_id = 0;
  std::uint64_t best_stake = 0;
  for (const auto& [id, stake] : ledger.stakes) {
    if (stake > best_stake) {
      best_id = id;
      best_stake = stake;
    }
  }
  if (ledger.total >
      static_cast<std::uint64_t>(std::numeric_limits<long long>::max())) {
    fail(ErrorCode::StakeOverflow,
         "total stake too large for an exact fraction");
  }
  ElectionResult result;
  result.round = round;
  result.validator_id = best_id;
  result.validator_stake = best_stake;
  result.stake_fraction = Rational(static_cast<long long>(best_stake),
                                   static_cast<long long>(ledger.total));
  return result;
}

void apply_reward(StakeLedger& ledger, const IdentityRegistry& registry,
                  std::uint64_t validator_id, std::uint64_t reward) {
  if (!is_registered(registry, validator_id)) {
    fail(ErrorCode::UnregisteredId,
         "nft id " + std::to_string(validator_id) + " is not registered");
  }
  if (reward == 0) return;
  if (reward > std::numeric_limits<std::uint64_t>::max() - ledger.total) {
    fail(ErrorCode::StakeOverflow, "total stake would exceed 64-bit range");
  }
  ledger.stakes[validator_id] += reward;
  ledger.total += reward;
}

std::optional<std::pair<std::uint64_t, Rational>> majority_stake_holder(
    const StakeLedger& ledger, std::uint64_t threshold_num,
    std::uint64_t threshold_den) {
  if (ledger.total == 0) {
    fail(ErrorCode::NoStake, "no stake recorded");
  }
  // For thresholds >= 1/2 at most one holder can qualify, and it must be the
  // argmax; checking only the election winner is exact.
  const ElectionResult winner = elect_validator(ledger, 0);
  const unsigned __int128 lhs =
      static_cast<unsigned __int128>(winner.validator_stake) * threshold_den;
  const unsigned __int128 rhs =
      static_cast<unsigned __int128>(ledger.total) * threshold_num;
  if (lhs > rhs) {
    return std::make_pair(winner.validator_id, winner.stake_fraction);
  }
  return std::nullopt;
}

}  // namespace nftpos
