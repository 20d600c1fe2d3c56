#pragma once

#include <stdexcept>
#include <string>

namespace nftpos {

enum class ErrorCode {
  // chain
  EmptyValidator,
  NonMonotoneTime,
  OversizedBlock,
  // identity
  EmptySecret,
  LabelTooLong,
  UnknownNft,
  BadCredential,
  // stake
  UnregisteredId,
  ZeroAmount,
  StakeOverflow,
  NoStake,
  // transactions
  InvalidSession,
  PayloadTooLarge,
  WrongLength,
  // simulation
  ConfigInvalid,
  UnknownAxis,
  // metrics
  ZeroDuration,
  BadWindow,
  // persistence
  IoFailure,
  InvalidChain,
  BadMagic,
  UnsupportedVersion,
  CorruptRecord,
  ChainInvalid,
  TipMismatch,
  SnapshotInvalid,
};

const char* error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) {
  throw Error(code, message);
}

}  // namespace nftpos
