#include "nftpos/errors.hpp"

namespace nftpos {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyValidator: return "EmptyValidator";
    case ErrorCode::NonMonotoneTime: return "NonMonotoneTime";
    case ErrorCode::OversizedBlock: return "OversizedBlock";
    case ErrorCode::EmptySecret: return "EmptySecret";
    case ErrorCode::LabelTooLong: return "LabelTooLong";
    case ErrorCode::UnknownNft: return "UnknownNft";
    case ErrorCode::BadCredential: return "BadCredential";
    case ErrorCode::UnregisteredId: return "UnregisteredId";
    case ErrorCode::ZeroAmount: return "ZeroAmount";
    case ErrorCode::StakeOverflow: return "StakeOverflow";
    case ErrorCode::NoStake: return "NoStake";
    case ErrorCode::InvalidSession: return "InvalidSession";
    case ErrorCode::PayloadTooLarge: return "PayloadTooLarge";
    case ErrorCode::WrongLength: return "WrongLength";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
    case ErrorCode::UnknownAxis: return "UnknownAxis";
    case ErrorCode::ZeroDuration: return "ZeroDuration";
    case ErrorCode::BadWindow: return "BadWindow";
    case ErrorCode::IoFailure: return "IoFailure";
    case ErrorCode::InvalidChain: return "InvalidChain";
    case ErrorCode::BadMagic: return "BadMagic";
    case ErrorCode::UnsupportedVersion: return "UnsupportedVersion";
    case ErrorCode::CorruptRecord: return "CorruptRecord";
    case ErrorCode::ChainInvalid: return "ChainInvalid";
    case ErrorCode::TipMismatch: return "TipMismatch";
    case ErrorCode::SnapshotInvalid: return "SnapshotInvalid";
  }
  return "Unknown";
}

}  // namespace nftpos
