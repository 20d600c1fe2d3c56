#pragma once

#include <filesystem>
#include <utility>

#include "nftpos/chain.hpp"
#include "nftpos/identity.hpp"
#include "nftpos/stake.hpp"

namespace nftpos {

// Append-only chain file:
//   magic "NFTC" | version u16 BE (= 1) | records: repeated [u32 BE length |
//   block bytes]
// A 32-byte sidecar at <path>.tip holds the tip header digest. The record
// format has no slot that covers the final header, so without the sidecar a
// flipped bit in the tip's timestamp or validator fields could go unnoticed;
// load_chain enforces the sidecar whenever it is present.
inline constexpr char kChainMagic[4] = {'N', 'F', 'T', 'C'};
inline constexpr std::uint16_t kChainVersion = 1;

// Registry/ledger snapshot, same framing in a sibling format:
//   magic "NFTS" | version u16 BE (= 1) | records
inline constexpr char kSnapshotMagic[4] = {'N', 'F', 'T', 'S'};
inline constexpr std::uint16_t kSnapshotVersion = 1;

std::filesystem::path tip_sidecar_path(const std::filesystem::path& chain_path);

/// Atomically writes the chain (temp file + rename) plus the tip sidecar.
/// Byte-deterministic for equal chains. Throws InvalidChain if the chain
/// fails verification, IoFailure on filesystem errors.
void store_chain(const Chain& chain, const std::filesystem::path& path);

/// Parses, rebuilds and verifies; returns only verified chains. Throws
/// IoFailure, BadMagic, UnsupportedVersion, CorruptRecord (with byte
/// offset) or ChainInvalid (with height).
Chain load_chain(const std::filesystem::path& path);

/// Appends one record; prior bytes untouched. On a missing/empty file the
/// block must be a genesis block. Throws TipMismatch or IoFailure.
void append_block_to_file(const std::filesystem::path& path,
                          const Block& block);

/// Registry + ledger snapshot, atomic and byte-deterministic.
void store_snapshot(const IdentityRegistry& registry,
                    const StakeLedger& ledger,
                    const std::filesystem::path& path);

std::pair<IdentityRegistry, StakeLedger> load_snapshot(
    const std::filesystem::path& path);

}  // namespace nftpos
