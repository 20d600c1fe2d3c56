#include "nftpos/store.hpp"

#include <cstring>
#include <fstream>
#include <string>
#include <system_error>
#include <vector>

#include "nftpos/bytes.hpp"
#include "nftpos/errors.hpp"

namespace nftpos {

namespace {

std::vector<std::uint8_t> read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    fail(ErrorCode::IoFailure, "cannot open " + path.string());
  }
  std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                  std::istreambuf_iterator<char>());
  if (in.bad()) {
    fail(ErrorCode::IoFailure, "read failed for " + path.string());
  }
  return bytes;
}

void write_file_atomic(const std::filesystem::path& path,
                       std::span<const std::uint8_t> bytes) {
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      fail(ErrorCode::IoFailure, "cannot create " + tmp.string());
    }
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) {
      fail(ErrorCode::IoFailure, "write failed for " + tmp.string());
    }
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) {
    std::filesystem::remove(tmp, ec);
    fail(ErrorCode::IoFailure, "rename to " + path.string() + " failed");
  }
}

void append_record(std::vector<std::uint8_t>& out,
                   std::span<const std::uint8_t> payload) {
  std::uint8_t len[4];
  put_u32_be(len, static_cast<std::uint32_t>(payload.size()));
  out.insert(out.end(), len, len + 4);
  out.insert(out.end(), payload.begin(), payload.end());
}

void check_header(std::span<const std::uint8_t> bytes, const char magic[4],
                  std::uint16_t version, const std::string& what) {
  if (bytes.size() < 6 || std::memcmp(bytes.data(), magic, 4) != 0) {
    fail(ErrorCode::BadMagic, what + ": bad magic");
  }
  if (read_u16_be(bytes.data() + 4) != version) {
    fail(ErrorCode::UnsupportedVersion,
         what + ": unsupported version " +
             std::to_string(read_u16_be(bytes.data() + 4)));
  }
}

// Walks [u32 len | payload] records, invoking fn(offset, payload).
template <typename Fn>
void for_each_record(std::span<const std::uint8_t> bytes, std::size_t start,
                     Fn&& fn) {
  std::size_t off = start;
  while (off < bytes.size()) {
    if (bytes.size() - off < 4) {
      fail(ErrorCode::CorruptRecord,
           "truncated record length at offset " + std::to_string(off));
    }
    const std::uint32_t len = read_u32_be(bytes.data() + off);
    if (bytes.size() - off - 4 < len) {
      fail(ErrorCode::CorruptRecord,
           "truncated record at offset " + std::to_string(off));
    }
    fn(off, bytes.subspan(off + 4, len));
    off += 4 + len;
  }
}

std::vector<std::uint8_t> encode_chain_file(const Chain& chain) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kChainMagic, kChainMagic + 4);
  std::uint8_t ver[2];
  put_u16_be(ver, kChainVersion);
  out.insert(out.end(), ver, ver + 2);
  for (const Block& block : chain.blocks) {
    append_record(out, block.encode());
  }
  return out;
}

}  // namespace

std::filesystem::path tip_sidecar_path(
    const std::filesystem::path& chain_path) {
  std::filesystem::path p = chain_path;
  p += ".tip";
  return p;
}

void store_chain(const Chain& chain, const std::filesystem::path& path) {
  const VerifyReport report = verify_chain(chain);
  if (!report.ok) {
    fail(ErrorCode::InvalidChain,
         "refusing to store invalid chain (height " +
             std::to_string(report.failure_height) + ": " + report.detail +
             ")");
  }
  write_file_atomic(path, encode_chain_file(chain));
  write_file_atomic(tip_sidecar_path(path), chain.tip_digest);
}

Chain load_chain(const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  check_header(bytes, kChainMagic, kChainVersion, "chain file");

  Chain chain;
  for_each_record(bytes, 6, [&](std::size_t off, auto payload) {
    if (payload.size() < kHeaderWireSize) {
      fail(ErrorCode::CorruptRecord,
           "record at offset " + std::to_string(off) +
               " is shorter than a block header");
    }
    chain.blocks.push_back(Block::decode(payload));
  });
  if (chain.blocks.empty()) {
    fail(ErrorCode::ChainInvalid, "chain file holds no blocks");
  }
  chain.tip_digest = hash_header(chain.blocks.back().header);

  const VerifyReport report = verify_chain(chain);
  if (!report.ok) {
    fail(ErrorCode::ChainInvalid, "invalid chain at height " +
                                      std::to_string(report.failure_height) +
                                      ": " + report.detail);
  }

  const auto sidecar = tip_sidecar_path(path);
  if (std::filesystem::exists(sidecar)) {
    const std::vector<std::uint8_t> tip = read_file(sidecar);
    if (tip.size() != chain.tip_digest.size() ||
        !std::equal(tip.begin(), tip.end(), chain.tip_digest.begin())) {
      fail(ErrorCode::ChainInvalid,
           "invalid chain at height " +
               std::to_string(chain.blocks.back().header.height) +
               ": tip digest does not match sidecar");
    }
  }
  return chain;
}

void append_block_to_file(const std::filesystem::path& path,
                          const Block& block) {
  const bool fresh =
      !std::filesystem::exists(path) || std::filesystem::file_size(path) == 0;
  if (fresh) {
    static const Hash256 kZero{};
    if (block.header.height != 0 || block.header.prev_hash != kZero) {
      fail(ErrorCode::TipMismatch,
           "empty store can only be bootstrapped with a genesis block");
    }
    std::vector<std::uint8_t> out;
    out.insert(out.end(), kChainMagic, kChainMagic + 4);
    std::uint8_t ver[2];
    put_u16_be(ver, kChainVersion);
    out.insert(out.end(), ver, ver + 2);
    append_record(out, block.encode());
    write_file_atomic(path, out);
    write_file_atomic(tip_sidecar_path(path), hash_header(block.header));
    return;
  }

  const std::vector<std::uint8_t> bytes = read_file(path);
  check_header(bytes, kChainMagic, kChainVersion, "chain file");
  BlockHeader tip;
  bool have_tip = false;
  for_each_record(bytes, 6, [&](std::size_t off, auto payload) {
    if (payload.size() < kHeaderWireSize) {
      fail(ErrorCode::CorruptRecord,
           "record at offset " + std::to_string(off) +
               " is shorter than a block header");
    }
    tip = BlockHeader::decode(payload.first(kHeaderWireSize));
    have_tip = true;
  });
  if (!have_tip || block.header.prev_hash != hash_header(tip)) {
    fail(ErrorCode::TipMismatch,
         "block prev_hash does not match the stored tip");
  }

  std::vector<std::uint8_t> record;
  append_record(record, block.encode());
  {
    std::ofstream out(path, std::ios::binary | std::ios::app);
    if (!out) {
      fail(ErrorCode::IoFailure, "cannot open " + path.string());
    }
    out.write(reinterpret_cast<const char*>(record.data()),
              static_cast<std::streamsize>(record.size()));
    if (!out) {
      fail(ErrorCode::IoFailure, "append failed for " + path.string());
    }
  }
  write_file_atomic(tip_sidecar_path(path), hash_header(block.header));
}

void store_snapshot(const IdentityRegistry& registry, const StakeLedger& ledger,
                    const std::filesystem::path& path) {
  std::vector<std::uint8_t> out;
  out.insert(out.end(), kSnapshotMagic, kSnapshotMagic + 4);
  std::uint8_t ver[2];
  put_u16_be(ver, kSnapshotVersion);
  out.insert(out.end(), ver, ver + 2);

  std::vector<std::uint8_t> rec;
  rec.resize(1 + 8);
  rec[0] = 'N';
  put_u64_be(rec.data() + 1, registry.next_id);
  append_record(out, rec);

  for (const auto& [id, identity] : registry.identities) {
    rec.assign(1 + 8 + 32 + 2 + identity.owner_label.size(), 0);
    rec[0] = 'I';
    put_u64_be(rec.data() + 1, id);
    std::copy(identity.credential_commitment.begin(),
              identity.credential_commitment.end(), rec.data() + 9);
    put_u16_be(rec.data() + 41,
               static_cast<std::uint16_t>(identity.owner_label.size()));
    std::copy(identity.owner_label.begin(), identity.owner_label.end(),
              rec.begin() + 43);
    append_record(out, rec);
  }
  for (const auto& [id, stake] : ledger.stakes) {
    rec.assign(1 + 8 + 8, 0);
    rec[0] = 'S';
    put_u64_be(rec.data() + 1, id);
    put_u64_be(rec.data() + 9, stake);
    append_record(out, rec);
  }
  write_file_atomic(path, out);
}

std::pair<IdentityRegistry, StakeLedger> load_snapshot(
    const std::filesystem::path& path) {
  const std::vector<std::uint8_t> bytes = read_file(path);
  check_header(bytes, kSnapshotMagic, kSnapshotVersion, "snapshot file");

  IdentityRegistry registry;
  StakeLedger ledger;
  bool have_next_id = false;
  for_each_record(bytes, 6, [&](std::size_t off, auto payload) {
    const auto corrupt = [off](const std::string& why) {
      fail(ErrorCode::CorruptRecord,
           "record at offset " + std::to_string(off) + ": " + why);
    };
    if (payload.empty()) corrupt("empty record");
    switch (payload[0]) {
      case 'N': {
        if (payload.size() != 9) corrupt("bad counter record size");
        registry.next_id = read_u64_be(payload.data() + 1);
        have_next_id = true;
        break;
      }
      case 'I': {
        if (payload.size() < 43) corrupt("identity record too short");
        NftIdentity identity;
        identity.nft_id = read_u64_be(payload.data() + 1);
        std::copy(payload.begin() + 9, payload.begin() + 41,
                  identity.credential_commitment.begin());
        const std::uint16_t label_len = read_u16_be(payload.data() + 41);
        if (payload.size() != std::size_t{43} + label_len) {
          corrupt("identity label length mismatch");
        }
        identity.owner_label.assign(payload.begin() + 43, payload.end());
        if (!registry.identities.emplace(identity.nft_id, identity).second) {
          fail(ErrorCode::SnapshotInvalid,
               "duplicate identity id " + std::to_string(identity.nft_id));
        }
        break;
      }
      case 'S': {
        if (payload.size() != 17) corrupt("bad stake record size");
        const std::uint64_t id = read_u64_be(payload.data() + 1);
        const std::uint64_t stake = read_u64_be(payload.data() + 9);
        ledger.stakes[id] = stake;
        ledger.total += stake;
        break;
      }
      default:
        corrupt("unknown record tag");
    }
  });

  if (!have_next_id) {
    fail(ErrorCode::SnapshotInvalid, "missing next_id record");
  }
  for (const auto& [id, identity] : registry.identities) {
    if (id == 0 || id >= registry.next_id) {
      fail(ErrorCode::SnapshotInvalid,
           "identity id " + std::to_string(id) + " violates the id counter");
    }
    (void)identity;
  }
  for (const auto& [id, stake] : ledger.stakes) {
    if (!is_registered(registry, id)) {
      fail(ErrorCode::SnapshotInvalid,
           "stake entry for unregistered id " + std::to_string(id));
    }
    (void)stake;
  }
  return {std::move(registry), std::move(ledger)};
}

}  // namespace nftpos
