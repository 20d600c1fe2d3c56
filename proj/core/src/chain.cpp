#include "nftpos/chain.hpp"

#include <utility>

#include "nftpos/bytes.hpp"
#include "nftpos/errors.hpp"

namespace nftpos {

std::array<std::uint8_t, kHeaderWireSize> BlockHeader::encode() const {
  std::array<std::uint8_t, kHeaderWireSize> out{};
  put_u64_be(out.data(), height);
  std::copy(prev_hash.begin(), prev_hash.end(), out.data() + 8);
  put_u64_be(out.data() + 40, timestamp_ms);
  put_u64_be(out.data() + 48, validator_id);
  put_u32_be(out.data() + 56, tx_count);
  std::copy(tx_root.begin(), tx_root.end(), out.data() + 60);
  return out;
}

BlockHeader BlockHeader::decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() != kHeaderWireSize) {
    fail(ErrorCode::WrongLength, "header must be 92 bytes");
  }
  BlockHeader h;
  h.height = read_u64_be(bytes.data());
  std::copy(bytes.begin() + 8, bytes.begin() + 40, h.prev_hash.begin());
  h.timestamp_ms = read_u64_be(bytes.data() + 40);
  h.validator_id = read_u64_be(bytes.data() + 48);
  h.tx_count = read_u32_be(bytes.data() + 56);
  std::copy(bytes.begin() + 60, bytes.begin() + 92, h.tx_root.begin());
  return h;
}

std::vector<std::uint8_t> Block::encode() const {
  const auto hdr = header.encode();
  std::vector<std::uint8_t> out;
  out.reserve(hdr.size() + body.size());
  out.insert(out.end(), hdr.begin(), hdr.end());
  out.insert(out.end(), body.begin(), body.end());
  return out;
}

Block Block::decode(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < kHeaderWireSize) {
    fail(ErrorCode::CorruptRecord, "record shorter than a block header");
  }
  Block b;
  b.header = BlockHeader::decode(bytes.first(kHeaderWireSize));
  b.body.assign(bytes.begin() + kHeaderWireSize, bytes.end());
  return b;
}

Hash256 hash_header(const BlockHeader& header) {
  const auto encoded = header.encode();
  return sha256(encoded);
}

Block make_genesis() {
  Block genesis;
  genesis.header.tx_root = sha256({});  // empty body
  return genesis;
}

Chain genesis_chain() {
  Chain chain;
  chain.blocks.push_back(make_genesis());
  chain.tip_digest = hash_header(chain.blocks.back().header);
  return chain;
}

Chain append_block(Chain chain, std::span<const Transaction> txs,
                   std::uint64_t validator_id, std::uint64_t timestamp_ms,
                   std::uint32_t max_txs_per_block) {
  if (validator_id == 0) {
    fail(ErrorCode::EmptyValidator, "validator_id 0 is reserved for genesis");
  }
  if (chain.blocks.empty()) {
    fail(ErrorCode::ChainInvalid, "cannot append to an empty chain");
  }
  const BlockHeader& tip = chain.blocks.back().header;
  if (timestamp_ms < tip.timestamp_ms) {
    fail(ErrorCode::NonMonotoneTime,
         "timestamp " + std::to_string(timestamp_ms) + " precedes tip " +
             std::to_string(tip.timestamp_ms));
  }
  if (txs.size() > max_txs_per_block) {
    fail(ErrorCode::OversizedBlock,
         std::to_string(txs.size()) + " txs exceeds max_txs_per_block " +
             std::to_string(max_txs_per_block));
  }

  Block block;
  block.body.reserve(txs.size() * kTxWireSize);
  for (const Transaction& tx : txs) {
    const auto wire = serialize_tx(tx);
    block.body.insert(block.body.end(), wire.begin(), wire.end());
  }
  block.header.height = tip.height + 1;
  block.header.prev_hash = hash_header(tip);
  block.header.timestamp_ms = timestamp_ms;
  block.header.validator_id = validator_id;
  block.header.tx_count = static_cast<std::uint32_t>(txs.size());
  block.header.tx_root = sha256(block.body);

  chain.tip_digest = hash_header(block.header);
  chain.blocks.push_back(std::move(block));
  return chain;
}

namespace {

VerifyReport failure(std::uint64_t height, std::string detail) {
  return VerifyReport{false, height, std::move(detail)};
}

}  // namespace

VerifyReport verify_chain(const Chain& chain) {
  if (chain.blocks.empty()) {
    return failure(0, "chain has no blocks (missing genesis)");
  }

  const Block canonical = make_genesis();
  const Block& genesis = chain.blocks.front();
  if (genesis.header != canonical.header || genesis.body != canonical.body) {
    return failure(0, "genesis block is not canonical");
  }

  for (std::size_t i = 0; i < chain.blocks.size(); ++i) {
    const Block& block = chain.blocks[i];
    const BlockHeader& h = block.header;

    if (h.height != i) {
      return failure(i, "height " + std::to_string(h.height) +
                            " out of sequence (expected " + std::to_string(i) +
                            ")");
    }
    if (i > 0) {
      const BlockHeader& parent = chain.blocks[i - 1].header;
      if (h.validator_id == 0) {
        return failure(i, "validator_id 0 outside genesis");
      }
      if (h.prev_hash != hash_header(parent)) {
        // Attributed to the parent: either side of the link may have changed.
        return failure(i - 1, "hash link to height " + std::to_string(i) +
                                  " broken");
      }
      if (h.timestamp_ms < parent.timestamp_ms) {
        return failure(i, "timestamp decreases from parent");
      }
    }
    if (block.body.size() % kTxWireSize != 0 ||
        block.body.size() != std::size_t{h.tx_count} * kTxWireSize) {
      return failure(i, "body length does not match tx_count * 50");
    }
    if (h.tx_root != sha256(block.body)) {
      return failure(i, "tx_root does not match body digest");
    }
  }

  if (chain.tip_digest != hash_header(chain.blocks.back().header)) {
    return failure(chain.blocks.size() - 1, "tip digest mismatch");
  }
  return VerifyReport{};
}

}  // namespace nftpos
