#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "bpcs/bitplane.hpp"

namespace bpcs {

/// Wire layout of the embedded container, a bit-exact external format:
///   magic "BPCS" | version 0x01 | flags | payload length u32 BE | CRC-32 u32 BE
/// followed by the payload bytes. The CRC covers the payload only; flags
/// bit 0 records the plane coding (1 = GrayCode), bits 1-7 are reserved zero.
struct ContainerHeader {
    static constexpr std::size_t kSize = 14;
    static constexpr std::uint8_t kVersion = 0x01;
    static constexpr std::array<std::uint8_t, 4> kMagic = {'B', 'P', 'C', 'S'};
    static constexpr std::uint8_t kFlagGrayCode = 0x01;

    std::uint8_t flags = 0;
    std::uint32_t payload_length = 0;
    std::uint32_t payload_crc32 = 0;

    PlaneCoding coding() const noexcept {
        return (flags & kFlagGrayCode) ? PlaneCoding::GrayCode : PlaneCoding::PureBinary;
    }
};

/// CRC-32 (IEEE/802.3): reflected polynomial 0xEDB88320, initial value
/// 0xFFFFFFFF, final XOR 0xFFFFFFFF.
std::uint32_t crc32(std::span<const std::uint8_t> data);

/// Header + payload bytes. Throws std::length_error when the payload does
/// not fit the 32-bit length field.
std::vector<std::uint8_t> build_container(std::span<const std::uint8_t> payload,
                                          PlaneCoding coding);

/// Parse the 14 leading bytes. Magic mismatch throws NotFoundError;
/// bad version or nonzero reserved bits throw CorruptionError.
ContainerHeader parse_container_header(std::span<const std::uint8_t> bytes);

/// Full inverse of build_container: validates header and CRC, returns the
/// payload. CRC mismatch and short input throw CorruptionError.
std::vector<std::uint8_t> parse_container(std::span<const std::uint8_t> container);

/// 63 payload bits, the content of one embedded patch. Bit j of `bits`
/// (j in [0, 63)) is the j-th bit of the stream carried by this block.
struct DataBlock {
    static constexpr int kBits = 63;
    std::uint64_t bits = 0;  // bit 63 always clear

    friend constexpr bool operator==(const DataBlock&, const DataBlock&) = default;
};

/// Number of 63-bit blocks needed for byte_count bytes: ceil(8n/63).
std::size_t block_count_for_bytes(std::size_t byte_count) noexcept;

/// Serialize bytes into blocks: each byte emitted most-significant-bit
/// first, chunked into 63-bit groups, final group zero-padded.
std::vector<DataBlock> pack_blocks(std::span<const std::uint8_t> bytes);

/// Recover byte_count bytes from the block stream (padding discarded).
/// Throws std::invalid_argument when the blocks cannot hold that many bytes.
std::vector<std::uint8_t> unpack_blocks(std::span<const DataBlock> blocks,
                                        std::size_t byte_count);

/// Map a block onto a patch: the conjugation flag bit (0,0) is written as 0
/// and the 63 block bits fill positions (0,1)..(7,7) in row-major order.
Patch block_to_patch(const DataBlock& block) noexcept;

/// Inverse: returns the flag read from (0,0) plus the 63 data bits.
std::pair<bool, DataBlock> patch_to_block(const Patch& patch) noexcept;

}  // namespace bpcs
