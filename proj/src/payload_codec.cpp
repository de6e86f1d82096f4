#include "bpcs/payload_codec.hpp"

#include <array>
#include <limits>
#include <stdexcept>
#include <string>

#include "bpcs/errors.hpp"

namespace bpcs {

namespace {

constexpr std::array<std::uint32_t, 256> make_crc_table() {
    std::array<std::uint32_t, 256> table{};
    for (std::uint32_t i = 0; i < 256; ++i) {
        std::uint32_t c = i;
        for (int k = 0; k < 8; ++k)
            c = (c & 1u) ? (0xEDB88320u ^ (c >> 1)) : (c >> 1);
        table[i] = c;
    }
    return table;
}

constexpr auto kCrcTable = make_crc_table();

void put_u32_be(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v >> 24));
    out.push_back(static_cast<std::uint8_t>(v >> 16));
    out.push_back(static_cast<std::uint8_t>(v >> 8));
    out.push_back(static_cast<std::uint8_t>(v));
}

std::uint32_t get_u32_be(std::span<const std::uint8_t> bytes, std::size_t offset) {
    return (static_cast<std::uint32_t>(bytes[offset]) << 24) |
           (static_cast<std::uint32_t>(bytes[offset + 1]) << 16) |
           (static_cast<std::uint32_t>(bytes[offset + 2]) << 8) |
           static_cast<std::uint32_t>(bytes[offset + 3]);
}

std::string hex_byte(std::uint8_t b) {
    static const char* digits = "0123456789abcdef";
    return std::string{"0x"} + digits[b >> 4] + digits[b & 0xF];
}

// kBitReverse[b] has bit j equal to bit 7-j of b, so a byte's MSB-first
// emission order becomes ascending bit positions. Involution.
constexpr std::array<std::uint8_t, 256> make_reverse_table() {
    std::array<std::uint8_t, 256> table{};
    for (unsigned b = 0; b < 256; ++b) {
        unsigned r = 0;
        for (int j = 0; j < 8; ++j)
            if (b & (1u << j))
                r |= 1u << (7 - j);
        table[b] = static_cast<std::uint8_t>(r);
    }
    return table;
}

constexpr auto kBitReverse = make_reverse_table();
constexpr std::uint64_t kBlockMask = (std::uint64_t{1} << DataBlock::kBits) - 1;

}  // namespace

std::uint32_t crc32(std::span<const std::uint8_t> data) {
    std::uint32_t c = 0xFFFFFFFFu;
    for (std::uint8_t b : data)
        c = kCrcTable[(c ^ b) & 0xFFu] ^ (c >> 8);
    return c ^ 0xFFFFFFFFu;
}

std::vector<std::uint8_t> build_container(std::span<const std::uint8_t> payload,
                                          PlaneCoding coding) {
    if (payload.size() > std::numeric_limits<std::uint32_t>::max())
        throw std::length_error("build_container: payload exceeds 2^32-1 bytes");
    std::vector<std::uint8_t> out;
    out.reserve(ContainerHeader::kSize + payload.size());
    out.insert(out.end(), ContainerHeader::kMagic.begin(), ContainerHeader::kMagic.end());
    out.push_back(ContainerHeader::kVersion);
    out.push_back(coding == PlaneCoding::GrayCode ? ContainerHeader::kFlagGrayCode : 0u);
    put_u32_be(out, static_cast<std::uint32_t>(payload.size()));
    put_u32_be(out, crc32(payload));
    out.insert(out.end(), payload.begin(), payload.end());
    return out;
}

ContainerHeader parse_container_header(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < ContainerHeader::kSize)
        throw NotFoundError("no payload found");
    for (std::size_t i = 0; i < ContainerHeader::kMagic.size(); ++i)
        if (bytes[i] != ContainerHeader::kMagic[i])
            throw NotFoundError("no payload found");
    ContainerHeader header;
    if (bytes[4] != ContainerHeader::kVersion)
        throw CorruptionError("unsupported container version " + hex_byte(bytes[4]));
    header.flags = bytes[5];
    if (header.flags & ~ContainerHeader::kFlagGrayCode)
        throw CorruptionError("reserved container flag bits set: " + hex_byte(header.flags));
    header.payload_length = get_u32_be(bytes, 6);
    header.payload_crc32 = get_u32_be(bytes, 10);
    return header;
}

std::vector<std::uint8_t> parse_container(std::span<const std::uint8_t> container) {
    const ContainerHeader header = parse_container_header(container);
    if (container.size() < ContainerHeader::kSize + header.payload_length)
        throw CorruptionError("container truncated: header says " +
                              std::to_string(header.payload_length) + " payload bytes, " +
                              std::to_string(container.size() - ContainerHeader::kSize) +
                              " present");
    const auto payload = container.subspan(ContainerHeader::kSize, header.payload_length);
    const std::uint32_t actual = crc32(payload);
    if (actual != header.payload_crc32)
        throw CorruptionError("payload CRC mismatch");
    return {payload.begin(), payload.end()};
}

std::size_t block_count_for_bytes(std::size_t byte_count) noexcept {
    const std::size_t bits = byte_count * 8;
    return (bits + DataBlock::kBits - 1) / DataBlock::kBits;
}

std::vector<DataBlock> pack_blocks(std::span<const std::uint8_t> bytes) {
    std::vector<DataBlock> blocks(block_count_for_bytes(bytes.size()));
    for (std::size_t i = 0; i < bytes.size(); ++i) {
        // stream bit 8i+j is bit j of the reversed byte
        const std::uint64_t rev = kBitReverse[bytes[i]];
        const std::size_t k = i * 8;
        const std::size_t block = k / DataBlock::kBits;
        const std::size_t offset = k % DataBlock::kBits;
        blocks[block].bits |= (rev << offset) & kBlockMask;
        if (offset + 8 > DataBlock::kBits)  // byte straddles two blocks
            blocks[block + 1].bits |= rev >> (DataBlock::kBits - offset);
    }
    return blocks;
}

std::vector<std::uint8_t> unpack_blocks(std::span<const DataBlock> blocks,
                                        std::size_t byte_count) {
    if (byte_count * 8 > blocks.size() * static_cast<std::size_t>(DataBlock::kBits))
        throw std::invalid_argument("unpack_blocks: " + std::to_string(blocks.size()) +
                                    " blocks cannot hold " + std::to_string(byte_count) +
                                    " bytes");
    std::vector<std::uint8_t> bytes(byte_count, 0);
    for (std::size_t i = 0; i < byte_count; ++i) {
        const std::size_t k = i * 8;
        const std::size_t block = k / DataBlock::kBits;
        const std::size_t offset = k % DataBlock::kBits;
        std::uint64_t rev = blocks[block].bits >> offset;
        if (offset + 8 > DataBlock::kBits)
            rev |= blocks[block + 1].bits << (DataBlock::kBits - offset);
        bytes[i] = kBitReverse[rev & 0xFFu];
    }
    return bytes;
}

Patch block_to_patch(const DataBlock& block) noexcept {
    // Flag bit (0,0) stays 0; block bit j lands at patch position j+1.
    return Patch::from_raw(block.bits << 1);
}

std::pair<bool, DataBlock> patch_to_block(const Patch& patch) noexcept {
    const std::uint64_t raw = patch.raw();
    return {(raw & 1u) != 0, DataBlock{raw >> 1}};
}

}  // namespace bpcs
