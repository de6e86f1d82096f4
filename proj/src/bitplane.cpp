#include "bpcs/bitplane.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>
#include <string>

namespace bpcs {

std::uint8_t to_gray(std::uint8_t b) noexcept {
    return static_cast<std::uint8_t>(b ^ (b >> 1));
}

std::uint8_t from_gray(std::uint8_t g) noexcept {
    // Prefix-XOR inverse of the reflected Gray code.
    std::uint8_t b = g;
    b ^= static_cast<std::uint8_t>(b >> 1);
    b ^= static_cast<std::uint8_t>(b >> 2);
    b ^= static_cast<std::uint8_t>(b >> 4);
    return b;
}

int complexity(const Patch& patch) noexcept {
    const std::uint64_t b = patch.raw();
    // Horizontal pairs (r,c)-(r,c+1): XOR against the next column and drop
    // column 7 of every row. Vertical pairs (r,c)-(r+1,c): XOR against the
    // next row and drop row 7.
    const int horizontal = std::popcount((b ^ (b >> 1)) & 0x7F7F7F7F7F7F7F7Full);
    const int vertical = std::popcount((b ^ (b >> 8)) & 0x00FFFFFFFFFFFFFFull);
    return horizontal + vertical;
}

long long max_complexity(int side) {
    if (side < 1)
        throw std::domain_error("max_complexity: side must be >= 1, got " + std::to_string(side));
    return 2ll * side * (side - 1);
}

static void check_channel(const ByteGrid& channel) {
    if (channel.width < 1 || channel.height < 1)
        throw std::invalid_argument("decompose: channel grid is empty");
    const auto expected =
        static_cast<std::size_t>(channel.width) * static_cast<std::size_t>(channel.height);
    if (channel.values.size() != expected)
        throw std::invalid_argument("decompose: channel size does not match its dimensions");
}

BitPlaneStack decompose(const ByteGrid& channel, PlaneCoding coding) {
    check_channel(channel);
    BitPlaneStack stack;
    stack.width = channel.width;
    stack.height = channel.height;
    stack.coding = coding;
    const std::size_t n = channel.values.size();
    std::uint8_t* planes[8];
    for (int p = 0; p < 8; ++p) {
        stack.planes[p].width = channel.width;
        stack.planes[p].height = channel.height;
        stack.planes[p].bits.resize(n);
        planes[p] = stack.planes[p].bits.data();
    }
    const std::uint8_t* values = channel.values.data();
    std::vector<std::uint8_t> gray_values;
    if (coding == PlaneCoding::GrayCode) {
        gray_values.resize(n);
        for (std::size_t i = 0; i < n; ++i)
            gray_values[i] = to_gray(values[i]);
        values = gray_values.data();
    }
    // One linear pass per plane vectorizes far better than a per-pixel scatter.
    for (int p = 0; p < 8; ++p) {
        std::uint8_t* dst = planes[p];
        for (std::size_t i = 0; i < n; ++i)
            dst[i] = (values[i] >> p) & 1u;
    }
    return stack;
}

ByteGrid recompose(const BitPlaneStack& stack) {
    ByteGrid channel;
    channel.width = stack.width;
    channel.height = stack.height;
    const std::size_t n =
        static_cast<std::size_t>(stack.width) * static_cast<std::size_t>(stack.height);
    if (stack.width < 1 || stack.height < 1)
        throw std::invalid_argument("recompose: stack is empty");
    channel.values.resize(n);
    const std::uint8_t* planes[8];
    for (int p = 0; p < 8; ++p) {
        if (stack.planes[p].bits.size() != n)
            throw std::invalid_argument("recompose: plane " + std::to_string(p) +
                                        " does not match the stack dimensions");
        planes[p] = stack.planes[p].bits.data();
    }
    std::uint8_t* values = channel.values.data();
    const bool gray = stack.coding == PlaneCoding::GrayCode;
    for (std::size_t i = 0; i < n; ++i) {
        const std::uint8_t v = static_cast<std::uint8_t>(
            (planes[0][i] & 1u) | ((planes[1][i] & 1u) << 1) | ((planes[2][i] & 1u) << 2) |
            ((planes[3][i] & 1u) << 3) | ((planes[4][i] & 1u) << 4) |
            ((planes[5][i] & 1u) << 5) | ((planes[6][i] & 1u) << 6) |
            ((planes[7][i] & 1u) << 7));
        values[i] = gray ? from_gray(v) : v;
    }
    return channel;
}

int patch_cols(const BitGrid& plane) noexcept {
    return plane.width / Patch::kSide;
}

int patch_rows(const BitGrid& plane) noexcept {
    return plane.height / Patch::kSide;
}

static void check_patch_coords(const BitGrid& plane, int patch_x, int patch_y) {
    if (patch_x < 0 || patch_y < 0 || patch_x >= patch_cols(plane) || patch_y >= patch_rows(plane))
        throw std::out_of_range("patch (" + std::to_string(patch_x) + ", " +
                                std::to_string(patch_y) + ") outside the " +
                                std::to_string(patch_cols(plane)) + "x" +
                                std::to_string(patch_rows(plane)) + " patch grid");
}

Patch extract_patch(const BitGrid& plane, int patch_x, int patch_y) {
    check_patch_coords(plane, patch_x, patch_y);
    std::uint64_t raw = 0;
    for (int r = 0; r < Patch::kSide; ++r) {
        const std::size_t base =
            static_cast<std::size_t>(Patch::kSide * patch_y + r) * plane.width +
            static_cast<std::size_t>(Patch::kSide) * patch_x;
        if constexpr (std::endian::native == std::endian::little) {
            // Gather the row's eight 0/1 bytes into one word and pack their
            // low bits into a byte: byte k lands in bit k of the product's
            // top byte, with no cross-byte carries.
            std::uint64_t word;
            std::memcpy(&word, plane.bits.data() + base, 8);
            const std::uint64_t row =
                ((word & 0x0101010101010101ull) * 0x0102040810204080ull) >> 56;
            raw |= row << (r * Patch::kSide);
        } else {
            for (int c = 0; c < Patch::kSide; ++c)
                raw |= static_cast<std::uint64_t>(plane.bits[base + c] & 1u)
                       << (r * Patch::kSide + c);
        }
    }
    return Patch::from_raw(raw);
}

void write_patch(BitGrid& plane, int patch_x, int patch_y, const Patch& patch) {
    check_patch_coords(plane, patch_x, patch_y);
    const std::uint64_t raw = patch.raw();
    for (int r = 0; r < Patch::kSide; ++r) {
        const std::size_t base =
            static_cast<std::size_t>(Patch::kSide * patch_y + r) * plane.width +
            static_cast<std::size_t>(Patch::kSide) * patch_x;
        for (int c = 0; c < Patch::kSide; ++c)
            plane.bits[base + c] = (raw >> (r * Patch::kSide + c)) & 1u;
    }
}

}  // namespace bpcs
