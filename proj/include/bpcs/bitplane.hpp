#pragma once

#include <array>
#include <cstdint>
#include <vector>

namespace bpcs {

/// How pixel values are mapped to bits before plane slicing.
/// PureBinary takes the value's bits as-is; GrayCode slices the
/// reflected-Gray encoding instead, so adjacent values differ in one plane.
enum class PlaneCoding : std::uint8_t { PureBinary = 0, GrayCode = 1 };

std::uint8_t to_gray(std::uint8_t b) noexcept;
std::uint8_t from_gray(std::uint8_t g) noexcept;

/// One 8x8 binary block, the unit of complexity measurement and replacement.
/// Bit (row, col) lives at position row*8+col of the packed word,
/// row 0 on top, column 0 on the left.
class Patch {
public:
    static constexpr int kSide = 8;
    static constexpr int kBits = kSide * kSide;
    static constexpr int kMaxComplexity = 112;

    constexpr Patch() = default;

    static constexpr Patch from_raw(std::uint64_t bits) noexcept {
        Patch p;
        p.bits_ = bits;
        return p;
    }

    constexpr std::uint64_t raw() const noexcept { return bits_; }

    constexpr bool bit(int row, int col) const noexcept {
        return (bits_ >> index(row, col)) & 1u;
    }

    constexpr void set_bit(int row, int col, bool value) noexcept {
        const std::uint64_t mask = std::uint64_t{1} << index(row, col);
        bits_ = value ? (bits_ | mask) : (bits_ & ~mask);
    }

    friend constexpr bool operator==(const Patch&, const Patch&) = default;

private:
    static constexpr int index(int row, int col) noexcept { return row * kSide + col; }

    std::uint64_t bits_ = 0;
};

/// Count of adjacent differing bit pairs, horizontal plus vertical,
/// intra-patch only (56 + 56 candidate pairs). Range [0, 112].
int complexity(const Patch& patch) noexcept;

/// Upper bound of the complexity measure for a side x side square:
/// 2 * side * (side - 1). Throws std::domain_error for side < 1.
long long max_complexity(int side);

/// The conjugation pattern Wc: bit (r, c) = 1 when r + c is even, so the
/// top-left bit is set and XOR-ing flips the flag bit at (0, 0).
constexpr Patch checkerboard() noexcept {
    return Patch::from_raw(0xAA55AA55AA55AA55ull);
}

/// XOR with the checkerboard. complexity(conjugate(p)) == 112 - complexity(p)
/// and conjugation is an involution.
constexpr Patch conjugate(const Patch& patch) noexcept {
    return Patch::from_raw(patch.raw() ^ checkerboard().raw());
}

/// A width x height grid of 8-bit samples (one channel of one frame).
struct ByteGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> values;  // row-major, size width*height

    std::uint8_t at(int x, int y) const {
        return values[static_cast<std::size_t>(y) * width + x];
    }
};

/// A width x height grid of single bits, one byte per bit (0 or 1).
struct BitGrid {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> bits;  // row-major, size width*height

    std::uint8_t at(int x, int y) const {
        return bits[static_cast<std::size_t>(y) * width + x];
    }
    void set(int x, int y, std::uint8_t bit) {
        bits[static_cast<std::size_t>(y) * width + x] = bit;
    }
};

/// All 8 bit planes of one channel. planes[0] is the least significant bit,
/// planes[7] the most significant.
struct BitPlaneStack {
    int width = 0;
    int height = 0;
    PlaneCoding coding = PlaneCoding::PureBinary;
    std::array<BitGrid, 8> planes;
};

/// Slice a channel into 8 bit planes under the given coding.
/// Throws std::invalid_argument on an empty or inconsistent grid.
BitPlaneStack decompose(const ByteGrid& channel, PlaneCoding coding);

/// Exact inverse of decompose under the stack's own coding mode.
ByteGrid recompose(const BitPlaneStack& stack);

/// Patch-grid geometry: partial patches at the right/bottom edges are
/// excluded entirely (never read, never written).
int patch_cols(const BitGrid& plane) noexcept;
int patch_rows(const BitGrid& plane) noexcept;

/// Read / replace the 8x8 block at pixel offset (8*patch_x, 8*patch_y).
/// Throws std::out_of_range when the patch does not fit the plane.
Patch extract_patch(const BitGrid& plane, int patch_x, int patch_y);
void write_patch(BitGrid& plane, int patch_x, int patch_y, const Patch& patch);

}  // namespace bpcs
