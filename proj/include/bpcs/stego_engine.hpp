#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "bpcs/bitplane.hpp"
#include "bpcs/frame_io.hpp"

namespace bpcs {

/// The stego key: everything the extractor must share with the embedder.
/// threshold T must satisfy 1 <= T <= 56 so that conjugating a block
/// (complexity -> 112 - complexity) always keeps it at or above T.
struct EmbedConfig {
    int threshold = 34;
    std::size_t start_frame = 0;
    std::optional<std::size_t> end_frame;  // inclusive; default: last frame
    std::size_t stride = 1;
    std::optional<std::uint64_t> shuffle_seed;
    std::uint8_t plane_mask = 0xFF;  // bit p set = plane p usable
    PlaneCoding coding = PlaneCoding::PureBinary;

    bool plane_enabled(int plane) const noexcept { return (plane_mask >> plane) & 1u; }
};

/// Max usable threshold: half of the 8x8 complexity bound.
inline constexpr int kMaxThreshold = Patch::kMaxComplexity / 2;

/// Validate config invariants against a sequence length. Throws ConfigError.
void validate_config(const EmbedConfig& config, std::size_t sequence_length);

/// One embeddable patch location in canonical traversal order.
struct Slot {
    std::size_t frame_index = 0;  // index into the sequence
    int channel = 0;
    int plane = 0;
    int patch_x = 0;
    int patch_y = 0;

    friend bool operator==(const Slot&, const Slot&) = default;
};

struct SlotPlan {
    std::vector<Slot> slots;
    std::size_t capacity_blocks = 0;  // == slots.size()
};

struct EmbedReport {
    std::size_t blocks_written = 0;
    std::size_t blocks_conjugated = 0;
    std::size_t frames_touched = 0;
    std::size_t capacity_blocks = 0;
    std::array<std::size_t, 8> per_plane_usage{};
};

struct EmbedResult {
    FrameSequence stego;
    EmbedReport report;
};

struct CapacityInfo {
    std::size_t blocks = 0;
    std::size_t payload_bytes = 0;
};

/// Frame indices used, in order: the arithmetic progression
/// start, start+stride, ..., <= end, optionally permuted by a Fisher-Yates
/// shuffle driven by the fixed 64-bit LCG
/// state <- state * 6364136223846793005 + 1442695040888963407 (mod 2^64),
/// seeded with shuffle_seed, taking the top 32 bits of each step.
/// Identical across implementations for identical inputs.
std::vector<std::size_t> select_frames(std::size_t sequence_length, const EmbedConfig& config);

/// Enumerate every patch with complexity >= threshold in canonical order:
/// selected frames in order, then channels, then planes ascending within the
/// mask, then the patch grid row-major. Reads cover data only.
SlotPlan plan_slots(const FrameSequence& sequence, const EmbedConfig& config);

CapacityInfo capacity(const FrameSequence& sequence, const EmbedConfig& config);

/// Hide the payload: container blocks are written into the first plan slots
/// in order; any block patch that falls below threshold is conjugated so it
/// stays detectable. Everything outside the written slots is bit-identical
/// to the cover. Throws CapacityError when the payload does not fit.
EmbedResult embed(const FrameSequence& cover, std::span<const std::uint8_t> payload,
                  const EmbedConfig& config);

/// Recover the payload with the same config ("stego key"). Walks the same
/// canonical order over patches with complexity >= threshold, undoing
/// conjugation per the in-patch flag, parses the header after two blocks and
/// verifies the CRC. Throws NotFoundError when no container magic is found,
/// CorruptionError on version/CRC/truncation problems.
std::vector<std::uint8_t> extract(const FrameSequence& stego, const EmbedConfig& config);

}  // namespace bpcs
