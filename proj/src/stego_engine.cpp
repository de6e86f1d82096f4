#include "bpcs/stego_engine.hpp"

#include <string>
#include <utility>

#include "bpcs/errors.hpp"
#include "bpcs/payload_codec.hpp"

namespace bpcs {

namespace {

constexpr std::uint64_t kLcgMultiplier = 6364136223846793005ull;
constexpr std::uint64_t kLcgIncrement = 1442695040888963407ull;

// Visits planes of one decomposed channel in canonical order and calls
// fn(plane, patch_x, patch_y, patch) for every qualifying patch.
// fn returns false to stop the walk; the helper reports whether it was
// stopped early.
template <typename Fn>
bool walk_channel(const BitPlaneStack& stack, const EmbedConfig& config, Fn&& fn) {
    for (int p = 0; p < 8; ++p) {
        if (!config.plane_enabled(p))
            continue;
        const BitGrid& plane = stack.planes[p];
        const int rows = patch_rows(plane);
        const int cols = patch_cols(plane);
        for (int py = 0; py < rows; ++py) {
            for (int px = 0; px < cols; ++px) {
                const Patch patch = extract_patch(plane, px, py);
                if (complexity(patch) < config.threshold)
                    continue;
                if (!fn(p, px, py, patch))
                    return false;
            }
        }
    }
    return true;
}

}  // namespace

void validate_config(const EmbedConfig& config, std::size_t sequence_length) {
    if (sequence_length == 0)
        throw ConfigError("sequence is empty");
    if (config.threshold < 1 || config.threshold > kMaxThreshold)
        throw ConfigError("threshold must be in [1, " + std::to_string(kMaxThreshold) +
                          "], got " + std::to_string(config.threshold));
    if (config.stride < 1)
        throw ConfigError("stride must be >= 1");
    if (config.plane_mask == 0)
        throw ConfigError("plane mask selects no planes");
    const std::size_t end = config.end_frame.value_or(sequence_length - 1);
    if (end >= sequence_length)
        throw ConfigError("end frame " + std::to_string(end) + " outside sequence of " +
                          std::to_string(sequence_length) + " frames");
    if (config.start_frame > end)
        throw ConfigError("start frame " + std::to_string(config.start_frame) +
                          " is after end frame " + std::to_string(end));
}

std::vector<std::size_t> select_frames(std::size_t sequence_length, const EmbedConfig& config) {
    validate_config(config, sequence_length);
    const std::size_t end = config.end_frame.value_or(sequence_length - 1);

    std::vector<std::size_t> frames;
    for (std::size_t f = config.start_frame;;) {
        frames.push_back(f);
        if (end - f < config.stride)
            break;
        f += config.stride;
    }

    if (config.shuffle_seed) {
        std::uint64_t state = *config.shuffle_seed;
        const auto next_word = [&state]() {
            state = state * kLcgMultiplier + kLcgIncrement;
            return static_cast<std::uint64_t>(state >> 32);
        };
        for (std::size_t i = frames.size() - 1; i > 0; --i) {
            const std::size_t j = next_word() % (i + 1);
            std::swap(frames[i], frames[j]);
        }
    }
    return frames;
}

SlotPlan plan_slots(const FrameSequence& sequence, const EmbedConfig& config) {
    const auto selected = select_frames(sequence.size(), config);
    SlotPlan plan;
    for (const std::size_t f : selected) {
        const Frame& frame = sequence.frames[f];
        for (int c = 0; c < frame.channels; ++c) {
            const BitPlaneStack stack = decompose(frame.channel(c), config.coding);
            walk_channel(stack, config, [&](int p, int px, int py, const Patch&) {
                plan.slots.push_back(Slot{f, c, p, px, py});
                return true;
            });
        }
    }
    plan.capacity_blocks = plan.slots.size();
    return plan;
}

CapacityInfo capacity(const FrameSequence& sequence, const EmbedConfig& config) {
    const SlotPlan plan = plan_slots(sequence, config);
    CapacityInfo info;
    info.blocks = plan.capacity_blocks;
    const std::size_t gross_bytes =
        info.blocks * static_cast<std::size_t>(DataBlock::kBits) / 8;
    info.payload_bytes = gross_bytes > ContainerHeader::kSize
                             ? gross_bytes - ContainerHeader::kSize
                             : 0;
    return info;
}

EmbedResult embed(const FrameSequence& cover, std::span<const std::uint8_t> payload,
                  const EmbedConfig& config) {
    const auto selected = select_frames(cover.size(), config);

    // Decompose every selected frame's channels once; blocks are written
    // straight back into these stacks.
    std::vector<std::vector<BitPlaneStack>> stacks(selected.size());
    for (std::size_t s = 0; s < selected.size(); ++s) {
        const Frame& frame = cover.frames[selected[s]];
        stacks[s].reserve(frame.channels);
        for (int c = 0; c < frame.channels; ++c)
            stacks[s].push_back(decompose(frame.channel(c), config.coding));
    }

    const std::vector<std::uint8_t> container = build_container(payload, config.coding);
    const std::vector<DataBlock> blocks = pack_blocks(container);

    EmbedReport report;
    std::vector<std::vector<bool>> dirty(selected.size());
    for (std::size_t s = 0; s < selected.size(); ++s)
        dirty[s].assign(stacks[s].size(), false);
    std::vector<bool> frame_touched(selected.size(), false);

    // Single pass: the first qualifying patches receive the blocks in order,
    // the rest are only counted toward capacity. In-place writes are safe
    // because the walk never revisits a patch and complexity is intra-patch.
    std::size_t written = 0;
    std::size_t slot_count = 0;
    for (std::size_t s = 0; s < selected.size(); ++s) {
        for (std::size_t c = 0; c < stacks[s].size(); ++c) {
            walk_channel(stacks[s][c], config, [&](int p, int px, int py, const Patch&) {
                ++slot_count;
                if (written < blocks.size()) {
                    Patch patch = block_to_patch(blocks[written]);
                    if (complexity(patch) < config.threshold) {
                        patch = conjugate(patch);  // flips the flag bit (0,0) to 1
                        ++report.blocks_conjugated;
                    }
                    write_patch(stacks[s][c].planes[p], px, py, patch);
                    ++written;
                    dirty[s][c] = true;
                    frame_touched[s] = true;
                    ++report.per_plane_usage[p];
                }
                return true;
            });
        }
    }
    if (blocks.size() > slot_count)
        throw CapacityError("payload needs " + std::to_string(blocks.size()) +
                            " blocks, cover offers " + std::to_string(slot_count) +
                            " at threshold " + std::to_string(config.threshold));
    report.capacity_blocks = slot_count;
    report.blocks_written = blocks.size();

    EmbedResult result;
    result.stego = cover;
    for (std::size_t s = 0; s < selected.size(); ++s) {
        if (!frame_touched[s])
            continue;
        ++report.frames_touched;
        Frame& frame = result.stego.frames[selected[s]];
        for (std::size_t c = 0; c < stacks[s].size(); ++c)
            if (dirty[s][c])
                frame.set_channel(static_cast<int>(c), recompose(stacks[s][c]));
    }
    result.report = report;
    return result;
}

std::vector<std::uint8_t> extract(const FrameSequence& stego, const EmbedConfig& config) {
    const auto selected = select_frames(stego.size(), config);

    std::vector<DataBlock> blocks;
    std::optional<ContainerHeader> header;
    std::size_t total_blocks = 0;

    const auto collect = [&](int, int, int, const Patch& raw) {
        Patch patch = raw;
        if (patch.bit(0, 0))
            patch = conjugate(patch);
        blocks.push_back(patch_to_block(patch).second);
        if (blocks.size() == 2) {
            // Two blocks are 126 bits, enough for the 14-byte header.
            const auto head_bytes = unpack_blocks(blocks, ContainerHeader::kSize);
            header = parse_container_header(head_bytes);
            total_blocks = block_count_for_bytes(ContainerHeader::kSize +
                                                 header->payload_length);
        }
        return !header || blocks.size() < total_blocks;
    };

    bool exhausted = true;
    for (const std::size_t f : selected) {
        const Frame& frame = stego.frames[f];
        for (int c = 0; c < frame.channels && exhausted; ++c) {
            const BitPlaneStack stack = decompose(frame.channel(c), config.coding);
            exhausted = walk_channel(stack, config, collect);
        }
        if (!exhausted)
            break;
    }

    if (!header)
        throw NotFoundError("no payload found");
    if (blocks.size() < total_blocks)
        throw CorruptionError("container truncated: header demands " +
                              std::to_string(total_blocks) + " blocks, only " +
                              std::to_string(blocks.size()) + " complex patches available");

    const auto container =
        unpack_blocks(blocks, ContainerHeader::kSize + header->payload_length);
    if (header->coding() != config.coding)
        throw CorruptionError("container coding flag does not match the configured coding");
    return parse_container(container);
}

}  // namespace bpcs
