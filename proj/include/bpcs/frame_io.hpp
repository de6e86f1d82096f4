#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "bpcs/bitplane.hpp"

namespace bpcs {

/// One raster frame: 8-bit samples, row-major, channel-interleaved for RGB.
struct Frame {
    int width = 0;
    int height = 0;
    int channels = 1;  // 1 = grayscale, 3 = RGB
    std::vector<std::uint8_t> data;  // size width*height*channels

    std::size_t sample_count() const noexcept { return data.size(); }
    std::size_t pixel_count() const noexcept {
        return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }

    std::uint8_t sample(int x, int y, int c) const {
        return data[(static_cast<std::size_t>(y) * width + x) * channels + c];
    }

    /// De-interleave one channel into a contiguous grid.
    ByteGrid channel(int c) const;
    /// Write a channel grid back; dimensions must match the frame.
    void set_channel(int c, const ByteGrid& grid);

    friend bool operator==(const Frame&, const Frame&) = default;
};

/// Ordered frames of uniform width/height/channels plus their identifiers.
struct FrameSequence {
    std::vector<Frame> frames;
    std::vector<std::string> source_names;  // parallel to frames; may hold ""

    std::size_t size() const noexcept { return frames.size(); }
    bool empty() const noexcept { return frames.empty(); }
    int width() const noexcept { return frames.empty() ? 0 : frames.front().width; }
    int height() const noexcept { return frames.empty() ? 0 : frames.front().height; }
    int channels() const noexcept { return frames.empty() ? 0 : frames.front().channels; }
};

/// Decode a binary PGM ("P5") or PPM ("P6") with maxval 255. The header is
/// whitespace- and comment-tolerant per the Netpbm grammar; errors name the
/// offending field (FormatError).
Frame read_frame(std::span<const std::uint8_t> bytes);

/// Canonical encoding: magic, newline, "width height", newline, "255",
/// newline, raw samples. read_frame(write_frame(f)) == f bit-exactly.
std::vector<std::uint8_t> write_frame(const Frame& frame);

Frame load_frame_file(const std::filesystem::path& path);
void save_frame_file(const Frame& frame, const std::filesystem::path& path);

/// Load a sequence from either a directory (frame files ordered by byte-wise
/// lexicographic filename) or a manifest file (one relative frame path per
/// line, '#' comment lines allowed, listed order preserved). Dimension and
/// channel uniformity is enforced, naming the first offending frame.
FrameSequence load_sequence(const std::filesystem::path& dir_or_manifest);

/// Write each frame under its source name (zero-padded frame_%06d.<ext> when
/// unnamed) using the canonical encoder. Existing files are overwritten.
std::vector<std::filesystem::path> save_sequence(const FrameSequence& sequence,
                                                 const std::filesystem::path& out_dir);

}  // namespace bpcs
