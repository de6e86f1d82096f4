#include "bpcs/frame_io.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "bpcs/errors.hpp"

namespace bpcs {

namespace fs = std::filesystem;

ByteGrid Frame::channel(int c) const {
    if (c < 0 || c >= channels)
        throw std::out_of_range("channel index " + std::to_string(c) + " out of range for " +
                                std::to_string(channels) + "-channel frame");
    ByteGrid grid;
    grid.width = width;
    grid.height = height;
    grid.values.resize(pixel_count());
    for (std::size_t i = 0; i < grid.values.size(); ++i)
        grid.values[i] = data[i * channels + c];
    return grid;
}

void Frame::set_channel(int c, const ByteGrid& grid) {
    if (c < 0 || c >= channels)
        throw std::out_of_range("channel index " + std::to_string(c) + " out of range for " +
                                std::to_string(channels) + "-channel frame");
    if (grid.width != width || grid.height != height)
        throw std::invalid_argument("set_channel: grid dimensions do not match frame");
    for (std::size_t i = 0; i < grid.values.size(); ++i)
        data[i * channels + c] = grid.values[i];
}

namespace {

constexpr std::size_t kMaxDimension = 1000000;
constexpr std::size_t kMaxPixels = 100000000;  // 100 MP guard against absurd headers

bool is_pnm_space(std::uint8_t c) {
    return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\v' || c == '\f';
}

class HeaderScanner {
public:
    explicit HeaderScanner(std::span<const std::uint8_t> bytes) : bytes_(bytes) {}

    // Comments run from '#' to end of line and may appear wherever
    // whitespace may.
    void skip_space_and_comments() {
        while (pos_ < bytes_.size()) {
            if (is_pnm_space(bytes_[pos_])) {
                ++pos_;
            } else if (bytes_[pos_] == '#') {
                while (pos_ < bytes_.size() && bytes_[pos_] != '\n')
                    ++pos_;
            } else {
                break;
            }
        }
    }

    std::size_t read_number(const char* field) {
        skip_space_and_comments();
        if (pos_ >= bytes_.size())
            throw FormatError(std::string(field) + ": header ended before value");
        if (!std::isdigit(bytes_[pos_]))
            throw FormatError(std::string(field) + ": expected a decimal number");
        std::size_t value = 0;
        std::size_t digits = 0;
        while (pos_ < bytes_.size() && std::isdigit(bytes_[pos_])) {
            value = value * 10 + (bytes_[pos_] - '0');
            ++digits;
            ++pos_;
            if (digits > 9)
                throw FormatError(std::string(field) + ": value too large");
        }
        return value;
    }

    // Netpbm: exactly one whitespace byte separates maxval from the raster.
    void consume_single_space(const char* field) {
        if (pos_ >= bytes_.size() || !is_pnm_space(bytes_[pos_]))
            throw FormatError(std::string(field) + ": missing whitespace before samples");
        ++pos_;
    }

    std::span<const std::uint8_t> rest() const { return bytes_.subspan(pos_); }

private:
    std::span<const std::uint8_t> bytes_;
    std::size_t pos_ = 0;
};

}  // namespace

Frame read_frame(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P' || (bytes[1] != '5' && bytes[1] != '6'))
        throw FormatError("magic: expected binary PGM \"P5\" or PPM \"P6\"");
    if (bytes.size() > 2 && !is_pnm_space(bytes[2]) && bytes[2] != '#')
        throw FormatError("magic: not followed by whitespace");
    Frame frame;
    frame.channels = bytes[1] == '6' ? 3 : 1;

    HeaderScanner scanner(bytes.subspan(2));
    const std::size_t width = scanner.read_number("width");
    const std::size_t height = scanner.read_number("height");
    const std::size_t maxval = scanner.read_number("maxval");
    if (width == 0 || width > kMaxDimension)
        throw FormatError("width: must be in [1, " + std::to_string(kMaxDimension) + "], got " +
                          std::to_string(width));
    if (height == 0 || height > kMaxDimension)
        throw FormatError("height: must be in [1, " + std::to_string(kMaxDimension) +
                          "], got " + std::to_string(height));
    if (width * height > kMaxPixels)
        throw FormatError("width/height: frame larger than " + std::to_string(kMaxPixels) +
                          " pixels");
    if (maxval != 255)
        throw FormatError("maxval: only 255 supported, got " + std::to_string(maxval));
    scanner.consume_single_space("maxval");

    frame.width = static_cast<int>(width);
    frame.height = static_cast<int>(height);
    const std::size_t needed = width * height * static_cast<std::size_t>(frame.channels);
    const auto raster = scanner.rest();
    if (raster.size() < needed)
        throw FormatError("samples: truncated, needed " + std::to_string(needed) +
                          " bytes, found " + std::to_string(raster.size()));
    if (raster.size() > needed)
        throw FormatError("samples: " + std::to_string(raster.size() - needed) +
                          " trailing bytes after raster");
    frame.data.assign(raster.begin(), raster.end());
    return frame;
}

std::vector<std::uint8_t> write_frame(const Frame& frame) {
    if (frame.channels != 1 && frame.channels != 3)
        throw std::invalid_argument("write_frame: channels must be 1 or 3");
    if (frame.width < 1 || frame.height < 1)
        throw std::invalid_argument("write_frame: dimensions must be positive");
    if (frame.data.size() != frame.pixel_count() * static_cast<std::size_t>(frame.channels))
        throw std::invalid_argument("write_frame: data size does not match dimensions");

    std::string header = (frame.channels == 3 ? "P6" : "P5");
    header += '\n';
    header += std::to_string(frame.width) + ' ' + std::to_string(frame.height) + '\n';
    header += "255\n";

    std::vector<std::uint8_t> out;
    out.reserve(header.size() + frame.data.size());
    out.insert(out.end(), header.begin(), header.end());
    out.insert(out.end(), frame.data.begin(), frame.data.end());
    return out;
}

Frame load_frame_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw IoError("read failed for " + path.string());
    try {
        return read_frame(bytes);
    } catch (const FormatError& e) {
        throw FormatError(path.string() + ": " + e.what());
    }
}

void save_frame_file(const Frame& frame, const fs::path& path) {
    const auto bytes = write_frame(frame);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw IoError("write failed for " + path.string());
}

namespace {

bool has_frame_extension(const fs::path& p) {
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return std::tolower(c); });
    return ext == ".ppm" || ext == ".pgm";
}

std::string shape_string(const Frame& f) {
    return std::to_string(f.width) + "x" + std::to_string(f.height) + "x" +
           std::to_string(f.channels);
}

void check_uniform(const FrameSequence& seq) {
    for (std::size_t i = 1; i < seq.frames.size(); ++i) {
        const Frame& first = seq.frames.front();
        const Frame& f = seq.frames[i];
        if (f.width != first.width || f.height != first.height || f.channels != first.channels)
            throw FormatError("sequence: frame \"" + seq.source_names[i] + "\" is " +
                              shape_string(f) + ", expected " + shape_string(first) +
                              " (from \"" + seq.source_names.front() + "\")");
    }
}

FrameSequence load_from_directory(const fs::path& dir) {
    std::vector<std::string> names;
    for (const auto& entry : fs::directory_iterator(dir))
        if (entry.is_regular_file() && has_frame_extension(entry.path()))
            names.push_back(entry.path().filename().string());
    if (names.empty())
        throw FormatError("sequence: no .ppm/.pgm frame files in " + dir.string());
    // std::string's operator< compares byte-wise, independent of the
    // filesystem's enumeration order.
    std::sort(names.begin(), names.end());

    FrameSequence seq;
    for (const auto& name : names) {
        seq.frames.push_back(load_frame_file(dir / name));
        seq.source_names.push_back(name);
    }
    check_uniform(seq);
    return seq;
}

FrameSequence load_from_manifest(const fs::path& manifest) {
    std::ifstream in(manifest);
    if (!in)
        throw IoError("cannot open manifest " + manifest.string());
    const fs::path base = manifest.parent_path();

    FrameSequence seq;
    std::string line;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        const auto first = line.find_first_not_of(" \t");
        if (first == std::string::npos || line[first] == '#')
            continue;
        const auto last = line.find_last_not_of(" \t");
        const std::string rel = line.substr(first, last - first + 1);
        const fs::path frame_path = base / rel;
        seq.frames.push_back(load_frame_file(frame_path));
        seq.source_names.push_back(frame_path.filename().string());
    }
    if (seq.frames.empty())
        throw FormatError("sequence: manifest " + manifest.string() + " lists no frames");
    check_uniform(seq);
    return seq;
}

}  // namespace

FrameSequence load_sequence(const fs::path& dir_or_manifest) {
    if (!fs::exists(dir_or_manifest))
        throw IoError("no such file or directory: " + dir_or_manifest.string());
    if (fs::is_directory(dir_or_manifest))
        return load_from_directory(dir_or_manifest);
    return load_from_manifest(dir_or_manifest);
}

std::vector<fs::path> save_sequence(const FrameSequence& sequence, const fs::path& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw IoError("cannot create directory " + out_dir.string() + ": " + ec.message());

    std::vector<fs::path> written;
    for (std::size_t i = 0; i < sequence.frames.size(); ++i) {
        std::string name;
        if (i < sequence.source_names.size() && !sequence.source_names[i].empty()) {
            name = sequence.source_names[i];
        } else {
            char buf[32];
            std::snprintf(buf, sizeof(buf), "frame_%06zu", i);
            name = std::string(buf) + (sequence.frames[i].channels == 3 ? ".ppm" : ".pgm");
        }
        const fs::path path = out_dir / name;
        save_frame_file(sequence.frames[i], path);
        written.push_back(path);
    }
    return written;
}

}  // namespace bpcs
