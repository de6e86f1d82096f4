#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bpcs/analysis.hpp"
#include "bpcs/errors.hpp"
#include "bpcs/frame_io.hpp"
#include "bpcs/stego_engine.hpp"

namespace fs = std::filesystem;

namespace {

// "0-7", "0,1,5" or a mix like "0-2,7" -> plane mask byte.
std::uint8_t parse_plane_mask(const std::string& text) {
    const auto bad = [&]() -> CLI::ValidationError {
        return CLI::ValidationError("--planes",
                                    "expected a list/range of plane indices 0-7, got \"" +
                                        text + "\"");
    };
    std::uint8_t mask = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        if (!std::isdigit(static_cast<unsigned char>(text[pos])))
            throw bad();
        int lo = text[pos++] - '0';
        int hi = lo;
        if (pos < text.size() && text[pos] == '-') {
            ++pos;
            if (pos >= text.size() || !std::isdigit(static_cast<unsigned char>(text[pos])))
                throw bad();
            hi = text[pos++] - '0';
        }
        if (lo > 7 || hi > 7 || lo > hi)
            throw bad();
        for (int p = lo; p <= hi; ++p)
            mask |= static_cast<std::uint8_t>(1u << p);
        if (pos < text.size()) {
            if (text[pos] != ',')
                throw bad();
            ++pos;
            if (pos == text.size())
                throw bad();
        }
    }
    if (mask == 0)
        throw bad();
    return mask;
}

const CLI::Validator PlaneListValidator(
    [](std::string& text) -> std::string {
        try {
            parse_plane_mask(text);
        } catch (const CLI::ValidationError& e) {
            return e.what();
        }
        return {};
    },
    "PLANES");

std::vector<std::uint8_t> read_binary_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw bpcs::IoError("cannot open " + path.string());
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    if (in.bad())
        throw bpcs::IoError("read failed for " + path.string());
    return bytes;
}

void write_binary_file(const fs::path& path, std::span<const std::uint8_t> bytes) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw bpcs::IoError("cannot open " + path.string() + " for writing");
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out)
        throw bpcs::IoError("write failed for " + path.string());
}

// Shared "stego key" flags. The extractor needs exactly the same values the
// embedder used; nothing but the coding flag is stored in the stego object.
struct KeyOptions {
    std::size_t start = 0;
    std::optional<std::size_t> end;
    std::size_t stride = 1;
    int threshold = 34;
    std::string planes = "0-7";
    std::string coding = "binary";
    std::optional<std::uint64_t> shuffle_seed;

    void attach(CLI::App& cmd) {
        cmd.add_option("--start", start, "First frame index (inclusive)")
            ->capture_default_str();
        cmd.add_option("--end", end, "Last frame index (inclusive; default: last frame)");
        cmd.add_option("--stride", stride, "Step between used frames")
            ->check(CLI::PositiveNumber)
            ->capture_default_str();
        cmd.add_option("--threshold", threshold, "Complexity threshold T")
            ->check(CLI::Range(1, bpcs::kMaxThreshold))
            ->capture_default_str();
        cmd.add_option("--planes", planes, "Bit planes to use, e.g. \"0-7\" or \"0,1,5\"")
            ->check(PlaneListValidator)
            ->capture_default_str();
        cmd.add_option("--coding", coding, "Plane coding: binary or gray")
            ->check(CLI::IsMember({"binary", "gray"}))
            ->capture_default_str();
        cmd.add_option("--shuffle-seed", shuffle_seed,
                       "Seed for the frame-order permutation (off by default)");
    }

    bpcs::EmbedConfig to_config() const {
        bpcs::EmbedConfig cfg;
        cfg.threshold = threshold;
        cfg.start_frame = start;
        cfg.end_frame = end;
        cfg.stride = stride;
        cfg.shuffle_seed = shuffle_seed;
        cfg.plane_mask = parse_plane_mask(planes);
        cfg.coding = coding == "gray" ? bpcs::PlaneCoding::GrayCode
                                      : bpcs::PlaneCoding::PureBinary;
        return cfg;
    }
};

// --cover/--stego directory and --manifest file are alternative ways to name
// the input sequence.
bpcs::FrameSequence load_input_sequence(const std::string& dir, const std::string& manifest) {
    return bpcs::load_sequence(fs::path(manifest.empty() ? dir : manifest));
}

void print_report(const bpcs::EmbedReport& report) {
    std::cout << "blocks written:    " << report.blocks_written << " of "
              << report.capacity_blocks << " capacity\n";
    std::cout << "blocks conjugated: " << report.blocks_conjugated << "\n";
    std::cout << "frames touched:    " << report.frames_touched << "\n";
    std::cout << "plane usage:      ";
    bool any = false;
    for (int p = 0; p < 8; ++p) {
        if (report.per_plane_usage[p] > 0) {
            std::cout << " " << p << ":" << report.per_plane_usage[p];
            any = true;
        }
    }
    if (!any)
        std::cout << " none";
    std::cout << "\n";
}

std::string strip_extension(const std::string& name) {
    const auto dot = name.find_last_of('.');
    return dot == std::string::npos ? name : name.substr(0, dot);
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"BPCS steganography over raster frame sequences"};
    app.require_subcommand(1);

    // embed
    auto* embed_cmd = app.add_subcommand("embed", "Hide a payload file in a frame sequence");
    std::string embed_cover, embed_manifest, embed_payload, embed_out;
    KeyOptions embed_key;
    {
        auto* cover = embed_cmd->add_option("--cover", embed_cover, "Cover frame directory");
        auto* manifest =
            embed_cmd->add_option("--manifest", embed_manifest, "Cover manifest file");
        cover->excludes(manifest);
        embed_cmd->add_option("--payload", embed_payload, "Payload file to hide")->required();
        embed_cmd->add_option("--out", embed_out, "Output directory for stego frames")
            ->required();
        embed_key.attach(*embed_cmd);
        embed_cmd->callback([&] {
            if (embed_cover.empty() && embed_manifest.empty())
                throw CLI::RequiredError("--cover or --manifest");
            const auto cover_seq = load_input_sequence(embed_cover, embed_manifest);
            const auto payload = read_binary_file(embed_payload);
            const auto result = bpcs::embed(cover_seq, payload, embed_key.to_config());
            bpcs::save_sequence(result.stego, embed_out);
            print_report(result.report);
            std::cout << "wrote " << result.stego.size() << " frames to " << embed_out << "\n";
        });
    }

    // extract
    auto* extract_cmd =
        app.add_subcommand("extract", "Recover a payload from a stego frame sequence");
    std::string extract_stego, extract_manifest, extract_out;
    KeyOptions extract_key;
    {
        auto* stego = extract_cmd->add_option("--stego", extract_stego, "Stego frame directory");
        auto* manifest =
            extract_cmd->add_option("--manifest", extract_manifest, "Stego manifest file");
        stego->excludes(manifest);
        extract_cmd->add_option("--out", extract_out, "Output payload file")->required();
        extract_key.attach(*extract_cmd);
        extract_cmd->callback([&] {
            if (extract_stego.empty() && extract_manifest.empty())
                throw CLI::RequiredError("--stego or --manifest");
            const auto stego_seq = load_input_sequence(extract_stego, extract_manifest);
            const auto payload = bpcs::extract(stego_seq, extract_key.to_config());
            write_binary_file(extract_out, payload);
            std::cout << "extracted " << payload.size() << " bytes to " << extract_out << "\n";
        });
    }

    // capacity
    auto* capacity_cmd =
        app.add_subcommand("capacity", "Report how much payload a cover can carry");
    std::string capacity_cover, capacity_manifest;
    KeyOptions capacity_key;
    {
        auto* cover =
            capacity_cmd->add_option("--cover", capacity_cover, "Cover frame directory");
        auto* manifest =
            capacity_cmd->add_option("--manifest", capacity_manifest, "Cover manifest file");
        cover->excludes(manifest);
        capacity_key.attach(*capacity_cmd);
        capacity_cmd->callback([&] {
            if (capacity_cover.empty() && capacity_manifest.empty())
                throw CLI::RequiredError("--cover or --manifest");
            const auto cover_seq = load_input_sequence(capacity_cover, capacity_manifest);
            const auto info = bpcs::capacity(cover_seq, capacity_key.to_config());
            std::cout << info.blocks << " blocks, " << info.payload_bytes << " bytes\n";
        });
    }

    // analyze
    auto* analyze_cmd = app.add_subcommand(
        "analyze", "Histogram/PSNR comparison report between two sequences");
    std::string analyze_cover, analyze_stego, analyze_out;
    {
        analyze_cmd
            ->add_option("--cover", analyze_cover, "Original sequence (directory or manifest)")
            ->required();
        analyze_cmd
            ->add_option("--stego", analyze_stego, "Modified sequence (directory or manifest)")
            ->required();
        analyze_cmd->add_option("--out", analyze_out, "Output JSON report path")->required();
        analyze_cmd->callback([&] {
            const auto before = bpcs::load_sequence(analyze_cover);
            const auto after = bpcs::load_sequence(analyze_stego);
            const auto report = bpcs::compare_report(before, after);
            const std::string json = bpcs::report_to_json(report);
            write_binary_file(analyze_out, std::span(
                                               reinterpret_cast<const std::uint8_t*>(
                                                   json.data()),
                                               json.size()));
            std::cout << "wrote " << analyze_out << "\n";
        });
    }

    // planes
    auto* planes_cmd =
        app.add_subcommand("planes", "Dump bit planes of a frame as PGM images");
    std::string planes_cover, planes_manifest, planes_out;
    std::string planes_list = "0-7";
    std::string planes_coding = "binary";
    {
        planes_cmd->add_option("--cover", planes_cover,
                               "Frame file, frame directory, or manifest (first frame is used)");
        auto* manifest =
            planes_cmd->add_option("--manifest", planes_manifest, "Manifest file");
        planes_cmd->add_option("--out", planes_out, "Output directory")->required();
        planes_cmd->add_option("--planes", planes_list, "Planes to dump")
            ->check(PlaneListValidator)
            ->capture_default_str();
        planes_cmd->add_option("--coding", planes_coding, "Plane coding: binary or gray")
            ->check(CLI::IsMember({"binary", "gray"}))
            ->capture_default_str();
        manifest->excludes(planes_cmd->get_option("--cover"));
        planes_cmd->callback([&] {
            if (planes_cover.empty() && planes_manifest.empty())
                throw CLI::RequiredError("--cover or --manifest");
            bpcs::Frame frame;
            std::string stem = "frame";
            const fs::path input(planes_manifest.empty() ? planes_cover : planes_manifest);
            if (!planes_manifest.empty() || fs::is_directory(input)) {
                const auto seq = bpcs::load_sequence(input);
                frame = seq.frames.front();
                if (!seq.source_names.front().empty())
                    stem = strip_extension(seq.source_names.front());
            } else {
                frame = bpcs::load_frame_file(input);
                stem = strip_extension(input.filename().string());
            }
            const std::uint8_t mask = parse_plane_mask(planes_list);
            const auto coding = planes_coding == "gray" ? bpcs::PlaneCoding::GrayCode
                                                        : bpcs::PlaneCoding::PureBinary;
            std::error_code ec;
            fs::create_directories(planes_out, ec);
            if (ec)
                throw bpcs::IoError("cannot create directory " + planes_out + ": " +
                                    ec.message());
            std::size_t count = 0;
            for (int c = 0; c < frame.channels; ++c) {
                const auto stack = bpcs::decompose(frame.channel(c), coding);
                for (int p = 0; p < 8; ++p) {
                    if (!((mask >> p) & 1u))
                        continue;
                    bpcs::Frame image;
                    image.width = frame.width;
                    image.height = frame.height;
                    image.channels = 1;
                    image.data.resize(frame.pixel_count());
                    for (std::size_t i = 0; i < image.data.size(); ++i)
                        image.data[i] = stack.planes[p].bits[i] ? 255 : 0;
                    const std::string name =
                        stem + "_c" + std::to_string(c) + "_p" + std::to_string(p) + ".pgm";
                    bpcs::save_frame_file(image, fs::path(planes_out) / name);
                    ++count;
                }
            }
            std::cout << "wrote " << count << " plane images to " << planes_out << "\n";
        });
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return 2;
    } catch (const bpcs::Error& e) {
        std::cerr << "error: " << e.category() << ": " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
