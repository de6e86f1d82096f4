#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "bpcs/analysis.hpp"
#include "bpcs/errors.hpp"
#include "bpcs/stego_engine.hpp"
#include "support/oracles.hpp"

using namespace bpcs;

namespace {

Frame flat_frame(int w, int h, int channels, std::uint8_t fill) {
    Frame f;
    f.width = w;
    f.height = h;
    f.channels = channels;
    f.data.assign(static_cast<std::size_t>(w) * h * channels, fill);
    return f;
}

}  // namespace

TEST_CASE("histogram of a flat channel") {
    const Frame f = flat_frame(64, 64, 1, 128);
    const Histogram h = histogram(f, 0);
    CHECK(h.bins[128] == 4096);
    CHECK(h.total() == 4096);
    for (int v = 0; v < 256; ++v)
        if (v != 128)
            CHECK(h.bins[v] == 0);
    CHECK_THROWS_AS(histogram(f, 1), std::out_of_range);
}

TEST_CASE("histogram conserves pixel count and ignores pixel order") {
    const Frame f = oracle::natural_frame(40, 30, 3, 9);
    for (int c = 0; c < 3; ++c)
        CHECK(histogram(f, c).total() == 1200);

    Frame permuted = f;
    // swap rows 0 and 10
    for (int x = 0; x < 40 * 3; ++x)
        std::swap(permuted.data[x], permuted.data[10 * 40 * 3 + x]);
    for (int c = 0; c < 3; ++c)
        CHECK(histogram(permuted, c).bins == histogram(f, c).bins);
}

TEST_CASE("histogram distances") {
    const Frame f = oracle::natural_frame(32, 32, 1, 4);
    const Histogram h = histogram(f, 0);
    CHECK(l1_distance(h, h) == 0);
    CHECK(chi_square(h, h) == 0.0);

    // move one pixel from bin a to bin b
    Frame g = f;
    const std::uint8_t a = g.data[0];
    g.data[0] = static_cast<std::uint8_t>(a ^ 1);
    const Histogram hg = histogram(g, 0);
    CHECK(l1_distance(h, hg) == 2);
    CHECK(l1_distance(hg, h) == 2);
    CHECK(chi_square(h, hg) == doctest::Approx(chi_square(hg, h)));

    Histogram short_h;
    short_h.bins[0] = 5;
    CHECK_THROWS_AS(l1_distance(h, short_h), MismatchError);
    CHECK_THROWS_AS(chi_square(h, short_h), MismatchError);
}

TEST_CASE("mse and psnr closed-form cases") {
    const Frame a = flat_frame(64, 64, 1, 100);
    CHECK(mse(a, a) == 0.0);
    CHECK_FALSE(psnr(a, a).has_value());  // infinite sentinel

    Frame b = a;
    for (auto& v : b.data)
        ++v;
    CHECK(mse(a, b) == doctest::Approx(1.0));
    CHECK(*psnr(a, b) == doctest::Approx(10.0 * std::log10(65025.0)));

    Frame c = a;
    c.data[123] ^= 1;  // single flipped LSB in a 64x64 gray frame
    CHECK(mse(a, c) == doctest::Approx(1.0 / 4096.0));

    const Frame other = flat_frame(32, 64, 1, 100);
    CHECK_THROWS_AS(mse(a, other), MismatchError);
}

TEST_CASE("complexity_profile counts patches per complexity value") {
    const Frame flat = flat_frame(64, 48, 3, 50);
    const auto profile = complexity_profile(flat, PlaneCoding::PureBinary, 0xFF);
    const std::uint64_t patches_per_plane = (64 / 8) * (48 / 8) * 3;
    for (int p = 0; p < 8; ++p) {
        CHECK(profile.counts[p][0] == patches_per_plane);
        std::uint64_t total = 0;
        for (int v = 0; v <= 112; ++v)
            total += profile.counts[p][v];
        CHECK(total == patches_per_plane);
    }
}

TEST_CASE("complexity_profile matches the brute-force oracle per patch") {
    const Frame f = oracle::natural_frame(64, 48, 1, 31);
    const auto profile = complexity_profile(f, PlaneCoding::PureBinary, 0x05);

    for (const int p : {0, 2}) {
        std::array<std::uint64_t, 113> expected{};
        const auto stack = decompose(f.channel(0), PlaneCoding::PureBinary);
        for (int py = 0; py < 6; ++py)
            for (int px = 0; px < 8; ++px)
                ++expected[oracle::patch_complexity(extract_patch(stack.planes[p], px, py))];
        CHECK(profile.counts[p] == expected);
    }
    for (const int p : {1, 3, 4, 5, 6, 7}) {
        std::uint64_t total = 0;
        for (int v = 0; v <= 112; ++v)
            total += profile.counts[p][v];
        CHECK(total == 0);  // masked out
    }
}

TEST_CASE("uniform-random planes are overwhelmingly complex") {
    Frame f = flat_frame(320, 240, 1, 0);
    f.data = oracle::random_bytes(f.data.size(), 64);
    const auto profile = complexity_profile(f, PlaneCoding::PureBinary, 0x01);
    std::uint64_t total = 0, above_34 = 0;
    for (int v = 0; v <= 112; ++v) {
        total += profile.counts[0][v];
        if (v >= 34)
            above_34 += profile.counts[0][v];
    }
    CHECK(total == (320 / 8) * (240 / 8));
    CHECK(above_34 == total);  // mean 56, sigma ~5: 34 is far in the tail
}

TEST_CASE("compare_report on identical sequences is all zeros") {
    const auto seq = oracle::natural_sequence(15, 32, 24, 3, 12);
    const auto report = compare_report(seq, seq);
    REQUIRE(report.frames.size() == 15);
    for (const auto& fc : report.frames) {
        CHECK(fc.mse == 0.0);
        CHECK_FALSE(fc.psnr.has_value());
        for (const auto v : fc.l1)
            CHECK(v == 0);
        for (const auto v : fc.chi2)
            CHECK(v == 0.0);
    }
    CHECK(report.aggregate.mean_mse == 0.0);
    CHECK_FALSE(report.aggregate.min_psnr.has_value());
}

TEST_CASE("compare_report flags embedding changes") {
    const auto cover = oracle::natural_sequence(3, 64, 48, 3, 555);
    EmbedConfig cfg;
    const auto stego = embed(cover, oracle::random_bytes(200, 2), cfg).stego;
    const auto report = compare_report(cover, stego);

    double total_l1 = 0;
    for (const auto& fc : report.frames)
        for (const auto v : fc.l1)
            total_l1 += static_cast<double>(v);
    CHECK(total_l1 > 0);
    CHECK(report.aggregate.max_mse > 0.0);

    FrameSequence shorter = cover;
    shorter.frames.pop_back();
    CHECK_THROWS_AS(compare_report(cover, shorter), MismatchError);
}

TEST_CASE("LSB-only embedding obeys the L1 and MSE bounds") {
    FrameSequence cover;
    cover.frames.push_back(oracle::natural_frame(160, 120, 3, 21));
    cover.source_names.push_back("");
    EmbedConfig cfg;
    cfg.plane_mask = 0x01;  // plane 0 only

    const auto result = embed(cover, oracle::random_bytes(400, 4), cfg);
    const Frame& a = cover.frames[0];
    const Frame& b = result.stego.frames[0];

    std::uint64_t flipped[3] = {0, 0, 0};
    for (std::size_t i = 0; i < a.pixel_count(); ++i)
        for (int c = 0; c < 3; ++c)
            if (a.data[i * 3 + c] != b.data[i * 3 + c]) {
                // only the LSB may move
                CHECK((a.data[i * 3 + c] ^ b.data[i * 3 + c]) == 1);
                ++flipped[c];
            }

    for (int c = 0; c < 3; ++c)
        CHECK(l1_distance(histogram(a, c), histogram(b, c)) <= 2 * flipped[c]);

    const double bound = static_cast<double>(result.report.blocks_written) * 64.0 /
                         static_cast<double>(a.sample_count());
    CHECK(mse(a, b) <= bound);
}

TEST_CASE("JSON report schema and sentinels") {
    const auto seq = oracle::natural_sequence(2, 32, 24, 3, 88);
    const auto report = compare_report(seq, seq);
    const std::string text = report_to_json(report);

    const auto doc = nlohmann::json::parse(text);
    CHECK(doc["version"] == 1);
    REQUIRE(doc["frames"].is_array());
    REQUIRE(doc["frames"].size() == 2);
    const auto& f0 = doc["frames"][0];
    CHECK(f0["name"].is_string());
    CHECK(f0["l1"].size() == 3);
    CHECK(f0["chi2"].size() == 3);
    CHECK(f0["mse"] == 0.0);
    CHECK(f0["psnr"] == "infinite");
    CHECK(doc["aggregate"]["min_psnr"] == "infinite");

    // identical reports serialize identically
    CHECK(report_to_json(compare_report(seq, seq)) == text);
}
