#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "bpcs/bitplane.hpp"
#include "bpcs/frame_io.hpp"

namespace bpcs {

/// Pixel-value distribution of one channel.
struct Histogram {
    std::array<std::uint64_t, 256> bins{};

    std::uint64_t total() const noexcept;
};

Histogram histogram(const Frame& frame, int channel);

/// Sum of |a[i] - b[i]| over all bins. Throws MismatchError when the
/// histograms cover different pixel counts.
std::uint64_t l1_distance(const Histogram& a, const Histogram& b);

/// Sum over bins with a[i]+b[i] > 0 of (a[i]-b[i])^2 / (a[i]+b[i]).
double chi_square(const Histogram& a, const Histogram& b);

/// Mean squared sample difference over all samples. Throws MismatchError
/// on shape disagreement.
double mse(const Frame& a, const Frame& b);

/// 10*log10(255^2 / MSE) dB; nullopt is the "infinite" sentinel for MSE 0.
std::optional<double> psnr(const Frame& a, const Frame& b);

/// Patches per exact complexity value (0..112), per plane, summed over
/// channels. Planes outside the mask stay all-zero.
struct ComplexityProfile {
    std::uint8_t plane_mask = 0xFF;
    std::array<std::array<std::uint64_t, 113>, 8> counts{};
};

ComplexityProfile complexity_profile(const Frame& frame, PlaneCoding coding,
                                     std::uint8_t plane_mask);

struct FrameComparison {
    std::string name;
    std::vector<std::uint64_t> l1;  // per channel
    std::vector<double> chi2;       // per channel
    double mse = 0.0;
    std::optional<double> psnr;     // nullopt = infinite
};

struct ComparisonAggregate {
    double mean_mse = 0.0;
    double max_mse = 0.0;
    std::optional<double> min_psnr;   // over frames with finite PSNR
    std::optional<double> mean_psnr;  // nullopt when every frame is identical
    double mean_l1 = 0.0;             // per-frame L1 summed over channels
    double max_l1 = 0.0;
    double mean_chi2 = 0.0;
    double max_chi2 = 0.0;
};

struct ComparisonReport {
    std::vector<FrameComparison> frames;
    ComparisonAggregate aggregate;
};

/// Frame-by-frame metrics between two equal-shape sequences.
/// Throws MismatchError naming the first disagreement.
ComparisonReport compare_report(const FrameSequence& before, const FrameSequence& after);

/// Versioned JSON document:
/// {"version":1,"frames":[{"name","l1","chi2","mse","psnr"}],"aggregate":{...}}
/// Infinite PSNR is emitted as the string "infinite". Serialization is
/// deterministic for identical reports.
std::string report_to_json(const ComparisonReport& report);

}  // namespace bpcs
