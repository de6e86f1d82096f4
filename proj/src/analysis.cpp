#include "bpcs/analysis.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

#include "bpcs/errors.hpp"

namespace bpcs {

std::uint64_t Histogram::total() const noexcept {
    return std::accumulate(bins.begin(), bins.end(), std::uint64_t{0});
}

Histogram histogram(const Frame& frame, int channel) {
    if (channel < 0 || channel >= frame.channels)
        throw std::out_of_range("histogram: channel " + std::to_string(channel) +
                                " out of range for " + std::to_string(frame.channels) +
                                "-channel frame");
    Histogram h;
    const std::size_t n = frame.pixel_count();
    for (std::size_t i = 0; i < n; ++i)
        ++h.bins[frame.data[i * frame.channels + channel]];
    return h;
}

std::uint64_t l1_distance(const Histogram& a, const Histogram& b) {
    if (a.total() != b.total())
        throw MismatchError("histograms cover different pixel counts (" +
                            std::to_string(a.total()) + " vs " + std::to_string(b.total()) +
                            ")");
    std::uint64_t sum = 0;
    for (int i = 0; i < 256; ++i)
        sum += a.bins[i] > b.bins[i] ? a.bins[i] - b.bins[i] : b.bins[i] - a.bins[i];
    return sum;
}

double chi_square(const Histogram& a, const Histogram& b) {
    if (a.total() != b.total())
        throw MismatchError("histograms cover different pixel counts (" +
                            std::to_string(a.total()) + " vs " + std::to_string(b.total()) +
                            ")");
    double sum = 0.0;
    for (int i = 0; i < 256; ++i) {
        const double ai = static_cast<double>(a.bins[i]);
        const double bi = static_cast<double>(b.bins[i]);
        if (ai + bi > 0.0)
            sum += (ai - bi) * (ai - bi) / (ai + bi);
    }
    return sum;
}

static void check_same_shape(const Frame& a, const Frame& b) {
    if (a.width != b.width || a.height != b.height || a.channels != b.channels)
        throw MismatchError("frames differ in shape (" + std::to_string(a.width) + "x" +
                            std::to_string(a.height) + "x" + std::to_string(a.channels) +
                            " vs " + std::to_string(b.width) + "x" + std::to_string(b.height) +
                            "x" + std::to_string(b.channels) + ")");
}

double mse(const Frame& a, const Frame& b) {
    check_same_shape(a, b);
    std::uint64_t sum_sq = 0;
    for (std::size_t i = 0; i < a.data.size(); ++i) {
        const int d = static_cast<int>(a.data[i]) - static_cast<int>(b.data[i]);
        sum_sq += static_cast<std::uint64_t>(d * d);
    }
    return static_cast<double>(sum_sq) / static_cast<double>(a.data.size());
}

std::optional<double> psnr(const Frame& a, const Frame& b) {
    const double m = mse(a, b);
    if (m == 0.0)
        return std::nullopt;
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

ComplexityProfile complexity_profile(const Frame& frame, PlaneCoding coding,
                                     std::uint8_t plane_mask) {
    ComplexityProfile profile;
    profile.plane_mask = plane_mask;
    for (int c = 0; c < frame.channels; ++c) {
        const BitPlaneStack stack = decompose(frame.channel(c), coding);
        for (int p = 0; p < 8; ++p) {
            if (!((plane_mask >> p) & 1u))
                continue;
            const BitGrid& plane = stack.planes[p];
            for (int py = 0; py < patch_rows(plane); ++py)
                for (int px = 0; px < patch_cols(plane); ++px)
                    ++profile.counts[p][complexity(extract_patch(plane, px, py))];
        }
    }
    return profile;
}

ComparisonReport compare_report(const FrameSequence& before, const FrameSequence& after) {
    if (before.size() != after.size())
        throw MismatchError("sequences differ in length (" + std::to_string(before.size()) +
                            " vs " + std::to_string(after.size()) + ")");
    if (before.empty())
        throw MismatchError("cannot compare empty sequences");

    ComparisonReport report;
    double sum_mse = 0.0, sum_l1 = 0.0, sum_chi2 = 0.0, sum_psnr = 0.0;
    std::size_t finite_psnr = 0;

    for (std::size_t i = 0; i < before.size(); ++i) {
        const Frame& a = before.frames[i];
        const Frame& b = after.frames[i];
        check_same_shape(a, b);

        FrameComparison fc;
        fc.name = i < before.source_names.size() && !before.source_names[i].empty()
                      ? before.source_names[i]
                      : "frame_" + std::to_string(i);
        double frame_l1 = 0.0;
        double frame_chi2 = 0.0;
        for (int c = 0; c < a.channels; ++c) {
            const Histogram ha = histogram(a, c);
            const Histogram hb = histogram(b, c);
            fc.l1.push_back(l1_distance(ha, hb));
            fc.chi2.push_back(chi_square(ha, hb));
            frame_l1 += static_cast<double>(fc.l1.back());
            frame_chi2 += fc.chi2.back();
        }
        fc.mse = mse(a, b);
        fc.psnr = psnr(a, b);

        sum_mse += fc.mse;
        sum_l1 += frame_l1;
        sum_chi2 += frame_chi2;
        report.aggregate.max_mse = std::max(report.aggregate.max_mse, fc.mse);
        report.aggregate.max_l1 = std::max(report.aggregate.max_l1, frame_l1);
        report.aggregate.max_chi2 = std::max(report.aggregate.max_chi2, frame_chi2);
        if (fc.psnr) {
            ++finite_psnr;
            sum_psnr += *fc.psnr;
            if (!report.aggregate.min_psnr || *fc.psnr < *report.aggregate.min_psnr)
                report.aggregate.min_psnr = *fc.psnr;
        }
        report.frames.push_back(std::move(fc));
    }

    const auto n = static_cast<double>(before.size());
    report.aggregate.mean_mse = sum_mse / n;
    report.aggregate.mean_l1 = sum_l1 / n;
    report.aggregate.mean_chi2 = sum_chi2 / n;
    if (finite_psnr > 0)
        report.aggregate.mean_psnr = sum_psnr / static_cast<double>(finite_psnr);
    return report;
}

std::string report_to_json(const ComparisonReport& report) {
    using nlohmann::json;
    const auto psnr_value = [](const std::optional<double>& p) {
        return p ? json(*p) : json("infinite");
    };

    json doc;
    doc["version"] = 1;
    doc["frames"] = json::array();
    for (const auto& fc : report.frames) {
        json entry;
        entry["name"] = fc.name;
        entry["l1"] = fc.l1;
        entry["chi2"] = fc.chi2;
        entry["mse"] = fc.mse;
        entry["psnr"] = psnr_value(fc.psnr);
        doc["frames"].push_back(std::move(entry));
    }
    const auto& agg = report.aggregate;
    doc["aggregate"] = {
        {"mean_mse", agg.mean_mse},   {"max_mse", agg.max_mse},
        {"min_psnr", psnr_value(agg.min_psnr)}, {"mean_psnr", psnr_value(agg.mean_psnr)},
        {"mean_l1", agg.mean_l1},     {"max_l1", agg.max_l1},
        {"mean_chi2", agg.mean_chi2}, {"max_chi2", agg.max_chi2},
    };
    return doc.dump(2) + "\n";
}

}  // namespace bpcs
