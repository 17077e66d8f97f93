#include "spikeplan/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace spikeplan {

MetricSummary summarize(std::span<const double> values) {
    MetricSummary s;
    if (values.empty()) return s;
    for (double v : values) s.mean += v;
    s.mean /= static_cast<double>(values.size());
    if (values.size() > 1) {
        double acc = 0.0;
        for (double v : values) acc += (v - s.mean) * (v - s.mean);
        s.stddev = std::sqrt(acc / static_cast<double>(values.size() - 1));
    }
    return s;
}

SynapticChangeReport synaptic_change_report(const Matrix& w_before, const Matrix& w_after, const GridSpec& grid) {
    if (!w_before.same_shape(w_after)) throw std::invalid_argument("synaptic_change_report: shape mismatch");
    const int K = grid.K();
    if (w_before.rows != K || w_before.cols != K)
        throw std::invalid_argument("synaptic_change_report: matrix does not match grid");

    SynapticChangeReport report;
    report.input_change.assign(static_cast<size_t>(K), 0.0);
    report.output_change.assign(static_cast<size_t>(K), 0.0);
    for (int k = 0; k < K; ++k) {
        for (int i = 0; i < K; ++i) {
            const double d = w_after(k, i) - w_before(k, i);
            report.output_change[k] += d;
            report.input_change[i] += d;
        }
    }
    for (int k = 0; k < K; ++k) {
        report.output_change[k] /= K;
        report.input_change[k] /= K;
    }
    return report;
}

void write_heatmap_csv(const SynapticChangeReport& report, const GridSpec& grid, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_heatmap_csv: cannot write '" + path + "'");
    out << "# spikeplan-heatmap v1\n";
    out << "neuron,ix,iy,pos_x,pos_y,avg_input_change,avg_output_change\n";
    char buf[160];
    for (int k = 0; k < grid.K(); ++k) {
        const int ix = k % grid.neurons_per_dim;
        const int iy = k / grid.neurons_per_dim;
        std::snprintf(buf, sizeof(buf), "%d,%d,%d,%.17g,%.17g,%.17g,%.17g\n", k, ix, iy, grid.preferred[k].x,
                      grid.preferred[k].y, report.input_change[k], report.output_change[k]);
        out << buf;
    }
}

SignalHistogram signal_histogram(std::span<const double> gated_alphas, int bins) {
    if (gated_alphas.empty()) throw std::invalid_argument("signal_histogram: no gated updates recorded");
    if (bins < 1) throw std::invalid_argument("signal_histogram: need at least one bin");

    SignalHistogram hist;
    hist.counts.assign(static_cast<size_t>(bins), 0);
    hist.total = static_cast<long>(gated_alphas.size());
    for (double a : gated_alphas) {
        hist.update_mass += a;
        hist.max_magnitude = std::max(hist.max_magnitude, a);
        int b = static_cast<int>((a - hist.lo) / (hist.hi - hist.lo) * bins);
        b = std::clamp(b, 0, bins - 1);
        ++hist.counts[b];
    }

    std::vector<double> sorted(gated_alphas.begin(), gated_alphas.end());
    std::sort(sorted.begin(), sorted.end(), std::greater<>());
    const long top_n = std::max<long>(1, std::lround(0.15 * static_cast<double>(sorted.size())));
    double top_mass = 0.0;
    for (long i = 0; i < top_n; ++i) top_mass += sorted[static_cast<size_t>(i)];
    hist.top15_mass_share = hist.update_mass > 0.0 ? top_mass / hist.update_mass : 0.0;
    return hist;
}

void write_histogram_csv(const SignalHistogram& hist, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_histogram_csv: cannot write '" + path + "'");
    out << "# spikeplan-histogram v1\n";
    out << "# total=" << hist.total << " update_mass=" << hist.update_mass
        << " top15_mass_share=" << hist.top15_mass_share << " max=" << hist.max_magnitude << "\n";
    out << "bin_lo,bin_hi,count\n";
    const int bins = static_cast<int>(hist.counts.size());
    char buf[96];
    for (int b = 0; b < bins; ++b) {
        const double lo = hist.lo + (hist.hi - hist.lo) * b / bins;
        const double hi = hist.lo + (hist.hi - hist.lo) * (b + 1) / bins;
        std::snprintf(buf, sizeof(buf), "%.17g,%.17g,%ld\n", lo, hi, hist.counts[b]);
        out << buf;
    }
}

std::vector<double> collect_gated_alphas(std::span<const TrialMetrics> metrics) {
    std::vector<double> out;
    for (const auto& trial : metrics)
        for (const auto& seg : trial.segments)
            out.insert(out.end(), seg.gated_alphas.begin(), seg.gated_alphas.end());
    return out;
}

}  // namespace spikeplan
