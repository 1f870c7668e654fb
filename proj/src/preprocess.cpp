#include "ambio/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <vector>

#include "ambio/error.hpp"

namespace ambio {

namespace {

constexpr int kZeroCrossings = 32;
constexpr double kRolloff = 0.92;
constexpr double kKaiserBeta = 6.76;  // 0.1102 * (70 - 8.7)
constexpr std::size_t kMaxTablePhases = 2048;

double sinc(double x) {
    if (x == 0.0) return 1.0;
    const double px = kPi * x;
    return std::sin(px) / px;
}

class SincKernel {
public:
    // cutoff is in cycles per input sample.
    explicit SincKernel(double cutoff)
        : cutoff_(cutoff), half_width_(kZeroCrossings / (2.0 * cutoff)),
          i0_beta_(std::cyl_bessel_i(0.0, kKaiserBeta)) {}

    double half_width() const { return half_width_; }

    double operator()(double tau) const {
        const double r = tau / half_width_;
        if (r <= -1.0 || r >= 1.0) return 0.0;
        const double window = std::cyl_bessel_i(0.0, kKaiserBeta * std::sqrt(1.0 - r * r)) / i0_beta_;
        return 2.0 * cutoff_ * sinc(2.0 * cutoff_ * tau) * window;
    }

private:
    double cutoff_;
    double half_width_;
    double i0_beta_;
};

}  // namespace

MonoSignal resample(const MonoSignal& in, int target_rate) {
    if (target_rate <= 0) throw Error("resample: target rate must be positive");
    if (in.sample_rate() == target_rate) return in;
    if (in.empty()) return {{}, target_rate};

    const long g = std::gcd(in.sample_rate(), target_rate);
    const long up = target_rate / g;
    const long down = in.sample_rate() / g;
    const double cutoff = 0.5 * kRolloff * std::min(1.0, static_cast<double>(up) / down);
    const SincKernel kernel(cutoff);
    const long reach = static_cast<long>(std::ceil(kernel.half_width()));
    const std::size_t taps = static_cast<std::size_t>(2 * reach + 1);

    const auto x = in.samples();
    const long n_in = static_cast<long>(x.size());
    const std::size_t n_out = static_cast<std::size_t>((n_in * up + down - 1) / down);

    // Tap j of phase p weights input sample k0 + j - reach, where the output
    // lands at k0 + p / up. Each phase is normalized to unit DC gain.
    auto make_phase = [&](long phase, std::vector<double>& out) {
        const double frac = static_cast<double>(phase) / up;
        double sum = 0.0;
        for (std::size_t j = 0; j < taps; ++j) {
            out[j] = kernel(frac - (static_cast<long>(j) - reach));
            sum += out[j];
        }
        for (double& v : out) v /= sum;
    };

    std::vector<double> table;
    const bool tabulate = static_cast<std::size_t>(up) <= kMaxTablePhases;
    if (tabulate) {
        table.resize(static_cast<std::size_t>(up) * taps);
        std::vector<double> row(taps);
        for (long p = 0; p < up; ++p) {
            make_phase(p, row);
            std::copy(row.begin(), row.end(), table.begin() + p * static_cast<long>(taps));
        }
    }

    std::vector<double> out(n_out);
    std::vector<double> scratch(taps);
    for (std::size_t n = 0; n < n_out; ++n) {
        const long pos = static_cast<long>(n) * down;
        const long k0 = pos / up;
        const long phase = pos % up;
        const double* h;
        if (tabulate) {
            h = table.data() + phase * static_cast<long>(taps);
        } else {
            make_phase(phase, scratch);
            h = scratch.data();
        }
        const long first = k0 - reach;
        const long j_lo = std::max(0L, -first);
        const long j_hi = std::min(static_cast<long>(taps), n_in - first);
        double acc = 0.0;
        for (long j = j_lo; j < j_hi; ++j) acc += h[j] * x[static_cast<std::size_t>(first + j)];
        out[n] = acc;
    }
    return {std::move(out), target_rate};
}

MonoSignal trim_silence(const MonoSignal& in, double threshold_dbfs, double window_ms) {
    const auto x = in.samples();
    const std::size_t win = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::lround(window_ms * 1e-3 * in.sample_rate())));
    const double threshold = std::pow(10.0, threshold_dbfs / 20.0);
    const double threshold_sq = threshold * threshold;

    auto loud = [&](std::size_t begin) {
        const std::size_t end = std::min(begin + win, x.size());
        double energy = 0.0;
        for (std::size_t i = begin; i < end; ++i) energy += x[i] * x[i];
        return energy / static_cast<double>(end - begin) >= threshold_sq;
    };

    std::size_t first = x.size();
    std::size_t last_end = 0;
    for (std::size_t begin = 0; begin < x.size(); begin += win) {
        if (!loud(begin)) continue;
        if (first == x.size()) first = begin;
        last_end = std::min(begin + win, x.size());
    }
    if (first == x.size()) throw Error("preprocess: signal is entirely silent");
    return {std::vector<double>(x.begin() + static_cast<long>(first),
                                x.begin() + static_cast<long>(last_end)),
            in.sample_rate()};
}

MonoSignal loop_to_length(const MonoSignal& in, std::size_t length) {
    if (in.empty()) throw Error("loop: empty input");
    const auto x = in.samples();
    std::vector<double> out;
    out.reserve(length);
    while (out.size() < length) {
        const std::size_t take = std::min(x.size(), length - out.size());
        out.insert(out.end(), x.begin(), x.begin() + static_cast<long>(take));
    }
    return {std::move(out), in.sample_rate()};
}

MonoSignal preprocess(const MonoSignal& in, const PreprocessOptions& opts) {
    if (in.empty()) throw Error("preprocess: empty input");
    const MonoSignal resampled = resample(in, opts.target_rate);
    const MonoSignal trimmed =
        trim_silence(resampled, opts.silence_threshold_dbfs, opts.silence_window_ms);
    const auto length =
        static_cast<std::size_t>(std::lround(opts.target_duration_s * opts.target_rate));
    return loop_to_length(trimmed, length);
}

}  // namespace ambio
