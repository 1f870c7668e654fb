#pragma once

#include <cstddef>

#include "ambio/foa.hpp"

namespace ambio {

struct PreprocessOptions {
    int target_rate = 16000;
    double target_duration_s = 10.0;
    /// Windows whose RMS falls below this level count as silence.
    double silence_threshold_dbfs = -40.0;
    double silence_window_ms = 10.0;
};

/// Rational-ratio resampler: Kaiser-windowed sinc (beta 6.76, about 70 dB
/// stopband), 32 zero crossings per side, cutoff at 92% of the lower
/// Nyquist frequency. Returns the input unchanged when the rates agree.
MonoSignal resample(const MonoSignal& in, int target_rate);

/// Drops leading and trailing windows quieter than the threshold. Throws
/// when every window is silent.
MonoSignal trim_silence(const MonoSignal& in, double threshold_dbfs, double window_ms);

/// Repeats the signal end-to-start until it reaches `length` samples, then
/// truncates.
MonoSignal loop_to_length(const MonoSignal& in, std::size_t length);

/// Resample, trim, then loop or truncate to the target duration.
MonoSignal preprocess(const MonoSignal& in, const PreprocessOptions& opts = {});

}  // namespace ambio
