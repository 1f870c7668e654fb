#pragma once

#include <string>
#include <vector>

#include "ambio/foa.hpp"

namespace ambio {

/// Decoded RIFF/WAVE contents, one vector per channel, scaled to [-1, 1]
/// for integer PCM.
struct WavData {
    int sample_rate = 0;
    std::vector<std::vector<double>> channels;
};

/// Reads PCM (8/16/24/32-bit) and IEEE float (32/64-bit) WAV files,
/// including WAVE_FORMAT_EXTENSIBLE headers.
WavData read_wav(const std::string& path);

/// Writes 32-bit IEEE float WAV. All channels must share one length.
void write_wav(const WavData& data, const std::string& path);

/// On-disk channel order. `wxyz` is the native order; `acn` (W, Y, Z, X) is
/// reordered on read. Normalization is left untouched.
enum class ChannelOrder { wxyz, acn };

ChannelOrder parse_channel_order(const std::string& s);

/// Requires exactly four channels.
FoaSignal read_foa(const std::string& path, ChannelOrder order = ChannelOrder::wxyz);

/// 4-channel float32 WAV in W, X, Y, Z order at the signal's sample rate.
void write_foa(const FoaSignal& signal, const std::string& path);

/// Reads a mono or stereo file; stereo is averaged to mono.
MonoSignal read_mono(const std::string& path);

void write_mono(const MonoSignal& signal, const std::string& path);

}  // namespace ambio
