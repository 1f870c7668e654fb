#include "ambio/wav.hpp"

#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <iterator>

#include "ambio/error.hpp"

namespace ambio {

namespace {

static_assert(std::endian::native == std::endian::little, "WAV I/O assumes a little-endian host");

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint16_t le16(const unsigned char* p) {
    return static_cast<std::uint16_t>(p[0] | (p[1] << 8));
}

std::uint32_t le32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

void put16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>(v >> 8));
}

void put32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

double decode_sample(const unsigned char* p, std::uint16_t format, std::uint16_t bits) {
    if (format == kFormatFloat) {
        if (bits == 32) {
            float f;
            std::memcpy(&f, p, 4);
            return f;
        }
        double d;
        std::memcpy(&d, p, 8);
        return d;
    }
    switch (bits) {
        case 8: return (static_cast<int>(p[0]) - 128) / 128.0;
        case 16: return static_cast<std::int16_t>(le16(p)) / 32768.0;
        case 24: {
            std::int32_t v = static_cast<std::int32_t>(p[0] | (p[1] << 8) | (p[2] << 16));
            if (v & 0x800000) v -= 0x1000000;
            return v / 8388608.0;
        }
        default: return static_cast<std::int32_t>(le32(p)) / 2147483648.0;
    }
}

}  // namespace

WavData read_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot open WAV file: " + path);
    const std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    const auto* b = reinterpret_cast<const unsigned char*>(bytes.data());
    const std::size_t size = bytes.size();

    if (size < 12 || std::memcmp(b, "RIFF", 4) != 0 || std::memcmp(b + 8, "WAVE", 4) != 0)
        throw Error("malformed RIFF/WAVE header: " + path);

    std::uint16_t format = 0, channels = 0, bits = 0, block_align = 0;
    std::uint32_t rate = 0;
    bool have_fmt = false;
    const unsigned char* data = nullptr;
    std::size_t data_size = 0;

    std::size_t pos = 12;
    while (pos + 8 <= size) {
        const std::uint32_t chunk_size = le32(b + pos + 4);
        const std::size_t body = pos + 8;
        if (chunk_size > size - body) {
            // Tolerate a truncated final data chunk written by streaming tools.
            if (std::memcmp(b + pos, "data", 4) != 0) throw Error("truncated RIFF chunk: " + path);
        }
        const std::size_t avail = std::min<std::size_t>(chunk_size, size - body);
        if (std::memcmp(b + pos, "fmt ", 4) == 0) {
            if (avail < 16) throw Error("malformed fmt chunk: " + path);
            format = le16(b + body);
            channels = le16(b + body + 2);
            rate = le32(b + body + 4);
            block_align = le16(b + body + 12);
            bits = le16(b + body + 14);
            if (format == kFormatExtensible) {
                if (avail < 26) throw Error("malformed extensible fmt chunk: " + path);
                format = le16(b + body + 24);
            }
            have_fmt = true;
        } else if (std::memcmp(b + pos, "data", 4) == 0) {
            data = b + body;
            data_size = avail;
        }
        pos = body + avail + (avail & 1U);
    }
    if (!have_fmt) throw Error("missing fmt chunk: " + path);
    if (data == nullptr) throw Error("missing data chunk: " + path);
    if (channels == 0 || rate == 0) throw Error("invalid WAV format fields: " + path);

    const bool pcm_ok = format == kFormatPcm && (bits == 8 || bits == 16 || bits == 24 || bits == 32);
    const bool float_ok = format == kFormatFloat && (bits == 32 || bits == 64);
    if (!pcm_ok && !float_ok)
        throw Error("unsupported WAV encoding (format " + std::to_string(format) + ", " +
                    std::to_string(bits) + " bits): " + path);
    const std::size_t bytes_per_sample = bits / 8;
    if (block_align != bytes_per_sample * channels) throw Error("inconsistent block align: " + path);

    const std::size_t frames = data_size / block_align;
    WavData out;
    out.sample_rate = static_cast<int>(rate);
    out.channels.assign(channels, std::vector<double>(frames));
    for (std::size_t f = 0; f < frames; ++f) {
        const unsigned char* frame = data + f * block_align;
        for (std::size_t c = 0; c < channels; ++c)
            out.channels[c][f] = decode_sample(frame + c * bytes_per_sample, format, bits);
    }
    return out;
}

void write_wav(const WavData& data, const std::string& path) {
    if (data.channels.empty()) throw Error("write: no channels");
    if (data.sample_rate <= 0) throw Error("write: sample rate must be positive");
    const std::size_t frames = data.channels.front().size();
    if (frames == 0) throw Error("write: empty signal");
    for (const auto& ch : data.channels)
        if (ch.size() != frames) throw Error("write: channel lengths differ");

    const auto n_ch = static_cast<std::uint16_t>(data.channels.size());
    const std::uint64_t data_bytes = static_cast<std::uint64_t>(frames) * n_ch * 4;
    if (data_bytes > 0xFFFFFFFFULL - 36) throw Error("write: signal too long for RIFF");

    // Convert everything first so a bad sample aborts before the file is touched.
    std::string payload;
    payload.reserve(static_cast<std::size_t>(data_bytes));
    for (std::size_t f = 0; f < frames; ++f) {
        for (const auto& ch : data.channels) {
            const auto v = static_cast<float>(ch[f]);
            if (!std::isfinite(v)) throw Error("write: non-finite sample at frame " + std::to_string(f));
            put32(payload, std::bit_cast<std::uint32_t>(v));
        }
    }

    std::string header;
    header.append("RIFF");
    put32(header, static_cast<std::uint32_t>(36 + data_bytes));
    header.append("WAVEfmt ");
    put32(header, 16);
    put16(header, kFormatFloat);
    put16(header, n_ch);
    put32(header, static_cast<std::uint32_t>(data.sample_rate));
    put32(header, static_cast<std::uint32_t>(data.sample_rate) * n_ch * 4);
    put16(header, static_cast<std::uint16_t>(n_ch * 4));
    put16(header, 32);
    header.append("data");
    put32(header, static_cast<std::uint32_t>(data_bytes));

    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot open for writing: " + path);
    out.write(header.data(), static_cast<std::streamsize>(header.size()));
    out.write(payload.data(), static_cast<std::streamsize>(payload.size()));
    if (!out) throw Error("write failed: " + path);
}

ChannelOrder parse_channel_order(const std::string& s) {
    if (s == "wxyz" || s == "fuma") return ChannelOrder::wxyz;
    if (s == "acn") return ChannelOrder::acn;
    throw Error("unknown channel order: " + s);
}

FoaSignal read_foa(const std::string& path, ChannelOrder order) {
    WavData d = read_wav(path);
    if (d.channels.size() != 4)
        throw Error("expected 4 FOA channels, found " + std::to_string(d.channels.size()) + ": " +
                    path);
    auto& c = d.channels;
    if (order == ChannelOrder::acn)
        return {std::move(c[0]), std::move(c[3]), std::move(c[1]), std::move(c[2]), d.sample_rate};
    return {std::move(c[0]), std::move(c[1]), std::move(c[2]), std::move(c[3]), d.sample_rate};
}

void write_foa(const FoaSignal& signal, const std::string& path) {
    WavData d;
    d.sample_rate = signal.sample_rate();
    for (std::size_t c = 0; c < 4; ++c) {
        const auto ch = signal.channel(c);
        d.channels.emplace_back(ch.begin(), ch.end());
    }
    write_wav(d, path);
}

MonoSignal read_mono(const std::string& path) {
    WavData d = read_wav(path);
    if (d.channels.size() == 1) return {std::move(d.channels[0]), d.sample_rate};
    if (d.channels.size() == 2) {
        std::vector<double> mix(d.channels[0].size());
        for (std::size_t i = 0; i < mix.size(); ++i)
            mix[i] = 0.5 * (d.channels[0][i] + d.channels[1][i]);
        return {std::move(mix), d.sample_rate};
    }
    throw Error("expected a mono or stereo source, found " + std::to_string(d.channels.size()) +
                " channels: " + path);
}

void write_mono(const MonoSignal& signal, const std::string& path) {
    WavData d;
    d.sample_rate = signal.sample_rate();
    d.channels.emplace_back(signal.samples().begin(), signal.samples().end());
    write_wav(d, path);
}

}  // namespace ambio
