#include "dmsparse/wav.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>

#include "dmsparse/errors.hpp"

namespace dmsparse {

namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatIeeeFloat = 3;

std::uint32_t get_u32(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) |
           (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

std::uint16_t get_u16(const std::uint8_t* p) {
    return static_cast<std::uint16_t>(p[0] |
                                      (static_cast<std::uint16_t>(p[1]) << 8));
}

void put_u32(std::string& out, std::uint32_t v) {
    for (int i = 0; i < 4; ++i)
        out.push_back(static_cast<char>((v >> (8 * i)) & 0xff));
}

void put_u16(std::string& out, std::uint16_t v) {
    out.push_back(static_cast<char>(v & 0xff));
    out.push_back(static_cast<char>((v >> 8) & 0xff));
}

std::string wav_header(std::uint16_t format, std::uint16_t bits_per_sample,
                       std::uint32_t sample_rate, std::uint32_t frames) {
    const std::uint16_t channels = 1;
    const std::uint16_t block_align = channels * bits_per_sample / 8;
    const std::uint32_t data_bytes = frames * block_align;

    std::string h;
    h += "RIFF";
    put_u32(h, 36 + data_bytes);
    h += "WAVE";
    h += "fmt ";
    put_u32(h, 16);
    put_u16(h, format);
    put_u16(h, channels);
    put_u32(h, sample_rate);
    put_u32(h, sample_rate * block_align);
    put_u16(h, block_align);
    put_u16(h, bits_per_sample);
    h += "data";
    put_u32(h, data_bytes);
    return h;
}

}  // namespace

WavData load_wav(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());

    if (bytes.size() < 12 || std::memcmp(bytes.data(), "RIFF", 4) != 0 ||
        std::memcmp(bytes.data() + 8, "WAVE", 4) != 0)
        throw IoError("not a RIFF/WAVE file: " + path);

    std::uint16_t format = 0;
    std::uint16_t channels = 0;
    std::uint16_t bits = 0;
    std::uint32_t rate = 0;
    bool have_fmt = false;
    const std::uint8_t* data = nullptr;
    std::uint32_t data_len = 0;

    std::size_t pos = 12;
    while (pos + 8 <= bytes.size()) {
        const char* id = reinterpret_cast<const char*>(bytes.data() + pos);
        const std::uint32_t len = get_u32(bytes.data() + pos + 4);
        if (pos + 8 + len > bytes.size())
            throw IoError("truncated chunk in " + path);
        const std::uint8_t* body = bytes.data() + pos + 8;
        if (std::memcmp(id, "fmt ", 4) == 0) {
            if (len < 16) throw IoError("malformed fmt chunk in " + path);
            format = get_u16(body);
            channels = get_u16(body + 2);
            rate = get_u32(body + 4);
            bits = get_u16(body + 14);
            have_fmt = true;
        } else if (std::memcmp(id, "data", 4) == 0) {
            data = body;
            data_len = len;
        }
        pos += 8 + len + (len % 2);  // chunks are word-aligned
    }

    if (!have_fmt || data == nullptr)
        throw IoError("missing fmt or data chunk in " + path);
    if (channels != 1 && channels != 2)
        throw IoError("unsupported channel count " + std::to_string(channels));

    const bool pcm16 = format == kFormatPcm && bits == 16;
    const bool f32 = format == kFormatIeeeFloat && bits == 32;
    if (!pcm16 && !f32)
        throw IoError("unsupported codec (format " + std::to_string(format) +
                      ", " + std::to_string(bits) + " bit) in " + path);

    const std::uint32_t bytes_per_sample = bits / 8;
    const std::uint32_t frame_bytes = bytes_per_sample * channels;
    if (data_len % frame_bytes != 0)
        throw IoError("truncated sample data in " + path);
    const std::uint32_t frames = data_len / frame_bytes;

    WavData out;
    out.sample_rate = static_cast<double>(rate);
    out.samples.resize(frames);
    for (std::uint32_t i = 0; i < frames; ++i) {
        double acc = 0.0;
        for (std::uint16_t c = 0; c < channels; ++c) {
            const std::uint8_t* p = data + (i * channels + c) * bytes_per_sample;
            if (pcm16) {
                const auto raw = static_cast<std::int16_t>(get_u16(p));
                acc += static_cast<double>(raw) / 32768.0;
            } else {
                acc += static_cast<double>(std::bit_cast<float>(get_u32(p)));
            }
        }
        out.samples[i] = acc / channels;
    }
    return out;
}

void save_wav_pcm16(const std::string& path,
                    const std::vector<double>& samples, double sample_rate) {
    std::string payload = wav_header(kFormatPcm, 16,
                                     static_cast<std::uint32_t>(sample_rate),
                                     static_cast<std::uint32_t>(samples.size()));
    for (double s : samples) {
        double v = std::nearbyint(s * 32768.0);
        v = std::min(32767.0, std::max(-32768.0, v));
        put_u16(payload, static_cast<std::uint16_t>(static_cast<std::int16_t>(v)));
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << payload;
    if (!out) throw IoError("write failed: " + path);
}

void save_wav_float32(const std::string& path,
                      const std::vector<double>& samples, double sample_rate) {
    std::string payload = wav_header(kFormatIeeeFloat, 32,
                                     static_cast<std::uint32_t>(sample_rate),
                                     static_cast<std::uint32_t>(samples.size()));
    for (double s : samples)
        put_u32(payload, std::bit_cast<std::uint32_t>(static_cast<float>(s)));
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out << payload;
    if (!out) throw IoError("write failed: " + path);
}

}  // namespace dmsparse
