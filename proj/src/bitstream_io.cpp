#include "dmsparse/bitstream_io.hpp"

#include <bit>
#include <cstring>
#include <fstream>

#include "dmsparse/errors.hpp"

namespace dmsparse {

namespace {

constexpr char kMagic[4] = {'D', 'M', 'B', 'S'};

void put_u32_le(std::vector<std::uint8_t>& out, std::uint32_t v) {
    out.push_back(static_cast<std::uint8_t>(v & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 8) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 16) & 0xff));
    out.push_back(static_cast<std::uint8_t>((v >> 24) & 0xff));
}

void put_f64_le(std::vector<std::uint8_t>& out, double v) {
    const auto u = std::bit_cast<std::uint64_t>(v);
    for (int i = 0; i < 8; ++i)
        out.push_back(static_cast<std::uint8_t>((u >> (8 * i)) & 0xff));
}

std::uint32_t get_u32_le(const std::uint8_t* p) {
    return static_cast<std::uint32_t>(p[0]) |
           (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) |
           (static_cast<std::uint32_t>(p[3]) << 24);
}

double get_f64_le(const std::uint8_t* p) {
    std::uint64_t u = 0;
    for (int i = 0; i < 8; ++i)
        u |= static_cast<std::uint64_t>(p[i]) << (8 * i);
    return std::bit_cast<double>(u);
}

}  // namespace

std::vector<std::uint8_t> bitstream_to_bytes(const Bitstream& bits) {
    std::vector<std::uint8_t> out;
    out.reserve(18 + bits.size() / 8 + 1);
    out.insert(out.end(), kMagic, kMagic + 4);
    out.push_back(kBitstreamVersion);
    out.push_back(bits.adaptive ? 1 : 0);
    put_u32_le(out, static_cast<std::uint32_t>(bits.size()));
    put_f64_le(out, bits.delta);

    const std::size_t payload = (bits.size() + 7) / 8;
    const std::size_t base = out.size();
    out.resize(base + payload, 0);
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits.symbols[i] == 1)
            out[base + i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
        else if (bits.symbols[i] != -1)
            throw std::invalid_argument("bitstream_to_bytes: symbol outside {-1,+1}");
    }
    return out;
}

Bitstream bitstream_from_bytes(const std::vector<std::uint8_t>& bytes) {
    if (bytes.size() < 18)
        throw IoError("bitstream: truncated header");
    if (std::memcmp(bytes.data(), kMagic, 4) != 0)
        throw IoError("bitstream: bad magic");
    if (bytes[4] != kBitstreamVersion)
        throw IoError("bitstream: unsupported version " + std::to_string(bytes[4]));

    Bitstream bits;
    bits.adaptive = bytes[5] != 0;
    const std::uint32_t n = get_u32_le(bytes.data() + 6);
    bits.delta = get_f64_le(bytes.data() + 10);
    const std::size_t payload = (static_cast<std::size_t>(n) + 7) / 8;
    if (bytes.size() != 18 + payload)
        throw IoError("bitstream: payload size mismatch");

    bits.symbols.resize(n);
    for (std::uint32_t i = 0; i < n; ++i) {
        const bool set = (bytes[18 + i / 8] >> (i % 8)) & 1u;
        bits.symbols[i] = set ? 1 : -1;
    }
    return bits;
}

void write_bitstream(const std::string& path, const Bitstream& bits) {
    const auto bytes = bitstream_to_bytes(bits);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open for writing: " + path);
    out.write(reinterpret_cast<const char*>(bytes.data()),
              static_cast<std::streamsize>(bytes.size()));
    if (!out) throw IoError("write failed: " + path);
}

Bitstream read_bitstream(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open: " + path);
    std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                    std::istreambuf_iterator<char>());
    return bitstream_from_bytes(bytes);
}

}  // namespace dmsparse
