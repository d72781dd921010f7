#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "dmsparse/dm.hpp"

namespace dmsparse {

// On-disk bitstream format, bit-exact across platforms. Little-endian
// header: magic "DMBS", version u8, adaptive flag u8, N u32, delta f64,
// followed by ceil(N/8) bytes of packed symbols (bit set = +1, LSB-first
// within each byte).
inline constexpr std::uint8_t kBitstreamVersion = 1;

std::vector<std::uint8_t> bitstream_to_bytes(const Bitstream& bits);
Bitstream bitstream_from_bytes(const std::vector<std::uint8_t>& bytes);

void write_bitstream(const std::string& path, const Bitstream& bits);
Bitstream read_bitstream(const std::string& path);

}  // namespace dmsparse
