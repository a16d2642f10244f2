#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "texcurve/core.hpp"

// CTEX1 texture container. All integers and floats are little-endian.
//
//   offset  size  field
//   0       5     magic "CTEX1"
//   5       4     width (u32)
//   9       4     height (u32)
//   13      4     depth (u32)
//   17      1     channels (u8, 1..4)
//   18      1     format code (u8: 1 unorm8, 2 unorm16, 3 float32)
//   19      1     layout code (u8, Layout enumerator value)
//   20      1     degree (u8)
//   21      4     segment_count (u32)
//   25      16*c  transform: per channel f64 scale, f64 offset
//   ...           texels, row-major (x fastest, then y, then z), channels
//                 interleaved; unorm as raw u8/u16 integers, float32 as
//                 IEEE-754 binary32 bits

namespace texcurve {

inline constexpr char kContainerMagic[5] = {'C', 'T', 'E', 'X', '1'};

std::vector<std::uint8_t> serialize(const EncodedCurve& curve);
EncodedCurve deserialize(std::span<const std::uint8_t> bytes);

void write_container(const std::filesystem::path& path, const EncodedCurve& curve);
EncodedCurve read_container(const std::filesystem::path& path);

/// Human-readable `key: value` lines describing the header and texels.
std::string describe(const EncodedCurve& curve);

}  // namespace texcurve
