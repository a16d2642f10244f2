#include "texcurve/container.hpp"

#include <bit>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "texcurve/number_format.hpp"

namespace texcurve {

namespace {

class Writer {
 public:
  void bytes(const void* p, std::size_t n) {
    const auto* b = static_cast<const std::uint8_t*>(p);
    out_.insert(out_.end(), b, b + n);
  }
  void u8(std::uint8_t v) { out_.push_back(v); }
  void u16(std::uint16_t v) {
    for (int i = 0; i < 2; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u32(std::uint32_t v) {
    for (int i = 0; i < 4; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void u64(std::uint64_t v) {
    for (int i = 0; i < 8; ++i) out_.push_back(static_cast<std::uint8_t>(v >> (8 * i)));
  }
  void f64(double v) { u64(std::bit_cast<std::uint64_t>(v)); }
  std::vector<std::uint8_t> take() { return std::move(out_); }

 private:
  std::vector<std::uint8_t> out_;
};

class Reader {
 public:
  explicit Reader(std::span<const std::uint8_t> in) : in_(in) {}

  std::uint64_t uint(int n) {
    if (pos_ + static_cast<std::size_t>(n) > in_.size()) {
      throw Error(ErrorKind::parse, "CTEX1 container is truncated");
    }
    std::uint64_t v = 0;
    for (int i = 0; i < n; ++i) v |= static_cast<std::uint64_t>(in_[pos_++]) << (8 * i);
    return v;
  }
  std::uint8_t u8() { return static_cast<std::uint8_t>(uint(1)); }
  std::uint16_t u16() { return static_cast<std::uint16_t>(uint(2)); }
  std::uint32_t u32() { return static_cast<std::uint32_t>(uint(4)); }
  double f64() { return std::bit_cast<double>(uint(8)); }
  bool done() const { return pos_ == in_.size(); }

 private:
  std::span<const std::uint8_t> in_;
  std::size_t pos_ = 0;
};

TexelFormat format_from_code(std::uint8_t code) {
  switch (code) {
    case 1: return TexelFormat::unorm8;
    case 2: return TexelFormat::unorm16;
    case 3: return TexelFormat::float32;
    default: throw Error(ErrorKind::parse, "unknown texel format code " + std::to_string(code));
  }
}

}  // namespace

std::vector<std::uint8_t> serialize(const EncodedCurve& curve) {
  curve.validate();
  const TexelGrid& g = curve.grid;
  Writer w;
  w.bytes(kContainerMagic, sizeof kContainerMagic);
  w.u32(static_cast<std::uint32_t>(g.width()));
  w.u32(static_cast<std::uint32_t>(g.height()));
  w.u32(static_cast<std::uint32_t>(g.depth()));
  w.u8(static_cast<std::uint8_t>(g.channels()));
  w.u8(static_cast<std::uint8_t>(g.format()));
  w.u8(static_cast<std::uint8_t>(curve.layout));
  w.u8(static_cast<std::uint8_t>(curve.degree));
  w.u32(static_cast<std::uint32_t>(curve.segment_count));
  for (int c = 0; c < g.channels(); ++c) {
    w.f64(curve.transform.scale[c]);
    w.f64(curve.transform.offset[c]);
  }
  const double levels = std::ldexp(1.0, unorm_bits(g.format())) - 1.0;
  for (double v : g.data()) {
    switch (g.format()) {
      case TexelFormat::unorm8: w.u8(static_cast<std::uint8_t>(std::lround(v * levels))); break;
      case TexelFormat::unorm16: w.u16(static_cast<std::uint16_t>(std::lround(v * levels))); break;
      case TexelFormat::float32: w.u32(std::bit_cast<std::uint32_t>(static_cast<float>(v))); break;
    }
  }
  return w.take();
}

EncodedCurve deserialize(std::span<const std::uint8_t> bytes) {
  if (bytes.size() < sizeof kContainerMagic ||
      std::memcmp(bytes.data(), kContainerMagic, sizeof kContainerMagic) != 0) {
    throw Error(ErrorKind::parse, "not a CTEX1 container (bad magic)");
  }
  Reader r(bytes.subspan(sizeof kContainerMagic));
  const auto width = static_cast<int>(r.u32());
  const auto height = static_cast<int>(r.u32());
  const auto depth = static_cast<int>(r.u32());
  const int channels = r.u8();
  const TexelFormat format = format_from_code(r.u8());
  const Layout layout = layout_from_code(r.u8());
  const int degree = r.u8();
  const auto segments = static_cast<int>(r.u32());
  if (width < 1 || height < 1 || depth < 1 || width > 65536 || height > 65536 || depth > 65536) {
    throw Error(ErrorKind::parse, "CTEX1 dimensions out of range");
  }
  if (channels < 1 || channels > Vec::kMaxChannels) {
    throw Error(ErrorKind::parse, "CTEX1 channel count out of range");
  }
  ValueTransform tf = ValueTransform::identity(channels);
  for (int c = 0; c < channels; ++c) {
    tf.scale[c] = r.f64();
    tf.offset[c] = r.f64();
  }
  const std::size_t count = static_cast<std::size_t>(width) * static_cast<std::size_t>(height) *
                            static_cast<std::size_t>(depth) * static_cast<std::size_t>(channels);
  const double levels = std::ldexp(1.0, unorm_bits(format)) - 1.0;
  std::vector<double> values;
  values.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    switch (format) {
      case TexelFormat::unorm8: values.push_back(r.u8() / levels); break;
      case TexelFormat::unorm16: values.push_back(r.u16() / levels); break;
      case TexelFormat::float32: values.push_back(std::bit_cast<float>(r.u32())); break;
    }
  }
  if (!r.done()) throw Error(ErrorKind::parse, "trailing bytes after CTEX1 payload");

  EncodedCurve curve{TexelGrid::from_values(width, height, depth, channels, format, std::move(values)),
                     layout, degree, segments, tf};
  try {
    curve.validate();
  } catch (const Error& e) {
    throw Error(ErrorKind::parse, std::string("inconsistent CTEX1 header: ") + e.what());
  }
  return curve;
}

void write_container(const std::filesystem::path& path, const EncodedCurve& curve) {
  const auto bytes = serialize(curve);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::io, "cannot open " + path.string() + " for writing");
  out.write(reinterpret_cast<const char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorKind::io, "failed writing " + path.string());
}

EncodedCurve read_container(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::io, "cannot open " + path.string());
  const std::vector<std::uint8_t> bytes((std::istreambuf_iterator<char>(in)),
                                        std::istreambuf_iterator<char>());
  return deserialize(bytes);
}

std::string describe(const EncodedCurve& curve) {
  const TexelGrid& g = curve.grid;
  std::ostringstream out;
  out << "magic: CTEX1\n"
      << "width: " << g.width() << "\n"
      << "height: " << g.height() << "\n"
      << "depth: " << g.depth() << "\n"
      << "channels: " << g.channels() << "\n"
      << "format: " << to_string(g.format()) << "\n"
      << "layout: " << to_string(curve.layout) << "\n"
      << "degree: " << curve.degree << "\n"
      << "segment_count: " << curve.segment_count << "\n"
      << "transform_scale: " << format_values(curve.transform.scale.values()) << "\n"
      << "transform_offset: " << format_values(curve.transform.offset.values()) << "\n";
  for (int z = 0; z < g.depth(); ++z) {
    for (int y = 0; y < g.height(); ++y) {
      for (int x = 0; x < g.width(); ++x) {
        out << "texel " << x << " " << y << " " << z << ": "
            << format_values(g.at(x, y, z).values()) << "\n";
      }
    }
  }
  return out.str();
}

}  // namespace texcurve
