#include "floodsight/io/geotiff.hpp"

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstring>
#include <map>

#include "floodsight/io/file_util.hpp"

namespace floodsight {

static_assert(std::endian::native == std::endian::little, "little-endian host assumed");

namespace {

// TIFF field types.
constexpr std::uint16_t kTypeByte = 1, kTypeAscii = 2, kTypeShort = 3, kTypeLong = 4,
                        kTypeFloat = 11, kTypeDouble = 12;

constexpr std::uint16_t kTagWidth = 256, kTagHeight = 257, kTagBitsPerSample = 258,
                        kTagCompression = 259, kTagPhotometric = 262, kTagStripOffsets = 273,
                        kTagSamplesPerPixel = 277, kTagRowsPerStrip = 278,
                        kTagStripByteCounts = 279, kTagPlanarConfig = 284, kTagSampleFormat = 339,
                        kTagModelPixelScale = 33550, kTagModelTiepoint = 33922,
                        kTagGeoKeyDirectory = 34735, kTagGeoAsciiParams = 34737;

constexpr std::uint16_t kKeyModelType = 1024, kKeyCitation = 1026, kKeyGeographicType = 2048,
                        kKeyProjectedCSType = 3072;

class ByteWriter {
 public:
  std::vector<unsigned char> bytes;

  void u16(std::uint16_t v) { raw(&v, 2); }
  void u32(std::uint32_t v) { raw(&v, 4); }
  void f64(double v) { raw(&v, 8); }
  void raw(const void* p, std::size_t n) {
    const auto* b = static_cast<const unsigned char*>(p);
    bytes.insert(bytes.end(), b, b + n);
  }
  std::size_t size() const { return bytes.size(); }
  void patch_u32(std::size_t at, std::uint32_t v) { std::memcpy(bytes.data() + at, &v, 4); }
};

struct IfdEntry {
  std::uint16_t tag;
  std::uint16_t type;
  std::uint32_t count;
  std::uint32_t value;  // inline value or offset, already packed
};

int bytes_per_sample(GeoTiffDataType t) {
  switch (t) {
    case GeoTiffDataType::kUint8: return 1;
    case GeoTiffDataType::kFloat32: return 4;
    default: return 8;
  }
}

// Parses "EPSG:nnnn"; returns 0 when the string is not of that form.
std::uint16_t epsg_code(const std::string& crs) {
  if (crs.rfind("EPSG:", 0) != 0) return 0;
  int code = 0;
  for (std::size_t i = 5; i < crs.size(); ++i) {
    if (crs[i] < '0' || crs[i] > '9') return 0;
    code = code * 10 + (crs[i] - '0');
    if (code > 65535) return 0;
  }
  return static_cast<std::uint16_t>(code);
}

}  // namespace

void write_geotiff(const GeoRaster& raster, const std::string& path, GeoTiffDataType type) {
  if (raster.empty()) throw InvalidInputError("write_geotiff: empty raster");
  const int h = raster.height, w = raster.width, c = raster.channels;
  const int bps = bytes_per_sample(type);
  const std::size_t data_size = static_cast<std::size_t>(h) * w * c * bps;

  ByteWriter out;
  out.raw("II", 2);
  out.u16(42);
  const std::size_t ifd_offset_at = out.size();
  out.u32(0);  // patched below

  // Pixel data, chunky layout, one strip.
  const std::uint32_t strip_offset = static_cast<std::uint32_t>(out.size());
  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      for (int ch = 0; ch < c; ++ch) {
        const double v = raster.at(ch, y, x);
        switch (type) {
          case GeoTiffDataType::kUint8: {
            const double r = std::clamp(v, 0.0, 255.0);
            const unsigned char b = static_cast<unsigned char>(r + 0.5);
            out.raw(&b, 1);
            break;
          }
          case GeoTiffDataType::kFloat32: {
            const float f = static_cast<float>(v);
            out.raw(&f, 4);
            break;
          }
          case GeoTiffDataType::kFloat64: out.f64(v); break;
        }
      }
    }
  }
  if (out.size() % 2) out.bytes.push_back(0);

  // Out-of-line arrays follow the IFD; collect them first so entry offsets
  // can be computed once the IFD size is known.
  const std::uint16_t sample_format = type == GeoTiffDataType::kUint8 ? 1 : 3;
  std::vector<std::uint16_t> bits(static_cast<std::size_t>(c), static_cast<std::uint16_t>(bps * 8));
  std::vector<std::uint16_t> formats(static_cast<std::size_t>(c), sample_format);

  std::string ascii_params;
  std::vector<std::uint16_t> geo_keys;
  const std::uint16_t epsg = epsg_code(raster.crs);
  if (!raster.crs.empty()) {
    std::vector<std::array<std::uint16_t, 4>> keys;
    const bool geographic = epsg == 4326;
    keys.push_back({kKeyModelType, 0, 1, static_cast<std::uint16_t>(geographic ? 2 : 1)});
    ascii_params = raster.crs + "|";
    keys.push_back({kKeyCitation, kTagGeoAsciiParams, static_cast<std::uint16_t>(ascii_params.size()), 0});
    if (epsg != 0)
      keys.push_back({geographic ? kKeyGeographicType : kKeyProjectedCSType, 0, 1, epsg});
    std::sort(keys.begin(), keys.end(),
              [](const auto& a, const auto& b) { return a[0] < b[0]; });
    geo_keys = {1, 1, 0, static_cast<std::uint16_t>(keys.size())};
    for (const auto& k : keys) geo_keys.insert(geo_keys.end(), k.begin(), k.end());
    ascii_params.push_back('\0');
  }

  std::vector<IfdEntry> entries;
  entries.push_back({kTagWidth, kTypeLong, 1, static_cast<std::uint32_t>(w)});
  entries.push_back({kTagHeight, kTypeLong, 1, static_cast<std::uint32_t>(h)});
  entries.push_back({kTagBitsPerSample, kTypeShort, static_cast<std::uint32_t>(c), 0});  // offset fixed later
  entries.push_back({kTagCompression, kTypeShort, 1, 1});
  entries.push_back({kTagPhotometric, kTypeShort, 1, 1});
  entries.push_back({kTagStripOffsets, kTypeLong, 1, strip_offset});
  entries.push_back({kTagSamplesPerPixel, kTypeShort, 1, static_cast<std::uint32_t>(c)});
  entries.push_back({kTagRowsPerStrip, kTypeLong, 1, static_cast<std::uint32_t>(h)});
  entries.push_back({kTagStripByteCounts, kTypeLong, 1, static_cast<std::uint32_t>(data_size)});
  entries.push_back({kTagPlanarConfig, kTypeShort, 1, 1});
  entries.push_back({kTagSampleFormat, kTypeShort, static_cast<std::uint32_t>(c), 0});
  entries.push_back({kTagModelPixelScale, kTypeDouble, 3, 0});
  entries.push_back({kTagModelTiepoint, kTypeDouble, 6, 0});
  if (!geo_keys.empty()) {
    entries.push_back({kTagGeoKeyDirectory, kTypeShort, static_cast<std::uint32_t>(geo_keys.size()), 0});
    entries.push_back({kTagGeoAsciiParams, kTypeAscii, static_cast<std::uint32_t>(ascii_params.size()), 0});
  }

  const std::uint32_t ifd_offset = static_cast<std::uint32_t>(out.size());
  out.patch_u32(ifd_offset_at, ifd_offset);
  std::size_t extra_offset = ifd_offset + 2 + entries.size() * 12 + 4;

  // Assign out-of-line offsets in the order the arrays will be appended.
  auto place = [&](std::size_t nbytes) {
    const std::uint32_t at = static_cast<std::uint32_t>(extra_offset);
    extra_offset += (nbytes + 1) & ~std::size_t{1};
    return at;
  };
  for (IfdEntry& e : entries) {
    const std::size_t elem = e.type == kTypeShort ? 2 : e.type == kTypeDouble ? 8 : 1;
    const std::size_t nbytes = elem * e.count;
    if (e.tag == kTagBitsPerSample || e.tag == kTagSampleFormat) {
      if (c == 1) {
        e.value = e.tag == kTagBitsPerSample ? bits[0] : formats[0];
      } else if (c == 2) {
        const auto& v = e.tag == kTagBitsPerSample ? bits : formats;
        e.value = static_cast<std::uint32_t>(v[0]) | (static_cast<std::uint32_t>(v[1]) << 16);
      } else {
        e.value = place(nbytes);
      }
    } else if (e.tag == kTagModelPixelScale || e.tag == kTagModelTiepoint ||
               e.tag == kTagGeoKeyDirectory || e.tag == kTagGeoAsciiParams) {
      e.value = place(nbytes);
    }
  }

  out.u16(static_cast<std::uint16_t>(entries.size()));
  for (const IfdEntry& e : entries) {
    out.u16(e.tag);
    out.u16(e.type);
    out.u32(e.count);
    out.u32(e.value);
  }
  out.u32(0);  // no next IFD

  auto append_padded = [&](const void* p, std::size_t n) {
    out.raw(p, n);
    if (n % 2) out.bytes.push_back(0);
  };
  if (c > 2) {
    append_padded(bits.data(), bits.size() * 2);
    append_padded(formats.data(), formats.size() * 2);
  }
  const GeoTransform& gt = raster.transform;
  const double scale[3] = {gt.pixel_size_x, -gt.pixel_size_y, 0.0};
  const double tiepoint[6] = {0.0, 0.0, 0.0, gt.origin_x, gt.origin_y, 0.0};
  append_padded(scale, sizeof scale);
  append_padded(tiepoint, sizeof tiepoint);
  if (!geo_keys.empty()) {
    append_padded(geo_keys.data(), geo_keys.size() * 2);
    append_padded(ascii_params.data(), ascii_params.size());
  }

  atomic_write_file(path, out.bytes.data(), out.bytes.size());
}

namespace {

class ByteReader {
 public:
  ByteReader(const std::vector<unsigned char>& b, const std::string& path) : b_(b), path_(path) {}

  std::uint16_t u16(std::size_t at) const { return read<std::uint16_t>(at); }
  std::uint32_t u32(std::size_t at) const { return read<std::uint32_t>(at); }
  float f32(std::size_t at) const { return read<float>(at); }
  double f64(std::size_t at) const { return read<double>(at); }

  template <typename T>
  T read(std::size_t at) const {
    if (at + sizeof(T) > b_.size()) throw ParseError("truncated TIFF: " + path_);
    T v;
    std::memcpy(&v, b_.data() + at, sizeof(T));
    return v;
  }
  const unsigned char* at(std::size_t off, std::size_t n) const {
    if (off + n > b_.size()) throw ParseError("truncated TIFF: " + path_);
    return b_.data() + off;
  }

 private:
  const std::vector<unsigned char>& b_;
  std::string path_;
};

struct Field {
  std::uint16_t type = 0;
  std::uint32_t count = 0;
  std::vector<double> numbers;
  std::string text;
};

std::size_t type_size(std::uint16_t type) {
  switch (type) {
    case kTypeByte:
    case kTypeAscii: return 1;
    case kTypeShort: return 2;
    case kTypeLong:
    case kTypeFloat: return 4;
    case kTypeDouble: return 8;
    default: return 0;
  }
}

}  // namespace

GeoRaster read_geotiff(const std::string& path, std::vector<std::string> channel_names) {
  const std::vector<unsigned char> bytes = read_binary_file(path);
  ByteReader in(bytes, path);

  if (bytes.size() < 8) throw ParseError("not a TIFF: " + path);
  if (bytes[0] == 'M' && bytes[1] == 'M')
    throw ParseError("big-endian TIFF not supported: " + path);
  if (bytes[0] != 'I' || bytes[1] != 'I' || in.u16(2) != 42)
    throw ParseError("not a little-endian TIFF: " + path);

  std::map<std::uint16_t, Field> fields;
  std::size_t ifd = in.u32(4);
  const std::uint16_t n_entries = in.u16(ifd);
  for (std::uint16_t i = 0; i < n_entries; ++i) {
    const std::size_t e = ifd + 2 + static_cast<std::size_t>(i) * 12;
    Field f;
    const std::uint16_t tag = in.u16(e);
    f.type = in.u16(e + 2);
    f.count = in.u32(e + 4);
    const std::size_t elem = type_size(f.type);
    if (elem == 0) continue;  // unknown type, skip
    const std::size_t nbytes = elem * f.count;
    const std::size_t src = nbytes <= 4 ? e + 8 : in.u32(e + 8);
    if (f.type == kTypeAscii) {
      const unsigned char* p = in.at(src, f.count);
      f.text.assign(reinterpret_cast<const char*>(p), f.count);
    } else {
      f.numbers.reserve(f.count);
      for (std::uint32_t k = 0; k < f.count; ++k) {
        const std::size_t at = src + k * elem;
        switch (f.type) {
          case kTypeByte: f.numbers.push_back(*in.at(at, 1)); break;
          case kTypeShort: f.numbers.push_back(in.u16(at)); break;
          case kTypeLong: f.numbers.push_back(in.u32(at)); break;
          case kTypeFloat: f.numbers.push_back(in.f32(at)); break;
          case kTypeDouble: f.numbers.push_back(in.f64(at)); break;
          default: break;
        }
      }
    }
    fields[tag] = std::move(f);
  }

  auto get_scalar = [&](std::uint16_t tag, double fallback, bool required = false) {
    auto it = fields.find(tag);
    if (it == fields.end() || it->second.numbers.empty()) {
      if (required) throw ParseError("TIFF missing required tag " + std::to_string(tag) + ": " + path);
      return fallback;
    }
    return it->second.numbers.front();
  };

  const int w = static_cast<int>(get_scalar(kTagWidth, 0, true));
  const int h = static_cast<int>(get_scalar(kTagHeight, 0, true));
  const int c = static_cast<int>(get_scalar(kTagSamplesPerPixel, 1));
  if (get_scalar(kTagCompression, 1) != 1)
    throw ParseError("compressed TIFF not supported: " + path);
  const int planar = static_cast<int>(get_scalar(kTagPlanarConfig, 1));
  const std::int64_t rows_per_strip =
      static_cast<std::int64_t>(get_scalar(kTagRowsPerStrip, h));

  auto per_channel = [&](std::uint16_t tag, double fallback) {
    std::vector<int> v(static_cast<std::size_t>(c), static_cast<int>(fallback));
    auto it = fields.find(tag);
    if (it != fields.end())
      for (int ch = 0; ch < c; ++ch)
        v[static_cast<std::size_t>(ch)] = static_cast<int>(
            it->second.numbers[std::min<std::size_t>(ch, it->second.numbers.size() - 1)]);
    return v;
  };
  const std::vector<int> bits = per_channel(kTagBitsPerSample, 1);
  const std::vector<int> formats = per_channel(kTagSampleFormat, 1);
  for (int ch = 1; ch < c; ++ch)
    if (bits[static_cast<std::size_t>(ch)] != bits[0] || formats[static_cast<std::size_t>(ch)] != formats[0])
      throw ParseError("mixed per-channel sample types not supported: " + path);

  auto decode = [&](const unsigned char* p) -> double {
    switch (bits[0]) {
      case 8: return formats[0] == 1 ? *p : static_cast<double>(*reinterpret_cast<const signed char*>(p));
      case 16: {
        std::uint16_t v;
        std::memcpy(&v, p, 2);
        return v;
      }
      case 32: {
        if (formats[0] == 3) {
          float v;
          std::memcpy(&v, p, 4);
          return v;
        }
        std::uint32_t v;
        std::memcpy(&v, p, 4);
        return v;
      }
      case 64: {
        double v;
        std::memcpy(&v, p, 8);
        return v;
      }
      default: throw ParseError("unsupported BitsPerSample: " + path);
    }
  };
  const std::size_t sample_bytes = static_cast<std::size_t>(bits[0]) / 8;

  if (channel_names.empty()) {
    if (c == 3)
      channel_names = {"R", "G", "B"};
    else if (c == 4)
      channel_names = {"R", "G", "B", "HAND"};
    else
      for (int ch = 0; ch < c; ++ch) channel_names.push_back("C" + std::to_string(ch));
  }

  GeoTransform gt;
  if (fields.count(kTagModelPixelScale) && fields.count(kTagModelTiepoint)) {
    const auto& scale = fields[kTagModelPixelScale].numbers;
    const auto& tp = fields[kTagModelTiepoint].numbers;
    if (scale.size() >= 2 && tp.size() >= 5) {
      gt.pixel_size_x = scale[0];
      gt.pixel_size_y = -scale[1];
      gt.origin_x = tp[3] - tp[0] * gt.pixel_size_x;
      gt.origin_y = tp[4] - tp[1] * gt.pixel_size_y;
    }
  }

  std::string crs;
  if (fields.count(kTagGeoKeyDirectory)) {
    const auto& keys = fields[kTagGeoKeyDirectory].numbers;
    std::string citation;
    std::uint16_t code = 0;
    for (std::size_t k = 4; k + 3 < keys.size(); k += 4) {
      const int key = static_cast<int>(keys[k]);
      const int location = static_cast<int>(keys[k + 1]);
      const int count = static_cast<int>(keys[k + 2]);
      const int value = static_cast<int>(keys[k + 3]);
      if ((key == kKeyGeographicType || key == kKeyProjectedCSType) && location == 0 &&
          value != 32767)
        code = static_cast<std::uint16_t>(value);
      if (key == kKeyCitation && location == kTagGeoAsciiParams && fields.count(kTagGeoAsciiParams)) {
        const std::string& ascii = fields[kTagGeoAsciiParams].text;
        if (value >= 0 && static_cast<std::size_t>(value + count) <= ascii.size())
          citation = ascii.substr(static_cast<std::size_t>(value), static_cast<std::size_t>(count));
        while (!citation.empty() && (citation.back() == '|' || citation.back() == '\0'))
          citation.pop_back();
      }
    }
    crs = code != 0 ? "EPSG:" + std::to_string(code) : citation;
  }

  GeoRaster raster(h, w, c, std::move(channel_names), gt, crs);

  const auto& offsets = fields[kTagStripOffsets].numbers;
  if (offsets.empty()) throw ParseError("TIFF missing strip offsets: " + path);
  const std::int64_t strips_per_plane = (h + rows_per_strip - 1) / rows_per_strip;

  for (std::size_t s = 0; s < offsets.size(); ++s) {
    const std::int64_t plane_strip = planar == 2 ? static_cast<std::int64_t>(s) % strips_per_plane
                                                 : static_cast<std::int64_t>(s);
    const int ch0 = planar == 2 ? static_cast<int>(s / strips_per_plane) : 0;
    const int row0 = static_cast<int>(plane_strip * rows_per_strip);
    const int row1 = std::min<int>(h, static_cast<int>((plane_strip + 1) * rows_per_strip));
    const int strip_channels = planar == 2 ? 1 : c;
    const std::size_t strip_bytes = static_cast<std::size_t>(row1 - row0) * w * strip_channels * sample_bytes;
    const unsigned char* p = in.at(static_cast<std::size_t>(offsets[s]), strip_bytes);
    for (int y = row0; y < row1; ++y)
      for (int x = 0; x < w; ++x)
        for (int ch = 0; ch < strip_channels; ++ch) {
          raster.at(ch0 + ch, y, x) = decode(p);
          p += sample_bytes;
        }
  }
  return raster;
}

}  // namespace floodsight
