#include "aurora/codecs.hpp"

#include <png.h>

#include <algorithm>
#include <cmath>
#include <csetjmp>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include <nlohmann/json.hpp>

#include "aurora/rng.hpp"

namespace aurora::codecs {

namespace {

struct FileCloser {
  void operator()(std::FILE* f) const {
    if (f) std::fclose(f);
  }
};
using FilePtr = std::unique_ptr<std::FILE, FileCloser>;

FilePtr open_file(const std::string& path, const char* mode) {
  FilePtr f(std::fopen(path.c_str(), mode));
  if (!f) throw CodecError("cannot open " + path);
  return f;
}

struct PngReader {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngReader() {
    if (png) png_destroy_read_struct(&png, info ? &info : nullptr, nullptr);
  }
};

struct PngWriter {
  png_structp png = nullptr;
  png_infop info = nullptr;
  ~PngWriter() {
    if (png) png_destroy_write_struct(&png, info ? &info : nullptr);
  }
};

void read_png_image(const std::string& path, int& width, int& height,
                    int& bit_depth, int& color_type,
                    std::vector<std::vector<png_byte>>& rows) {
  FilePtr f = open_file(path, "rb");
  PngReader ctx;
  ctx.png = png_create_read_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                   nullptr);
  if (!ctx.png) throw CodecError("png init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw CodecError("png init failed");
  if (setjmp(png_jmpbuf(ctx.png))) {
    throw CodecError("malformed PNG: " + path);
  }
  png_init_io(ctx.png, f.get());
  png_read_info(ctx.png, ctx.info);
  width = static_cast<int>(png_get_image_width(ctx.png, ctx.info));
  height = static_cast<int>(png_get_image_height(ctx.png, ctx.info));
  bit_depth = png_get_bit_depth(ctx.png, ctx.info);
  color_type = png_get_color_type(ctx.png, ctx.info);
  if (color_type == PNG_COLOR_TYPE_PALETTE) {
    png_set_palette_to_rgb(ctx.png);
    color_type = PNG_COLOR_TYPE_RGB;
  }
  if (bit_depth < 8) {
    png_set_expand_gray_1_2_4_to_8(ctx.png);
    bit_depth = 8;
  }
  png_read_update_info(ctx.png, ctx.info);
  const std::size_t rowbytes = png_get_rowbytes(ctx.png, ctx.info);
  rows.assign(static_cast<std::size_t>(height),
              std::vector<png_byte>(rowbytes));
  std::vector<png_bytep> row_ptrs(height);
  for (int r = 0; r < height; ++r) row_ptrs[r] = rows[r].data();
  png_read_image(ctx.png, row_ptrs.data());
  png_read_end(ctx.png, nullptr);
}

void write_png_image(const std::string& path, int width, int height,
                     int bit_depth, int color_type,
                     std::vector<std::vector<png_byte>>& rows) {
  FilePtr f = open_file(path, "wb");
  PngWriter ctx;
  ctx.png = png_create_write_struct(PNG_LIBPNG_VER_STRING, nullptr, nullptr,
                                    nullptr);
  if (!ctx.png) throw CodecError("png init failed");
  ctx.info = png_create_info_struct(ctx.png);
  if (!ctx.info) throw CodecError("png init failed");
  if (setjmp(png_jmpbuf(ctx.png))) {
    throw CodecError("png write failed: " + path);
  }
  png_init_io(ctx.png, f.get());
  // Fixed settings so outputs are byte-deterministic.
  png_set_compression_level(ctx.png, 6);
  png_set_filter(ctx.png, 0, PNG_FILTER_NONE);
  png_set_IHDR(ctx.png, ctx.info, width, height, bit_depth, color_type,
               PNG_INTERLACE_NONE, PNG_COMPRESSION_TYPE_DEFAULT,
               PNG_FILTER_TYPE_DEFAULT);
  png_write_info(ctx.png, ctx.info);
  std::vector<png_bytep> row_ptrs(height);
  for (int r = 0; r < height; ++r) row_ptrs[r] = rows[r].data();
  png_write_image(ctx.png, row_ptrs.data());
  png_write_end(ctx.png, nullptr);
}

GrayImage read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecError("cannot open " + path);
  std::string magic;
  in >> magic;
  if (magic != "P5" && magic != "P2") throw CodecError("not a PGM: " + path);
  auto next_int = [&in, &path]() {
    int v;
    while (true) {
      in >> std::ws;
      if (in.peek() == '#') {
        std::string line;
        std::getline(in, line);
        continue;
      }
      if (!(in >> v)) throw CodecError("malformed PGM: " + path);
      return v;
    }
  };
  GrayImage img;
  img.width = next_int();
  img.height = next_int();
  const int maxval = next_int();
  if (img.width <= 0 || img.height <= 0 || maxval <= 0 || maxval > 255) {
    throw CodecError("unsupported PGM: " + path);
  }
  const std::size_t n = static_cast<std::size_t>(img.width) * img.height;
  img.pixels.resize(n);
  if (magic == "P5") {
    in.get();  // single whitespace after maxval
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n) {
      throw CodecError("truncated PGM: " + path);
    }
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      img.pixels[i] = static_cast<std::uint8_t>(next_int());
    }
  }
  return img;
}

}  // namespace

DepthWriteStats write_depth_png(const std::string& path, const DepthGrid& grid) {
  DepthWriteStats stats;
  std::vector<std::vector<png_byte>> rows(
      static_cast<std::size_t>(grid.height()),
      std::vector<png_byte>(static_cast<std::size_t>(grid.width()) * 2));
  for (int r = 0; r < grid.height(); ++r) {
    for (int c = 0; c < grid.width(); ++c) {
      long stored = std::lround(grid.at(r, c) * 256.0);
      if (stored < 0) stored = 0;
      if (stored > 65535) {
        stored = 65535;
        ++stats.clamped;
      }
      rows[r][2 * c] = static_cast<png_byte>(stored >> 8);  // big-endian
      rows[r][2 * c + 1] = static_cast<png_byte>(stored & 0xff);
    }
  }
  write_png_image(path, grid.width(), grid.height(), 16, PNG_COLOR_TYPE_GRAY,
                  rows);
  return stats;
}

DepthGrid read_depth_png(const std::string& path) {
  int width, height, bit_depth, color_type;
  std::vector<std::vector<png_byte>> rows;
  read_png_image(path, width, height, bit_depth, color_type, rows);
  if (bit_depth != 16 || color_type != PNG_COLOR_TYPE_GRAY) {
    throw CodecError("depth PNG must be 16-bit grayscale: " + path);
  }
  DepthGrid grid(width, height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      const unsigned stored = (static_cast<unsigned>(rows[r][2 * c]) << 8) |
                              rows[r][2 * c + 1];
      grid.at(r, c) = stored / 256.0;
    }
  }
  return grid;
}

void write_rgb_png(const std::string& path, const ImageBuffer& image) {
  std::vector<std::vector<png_byte>> rows(
      static_cast<std::size_t>(image.height()),
      std::vector<png_byte>(static_cast<std::size_t>(image.width()) * 3));
  for (int r = 0; r < image.height(); ++r) {
    for (int c = 0; c < image.width(); ++c) {
      for (int ch = 0; ch < 3; ++ch) {
        const double v = std::clamp(image.at(r, c, ch), 0.0, 1.0);
        rows[r][3 * c + ch] = static_cast<png_byte>(std::lround(v * 255.0));
      }
    }
  }
  write_png_image(path, image.width(), image.height(), 8, PNG_COLOR_TYPE_RGB,
                  rows);
}

ImageBuffer read_rgb_png(const std::string& path) {
  int width, height, bit_depth, color_type;
  std::vector<std::vector<png_byte>> rows;
  read_png_image(path, width, height, bit_depth, color_type, rows);
  if (bit_depth != 8) throw CodecError("expected 8-bit RGB PNG: " + path);
  int channels;
  switch (color_type) {
    case PNG_COLOR_TYPE_RGB: channels = 3; break;
    case PNG_COLOR_TYPE_RGB_ALPHA: channels = 4; break;
    case PNG_COLOR_TYPE_GRAY: channels = 1; break;
    default: throw CodecError("unsupported PNG color type: " + path);
  }
  ImageBuffer image(width, height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      for (int ch = 0; ch < 3; ++ch) {
        const int src = channels == 1 ? 0 : ch;
        image.at(r, c, ch) = rows[r][channels * c + src] / 255.0;
      }
    }
  }
  return image;
}

GrayImage read_gray8(const std::string& path) {
  if (path.size() >= 4 && path.substr(path.size() - 4) == ".pgm") {
    return read_pgm(path);
  }
  int width, height, bit_depth, color_type;
  std::vector<std::vector<png_byte>> rows;
  read_png_image(path, width, height, bit_depth, color_type, rows);
  if (bit_depth != 8) throw CodecError("expected 8-bit mask: " + path);
  const int channels = color_type == PNG_COLOR_TYPE_GRAY ? 1
                       : color_type == PNG_COLOR_TYPE_RGB ? 3
                       : color_type == PNG_COLOR_TYPE_RGB_ALPHA ? 4
                       : color_type == PNG_COLOR_TYPE_GRAY_ALPHA ? 2
                                                                 : 0;
  if (channels == 0) throw CodecError("unsupported mask PNG: " + path);
  GrayImage img;
  img.width = width;
  img.height = height;
  img.pixels.resize(static_cast<std::size_t>(width) * height);
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      img.pixels[static_cast<std::size_t>(r) * width + c] =
          rows[r][channels * c];
    }
  }
  return img;
}

void write_gray8_png(const std::string& path, const GrayImage& image) {
  std::vector<std::vector<png_byte>> rows(
      static_cast<std::size_t>(image.height),
      std::vector<png_byte>(static_cast<std::size_t>(image.width)));
  for (int r = 0; r < image.height; ++r) {
    for (int c = 0; c < image.width; ++c) {
      rows[r][c] = image.pixels[static_cast<std::size_t>(r) * image.width + c];
    }
  }
  write_png_image(path, image.width, image.height, 8, PNG_COLOR_TYPE_GRAY,
                  rows);
}

void write_point_cloud(const std::string& path, const PointCloud& cloud) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CodecError("cannot open " + path);
  for (const LidarPoint& p : cloud.points) {
    const float vals[4] = {static_cast<float>(p.x), static_cast<float>(p.y),
                           static_cast<float>(p.z),
                           static_cast<float>(p.intensity)};
    out.write(reinterpret_cast<const char*>(vals), sizeof(vals));
  }
  if (!out) throw CodecError("write failed: " + path);
}

PointCloud read_point_cloud(const std::string& path) {
  std::ifstream in(path, std::ios::binary | std::ios::ate);
  if (!in) throw CodecError("cannot open " + path);
  const std::streamoff size = in.tellg();
  if (size % 16 != 0) {
    throw CodecError("point cloud size not a multiple of 16 bytes: " + path);
  }
  in.seekg(0);
  PointCloud cloud;
  cloud.points.resize(static_cast<std::size_t>(size / 16));
  for (LidarPoint& p : cloud.points) {
    float vals[4];
    in.read(reinterpret_cast<char*>(vals), sizeof(vals));
    if (!in) throw CodecError("truncated point cloud: " + path);
    p = {vals[0], vals[1], vals[2], vals[3]};
  }
  return cloud;
}

std::string annotation_to_json(const SampleAnnotation& ann) {
  nlohmann::ordered_json j;
  j["weather"] = ann.weather;
  j["severity_level"] = ann.severity_level;
  j["severity_value"] = ann.severity_value;
  j["unit"] = ann.unit;
  j["time_of_day"] = ann.time_of_day;
  j["lens"] = ann.lens;
  j["scene"] = ann.scene;
  j["prompt"] = ann.prompt;
  return j.dump(2) + "\n";
}

SampleAnnotation annotation_from_json(const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw CodecError(std::string("malformed annotation JSON: ") + e.what());
  }
  SampleAnnotation ann;
  try {
    ann.weather = j.at("weather").get<std::string>();
    ann.severity_level = j.at("severity_level").get<int>();
    ann.severity_value = j.at("severity_value").get<double>();
    ann.unit = j.at("unit").get<std::string>();
    ann.time_of_day = j.at("time_of_day").get<std::string>();
    ann.lens = j.at("lens").get<std::string>();
    ann.scene = j.at("scene").get<std::string>();
    ann.prompt = j.at("prompt").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw CodecError(std::string("annotation missing field: ") + e.what());
  }
  return ann;
}

void write_annotation(const std::string& path, const SampleAnnotation& ann) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CodecError("cannot open " + path);
  out << annotation_to_json(ann);
}

SampleAnnotation read_annotation(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecError("cannot open " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  return annotation_from_json(buf.str());
}

CameraCalibration read_calibration(const std::string& path, int image_width,
                                   int image_height) {
  std::ifstream in(path);
  if (!in) throw CodecError("cannot open " + path);
  std::vector<double> p_rect, r_rect, tr;
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::string key;
    if (!(ls >> key)) continue;
    std::vector<double>* target = nullptr;
    std::size_t expect = 0;
    if (key == "P_rect:") {
      target = &p_rect;
      expect = 12;
    } else if (key == "R_rect:") {
      target = &r_rect;
      expect = 9;
    } else if (key == "Tr_velo_cam:") {
      target = &tr;
      expect = 12;
    } else {
      continue;
    }
    double v;
    while (ls >> v) target->push_back(v);
    if (target->size() != expect) {
      throw CodecError("calibration line " + key + " expects " +
                       std::to_string(expect) + " floats in " + path);
    }
  }
  if (p_rect.empty() || r_rect.empty() || tr.empty()) {
    throw CodecError("calibration missing P_rect/R_rect/Tr_velo_cam: " + path);
  }
  CameraCalibration calib;
  calib.fx = p_rect[0];
  calib.cx = p_rect[2];
  calib.fy = p_rect[5];
  calib.cy = p_rect[6];
  std::copy(r_rect.begin(), r_rect.end(), calib.rect.begin());
  std::copy(tr.begin(), tr.end(), calib.extrinsic.begin());
  calib.image_width = image_width;
  calib.image_height = image_height;
  if (calib.fx <= 0.0 || calib.fy <= 0.0) {
    throw CodecError("calibration requires positive focal lengths: " + path);
  }
  return calib;
}

void write_calibration(const std::string& path, const CameraCalibration& calib) {
  std::ofstream out(path);
  if (!out) throw CodecError("cannot open " + path);
  out.precision(17);
  out << "P_rect: " << calib.fx << " 0 " << calib.cx << " 0 0 " << calib.fy
      << " " << calib.cy << " 0 0 0 1 0\n";
  out << "R_rect:";
  for (double v : calib.rect) out << " " << v;
  out << "\nTr_velo_cam:";
  for (double v : calib.extrinsic) out << " " << v;
  out << "\n";
}

std::string file_digest(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CodecError("cannot open " + path);
  std::uint64_t h = 0xcbf29ce484222325ULL;
  char buf[65536];
  while (in.read(buf, sizeof(buf)) || in.gcount() > 0) {
    const std::streamsize n = in.gcount();
    for (std::streamsize i = 0; i < n; ++i) {
      h ^= static_cast<unsigned char>(buf[i]);
      h *= 0x100000001b3ULL;
    }
    if (!in) break;
  }
  char hex[17];
  std::snprintf(hex, sizeof(hex), "%016llx",
                static_cast<unsigned long long>(h));
  return std::string(hex);
}

}  // namespace aurora::codecs
