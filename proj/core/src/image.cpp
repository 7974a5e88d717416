#include "radiant/image.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

namespace radiant {

ImageBuffer make_image(int width, int height, double fill) {
  if (width < 1 || height < 1) {
    throw std::invalid_argument("make_image: dimensions must be positive");
  }
  ImageBuffer img;
  img.width = width;
  img.height = height;
  img.pixels.assign(static_cast<std::size_t>(width) * height, fill);
  return img;
}

namespace {

// next whitespace-separated token, skipping '#' comments
std::string next_token(std::istream& in) {
  std::string tok;
  int c;
  while ((c = in.get()) != EOF) {
    if (c == '#') {
      while ((c = in.get()) != EOF && c != '\n') {
      }
      continue;
    }
    if (std::isspace(c)) {
      if (!tok.empty()) break;
      continue;
    }
    tok.push_back(static_cast<char>(c));
  }
  return tok;
}

int parse_int(const std::string& tok, const char* what) {
  try {
    return std::stoi(tok);
  } catch (...) {
    throw std::runtime_error(std::string("read_pgm: bad ") + what + " field '" + tok + "'");
  }
}

}  // namespace

ImageBuffer read_pgm(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("read_pgm: cannot open " + path);

  if (next_token(in) != "P5") {
    throw std::runtime_error("read_pgm: " + path + " is not a binary PGM (P5)");
  }
  const int width = parse_int(next_token(in), "width");
  const int height = parse_int(next_token(in), "height");
  const int maxval = parse_int(next_token(in), "maxval");
  if (width < 1 || height < 1) throw std::runtime_error("read_pgm: bad dimensions in " + path);
  if (maxval < 1 || maxval > 255) {
    throw std::runtime_error("read_pgm: only 8-bit PGM supported, maxval=" +
                             std::to_string(maxval));
  }

  ImageBuffer img = make_image(width, height);
  std::vector<unsigned char> raw(img.size());
  in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (static_cast<std::size_t>(in.gcount()) != raw.size()) {
    throw std::runtime_error("read_pgm: truncated pixel data in " + path);
  }
  const double scale = 1.0 / maxval;
  for (std::size_t i = 0; i < raw.size(); ++i) img.pixels[i] = raw[i] * scale;
  return img;
}

void write_pgm(const ImageBuffer& img, const std::string& path) {
  if (img.width < 1 || img.height < 1 ||
      img.pixels.size() != static_cast<std::size_t>(img.width) * img.height) {
    throw std::invalid_argument("write_pgm: malformed image buffer");
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_pgm: cannot open " + path);
  out << "P5\n" << img.width << " " << img.height << "\n255\n";
  std::vector<unsigned char> raw(img.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double v = std::min(1.0, std::max(0.0, img.pixels[i]));
    raw[i] = static_cast<unsigned char>(std::lround(v * 255.0));
  }
  out.write(reinterpret_cast<const char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
  if (!out) throw std::runtime_error("write_pgm: failed writing " + path);
}

}  // namespace radiant
