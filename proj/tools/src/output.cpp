#include "stringnet_cli/output.hpp"

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace stringnet::cli {

std::string fmt(double x) {
  if (x == 0.0) x = 0.0;  // no "-0"
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", x);
  return buf;
}

std::string px(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

void write_file(const std::filesystem::path &path, std::string_view content) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  if (!f) throw std::runtime_error("write failed: " + path.string());
}

std::string read_file(const std::filesystem::path &path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

RowError::RowError(int line, const std::string &what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

bool to_double(std::string_view s, double &out) {
  s = trim(s);
  if (s.empty()) return false;
  if (s.front() == '+') s.remove_prefix(1);
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc{} && p == s.data() + s.size() && std::isfinite(out);
}

}  // namespace

std::vector<PointRow> parse_point_csv(std::string_view text) {
  std::vector<PointRow> rows;
  int line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = text.substr(0, nl);
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (trim(line).empty()) continue;

    std::vector<std::string_view> f;
    std::size_t start = 0;
    for (;;) {
      const auto c = line.find(',', start);
      f.push_back(trim(line.substr(start, c == std::string_view::npos ? std::string_view::npos : c - start)));
      if (c == std::string_view::npos) break;
      start = c + 1;
    }
    PointRow r{};
    const bool numeric = f.size() == 5 && to_double(f[1], r.rx) && to_double(f[2], r.ry) && to_double(f[3], r.vx) &&
                         to_double(f[4], r.vy);
    if (!numeric) {
      if (line_no == 1 && rows.empty() && f.size() == 5) continue;  // header
      if (f.size() != 5) throw RowError(line_no, "expected 5 fields (id,r_x,r_y,v_x,v_y), got " + std::to_string(f.size()));
      throw RowError(line_no, "non-numeric or non-finite field");
    }
    if (f[0].empty()) throw RowError(line_no, "empty id");
    r.id = std::string(f[0]);
    rows.push_back(std::move(r));
  }
  return rows;
}

Svg::Svg(double width_px, double height_px, Vec2 world_min, Vec2 world_max, double margin_px)
    : w_(width_px), h_(height_px), min_(world_min), margin_(margin_px) {
  const double sx = (w_ - 2 * margin_) / std::max(world_max.x - world_min.x, 1e-9);
  const double sy = (h_ - 2 * margin_) / std::max(world_max.y - world_min.y, 1e-9);
  scale_ = std::min(sx, sy);
  y_max_px_ = h_ - margin_;
}

Vec2 Svg::to_px(Vec2 w) const { return {margin_ + (w.x - min_.x) * scale_, y_max_px_ - (w.y - min_.y) * scale_}; }

void Svg::circle(Vec2 c, double r_world, std::string_view stroke, std::string_view fill, double width, double opacity) {
  const Vec2 p = to_px(c);
  body_ += "<circle cx=\"" + px(p.x) + "\" cy=\"" + px(p.y) + "\" r=\"" + px(r_world * scale_) + "\" stroke=\"" +
           std::string(stroke) + "\" fill=\"" + std::string(fill) + "\" stroke-width=\"" + px(width) +
           "\" fill-opacity=\"" + px(opacity) + "\"/>\n";
}

void Svg::dot(Vec2 c, double r_px, std::string_view fill) {
  const Vec2 p = to_px(c);
  body_ += "<circle cx=\"" + px(p.x) + "\" cy=\"" + px(p.y) + "\" r=\"" + px(r_px) + "\" fill=\"" +
           std::string(fill) + "\"/>\n";
}

void Svg::line(Vec2 a, Vec2 b, std::string_view stroke, double width) {
  const Vec2 p = to_px(a), q = to_px(b);
  body_ += "<line x1=\"" + px(p.x) + "\" y1=\"" + px(p.y) + "\" x2=\"" + px(q.x) + "\" y2=\"" + px(q.y) +
           "\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + px(width) + "\"/>\n";
}

void Svg::polyline(const std::vector<Vec2> &pts, std::string_view stroke, double width, double opacity) {
  if (pts.size() < 2) return;
  body_ += "<polyline fill=\"none\" stroke=\"" + std::string(stroke) + "\" stroke-width=\"" + px(width) +
           "\" stroke-opacity=\"" + px(opacity) + "\" points=\"";
  for (const auto &w : pts) {
    const Vec2 p = to_px(w);
    body_ += px(p.x) + "," + px(p.y) + " ";
  }
  body_ += "\"/>\n";
}

void Svg::text(Vec2 at, std::string_view s, double size_px, std::string_view anchor) {
  const Vec2 p = to_px(at);
  body_ += "<text x=\"" + px(p.x) + "\" y=\"" + px(p.y) + "\" font-size=\"" + px(size_px) +
           "\" font-family=\"sans-serif\" text-anchor=\"" + std::string(anchor) + "\">" + std::string(s) +
           "</text>\n";
}

void Svg::raw(std::string_view element) {
  body_ += element;
  body_ += '\n';
}

std::string Svg::str() const {
  return "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + px(w_) + "\" height=\"" + px(h_) +
         "\" viewBox=\"0 0 " + px(w_) + " " + px(h_) + "\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n" +
         body_ + "</svg>\n";
}

}  // namespace stringnet::cli
