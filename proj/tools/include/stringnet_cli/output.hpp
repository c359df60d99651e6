#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "stringnet/geometry.hpp"

namespace stringnet::cli {

/// Nine significant digits, the fixed number format of every CSV we write.
[[nodiscard]] std::string fmt(double x);

/// Writes `content` to `path`, creating parent directories. Throws
/// std::runtime_error on failure.
void write_file(const std::filesystem::path &path, std::string_view content);

/// Reads a whole file. Throws std::runtime_error when it cannot be opened.
[[nodiscard]] std::string read_file(const std::filesystem::path &path);

/// Malformed input row; `line` is 1-based.
class RowError : public std::runtime_error {
 public:
  RowError(int line, const std::string &what);
  [[nodiscard]] int line() const { return line_; }

 private:
  int line_;
};

struct PointRow {
  std::string id;
  double rx, ry, vx, vy;
};

/// Rows "id,r_x,r_y,v_x,v_y". A first line whose numeric fields do not parse
/// is taken as a header. Blank lines are skipped.
[[nodiscard]] std::vector<PointRow> parse_point_csv(std::string_view text);

/// Minimal SVG canvas over a world-coordinate box, y pointing up.
class Svg {
 public:
  Svg(double width_px, double height_px, Vec2 world_min, Vec2 world_max, double margin_px = 30.0);

  void circle(Vec2 c, double r_world, std::string_view stroke, std::string_view fill, double width = 1.0,
              double opacity = 1.0);
  void dot(Vec2 c, double r_px, std::string_view fill);
  void line(Vec2 a, Vec2 b, std::string_view stroke, double width = 1.0);
  void polyline(const std::vector<Vec2> &pts, std::string_view stroke, double width = 1.0, double opacity = 1.0);
  void text(Vec2 at, std::string_view s, double size_px = 12.0, std::string_view anchor = "start");
  /// Pixel-space primitives for axes and legends.
  void raw(std::string_view element);

  [[nodiscard]] Vec2 to_px(Vec2 w) const;
  [[nodiscard]] double scale() const { return scale_; }
  [[nodiscard]] std::string str() const;

 private:
  double w_, h_;
  Vec2 min_;
  double scale_;
  double margin_;
  double y_max_px_;
  std::string body_;
};

/// Number formatted for SVG attributes.
[[nodiscard]] std::string px(double x);

}  // namespace stringnet::cli
