#pragma once
// Renderer-independent plot description: an ordered list of marks plus axes
// and legend entries, serialized to SVG 1.1. Every mark carries a semantic
// class tag so structural tests can count marks without rendering.

#include <cmath>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "rankbench/error.hpp"
#include "rankbench/text.hpp"

namespace rankbench {

struct Style {
  std::string fill = "none";
  std::string stroke = "none";
  double stroke_width = 1.0;
  double opacity = 1.0;
  std::string dash;  // SVG dash array, empty = solid
};

struct RectMark {
  double x, y, w, h;
};
struct CircleMark {
  double cx, cy, r;
};
struct LineMark {
  double x1, y1, x2, y2;
};
struct PolylineMark {
  std::vector<std::pair<double, double>> points;
};
struct PathMark {
  std::string d;
};
enum class TextAnchor { Start, Middle, End };
struct TextMark {
  double x, y;
  std::string text;
  TextAnchor anchor = TextAnchor::Middle;
  double size = 11.0;
  double rotate = 0.0;  // degrees, about (x, y)
};

struct Mark {
  std::string cls;
  Style style;
  std::variant<RectMark, CircleMark, LineMark, PolylineMark, PathMark, TextMark> shape;
};

struct AxisTick {
  double pos;  // pixel position along the axis
  std::string label;
};

struct Axis {
  enum class Side { Bottom, Left };
  Side side = Side::Bottom;
  double lo = 0.0, hi = 0.0;  // pixel extent along the axis
  double cross = 0.0;         // pixel position on the perpendicular dimension
  std::vector<AxisTick> ticks;
  std::string title;
};

struct LegendEntry {
  std::string label;
  std::string color;
};

struct Scene {
  double width = 640.0;
  double height = 480.0;
  std::string title;
  std::vector<Mark> marks;
  std::vector<Axis> axes;
  std::vector<LegendEntry> legend;

  std::size_t count(std::string_view cls) const {
    std::size_t n = 0;
    for (const auto& m : marks)
      if (m.cls == cls) ++n;
    return n;
  }

  void add(std::string cls, Style style,
           std::variant<RectMark, CircleMark, LineMark, PolylineMark, PathMark, TextMark>
               shape) {
    marks.push_back({std::move(cls), std::move(style), std::move(shape)});
  }
};

// Maps a data interval onto a pixel interval.
struct LinearScale {
  double d0 = 0.0, d1 = 1.0;
  double r0 = 0.0, r1 = 1.0;
  double operator()(double v) const {
    if (d1 == d0) return (r0 + r1) / 2.0;
    return r0 + (v - d0) * (r1 - r0) / (d1 - d0);
  }
};

// Tick step of the form {1, 2, 5} * 10^k.
inline double nice_step(double span, int target_ticks) {
  if (span <= 0.0) return 1.0;
  const double raw = span / std::max(target_ticks, 1);
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step;
  if (frac <= 1.0) step = 1.0;
  else if (frac <= 2.0) step = 2.0;
  else if (frac <= 5.0) step = 5.0;
  else step = 10.0;
  return step * mag;
}

std::vector<double> inline nice_ticks(double lo, double hi, int target_ticks = 5) {
  const double step = nice_step(hi - lo, target_ticks);
  std::vector<double> out;
  double v = std::ceil(lo / step - 1e-9) * step;
  for (; v <= hi + 1e-9 * std::max(std::fabs(hi), 1.0); v += step) {
    double snapped = v;
    if (std::fabs(snapped) < step * 1e-9) snapped = 0.0;
    out.push_back(snapped);
  }
  return out;
}

namespace detail {

inline std::string num(double v) { return format_double(v, 6); }

inline void check_finite(double v) {
  if (!std::isfinite(v)) fail(ErrorCode::NonFiniteValue, "scene coordinate is not finite");
}

inline void append_style(std::string& out, const Style& s) {
  out += " fill=\"" + s.fill + "\" stroke=\"" + s.stroke + "\"";
  if (s.stroke != "none") out += " stroke-width=\"" + num(s.stroke_width) + "\"";
  if (s.opacity != 1.0) out += " opacity=\"" + num(s.opacity) + "\"";
  if (!s.dash.empty()) out += " stroke-dasharray=\"" + s.dash + "\"";
}

inline void append_mark(std::string& out, const Mark& mark) {
  struct Writer {
    std::string& out;
    const Mark& mark;

    void attrs() const {
      out += " class=\"" + mark.cls + "\"";
      append_style(out, mark.style);
    }
    void operator()(const RectMark& r) const {
      check_finite(r.x), check_finite(r.y), check_finite(r.w), check_finite(r.h);
      out += "<rect x=\"" + num(r.x) + "\" y=\"" + num(r.y) + "\" width=\"" + num(r.w) +
             "\" height=\"" + num(r.h) + "\"";
      attrs();
      out += "/>\n";
    }
    void operator()(const CircleMark& c) const {
      check_finite(c.cx), check_finite(c.cy), check_finite(c.r);
      out += "<circle cx=\"" + num(c.cx) + "\" cy=\"" + num(c.cy) + "\" r=\"" + num(c.r) + "\"";
      attrs();
      out += "/>\n";
    }
    void operator()(const LineMark& l) const {
      check_finite(l.x1), check_finite(l.y1), check_finite(l.x2), check_finite(l.y2);
      out += "<line x1=\"" + num(l.x1) + "\" y1=\"" + num(l.y1) + "\" x2=\"" + num(l.x2) +
             "\" y2=\"" + num(l.y2) + "\"";
      attrs();
      out += "/>\n";
    }
    void operator()(const PolylineMark& p) const {
      out += "<polyline points=\"";
      for (std::size_t i = 0; i < p.points.size(); ++i) {
        check_finite(p.points[i].first), check_finite(p.points[i].second);
        if (i) out += ' ';
        out += num(p.points[i].first) + "," + num(p.points[i].second);
      }
      out += "\"";
      attrs();
      out += "/>\n";
    }
    void operator()(const PathMark& p) const {
      out += "<path d=\"" + p.d + "\"";
      attrs();
      out += "/>\n";
    }
    void operator()(const TextMark& t) const {
      check_finite(t.x), check_finite(t.y);
      out += "<text x=\"" + num(t.x) + "\" y=\"" + num(t.y) + "\" font-size=\"" + num(t.size) +
             "\" text-anchor=\"";
      switch (t.anchor) {
        case TextAnchor::Start: out += "start"; break;
        case TextAnchor::Middle: out += "middle"; break;
        case TextAnchor::End: out += "end"; break;
      }
      out += "\"";
      if (t.rotate != 0.0)
        out += " transform=\"rotate(" + num(t.rotate) + " " + num(t.x) + " " + num(t.y) + ")\"";
      out += " class=\"" + mark.cls + "\" fill=\"" +
             (mark.style.fill == "none" ? std::string("#000000") : mark.style.fill) + "\"";
      out += " font-family=\"Helvetica,Arial,sans-serif\">";
      out += xml_escape(t.text);
      out += "</text>\n";
    }
  };
  std::visit(Writer{out, mark}, mark.shape);
}

inline void append_axis(std::string& out, const Axis& axis) {
  const Style line_style{.fill = "none", .stroke = "#333333", .stroke_width = 1.0};
  auto line = [&](double x1, double y1, double x2, double y2, const char* cls) {
    Mark m{cls, line_style, LineMark{x1, y1, x2, y2}};
    append_mark(out, m);
  };
  const double tick_len = 4.0;
  if (axis.side == Axis::Side::Bottom) {
    line(axis.lo, axis.cross, axis.hi, axis.cross, "axis");
    for (const auto& t : axis.ticks) {
      line(t.pos, axis.cross, t.pos, axis.cross + tick_len, "tick");
      Mark label{"tick-label", Style{.fill = "#000000"},
                 TextMark{t.pos, axis.cross + tick_len + 11.0, t.label, TextAnchor::Middle,
                          10.0}};
      append_mark(out, label);
    }
    if (!axis.title.empty()) {
      Mark title{"axis-title", Style{.fill = "#000000"},
                 TextMark{(axis.lo + axis.hi) / 2.0, axis.cross + tick_len + 30.0, axis.title,
                          TextAnchor::Middle, 11.0}};
      append_mark(out, title);
    }
  } else {
    line(axis.cross, axis.lo, axis.cross, axis.hi, "axis");
    for (const auto& t : axis.ticks) {
      line(axis.cross - tick_len, t.pos, axis.cross, t.pos, "tick");
      Mark label{"tick-label", Style{.fill = "#000000"},
                 TextMark{axis.cross - tick_len - 3.0, t.pos + 3.5, t.label, TextAnchor::End,
                          10.0}};
      append_mark(out, label);
    }
    if (!axis.title.empty()) {
      Mark title{"axis-title", Style{.fill = "#000000"},
                 TextMark{axis.cross - 40.0, (axis.lo + axis.hi) / 2.0, axis.title,
                          TextAnchor::Middle, 11.0, -90.0}};
      append_mark(out, title);
    }
  }
}

}  // namespace detail

inline std::string to_svg(const Scene& scene) {
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + detail::num(scene.width) +
         "\" height=\"" + detail::num(scene.height) + "\" viewBox=\"0 0 " +
         detail::num(scene.width) + " " + detail::num(scene.height) + "\">\n";
  {
    Mark bg{"background", Style{.fill = "#ffffff"},
            RectMark{0.0, 0.0, scene.width, scene.height}};
    detail::append_mark(out, bg);
  }
  if (!scene.title.empty()) {
    Mark title{"title", Style{.fill = "#000000"},
               TextMark{scene.width / 2.0, 18.0, scene.title, TextAnchor::Middle, 13.0}};
    detail::append_mark(out, title);
  }
  for (const auto& axis : scene.axes) detail::append_axis(out, axis);
  for (const auto& mark : scene.marks) detail::append_mark(out, mark);
  if (!scene.legend.empty()) {
    double y = 30.0;
    const double x = scene.width - 14.0;
    for (const auto& entry : scene.legend) {
      Mark swatch{"legend-swatch", Style{.fill = entry.color},
                  RectMark{x, y - 7.5, 9.0, 9.0}};
      detail::append_mark(out, swatch);
      Mark label{"legend-label", Style{.fill = "#000000"},
                 TextMark{x - 4.0, y, entry.label, TextAnchor::End, 10.0}};
      detail::append_mark(out, label);
      y += 14.0;
    }
  }
  out += "</svg>\n";
  return out;
}

}  // namespace rankbench
