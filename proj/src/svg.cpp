#include "sqz/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <numbers>
#include <sstream>

#include "sqz/error.hpp"

namespace sqz {
namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 520.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 70.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 60.0;
constexpr double kSMax = 4.0;
constexpr double kEtaMax = 1.0;

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", v);
  return buf;
}

struct Frame {
  double r_lo;
  double r_hi;

  double x(double r) const { return kLeft + (r - r_lo) / (r_hi - r_lo) * (kWidth - kLeft - kRight); }
  static double y_s(double s) { return kTop + (1.0 - s / kSMax) * (kHeight - kTop - kBottom); }
  static double y_eta(double e) { return kTop + (1.0 - e / kEtaMax) * (kHeight - kTop - kBottom); }
};

// One polyline per run of consecutive defined values, then the markers.
template <typename Get, typename Marker>
void series(std::ostringstream& out, std::span<const SweepRow> rows, const Frame& f, const char* id,
            const char* color, Get get, double (*ymap)(double), Marker marker) {
  out << "<g id=\"" << id << "\" stroke=\"" << color << "\" fill=\"" << color << "\">\n";
  std::string points;
  auto flush = [&] {
    if (!points.empty()) out << "  <polyline fill=\"none\" stroke-width=\"1\" points=\"" << points << "\"/>\n";
    points.clear();
  };
  for (const auto& row : rows) {
    const std::optional<double> v = get(row);
    if (!v || !std::isfinite(*v)) {
      flush();
      continue;
    }
    if (!points.empty()) points += ' ';
    points += num(f.x(row.r)) + "," + num(ymap(*v));
  }
  flush();
  for (const auto& row : rows) {
    const std::optional<double> v = get(row);
    if (v && std::isfinite(*v)) marker(out, f.x(row.r), ymap(*v));
  }
  out << "</g>\n";
}

}  // namespace

std::string render_svg(std::span<const SweepRow> rows) {
  const auto valid = std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.s.has_value(); });
  if (valid < 2) throw InvalidArgument("emit_svg: need at least two rows with a defined S");

  Frame f{rows.front().r, rows.front().r};
  for (const auto& row : rows) {
    f.r_lo = std::min(f.r_lo, row.r);
    f.r_hi = std::max(f.r_hi, row.r);
  }
  if (f.r_hi <= f.r_lo) {
    f.r_lo -= 0.5;
    f.r_hi += 0.5;
  }

  const double x0 = kLeft;
  const double x1 = kWidth - kRight;
  const double y0 = kTop;
  const double y1 = kHeight - kBottom;

  std::ostringstream out;
  out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
      << "<rect x=\"0\" y=\"0\" width=\"" << kWidth << "\" height=\"" << kHeight << "\" fill=\"white\"/>\n";

  out << "<g id=\"axes\" stroke=\"black\" fill=\"black\">\n"
      << "  <line x1=\"" << num(x0) << "\" y1=\"" << num(y1) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y1) << "\"/>\n"
      << "  <line x1=\"" << num(x0) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x0) << "\" y2=\"" << num(y1) << "\"/>\n"
      << "  <line x1=\"" << num(x1) << "\" y1=\"" << num(y0) << "\" x2=\"" << num(x1) << "\" y2=\"" << num(y1) << "\"/>\n";
  for (int k = 0; k <= 4; ++k) {
    const double y = Frame::y_s(k);
    out << "  <text stroke=\"none\" x=\"" << num(x0 - 8) << "\" y=\"" << num(y + 4) << "\" text-anchor=\"end\">" << k
        << "</text>\n";
    out << "  <text stroke=\"none\" fill=\"blue\" x=\"" << num(x1 + 8) << "\" y=\"" << num(y + 4) << "\">"
        << num(0.25 * k).substr(0, 4) << "</text>\n";
  }
  for (int k = 0; k <= 6; ++k) {
    const double r = f.r_lo + (f.r_hi - f.r_lo) * k / 6.0;
    out << "  <text stroke=\"none\" x=\"" << num(f.x(r)) << "\" y=\"" << num(y1 + 18) << "\" text-anchor=\"middle\">"
        << num(r).substr(0, 4) << "</text>\n";
  }
  out << "  <text stroke=\"none\" x=\"" << num((x0 + x1) / 2) << "\" y=\"" << num(kHeight - 15)
      << "\" text-anchor=\"middle\">squeezing parameter r</text>\n"
      << "  <text stroke=\"none\" x=\"20\" y=\"" << num((y0 + y1) / 2) << "\" text-anchor=\"middle\">S</text>\n"
      << "  <text stroke=\"none\" fill=\"blue\" x=\"" << num(kWidth - 20) << "\" y=\"" << num((y0 + y1) / 2)
      << "\" text-anchor=\"middle\">eta</text>\n"
      << "</g>\n";

  const double y_classical = Frame::y_s(2.0);
  const double y_tsirelson = Frame::y_s(2.0 * std::numbers::sqrt2);
  out << "<line id=\"ref-classical\" x1=\"" << num(x0) << "\" y1=\"" << num(y_classical) << "\" x2=\"" << num(x1)
      << "\" y2=\"" << num(y_classical) << "\" stroke=\"red\" stroke-width=\"1.5\"/>\n"
      << "<line id=\"ref-tsirelson\" x1=\"" << num(x0) << "\" y1=\"" << num(y_tsirelson) << "\" x2=\"" << num(x1)
      << "\" y2=\"" << num(y_tsirelson) << "\" stroke=\"green\" stroke-width=\"1.5\" stroke-dasharray=\"6,4\"/>\n";

  series(
      out, rows, f, "series-s", "black", [](const SweepRow& r) { return r.s; }, &Frame::y_s,
      [](std::ostringstream& o, double x, double y) {
        o << "  <circle cx=\"" << num(x) << "\" cy=\"" << num(y) << "\" r=\"3\"/>\n";
      });
  series(
      out, rows, f, "series-eta", "blue", [](const SweepRow& r) { return r.eta; }, &Frame::y_eta,
      [](std::ostringstream& o, double x, double y) {
        o << "  <rect x=\"" << num(x - 3) << "\" y=\"" << num(y - 3) << "\" width=\"6\" height=\"6\"/>\n";
      });
  out << "</svg>\n";
  return out.str();
}

void emit_svg(std::span<const SweepRow> rows, const std::filesystem::path& path) {
  const std::string text = render_svg(rows);
  std::ofstream out(path);
  if (!out) throw InputError("cannot write SVG to " + path.string());
  out << text;
  if (!out) throw InputError("failed writing SVG to " + path.string());
}

}  // namespace sqz
