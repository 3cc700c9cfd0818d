#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace robustab::cli {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

std::string label2(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  std::string s = buf;
  return s == "-0.00" ? "0.00" : s;
}

/// Maps a data box onto a pixel box, y axis up.
struct Frame {
  double x0, y0, w, h;          // pixels
  double xmin, xmax, ymin, ymax;  // data

  double px(double x) const { return x0 + (x - xmin) / (xmax - xmin) * w; }
  double py(double y) const { return y0 + h - (y - ymin) / (ymax - ymin) * h; }
};

Frame fit(double x0, double y0, double w, double h, double xmin, double xmax, double ymin, double ymax) {
  auto widen = [](double& lo, double& hi) {
    if (hi - lo < 1e-12) {
      lo -= 1.0;
      hi += 1.0;
    }
    const double pad = 0.08 * (hi - lo);
    lo -= pad;
    hi += pad;
  };
  widen(xmin, xmax);
  widen(ymin, ymax);
  return {x0, y0, w, h, xmin, xmax, ymin, ymax};
}

void axes(std::ostringstream& os, const Frame& f, const char* xlabel, const char* ylabel) {
  os << "<rect x=\"" << num(f.x0) << "\" y=\"" << num(f.y0) << "\" width=\"" << num(f.w) << "\" height=\"" << num(f.h)
     << "\" fill=\"none\" stroke=\"#bbb\"/>\n";
  if (f.ymin <= 0 && f.ymax >= 0) {
    os << "<line x1=\"" << num(f.x0) << "\" y1=\"" << num(f.py(0)) << "\" x2=\"" << num(f.x0 + f.w) << "\" y2=\""
       << num(f.py(0)) << "\" stroke=\"#444\"/>\n";
  }
  if (f.xmin <= 0 && f.xmax >= 0) {
    os << "<line x1=\"" << num(f.px(0)) << "\" y1=\"" << num(f.y0) << "\" x2=\"" << num(f.px(0)) << "\" y2=\""
       << num(f.y0 + f.h) << "\" stroke=\"#444\"/>\n";
  }
  os << "<text x=\"" << num(f.x0 + f.w - 4) << "\" y=\"" << num(f.y0 + f.h - 4)
     << "\" font-size=\"11\" text-anchor=\"end\">" << xlabel << "</text>\n";
  os << "<text x=\"" << num(f.x0 + 4) << "\" y=\"" << num(f.y0 + 12) << "\" font-size=\"11\">" << ylabel << "</text>\n";
  os << "<text x=\"" << num(f.x0) << "\" y=\"" << num(f.y0 + f.h + 13) << "\" font-size=\"9\" fill=\"#666\">"
     << label2(f.xmin) << "</text>\n";
  os << "<text x=\"" << num(f.x0 + f.w) << "\" y=\"" << num(f.y0 + f.h + 13)
     << "\" font-size=\"9\" fill=\"#666\" text-anchor=\"end\">" << label2(f.xmax) << "</text>\n";
}

const char* kHeader = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";

}  // namespace

std::string roots_svg(const std::array<RootSet, 4>& roots) {
  constexpr double kPanelW = 360;
  constexpr double kPanelH = 280;
  constexpr double kMargin = 30;
  // Panel position (column, row) of k1..k4.
  constexpr int kCol[4] = {0, 0, 1, 1};
  constexpr int kRow[4] = {0, 1, 0, 1};

  std::ostringstream os;
  const double width = 2 * kPanelW + 3 * kMargin;
  const double height = 2 * kPanelH + 3 * kMargin + 10;
  os << kHeader << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(width) << "\" height=\"" << num(height)
     << "\" viewBox=\"0 0 " << num(width) << ' ' << num(height) << "\" font-family=\"sans-serif\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t j = 0; j < 4; ++j) {
    double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
    for (const auto& r : roots[j].roots) {
      xmin = std::min(xmin, r.location.real());
      xmax = std::max(xmax, r.location.real());
      ymin = std::min(ymin, r.location.imag());
      ymax = std::max(ymax, r.location.imag());
    }
    const double x0 = kMargin + kCol[j] * (kPanelW + kMargin);
    const double y0 = kMargin + kRow[j] * (kPanelH + kMargin);
    const Frame f = fit(x0, y0, kPanelW, kPanelH, xmin, xmax, ymin, ymax);
    os << "<g id=\"k" << j + 1 << "\">\n";
    os << "<text x=\"" << num(x0) << "\" y=\"" << num(y0 - 8) << "\" font-size=\"13\">roots of k" << j + 1 << "</text>\n";
    axes(os, f, "Re", "Im");
    for (const auto& r : roots[j].roots) {
      const double cx = f.px(r.location.real());
      const double cy = f.py(r.location.imag());
      os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"4\" fill=\"#d62728\"/>\n";
      os << "<text x=\"" << num(cx + 6) << "\" y=\"" << num(cy - 6) << "\" font-size=\"9\">" << label2(r.location.real())
         << (r.location.imag() < 0 ? "" : "+") << label2(r.location.imag()) << "i</text>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string rectangle_svg(const std::vector<RectangleSample>& samples) {
  constexpr double kW = 640;
  constexpr double kH = 480;
  constexpr double kMargin = 40;
  std::ostringstream os;
  os << kHeader << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kW + 2 * kMargin) << "\" height=\""
     << num(kH + 2 * kMargin) << "\" viewBox=\"0 0 " << num(kW + 2 * kMargin) << ' ' << num(kH + 2 * kMargin)
     << "\" font-family=\"sans-serif\">\n";
  os << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (samples.empty()) {
    os << "</svg>\n";
    return os.str();
  }

  double xmin = 0, xmax = 0, ymin = 0, ymax = 0;
  for (const auto& s : samples) {
    xmin = std::min(xmin, s.h_minus);
    xmax = std::max(xmax, s.h_plus);
    ymin = std::min(ymin, s.g_minus);
    ymax = std::max(ymax, s.g_plus);
  }
  const Frame f = fit(kMargin, kMargin, kW, kH, xmin, xmax, ymin, ymax);
  axes(os, f, "Re", "Im");

  const char* colors[4] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#9467bd"};
  for (std::size_t j = 0; j < 4; ++j) {
    os << "<polyline fill=\"none\" stroke=\"" << colors[j] << "\" stroke-width=\"1\" points=\"";
    for (const auto& s : samples) os << num(f.px(s.corners[j].real())) << ',' << num(f.py(s.corners[j].imag())) << ' ';
    os << "\"/>\n";
  }

  constexpr std::size_t kSnapshots = 8;
  std::vector<std::size_t> picks;
  for (std::size_t k = 1; k <= kSnapshots; ++k) picks.push_back((samples.size() - 1) * k / (kSnapshots + 1));
  for (std::size_t idx : picks) {
    const auto& s = samples[idx];
    const double x = f.px(s.h_minus);
    const double y = f.py(s.g_plus);
    os << "<rect x=\"" << num(x) << "\" y=\"" << num(y) << "\" width=\"" << num(f.px(s.h_plus) - x) << "\" height=\""
       << num(f.py(s.g_minus) - y) << "\" fill=\"" << (s.contains_zero ? "#f4cccc" : "#dde8f5")
       << "\" fill-opacity=\"0.6\" stroke=\"black\"/>\n";
  }
  const auto& last = samples[picks.back()];
  for (std::size_t j = 0; j < 4; ++j) {
    const double cx = f.px(last.corners[j].real());
    const double cy = f.py(last.corners[j].imag());
    os << "<circle cx=\"" << num(cx) << "\" cy=\"" << num(cy) << "\" r=\"3\" fill=\"black\"/>\n";
    os << "<text x=\"" << num(cx + 5) << "\" y=\"" << num(cy - 5) << "\" font-size=\"12\">k" << j + 1 << "(iω)</text>\n";
  }
  os << "<text x=\"" << num(kMargin) << "\" y=\"" << num(kMargin - 12) << "\" font-size=\"13\">Kharitonov rectangles, "
     << "ω from " << label2(samples.front().omega) << " to " << label2(samples.back().omega) << "</text>\n";
  os << "<circle cx=\"" << num(f.px(0)) << "\" cy=\"" << num(f.py(0)) << "\" r=\"3\" fill=\"red\"/>\n";
  os << "</svg>\n";
  return os.str();
}

}  // namespace robustab::cli
