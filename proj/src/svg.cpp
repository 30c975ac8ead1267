#include "bredon/svg.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace bredon {

namespace {

constexpr double kSize = 400.0;
constexpr double kMargin = 40.0;
constexpr double kBand = 20.0;  // height of the infinite-bar band above the plot
constexpr const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

}  // namespace

std::string diagram_svg(const PersistenceDiagram& diagram) {
  double top = 0.0;
  for (const auto& [k, bars] : diagram.bars)
    for (const auto& b : bars) {
      top = std::max(top, b.birth);
      if (!b.is_infinite()) top = std::max(top, b.death);
    }
  if (top <= 0.0) top = 1.0;

  const double lo = kMargin, hi = kSize - kMargin;  // plot square in pixels
  const double plot_top = lo + kBand;
  auto x = [&](double v) { return lo + (hi - lo) * v / top; };
  auto y = [&](double v) { return hi - (hi - plot_top) * v / top; };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"400\" height=\"400\" viewBox=\"0 0 400 400\">\n";
  s += "<rect x=\"0\" y=\"0\" width=\"400\" height=\"400\" fill=\"white\"/>\n";
  s += "<rect class=\"infinite-band\" x=\"" + fmt(lo) + "\" y=\"" + fmt(lo) + "\" width=\"" + fmt(hi - lo) +
       "\" height=\"" + fmt(kBand) + "\" fill=\"#eeeeee\"/>\n";
  s += "<text x=\"" + fmt(hi) + "\" y=\"" + fmt(lo - 4) + "\" font-size=\"10\" text-anchor=\"end\">inf</text>\n";
  s += "<line class=\"diagonal\" x1=\"" + fmt(x(0)) + "\" y1=\"" + fmt(y(0)) + "\" x2=\"" + fmt(x(top)) +
       "\" y2=\"" + fmt(y(top)) + "\" stroke=\"black\" stroke-width=\"1\"/>\n";
  s += "<text x=\"" + fmt(hi) + "\" y=\"" + fmt(hi + 16) + "\" font-size=\"10\" text-anchor=\"end\">birth (max " +
       fmt(top) + ")</text>\n";
  s += "<text x=\"" + fmt(lo - 8) + "\" y=\"" + fmt(plot_top) + "\" font-size=\"10\" text-anchor=\"end\">death</text>\n";

  for (const auto& [k, bars] : diagram.bars) {
    const char* color = kColors[std::size_t(k) % std::size(kColors)];
    auto sorted = bars;
    std::sort(sorted.begin(), sorted.end());
    for (const auto& b : sorted) {
      const bool inf = b.is_infinite();
      const double cy = inf ? lo + kBand / 2 : y(b.death);
      s += std::string("<circle class=\"") + (inf ? "infinite" : "finite") + "\" data-degree=\"" +
           std::to_string(k) + "\" cx=\"" + fmt(x(b.birth)) + "\" cy=\"" + fmt(cy) + "\" r=\"3\" fill=\"" +
           color + "\"/>\n";
    }
  }
  s += "</svg>\n";
  return s;
}

void render_diagram_svg(const PersistenceDiagram& diagram, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << diagram_svg(diagram);
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

}  // namespace bredon
