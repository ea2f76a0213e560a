#pragma once

#include <span>
#include <string>
#include <vector>

namespace cdf2pdf::cli {

// Minimal deterministic SVG chart: same data in, same bytes out, no
// timestamps or random ids. Elements draw in insertion order under a plot
// clip; axes, ticks and the legend are derived from the data bounds.
class SvgPlot {
 public:
  SvgPlot(std::string title, std::string xlabel, std::string ylabel);

  void line(std::span<const double> x, std::span<const double> y,
            const std::string& color, double stroke_width,
            const std::string& legend = "", bool dashed = false);
  void band(std::span<const double> x, std::span<const double> lo,
            std::span<const double> hi, const std::string& fill,
            const std::string& legend = "");
  void bars(std::span<const double> edges, std::span<const double> height,
            const std::string& fill, const std::string& legend = "");

  std::string render(int width = 640, int height = 420) const;

 private:
  struct Element {
    enum class Kind { line, band, bars };
    Kind kind = Kind::line;
    std::vector<double> x, y, y2;
    std::string color;
    double stroke_width = 1.0;
    bool dashed = false;
    std::string legend;
  };

  std::string title_, xlabel_, ylabel_;
  std::vector<Element> elems_;
};

std::string xml_escape(const std::string& s);

}  // namespace cdf2pdf::cli
