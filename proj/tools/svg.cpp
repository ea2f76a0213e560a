#include "svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

namespace cdf2pdf::cli {
namespace {

std::string fmt(double v, const char* spec) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

std::string px(double v) { return fmt(v, "%.2f"); }
std::string tick_label(double v) { return fmt(v, "%.6g"); }

std::vector<double> nice_ticks(double lo, double hi, int count) {
  const double span = hi - lo;
  if (!(span > 0.0) || count < 2) return {lo};
  const double raw = span / count;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double frac = raw / mag;
  double step = 10.0;
  if (frac < 1.5)
    step = 1.0;
  else if (frac < 3.0)
    step = 2.0;
  else if (frac < 7.0)
    step = 5.0;
  step *= mag;
  std::vector<double> ticks;
  for (double v = std::ceil(lo / step) * step; v <= hi + step * 1e-9;
       v += step) {
    ticks.push_back(std::fabs(v) < step * 1e-9 ? 0.0 : v);
  }
  return ticks;
}

struct Bounds {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();
  void take(double v) {
    if (!std::isfinite(v)) return;
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void pad() {
    if (lo > hi) {  // no finite data at all
      lo = 0.0;
      hi = 1.0;
      return;
    }
    if (lo == hi) {
      const double d = std::max(1.0, std::fabs(lo)) * 0.05;
      lo -= d;
      hi += d;
      return;
    }
    const double d = (hi - lo) * 0.04;
    lo -= d;
    hi += d;
  }
};

}  // namespace

std::string xml_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (const char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

SvgPlot::SvgPlot(std::string title, std::string xlabel, std::string ylabel)
    : title_(std::move(title)),
      xlabel_(std::move(xlabel)),
      ylabel_(std::move(ylabel)) {}

void SvgPlot::line(std::span<const double> x, std::span<const double> y,
                   const std::string& color, double stroke_width,
                   const std::string& legend, bool dashed) {
  Element e;
  e.kind = Element::Kind::line;
  e.x.assign(x.begin(), x.end());
  e.y.assign(y.begin(), y.end());
  e.color = color;
  e.stroke_width = stroke_width;
  e.dashed = dashed;
  e.legend = legend;
  elems_.push_back(std::move(e));
}

void SvgPlot::band(std::span<const double> x, std::span<const double> lo,
                   std::span<const double> hi, const std::string& fill,
                   const std::string& legend) {
  Element e;
  e.kind = Element::Kind::band;
  e.x.assign(x.begin(), x.end());
  e.y.assign(lo.begin(), lo.end());
  e.y2.assign(hi.begin(), hi.end());
  e.color = fill;
  e.legend = legend;
  elems_.push_back(std::move(e));
}

void SvgPlot::bars(std::span<const double> edges,
                   std::span<const double> height, const std::string& fill,
                   const std::string& legend) {
  Element e;
  e.kind = Element::Kind::bars;
  e.x.assign(edges.begin(), edges.end());
  e.y.assign(height.begin(), height.end());
  e.color = fill;
  e.legend = legend;
  elems_.push_back(std::move(e));
}

std::string SvgPlot::render(int width, int height) const {
  Bounds bx, by;
  for (const Element& e : elems_) {
    for (const double v : e.x) bx.take(v);
    for (const double v : e.y) by.take(v);
    for (const double v : e.y2) by.take(v);
    if (e.kind == Element::Kind::bars) by.take(0.0);
  }
  bx.pad();
  by.pad();

  const double left = 64.0, right = width - 16.0;
  const double top = 36.0, bottom = height - 48.0;
  const auto X = [&](double v) {
    return left + (v - bx.lo) / (bx.hi - bx.lo) * (right - left);
  };
  const auto Y = [&](double v) {
    return bottom - (v - by.lo) / (by.hi - by.lo) * (bottom - top);
  };

  std::string s;
  s += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" +
       std::to_string(width) + "\" height=\"" + std::to_string(height) +
       "\" viewBox=\"0 0 " + std::to_string(width) + " " +
       std::to_string(height) + "\">\n";
  s += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
  s += "<clipPath id=\"plotclip\"><rect x=\"" + px(left) + "\" y=\"" +
       px(top) + "\" width=\"" + px(right - left) + "\" height=\"" +
       px(bottom - top) + "\"/></clipPath>\n";

  // grid and ticks
  const std::vector<double> xticks = nice_ticks(bx.lo, bx.hi, 6);
  const std::vector<double> yticks = nice_ticks(by.lo, by.hi, 5);
  for (const double t : xticks) {
    s += "<line x1=\"" + px(X(t)) + "\" y1=\"" + px(top) + "\" x2=\"" +
         px(X(t)) + "\" y2=\"" + px(bottom) +
         "\" stroke=\"#e4e4e4\" stroke-width=\"1\"/>\n";
  }
  for (const double t : yticks) {
    s += "<line x1=\"" + px(left) + "\" y1=\"" + px(Y(t)) + "\" x2=\"" +
         px(right) + "\" y2=\"" + px(Y(t)) +
         "\" stroke=\"#e4e4e4\" stroke-width=\"1\"/>\n";
  }

  // data elements, clipped to the plot area
  s += "<g clip-path=\"url(#plotclip)\">\n";
  for (const Element& e : elems_) {
    if (e.kind == Element::Kind::band) {
      std::string pts;
      for (std::size_t i = 0; i < e.x.size(); ++i)
        pts += px(X(e.x[i])) + "," + px(Y(e.y[i])) + " ";
      for (std::size_t i = e.x.size(); i-- > 0;)
        pts += px(X(e.x[i])) + "," + px(Y(e.y2[i])) + " ";
      if (!pts.empty()) pts.pop_back();
      s += "<polygon points=\"" + pts + "\" fill=\"" + e.color +
           "\" fill-opacity=\"0.35\" stroke=\"none\"/>\n";
    } else if (e.kind == Element::Kind::bars) {
      for (std::size_t i = 0; i + 1 < e.x.size() && i < e.y.size(); ++i) {
        const double x0 = X(e.x[i]);
        const double x1 = X(e.x[i + 1]);
        const double ytop = Y(e.y[i]);
        const double ybase = Y(0.0);
        s += "<rect x=\"" + px(x0) + "\" y=\"" + px(std::min(ytop, ybase)) +
             "\" width=\"" + px(x1 - x0) + "\" height=\"" +
             px(std::fabs(ybase - ytop)) + "\" fill=\"" + e.color +
             "\" fill-opacity=\"0.45\" stroke=\"#888888\" "
             "stroke-width=\"0.5\"/>\n";
      }
    } else {
      // polylines break at non-finite samples
      std::string pts;
      auto flush = [&]() {
        if (pts.empty()) return;
        pts.pop_back();
        s += "<polyline points=\"" + pts + "\" fill=\"none\" stroke=\"" +
             e.color + "\" stroke-width=\"" + px(e.stroke_width) + "\"" +
             (e.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
        pts.clear();
      };
      for (std::size_t i = 0; i < e.x.size() && i < e.y.size(); ++i) {
        if (!std::isfinite(e.x[i]) || !std::isfinite(e.y[i])) {
          flush();
          continue;
        }
        pts += px(X(e.x[i])) + "," + px(Y(e.y[i])) + " ";
      }
      flush();
    }
  }
  s += "</g>\n";

  // frame
  s += "<rect x=\"" + px(left) + "\" y=\"" + px(top) + "\" width=\"" +
       px(right - left) + "\" height=\"" + px(bottom - top) +
       "\" fill=\"none\" stroke=\"#333333\" stroke-width=\"1\"/>\n";

  // tick labels
  for (const double t : xticks) {
    s += "<text x=\"" + px(X(t)) + "\" y=\"" + px(bottom + 16.0) +
         "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\" "
         "text-anchor=\"middle\">" +
         xml_escape(tick_label(t)) + "</text>\n";
  }
  for (const double t : yticks) {
    s += "<text x=\"" + px(left - 6.0) + "\" y=\"" + px(Y(t) + 3.5) +
         "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"#333333\" "
         "text-anchor=\"end\">" +
         xml_escape(tick_label(t)) + "</text>\n";
  }

  // axis labels and title
  s += "<text x=\"" + px((left + right) / 2.0) + "\" y=\"" +
       px(height - 12.0) +
       "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#111111\" "
       "text-anchor=\"middle\">" +
       xml_escape(xlabel_) + "</text>\n";
  s += "<text x=\"16\" y=\"" + px((top + bottom) / 2.0) +
       "\" font-family=\"sans-serif\" font-size=\"12\" fill=\"#111111\" "
       "text-anchor=\"middle\" transform=\"rotate(-90, 16, " +
       px((top + bottom) / 2.0) + ")\">" +
       xml_escape(ylabel_) + "</text>\n";
  s += "<text x=\"" + px((left + right) / 2.0) +
       "\" y=\"22\" font-family=\"sans-serif\" font-size=\"13\" "
       "fill=\"#111111\" text-anchor=\"middle\">" +
       xml_escape(title_) + "</text>\n";

  // legend, top right, insertion order
  std::vector<const Element*> legends;
  for (const Element& e : elems_)
    if (!e.legend.empty()) legends.push_back(&e);
  if (!legends.empty()) {
    const double lw = 170.0;
    const double lh = 18.0 * static_cast<double>(legends.size()) + 8.0;
    const double lx = right - lw - 8.0;
    const double ly = top + 8.0;
    s += "<rect x=\"" + px(lx) + "\" y=\"" + px(ly) + "\" width=\"" + px(lw) +
         "\" height=\"" + px(lh) +
         "\" fill=\"#ffffff\" fill-opacity=\"0.85\" stroke=\"#999999\" "
         "stroke-width=\"0.5\"/>\n";
    for (std::size_t i = 0; i < legends.size(); ++i) {
      const Element& e = *legends[i];
      const double ty = ly + 17.0 + 18.0 * static_cast<double>(i);
      if (e.kind == Element::Kind::line) {
        s += "<line x1=\"" + px(lx + 8.0) + "\" y1=\"" + px(ty - 4.0) +
             "\" x2=\"" + px(lx + 30.0) + "\" y2=\"" + px(ty - 4.0) +
             "\" stroke=\"" + e.color + "\" stroke-width=\"2\"" +
             (e.dashed ? " stroke-dasharray=\"6,4\"" : "") + "/>\n";
      } else {
        s += "<rect x=\"" + px(lx + 8.0) + "\" y=\"" + px(ty - 10.0) +
             "\" width=\"22\" height=\"10\" fill=\"" + e.color +
             "\" fill-opacity=\"0.45\"/>\n";
      }
      s += "<text x=\"" + px(lx + 36.0) + "\" y=\"" + px(ty) +
           "\" font-family=\"sans-serif\" font-size=\"11\" "
           "fill=\"#111111\">" +
           xml_escape(e.legend) + "</text>\n";
    }
  }

  s += "</svg>\n";
  return s;
}

}  // namespace cdf2pdf::cli
