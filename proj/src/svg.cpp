#include "stormclust/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace stormclust::svg {

namespace {

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (const char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string line_chart(std::span<const double> x, std::span<const double> y, const std::string& title,
                       const std::string& x_label, const std::string& y_label, std::optional<double> highlight_x) {
  constexpr double width = 640, height = 420, left = 70, right = 20, top = 40, bottom = 60;
  const double plot_w = width - left - right;
  const double plot_h = height - top - bottom;

  double x_lo = 0, x_hi = 1, y_lo = 0, y_hi = 1;
  if (!x.empty()) {
    x_lo = *std::min_element(x.begin(), x.end());
    x_hi = *std::max_element(x.begin(), x.end());
    y_lo = std::min(0.0, *std::min_element(y.begin(), y.end()));
    y_hi = *std::max_element(y.begin(), y.end());
  }
  if (x_hi <= x_lo) x_hi = x_lo + 1;
  if (y_hi <= y_lo) y_hi = y_lo + 1;
  auto px = [&](double v) { return left + (v - x_lo) / (x_hi - x_lo) * plot_w; };
  auto py = [&](double v) { return top + plot_h - (v - y_lo) / (y_hi - y_lo) * plot_h; };

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top + plot_h << "\" x2=\"" << left + plot_w << "\" y2=\""
      << top + plot_h << "\" stroke=\"black\"/>\n";
  out << "<line x1=\"" << left << "\" y1=\"" << top << "\" x2=\"" << left << "\" y2=\"" << top + plot_h
      << "\" stroke=\"black\"/>\n";

  constexpr int ticks = 5;
  for (int t = 0; t <= ticks; ++t) {
    const double xv = x_lo + (x_hi - x_lo) * t / ticks;
    const double yv = y_lo + (y_hi - y_lo) * t / ticks;
    out << "<line x1=\"" << num(px(xv)) << "\" y1=\"" << top + plot_h << "\" x2=\"" << num(px(xv)) << "\" y2=\""
        << top + plot_h + 5 << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << num(px(xv)) << "\" y=\"" << top + plot_h + 18 << "\" text-anchor=\"middle\">"
        << tick_label(xv) << "</text>\n";
    out << "<line x1=\"" << left - 5 << "\" y1=\"" << num(py(yv)) << "\" x2=\"" << left << "\" y2=\"" << num(py(yv))
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 8 << "\" y=\"" << num(py(yv) + 4) << "\" text-anchor=\"end\">" << tick_label(yv)
        << "</text>\n";
  }
  out << "<text x=\"" << left + plot_w / 2 << "\" y=\"" << height - 15 << "\" text-anchor=\"middle\">"
      << escape(x_label) << "</text>\n";
  out << "<text x=\"18\" y=\"" << top + plot_h / 2 << "\" text-anchor=\"middle\" transform=\"rotate(-90 18 "
      << top + plot_h / 2 << ")\">" << escape(y_label) << "</text>\n";

  if (highlight_x) {
    out << "<line x1=\"" << num(px(*highlight_x)) << "\" y1=\"" << top << "\" x2=\"" << num(px(*highlight_x))
        << "\" y2=\"" << top + plot_h << "\" stroke=\"#d62728\" stroke-dasharray=\"5,4\"/>\n";
  }
  out << "<polyline fill=\"none\" stroke=\"#1f77b4\" stroke-width=\"2\" points=\"";
  for (std::size_t i = 0; i < x.size(); ++i) out << (i ? " " : "") << num(px(x[i])) << ',' << num(py(y[i]));
  out << "\"/>\n";
  for (std::size_t i = 0; i < x.size(); ++i) {
    out << "<circle cx=\"" << num(px(x[i])) << "\" cy=\"" << num(py(y[i])) << "\" r=\"3\" fill=\"#1f77b4\"/>\n";
  }
  out << "</svg>\n";
  return out.str();
}

std::string bar_panels(std::span<const std::string> categories, std::span<const BarPanel> panels,
                       const std::string& title) {
  constexpr double width = 760, panel_h = 180, left = 60, right = 20, top = 40, label_h = 70;
  const double plot_w = width - left - right;
  const double height = top + panels.size() * (panel_h + label_h);

  double extent = 1.0;
  for (const auto& p : panels) {
    for (const auto& v : p.values) {
      if (v) extent = std::max(extent, std::fabs(*v));
    }
  }
  extent = std::ceil(extent);
  const double slot = categories.empty() ? plot_w : plot_w / static_cast<double>(categories.size());

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" font-family=\"sans-serif\" font-size=\"11\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << width / 2 << "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" << escape(title)
      << "</text>\n";
  for (std::size_t p = 0; p < panels.size(); ++p) {
    const double y0 = top + p * (panel_h + label_h);
    const double mid = y0 + panel_h / 2;
    auto py = [&](double v) { return mid - v / extent * (panel_h / 2 - 10); };
    out << "<text x=\"" << left << "\" y=\"" << y0 + 10 << "\" font-size=\"13\">" << escape(panels[p].title)
        << "</text>\n";
    out << "<line x1=\"" << left << "\" y1=\"" << num(mid) << "\" x2=\"" << left + plot_w << "\" y2=\"" << num(mid)
        << "\" stroke=\"black\"/>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << num(py(extent) + 4) << "\" text-anchor=\"end\">" << tick_label(extent)
        << "</text>\n";
    out << "<text x=\"" << left - 6 << "\" y=\"" << num(py(-extent) + 4) << "\" text-anchor=\"end\">"
        << tick_label(-extent) << "</text>\n";
    for (std::size_t c = 0; c < categories.size() && c < panels[p].values.size(); ++c) {
      const double x = left + c * slot + slot * 0.15;
      if (const auto& v = panels[p].values[c]) {
        const double ytop = std::min(py(*v), mid);
        const double h = std::fabs(py(*v) - mid);
        out << "<rect x=\"" << num(x) << "\" y=\"" << num(ytop) << "\" width=\"" << num(slot * 0.7) << "\" height=\""
            << num(h) << "\" fill=\"" << (*v >= 0 ? "#1f77b4" : "#ff7f0e") << "\"/>\n";
      }
      const double lx = x + slot * 0.35;
      const double ly = y0 + panel_h + 6;
      out << "<text x=\"" << num(lx) << "\" y=\"" << num(ly) << "\" text-anchor=\"end\" transform=\"rotate(-60 "
          << num(lx) << ' ' << num(ly) << ")\">" << escape(categories[c]) << "</text>\n";
    }
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace stormclust::svg
