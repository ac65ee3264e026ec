#ifndef STORMCLUST_SVG_HPP
#define STORMCLUST_SVG_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stormclust::svg {

/// Polyline chart with axes, ticks and point markers. A vertical guide is
/// drawn at `highlight_x` when given.
std::string line_chart(std::span<const double> x, std::span<const double> y, const std::string& title,
                       const std::string& x_label, const std::string& y_label,
                       std::optional<double> highlight_x = std::nullopt);

struct BarPanel {
  std::string title;
  std::vector<std::optional<double>> values;  ///< nullopt bars are skipped
};

/// One horizontal-axis bar panel per entry, stacked vertically, sharing category names.
std::string bar_panels(std::span<const std::string> categories, std::span<const BarPanel> panels,
                       const std::string& title);

}  // namespace stormclust::svg

#endif
