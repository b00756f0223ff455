#ifndef HRZ_SVG_HPP
#define HRZ_SVG_HPP

#include <span>
#include <string>
#include <vector>

// Minimal self-contained SVG emission: scatter plots and histograms with an
// optional density overlay.  No external renderer dependencies.

namespace hrz::svg {

void scatter_plot(const std::string& path, std::span<const double> x,
                  std::span<const double> y, const std::string& title,
                  const std::string& xlabel, const std::string& ylabel);

// bin_edges has counts.size()+1 entries.  overlay_x/overlay_y, when nonempty,
// is drawn as a polyline in the same count scale.
void histogram(const std::string& path, std::span<const double> bin_edges,
               std::span<const uint64_t> counts, const std::string& title,
               std::span<const double> overlay_x = {},
               std::span<const double> overlay_y = {});

}  // namespace hrz::svg

#endif
