#pragma once

#include <string>

namespace torstab {

struct HelixStyle {
  bool labels = true;
  double turn_height = 56.0;
  double radius = 120.0;
};

/// Schematic of U(X) over the charge plane: d helix turns (the Std cells),
/// d - 1 wall arcs between them, the base circle and the projection arrow.
std::string helix_svg(int d, const HelixStyle& style = {});

}  // namespace torstab
