#pragma once

#include <string>

#include "packrigid/packing.hpp"
#include "packrigid/planar_lift.hpp"

namespace packrigid {

// Deterministic SVG renderings: one circle element per disk, one line
// element per contact, elements in sorted label order, viewBox fitted with
// a 10% margin.

std::string plot_penny_svg(const PennyRealization& r, const ToleranceProfile& tol = {});

// Equatorial section of a standard-form packing: non-hub spheres are drawn
// as their z = 0 circles, hub spheres as the unit forbidden-disk outline.
// Throws std::invalid_argument (suggesting standard_form) otherwise.
std::string plot_packing_svg(const Packing& pk, const ToleranceProfile& tol = {});

// Chain circles plus the forbidden-disk outline, closure defect annotated.
std::string plot_chain_svg(const ChainResult& chain);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace packrigid
