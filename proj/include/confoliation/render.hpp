#pragma once

// Static plane-field slice figures (SVG) and grid exports.

#include <confoliation/config.hpp>
#include <confoliation/verify.hpp>

#include <string>

namespace confoliation {

enum class SlicePlane { Phi, Theta, Z };

// Line-field trace of ker(alpha_t) on the chosen coordinate slice, with
// region boundaries drawn. Returns the SVG document.
std::string render_slice(const GlobalFormFamily &fam, SlicePlane plane, double value,
                         double t);

// Writes one CSV per region with sampled coefficients (t = 0 columns) and a
// contact-margin column per sweep t. Returns the file names written.
std::vector<std::string> export_fields(const GlobalFormFamily &fam,
                                       const std::string &out_dir);

} // namespace confoliation
