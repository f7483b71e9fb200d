#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "rsp/analysis.hpp"

namespace rsp::io {

inline constexpr std::string_view kSweepHeader =
    "noise,eta,alpha_re,alpha_im,beta_re,beta_im,branch,fidelity_exact,fidelity_truncated";

/// Fixed-point with twelve decimals; -0 prints as 0.
std::string fixed12(double x);

void write_sweep_csv(std::ostream& out, const std::vector<analysis::SweepRow>& rows);

/// Inverse of write_sweep_csv. Throws ArgumentError on malformed input.
std::vector<analysis::SweepRow> read_sweep_csv(std::istream& in);

/// Minimal line chart of fidelity against eta, one polyline per noise kind
/// and model. Marker cells are skipped.
void write_sweep_svg(std::ostream& out, const std::vector<analysis::SweepRow>& rows);

}  // namespace rsp::io
