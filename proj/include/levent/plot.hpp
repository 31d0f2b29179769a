#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "levent/sweep.hpp"

namespace levent {

/// Four panels (E_N, EPR variance, NRF, purity) against the swept value, one
/// polyline per series. EPR and NRF panels carry a dashed reference at 1. A
/// panel switches to a log axis when its positive data span more than two
/// decades. Series with a single row are drawn as markers only.
void write_svg(std::ostream& out, const std::vector<SweepRow>& rows, const std::string& title = {});

}  // namespace levent
