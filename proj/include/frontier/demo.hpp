#pragma once

#include <string>

namespace frontier {

// Write the bundled synthetic 38-DMU demo into `dir`: ansp_2016.csv,
// catalog.json, monthly_counts.csv and config.json. The data is generated,
// not measured; DEA input/output sets are illustrative only. Returns the
// path of the written config file.
std::string write_demo(const std::string& dir);

} // namespace frontier
