#pragma once

#include "run_config.hpp"

namespace softfoot::cli {

int cmd_equilibrium(const RunConfig& cfg);
int cmd_linearize(const RunConfig& cfg);
int cmd_compliance_map(const RunConfig& cfg);
int cmd_tilt_sweep(const RunConfig& cfg);
int cmd_planar_compare(const RunConfig& cfg);
int cmd_gallery(const RunConfig& cfg);

}  // namespace softfoot::cli
