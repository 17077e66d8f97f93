#pragma once

#include <string>

#include "spikeplan/network.hpp"

namespace spikeplan {

/// Versioned flat binary model file: grid spec, tau, activation parameters
/// and the row-major weight matrix (see docs/formats.md). Round trips are
/// bit-exact.
void save_model(const StateNetwork& net, const std::string& path);
StateNetwork load_model(const std::string& path);

}  // namespace spikeplan
