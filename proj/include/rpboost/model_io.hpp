#pragma once

#include <array>
#include <string>

#include "rpboost/boosting.hpp"

namespace rpboost {

/// The method names accepted on the command line and stored in model files.
const std::array<std::string, 5>& method_tokens();
bool is_method_token(const std::string& name);

/// Plain-text model format, version 1:
///
///   rpboost-model 1 <method> <K> <lambda> <m> <P> <seed> <d>
///   <alpha> <c_0> ... <c_{d-1}>
///   <alpha> stump <feature> <threshold> <polarity>
///
/// One member per line. Floating-point fields use shortest round-trip
/// decimal formatting, so save followed by load reproduces every value
/// bit for bit.
void save_model(const Ensemble& e, const std::string& path);
Ensemble load_model(const std::string& path);

}  // namespace rpboost
