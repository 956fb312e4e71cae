#pragma once

#include <string>

#include "json.hpp"
#include "toruslab/analysis.hpp"
#include "toruslab/contfrac.hpp"

namespace toruslab {

// reals are serialized as decimal strings with 17 significant digits so that
// reports are byte-identical across runs and thread counts
std::string fmt17(double v);

nlohmann::json to_json(const ZeroCensus& c);
nlohmann::json to_json(const Certificate& c);
nlohmann::json to_json(const IndexReport& r);
nlohmann::json to_json(const WitnessResult& w);
nlohmann::json to_json(const dio::ContinuedFraction& cf);
nlohmann::json to_json(const dio::MuEstimate& mu);
nlohmann::json to_json(const dio::RegistryEntry& e);
nlohmann::json to_json(const WaveClassification& w);

std::string envelope_csv(const IndexReport& r);

}  // namespace toruslab
