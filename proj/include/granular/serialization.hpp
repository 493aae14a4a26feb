#pragma once

#include <filesystem>
#include <string>

#include "granular/corrector.hpp"
#include "granular/monte_carlo.hpp"
#include "granular/weighted_pca.hpp"

namespace granular {

// JSON codecs for the persistent artifacts. Numbers survive a round trip
// bit-exactly (shortest-exact double encoding); schemas carry a version tag.

/// Optionally records the weight scheme and selection rule that produced
/// the projector; both are ignored on load (they are provenance, not state).
std::string projector_to_json(const Projector& projector,
                              const WeightScheme* scheme = nullptr,
                              const SelectionRule* rule = nullptr);
Projector projector_from_json(const std::string& json_text);

std::string corrector_to_json(const CorrectorModel& model);
CorrectorModel corrector_from_json(const std::string& json_text);

std::string report_to_json(const SeparabilityReport& report);
SeparabilityReport report_from_json(const std::string& json_text);

void save_text(const std::filesystem::path& path, const std::string& content);
std::string load_text(const std::filesystem::path& path);

}  // namespace granular
