#pragma once

#include <memory>
#include <string>
#include <vector>

#include "hmgc/reference.hpp"
#include "hmgc/scorers.hpp"

namespace hmgc {

// Detector specs used in run configurations:
//   "train:<corpus path>"  train a reference detector on the corpus
//   "<checkpoint path>"    load a saved HMGC-SCORER/1 checkpoint
std::shared_ptr<ReferenceDetector> resolve_detector(const std::string& spec,
                                                    const TrainConfig& train);

// Plain text file, one fitting sentence per line.
std::vector<std::string> load_background(const std::string& path);
void save_background(const std::vector<std::string>& texts, const std::string& path);

// Reference backends fitted on the background texts. `name` selects the
// scorer family; only "reference" ships, adapters register here.
ScorerBundle make_scorers(const std::string& name, const std::vector<std::string>& background);

} // namespace hmgc
