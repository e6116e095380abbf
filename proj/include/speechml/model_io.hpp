#pragma once

#include <filesystem>
#include <string>

#include "speechml/ensemble.hpp"
#include "speechml/naive_bayes.hpp"

namespace speechml {

/// Versioned, self-describing model artifact (JSON text). Doubles are emitted
/// with shortest round-trip precision, so a loaded model predicts
/// bit-identically.
std::string save_ensemble(const TreeEnsembleModel& model);
TreeEnsembleModel load_ensemble(const std::string& text);

std::string save_gaussian_nb(const GaussianNbModel& model);
GaussianNbModel load_gaussian_nb(const std::string& text);

void write_text_file(const std::filesystem::path& path,
                     const std::string& text);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace speechml
