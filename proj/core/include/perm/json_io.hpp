#pragma once

#include <stdexcept>
#include <string>

#include "perm/discrete.hpp"
#include "perm/pandora.hpp"

namespace perm {

/// Raised when an instance file does not match the expected schema.
struct SchemaError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Instance schema:
///   {"marginals": [{"support": [...], "probs": [...]}, ...],
///    "costs": [...]}            // optional, Pandora only
ProductDistribution load_instance(const std::string& path);
pandora::PandoraInstance load_pandora_instance(const std::string& path);

/// Labeled mixture schema:
///   {"labels": {"support": [...], "probs": [...]},
///    "conditionals": [{"label": y, "marginals": [...]}, ...]}
LabeledMixture load_labeled_mixture(const std::string& path);

void save_instance(const ProductDistribution& d, const std::string& path);
void save_pandora_instance(const pandora::PandoraInstance& inst, const std::string& path);

/// Policy schema: {"order": [...], "sigmas": [...], "budget": b}  (budget
/// optional).
pandora::PandoraPolicy load_pandora_policy(const std::string& path);
void save_pandora_policy(const pandora::PandoraPolicy& p, const std::string& path);

}  // namespace perm
