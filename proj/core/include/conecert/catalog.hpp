#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "conecert/cone.hpp"
#include "conecert/diffops.hpp"
#include "conecert/linalg.hpp"

namespace conecert {

enum class PropertyLabel {
  Subadd,
  Superadd,
  StrongSubadd,
  StrongSuperadd,
  SecondDiffNonneg,
  SecondDiffNonpos,
  Submodular,
  Supermodular,
  CompletelyMonotone,
  ComonotoneStrongSuperadd,
};

// SCREAMING_CASE names used in catalog listings.
const char* to_string(PropertyLabel label);
// kebab-case names used on the command line.
const char* cli_name(PropertyLabel label);
// Accepts either spelling; nullopt when unknown.
std::optional<PropertyLabel> parse_property(std::string_view text);

enum class LabelStatus { PaperAsserted, PaperRefutedCandidate };
const char* to_string(LabelStatus status);

struct LabelClaim {
  PropertyLabel label;
  LabelStatus status;
  friend bool operator==(const LabelClaim&, const LabelClaim&) = default;
};

// Adds SUBADD/SUPERADD and the matching second-difference sign for every
// asserted STRONG_* claim that does not already list them.
std::vector<LabelClaim> close_labels(std::vector<LabelClaim> claims);

using ParamValue = std::variant<double, std::vector<double>, std::string>;
using ParamMap = std::map<std::string, ParamValue>;

double param_number(const ParamMap& params, const std::string& key);
std::vector<double> param_vector(const ParamMap& params, const std::string& key);
std::string param_text(const ParamMap& params, const std::string& key);

using AnalyticHessian = std::function<DenseMatrix(const Point&)>;

struct CatalogEntry {
  std::string id;
  std::string formula;
  // Literature locator for the claimed properties.
  std::string source;
  std::size_t default_dim = 1;
  bool fixed_dim = false;
  ParamMap defaults;

  std::function<ConeSpec(const ParamMap&, std::size_t)> domain;
  // Labels claimed at the given parameters (already closed).
  std::function<std::vector<LabelClaim>(const ParamMap&, std::size_t)> claims;
  // Throws ParameterError naming the violated constraint.
  std::function<void(const ParamMap&, std::size_t)> validate;
  std::function<FunctionHandle::Rule(const ParamMap&, std::size_t)> rule;
  AnalyticHessian analytic_hessian;  // optional

  bool is_scalar() const;
};

const std::vector<CatalogEntry>& builtin_entries();
const CatalogEntry& lookup(std::string_view id);

// Defaults overridden by `overrides`; dim 0 selects the entry's default.
ParamMap resolve_params(const CatalogEntry& entry, const ParamMap& overrides);
std::size_t resolve_dim(const CatalogEntry& entry, std::size_t dim);

FunctionHandle instantiate(const CatalogEntry& entry, const ParamMap& overrides = {},
                           std::size_t dim = 0);
std::vector<LabelClaim> claims_for(const CatalogEntry& entry, const ParamMap& overrides = {},
                                   std::size_t dim = 0);
std::optional<LabelStatus> status_of(const std::vector<LabelClaim>& claims, PropertyLabel label);

}  // namespace conecert
