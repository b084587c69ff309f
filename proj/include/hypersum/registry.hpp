#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

namespace hypersum {

enum class Mode { exact_rational, formal_series, numeric_bounded };

/// "exact-rational", "formal-series", "numeric-bounded"
std::string_view mode_name(Mode mode);

enum class ParamKind { rational, nonnegative_integer, family, phi };

std::string_view param_kind_name(ParamKind kind);

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::rational;
  /// Used when the binding is absent; without one the parameter is required.
  std::optional<std::string> fallback;
};

/// Raw parameter bindings as they arrive from the command line or a grid
/// config: name -> "p/q", "2:1,5/2:3", "exp", ...
using Bindings = std::map<std::string, std::string>;

struct CheckOptions {
  std::size_t order = 24;
  int digits = 50;
  std::size_t max_terms = 200000;
};

struct CoefficientWitness {
  std::size_t index = 0;
  std::string lhs;
  std::string rhs;
};

struct CheckReport {
  std::string identity;
  /// Canonical parameter strings in schema order.
  std::vector<std::pair<std::string, std::string>> params;
  /// "exact", "series-order-N" or "numeric"
  std::string mode;
  bool passed = false;
  /// Single values for exact and numeric checks, coefficient lists for series.
  nlohmann::ordered_json lhs;
  nlohmann::ordered_json rhs;
  std::optional<std::string> abs_diff;
  /// Allowed gap for numeric checks: lhs tail bound plus rhs error bound.
  std::optional<std::string> bound;
  std::optional<CoefficientWitness> first_bad_coeff;
  std::size_t terms_used = 0;
  long long elapsed_ms = 0;
  std::vector<std::pair<std::string, std::string>> details;
};

struct IdentityDescriptor;
using CheckRunner = std::function<CheckReport(const IdentityDescriptor&, const Bindings&, const CheckOptions&)>;

struct IdentityDescriptor {
  std::string id;
  std::string citation;
  Mode mode = Mode::exact_rational;
  std::vector<ParamSpec> params;
  CheckRunner runner;
};

/// Every identity the library can check, in a fixed order.
const std::vector<IdentityDescriptor>& list_identities();

/// Throws UnknownIdentityError.
const IdentityDescriptor& find_identity(std::string_view id);

/// Runs one check. Unknown or malformed bindings raise ParseError; bindings
/// outside the identity's domain raise ParamDomainError naming the failed
/// condition; BudgetExceededError passes through.
CheckReport run_check(std::string_view id, const Bindings& bindings, const CheckOptions& options = {});

/// Report in the stable field order. elapsed_ms is the only field that varies
/// between identical runs.
nlohmann::ordered_json to_json(const CheckReport& report);

nlohmann::ordered_json to_json(const IdentityDescriptor& descriptor);

}  // namespace hypersum
