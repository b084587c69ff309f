#include "hypersum/registry.hpp"

#include <algorithm>
#include <chrono>
#include <set>

#include "hypersum/closed_forms.hpp"
#include "hypersum/error.hpp"
#include "hypersum/hyper.hpp"
#include "hypersum/km.hpp"
#include "hypersum/transform.hpp"

namespace hypersum {

std::string_view mode_name(Mode mode) {
  switch (mode) {
    case Mode::exact_rational: return "exact-rational";
    case Mode::formal_series: return "formal-series";
    case Mode::numeric_bounded: return "numeric-bounded";
  }
  return {};
}

std::string_view param_kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::rational: return "rational";
    case ParamKind::nonnegative_integer: return "nonnegative-integer";
    case ParamKind::family: return "family";
    case ParamKind::phi: return "phi";
  }
  return {};
}

namespace {

// Bindings checked against a schema and put in canonical form.
class Params {
 public:
  Params(const IdentityDescriptor& descriptor, const Bindings& bindings) {
    for (const auto& [name, value] : bindings) {
      const bool known = std::any_of(descriptor.params.begin(), descriptor.params.end(),
                                     [&](const ParamSpec& p) { return p.name == name; });
      if (!known) throw ParseError("identity " + descriptor.id + " has no parameter '" + name + "'");
    }
    for (const auto& spec : descriptor.params) {
      const auto it = bindings.find(spec.name);
      std::string raw;
      if (it != bindings.end()) {
        raw = it->second;
      } else if (spec.fallback) {
        raw = *spec.fallback;
      } else {
        throw ParseError("identity " + descriptor.id + " needs parameter '" + spec.name + "'");
      }
      values_.emplace_back(spec.name, canonical(spec, raw));
    }
  }

  Rational rational(const std::string& name) const { return Rational::parse(raw(name)); }
  unsigned natural(const std::string& name) const { return static_cast<unsigned>(rational(name).to_long()); }
  KMFamily family(const std::string& name) const { return KMFamily::parse(raw(name)); }
  DerivativeSequence phi(const std::string& name) const { return DerivativeSequence::parse(raw(name)); }
  const std::vector<std::pair<std::string, std::string>>& values() const { return values_; }

 private:
  static std::string canonical(const ParamSpec& spec, const std::string& raw) {
    switch (spec.kind) {
      case ParamKind::rational: return Rational::parse(raw).str();
      case ParamKind::nonnegative_integer: {
        const Rational n = Rational::parse(raw);
        if (!n.is_integer() || n.sign() < 0 || n > Rational(1000000)) {
          throw ParseError("parameter " + spec.name + " must be a non-negative integer, got " + raw);
        }
        return n.str();
      }
      case ParamKind::family: return KMFamily::parse(raw).str();
      case ParamKind::phi: return DerivativeSequence::parse(raw).name();
    }
    return raw;
  }

  const std::string& raw(const std::string& name) const {
    for (const auto& [key, value] : values_) {
      if (key == name) return value;
    }
    throw ParseError("parameter '" + name + "' is not bound");
  }

  std::vector<std::pair<std::string, std::string>> values_;
};

CheckReport start_report(const IdentityDescriptor& d, const Params& p) {
  CheckReport r;
  r.identity = d.id;
  r.params = p.values();
  return r;
}

CheckReport exact_report(const IdentityDescriptor& d, const Params& p, const HyperSpec& spec, const Rational& rhs) {
  CheckReport r = start_report(d, p);
  r.mode = "exact";
  const Rational lhs = eval_terminating(spec, 2);
  r.lhs = lhs.str();
  r.rhs = rhs.str();
  r.abs_diff = abs(lhs - rhs).str();
  r.passed = lhs == rhs;
  r.terms_used = spec.termination_index().value_or(0) + 1;
  return r;
}

nlohmann::ordered_json coefficient_list(const TruncatedSeries& s) {
  auto out = nlohmann::ordered_json::array();
  for (const auto& c : s.coeffs()) out.push_back(c.str());
  return out;
}

CheckReport series_report(const IdentityDescriptor& d, const Params& p, const TransformCheck& check) {
  CheckReport r = start_report(d, p);
  r.mode = "series-order-" + std::to_string(check.order);
  r.lhs = coefficient_list(check.lhs);
  r.rhs = coefficient_list(check.rhs);
  r.passed = check.passed();
  if (const auto bad = check.mismatch()) {
    r.first_bad_coeff = CoefficientWitness{*bad, check.lhs[*bad].str(), check.rhs[*bad].str()};
  }
  r.terms_used = check.order + 1;
  r.details = check.details;
  if (check.odd_block) r.details.emplace_back("odd_block_zero", check.odd_block->is_zero() ? "true" : "false");
  return r;
}

NumericOptions numeric_options(const CheckOptions& o) {
  NumericOptions n;
  n.digits = o.digits;
  n.max_terms = o.max_terms;
  return n;
}

PrecisionContext precision(const CheckOptions& o) { return PrecisionContext(o.digits); }

CheckReport numeric_report(const IdentityDescriptor& d, const Params& p, const NumericValue& lhs, const SumValue& rhs,
                           int digits) {
  CheckReport r = start_report(d, p);
  r.mode = "numeric";
  r.lhs = lhs.estimate.str();
  r.rhs = rhs.exact ? rhs.exact->str() : rhs.numeric.estimate.str();
  const Real gap = abs(lhs.estimate - rhs.numeric.estimate);
  const Real allowed = lhs.tail_bound + rhs.numeric.tail_bound;
  r.abs_diff = gap.str(digits);
  r.bound = allowed.str_up(digits);
  r.passed = gap <= allowed;
  r.terms_used = lhs.terms_used;
  return r;
}

NumericValue scaled_lhs(const ScaledSpec& lhs, const CheckOptions& o) {
  NumericValue v = eval_numeric(lhs.spec, 1, numeric_options(o));
  v.estimate *= lhs.prefactor;
  v.tail_bound *= abs(lhs.prefactor);
  return v;
}

ParamSpec rat(std::string name) { return {std::move(name), ParamKind::rational, std::nullopt}; }
ParamSpec nat(std::string name) { return {std::move(name), ParamKind::nonnegative_integer, std::nullopt}; }
ParamSpec family_param() { return {"family", ParamKind::family, std::string()}; }
ParamSpec phi_param() { return {"phi", ParamKind::phi, std::string("exp")}; }

using Build = std::function<CheckReport(const IdentityDescriptor&, const Params&, const CheckOptions&)>;

IdentityDescriptor make(std::string id, std::string citation, Mode mode, std::vector<ParamSpec> params, Build build) {
  IdentityDescriptor d{std::move(id), std::move(citation), mode, std::move(params), nullptr};
  d.runner = [build = std::move(build)](const IdentityDescriptor& self, const Bindings& b, const CheckOptions& o) {
    return build(self, Params(self, b), o);
  };
  return d;
}

IdentityDescriptor generating_descriptor(GeneratingId id, std::string citation) {
  std::vector<ParamSpec> params;
  for (auto& name : generating_params(id)) params.push_back(rat(std::move(name)));
  return make(std::string(generating_name(id)), std::move(citation), Mode::formal_series, std::move(params),
              [id](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                std::map<std::string, Rational> values;
                for (const auto& [name, _] : p.values()) values.emplace(name, p.rational(name));
                return series_report(d, p, generating_identity(id, values, o.order));
              });
}

std::vector<IdentityDescriptor> build_registry() {
  std::vector<IdentityDescriptor> r;

  r.push_back(make("f32-even", "Terminating 3F2(-2n, a, d+1; 2a+1, d; 2) = (1/2)_n/(a+1/2)_n, independent of d",
                   Mode::exact_rational, {nat("n"), rat("a"), rat("d")},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions&) {
                     const unsigned n = p.natural("n");
                     const Rational value = f32_even(n, p.rational("a"), p.rational("d"));
                     return exact_report(d, p, f32_lhs(2 * n, p.rational("a"), p.rational("d")), value);
                   }));
  r.push_back(make("f32-odd",
                   "Terminating 3F2(-2n-1, a, d+1; 2a+1, d; 2) = (1-2a/d)/(2a+1) (3/2)_n/(a+3/2)_n",
                   Mode::exact_rational, {nat("n"), rat("a"), rat("d")},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions&) {
                     const unsigned n = p.natural("n");
                     const Rational value = f32_odd(n, p.rational("a"), p.rational("d"));
                     return exact_report(d, p, f32_lhs(2 * n + 1, p.rational("a"), p.rational("d")), value);
                   }));
  r.push_back(make("f21-even", "Berndt's terminating 2F1(-2n, a; 2a; 2) = (1/2)_n/(a+1/2)_n", Mode::exact_rational,
                   {nat("n"), rat("a")}, [](const IdentityDescriptor& d, const Params& p, const CheckOptions&) {
                     const unsigned n = p.natural("n");
                     const Rational value = f21_even(n, p.rational("a"));
                     return exact_report(d, p, f21_lhs(2 * n, p.rational("a")), value);
                   }));
  r.push_back(make("f21-odd", "Berndt's terminating 2F1(-2n-1, a; 2a; 2) = 0", Mode::exact_rational,
                   {nat("n"), rat("a")}, [](const IdentityDescriptor& d, const Params& p, const CheckOptions&) {
                     const unsigned n = p.natural("n");
                     const Rational value = f21_odd(n, p.rational("a"));
                     return exact_report(d, p, f21_lhs(2 * n + 1, p.rational("a")), value);
                   }));
  r.push_back(make("karlsson-minton",
                   "Karlsson-Minton type summation of (r+2)F(r+1)(a, b, (d+m); c, (d); 1) through the C_k coefficients",
                   Mode::numeric_bounded, {rat("a"), rat("b"), rat("c"), family_param()},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     const Rational a = p.rational("a"), b = p.rational("b"), c = p.rational("c");
                     const KMFamily family = p.family("family");
                     const SumValue rhs = karlsson_minton_rhs(a, b, c, family, precision(o));
                     const NumericValue lhs = eval_numeric(karlsson_minton_lhs(a, b, c, family), 1, numeric_options(o));
                     return numeric_report(d, p, lhs, rhs, o.digits);
                   }));
  r.push_back(make("entry9", "Ramanujan's Entry 9: sum (a)_k/((c)_k k) = psi(c) - psi(c-a)", Mode::numeric_bounded,
                   {rat("a"), rat("c")}, [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     const Rational a = p.rational("a"), c = p.rational("c");
                     const SumValue rhs = entry9(a, c, precision(o));
                     return numeric_report(d, p, scaled_lhs(entry9_lhs(a, c), o), rhs, o.digits);
                   }));
  r.push_back(make("entry9-ext", "Entry 9 with extra integral parameter differences (d+m, d)", Mode::numeric_bounded,
                   {rat("a"), rat("c"), family_param()},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     const Rational a = p.rational("a"), c = p.rational("c");
                     const KMFamily family = p.family("family");
                     const SumValue rhs = entry9_extended(a, c, family, precision(o));
                     return numeric_report(d, p, scaled_lhs(entry9_lhs(a, c, family), o), rhs, o.digits);
                   }));
  r.push_back(make("entry9-r1", "Extended Entry 9 for a single pair (d+m, d) with binomial coefficients written out",
                   Mode::numeric_bounded, {rat("a"), rat("c"), rat("d"), nat("m")},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     const Rational a = p.rational("a"), c = p.rational("c"), dd = p.rational("d");
                     const unsigned m = p.natural("m");
                     const SumValue rhs = entry9_r1(a, c, dd, m, precision(o));
                     return numeric_report(d, p, scaled_lhs(entry9_lhs(a, c, KMFamily({{dd, m}})), o), rhs, o.digits);
                   }));

  r.push_back(make("entry8", "Ramanujan's Entry 8: derivative sums at 0 and 1 with weights (a)_k/(2a)_k",
                   Mode::formal_series, {rat("a"), phi_param()},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     return series_report(d, p, entry8_check(p.rational("a"), p.phi("phi"), o.order));
                   }));
  r.push_back(make("entry20", "Ramanujan's Entry 20: derivative sums at 0 and 1 with weights (a)_k/(b)_k",
                   Mode::formal_series, {rat("a"), rat("b"), phi_param()},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     return series_report(d, p,
                                          entry20_check(p.rational("a"), p.rational("b"), p.phi("phi"), o.order));
                   }));
  r.push_back(make("theorem1", "Entry 20 with an extra (d+1, d) pair; right side uses f = d(b-a-1)/(d-a)",
                   Mode::formal_series, {rat("a"), rat("b"), rat("d"), phi_param()},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     return series_report(d, p,
                                          theorem1_check(p.rational("a"), p.rational("b"), p.rational("d"),
                                                         p.phi("phi"), o.order));
                   }));
  r.push_back(make("theorem2", "Entry 8 analogue with lower parameter 2a+1 and an extra (d+1, d) pair",
                   Mode::formal_series, {rat("a"), rat("d"), phi_param()},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     return series_report(d, p,
                                          theorem2_check(p.rational("a"), p.rational("d"), p.phi("phi"), o.order));
                   }));
  r.push_back(generating_descriptor(GeneratingId::eq31, "Exponential case: e^{-x} 2F2(a, d+1; 2a+1, d; 2x) as two 0F1 series"));
  r.push_back(generating_descriptor(GeneratingId::eq32, "Hyperbolic case: 3F4 at x^2 through cosh and sinh times 0F1 series"));
  r.push_back(generating_descriptor(GeneratingId::eq33,
                       "Power case: (1+z)^{-b} 3F2(a, b, d+1; 2a+1, d; 2z/(1+z)) as two 2F1 series in z^2"));
  r.push_back(generating_descriptor(GeneratingId::eq34, "Gaussian case: e^{x^2/4} 3F3 at -x^2 as two Hermite series"));
  r.push_back(generating_descriptor(GeneratingId::hermite_2f2_even, "Even Hermite series summed to e^{x^2/4} 2F2 at -x^2"));
  r.push_back(generating_descriptor(GeneratingId::hermite_2f2_odd, "Odd Hermite series summed to x e^{x^2/4} 2F2 at -x^2"));
  r.push_back(generating_descriptor(GeneratingId::contiguous_2f2, "Contiguous relation of 2F2 in the second lower parameter"));
  r.push_back(generating_descriptor(GeneratingId::closing_3f3,
                       "e^{x^2} 3F3 at -x^2 as a Hermite series with f = 2d(b-a-1)/(2d-a), k! included"));
  r.push_back(make("bessel-form", "0F1(-; a+1/2; x^2/4) as Gamma(a+1/2) (x/2)^{1/2-a} I_{a-1/2}(x)",
                   Mode::formal_series, {rat("a")},
                   [](const IdentityDescriptor& d, const Params& p, const CheckOptions& o) {
                     return series_report(d, p, bessel_form(p.rational("a"), o.order));
                   }));
  return r;
}

bool is_domain_kind(const std::string& kind) {
  static const std::set<std::string> kinds{"PoleError", "NotTerminatingError", "ConvergenceDomainError",
                                           "DomainError", "SingularParameterError"};
  return kinds.count(kind) > 0;
}

}  // namespace

const std::vector<IdentityDescriptor>& list_identities() {
  static const std::vector<IdentityDescriptor> registry = build_registry();
  return registry;
}

const IdentityDescriptor& find_identity(std::string_view id) {
  for (const auto& d : list_identities()) {
    if (d.id == id) return d;
  }
  throw UnknownIdentityError("unknown identity '" + std::string(id) + "'");
}

CheckReport run_check(std::string_view id, const Bindings& bindings, const CheckOptions& options) {
  const IdentityDescriptor& d = find_identity(id);
  if (options.digits < 20) throw ParseError("digits must be at least 20");
  const auto start = std::chrono::steady_clock::now();
  CheckReport report;
  try {
    report = d.runner(d, bindings, options);
  } catch (const Error& e) {
    if (is_domain_kind(e.kind())) throw ParamDomainError(e.kind(), e.what());
    throw;
  }
  const auto stop = std::chrono::steady_clock::now();
  report.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(stop - start).count();
  return report;
}

nlohmann::ordered_json to_json(const CheckReport& r) {
  nlohmann::ordered_json j;
  j["identity"] = r.identity;
  auto params = nlohmann::ordered_json::object();
  for (const auto& [name, value] : r.params) params[name] = value;
  j["params"] = params;
  j["mode"] = r.mode;
  j["verdict"] = r.passed ? "pass" : "fail";
  j["lhs"] = r.lhs;
  j["rhs"] = r.rhs;
  if (r.abs_diff) j["abs_diff"] = *r.abs_diff;
  if (r.bound) j["bound"] = *r.bound;
  if (r.first_bad_coeff) {
    j["first_bad_coeff"] = {{"index", r.first_bad_coeff->index},
                            {"lhs", r.first_bad_coeff->lhs},
                            {"rhs", r.first_bad_coeff->rhs}};
  }
  j["terms_used"] = r.terms_used;
  if (!r.details.empty()) {
    auto details = nlohmann::ordered_json::object();
    for (const auto& [name, value] : r.details) details[name] = value;
    j["details"] = details;
  }
  j["elapsed_ms"] = r.elapsed_ms;
  return j;
}

nlohmann::ordered_json to_json(const IdentityDescriptor& d) {
  nlohmann::ordered_json j;
  j["id"] = d.id;
  j["citation"] = d.citation;
  j["mode"] = std::string(mode_name(d.mode));
  auto params = nlohmann::ordered_json::array();
  for (const auto& p : d.params) {
    nlohmann::ordered_json entry{{"name", p.name}, {"kind", std::string(param_kind_name(p.kind))}};
    if (p.fallback) entry["default"] = *p.fallback;
    params.push_back(entry);
  }
  j["params"] = params;
  return j;
}

}  // namespace hypersum
