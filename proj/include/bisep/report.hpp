#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "bisep/deciders.hpp"
#include "bisep/serialize.hpp"

namespace bisep {

struct PropertyEntry {
  Verdict verdict = Verdict::Unknown;
  std::optional<std::uint64_t> value;  // counts
  CertificateKind certificate = CertificateKind::None;
  std::string reason;
  json witness;  // null when none
  double ms = 0;
};

struct ReportOptions {
  std::uint64_t budget = kDefaultBudget;
  bool witnesses = false;
  bool timing = true;
};

struct PropertyReport {
  std::string subject;
  std::vector<std::pair<std::string, PropertyEntry>> properties;  // in request order
  std::vector<std::string> implication_violations;

  const PropertyEntry* find(const std::string& name) const;
  json to_json(const ReportOptions& opt) const;
};

const std::vector<std::string>& extension_properties();
const std::vector<std::string>& bimodule_properties();
// Expands "all", "qf" and "fgp"; BadParams for names that do not apply.
std::vector<std::string> resolve_properties(const Subject& s, const std::vector<std::string>& requested);

PropertyEntry evaluate_property(const Subject& s, const std::string& name, const ReportOptions& opt);
PropertyReport evaluate(const Subject& s, const std::string& subject, const std::vector<std::string>& props,
                        const ReportOptions& opt);

// Checks the implications among whatever properties the report holds, plus
// "S semisimple and biseparable => Frobenius" for extensions over finite fields.
std::vector<std::string> implication_violations(const Subject& s, const PropertyReport& r);

}  // namespace bisep
