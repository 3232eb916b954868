#ifndef QCA_RULE_IO_H
#define QCA_RULE_IO_H

#include <istream>
#include <optional>
#include <string>

#include "json.hpp"
#include "qca/rule.h"

namespace qca {

/// {"q": 2, "k": 2, "tolerance": 1e-9, "amplitudes": {"00": [[1, 0], [0, 0]], ...}}
nlohmann::json rule_to_json(const RuleTable &rule);

/// Throws InputError naming the offending field. `tolerance_override` wins over the file.
RuleTable rule_from_json(const nlohmann::json &j, std::optional<double> tolerance_override = std::nullopt);

/// Parses text, reporting JSON syntax errors with line and column.
RuleTable parse_rule(const std::string &text, std::optional<double> tolerance_override = std::nullopt);

nlohmann::json amplitude_to_json(Amplitude a);
Amplitude amplitude_from_json(const nlohmann::json &j, const std::string &where);

}  // namespace qca

#endif
