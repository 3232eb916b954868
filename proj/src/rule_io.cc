#include "qca/rule_io.h"

#include "qca/errors.h"

namespace qca {

nlohmann::json amplitude_to_json(Amplitude a) {
    return nlohmann::json::array({a.real(), a.imag()});
}

Amplitude amplitude_from_json(const nlohmann::json &j, const std::string &where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
        throw InputError(where + ": expected an [re, im] pair of numbers, got " + j.dump());
    }
    return {j[0].get<double>(), j[1].get<double>()};
}

nlohmann::json rule_to_json(const RuleTable &rule) {
    nlohmann::json amps = nlohmann::json::object();
    for (size_t c = 0; c < rule.config_count(); c++) {
        nlohmann::json vec = nlohmann::json::array();
        for (Amplitude a : rule.vector(c)) {
            vec.push_back(amplitude_to_json(a));
        }
        amps[rule.config(c).str()] = std::move(vec);
    }
    return {{"q", rule.q()}, {"k", rule.k()}, {"tolerance", rule.tolerance()}, {"amplitudes", std::move(amps)}};
}

static int require_int(const nlohmann::json &j, const char *field) {
    if (!j.contains(field)) {
        throw InputError(std::string("missing field \"") + field + "\"");
    }
    const auto &v = j[field];
    if (!v.is_number_integer()) {
        throw InputError(std::string("field \"") + field + "\" must be an integer");
    }
    return v.get<int>();
}

RuleTable rule_from_json(const nlohmann::json &j, std::optional<double> tolerance_override) {
    if (!j.is_object()) {
        throw InputError("rule file must hold a JSON object");
    }
    int q = require_int(j, "q");
    int k = require_int(j, "k");
    if (q < 2 || q > 36) {
        throw InputError("field \"q\" must be in [2, 36]");
    }
    if (k < 1 || ipow(q, k) > (size_t{1} << 24)) {
        throw InputError("field \"k\" out of range");
    }
    double tolerance = kDefaultTolerance;
    if (j.contains("tolerance")) {
        if (!j["tolerance"].is_number() || !(j["tolerance"].get<double>() > 0)) {
            throw InputError("field \"tolerance\" must be a positive number");
        }
        tolerance = j["tolerance"].get<double>();
    }
    if (tolerance_override) {
        tolerance = *tolerance_override;
    }
    if (!j.contains("amplitudes") || !j["amplitudes"].is_object()) {
        throw InputError("field \"amplitudes\" must be an object keyed by configuration strings");
    }
    const auto &amps = j["amplitudes"];
    size_t count = ipow(q, k);
    std::vector<Amplitude> data(count * q);
    std::vector<bool> filled(count, false);
    for (const auto &[key, value] : amps.items()) {
        std::string where = "amplitudes[\"" + key + "\"]";
        LocalConfig config;
        try {
            config = LocalConfig::parse(q, key);
        } catch (const InputError &e) {
            throw InputError(where + ": " + e.what());
        }
        if (config.size() != k) {
            throw InputError(where + ": key must have length k=" + std::to_string(k));
        }
        if (!value.is_array() || static_cast<int>(value.size()) != q) {
            throw InputError(where + ": expected an array of q=" + std::to_string(q) + " amplitudes");
        }
        size_t c = config.index();
        for (int i = 0; i < q; i++) {
            data[c * q + i] = amplitude_from_json(value[i], where + "[" + std::to_string(i) + "]");
        }
        filled[c] = true;
    }
    for (size_t c = 0; c < count; c++) {
        if (!filled[c]) {
            throw InputError("amplitudes: missing key \"" + LocalConfig::from_index(q, k, c).str() + "\"");
        }
    }
    return RuleTable(q, k, std::move(data), tolerance);
}

RuleTable parse_rule(const std::string &text, std::optional<double> tolerance_override) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error &e) {
        size_t line = 1;
        size_t column = 1;
        for (size_t p = 0; p + 1 < e.byte && p < text.size(); p++) {
            if (text[p] == '\n') {
                line++;
                column = 1;
            } else {
                column++;
            }
        }
        throw InputError("JSON syntax error at line " + std::to_string(line) + ", column " + std::to_string(column));
    }
    return rule_from_json(j, tolerance_override);
}

}  // namespace qca
