#include "camsim/config.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include <json.hpp>

#include "camsim/errors.hpp"

namespace camsim {

using nlohmann::json;
using ordered_json = nlohmann::ordered_json;

namespace {

// Accessor over one config section that knows the accepted key aliases and
// records which keys were consumed.
class Section {
public:
    Section(const json& obj, std::string name) : obj_(obj), name_(std::move(name)) {}

    const json* find(std::initializer_list<const char*> names) {
        for (const char* n : names) {
            auto it = obj_.find(n);
            if (it != obj_.end()) {
                consumed_.insert(n);
                return &*it;
            }
        }
        return nullptr;
    }

    const json& require(std::initializer_list<const char*> names) {
        if (const json* v = find(names)) return *v;
        throw Error(ErrorCode::MissingField,
                    name_ + "." + std::string(*names.begin()) + " is required");
    }

    std::string get_string(std::initializer_list<const char*> names) {
        const json& v = require(names);
        if (!v.is_string())
            throw Error(ErrorCode::BadValue,
                        name_ + "." + std::string(*names.begin()) + " must be a string");
        return v.get<std::string>();
    }

    int get_positive_int(std::initializer_list<const char*> names, int fallback) {
        const json* v = find(names);
        if (!v) return fallback;
        return as_positive_int(*v, *names.begin());
    }

    int require_positive_int(std::initializer_list<const char*> names) {
        return as_positive_int(require(names), *names.begin());
    }

    double get_number(std::initializer_list<const char*> names, double fallback) {
        const json* v = find(names);
        if (!v) return fallback;
        if (!v->is_number())
            throw Error(ErrorCode::BadValue,
                        name_ + "." + std::string(*names.begin()) + " must be a number");
        return v->get<double>();
    }

    bool get_bool(std::initializer_list<const char*> names, bool fallback) {
        const json* v = find(names);
        if (!v) return fallback;
        if (!v->is_boolean())
            throw Error(ErrorCode::BadValue,
                        name_ + "." + std::string(*names.begin()) + " must be a boolean");
        return v->get<bool>();
    }

    std::vector<std::string> unconsumed() const {
        std::vector<std::string> out;
        for (auto it = obj_.begin(); it != obj_.end(); ++it) {
            if (!consumed_.count(it.key())) out.push_back(name_ + "." + it.key());
        }
        return out;
    }

private:
    int as_positive_int(const json& v, const char* key) {
        if (!v.is_number_integer())
            throw Error(ErrorCode::BadValue,
                        name_ + "." + std::string(key) + " must be a positive integer");
        long long n = v.get<long long>();
        if (n < 1)
            throw Error(ErrorCode::BadValue, name_ + "." + std::string(key) + " must be >= 1, got " +
                                                 std::to_string(n));
        return static_cast<int>(n);
    }

    const json& obj_;
    std::string name_;
    std::set<std::string> consumed_;
};

const json kEmptyObject = json::object();

const json& section_or_empty(const json& doc, const char* name, bool required) {
    auto it = doc.find(name);
    if (it == doc.end()) {
        if (required)
            throw Error(ErrorCode::MissingField, std::string(name) + " section is required");
        return kEmptyObject;
    }
    if (!it->is_object())
        throw Error(ErrorCode::BadValue, std::string(name) + " must be an object");
    return *it;
}

}  // namespace

MatchSpec SimConfig::match_spec() const {
    MatchSpec m;
    m.type = app.match_type;
    if (app.match_type == MatchType::Best)
        m.k = static_cast<int>(std::llround(app.match_parameter));
    if (app.match_type == MatchType::Threshold) m.threshold = app.match_parameter;
    return m;
}

SimConfig parse_config(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorCode::SyntaxError, e.what());
    }
    if (!doc.is_object()) throw Error(ErrorCode::SyntaxError, "configuration must be a JSON object");

    SimConfig cfg;

    const json& app_obj = section_or_empty(doc, "application", true);
    Section app(app_obj, "application");
    cfg.app.distance_function =
        parse_distance_function(app.get_string({"distance_function"}), "application.distance_function");
    cfg.app.match_type = parse_match_type(app.get_string({"match_type"}), "application.match_type");
    cfg.app.data_bits = app.require_positive_int({"data_bits", "data_type"});
    double default_param = cfg.app.match_type == MatchType::Best ? 1.0 : 0.0;
    cfg.app.match_parameter = app.get_number({"match_parameter"}, default_param);
    if (cfg.app.match_type == MatchType::Exact) cfg.app.match_parameter = 0.0;

    const json& circ_obj = section_or_empty(doc, "circuit", true);
    Section circ(circ_obj, "circuit");
    cfg.circuit.rows = circ.require_positive_int({"rows", "row"});
    cfg.circuit.columns = circ.require_positive_int({"columns", "column"});
    cfg.circuit.cell_type = parse_cell_type(circ.get_string({"cell_type"}), "circuit.cell_type");
    if (const json* sc = circ.find({"sensing_circuit", "sensing_circuit_type"})) {
        if (!sc->is_string())
            throw Error(ErrorCode::BadValue, "circuit.sensing_circuit must be a string");
        cfg.circuit.sensing_circuit =
            parse_match_type(sc->get<std::string>(), "circuit.sensing_circuit");
    } else {
        cfg.circuit.sensing_circuit = cfg.app.match_type;
    }
    cfg.circuit.sensing_limit = circ.get_number({"sensing_limit"}, 0.0);

    const json& arch_obj = section_or_empty(doc, "architecture", false);
    Section arch(arch_obj, "architecture");
    cfg.arch.subarrays_per_array = arch.get_positive_int({"subarrays_per_array"}, 1);
    cfg.arch.arrays_per_mat = arch.get_positive_int({"arrays_per_mat"}, 1);
    cfg.arch.mats_per_bank = arch.get_positive_int({"mats_per_bank"}, 1);
    bool best = cfg.app.match_type == MatchType::Best;
    if (const json* hm = arch.find({"horizontal_merge", "horizontal_merge_type"})) {
        if (!hm->is_string())
            throw Error(ErrorCode::BadValue, "architecture.horizontal_merge must be a string");
        cfg.arch.horizontal_merge =
            parse_horizontal_merge(hm->get<std::string>(), "architecture.horizontal_merge");
    } else {
        cfg.arch.horizontal_merge = best ? HorizontalMergeType::Voting : HorizontalMergeType::And;
    }
    if (const json* vm = arch.find({"vertical_merge", "vertical_merge_type"})) {
        if (!vm->is_string())
            throw Error(ErrorCode::BadValue, "architecture.vertical_merge must be a string");
        cfg.arch.vertical_merge =
            parse_vertical_merge(vm->get<std::string>(), "architecture.vertical_merge");
    } else {
        cfg.arch.vertical_merge = best ? VerticalMergeType::Comparator : VerticalMergeType::Gather;
    }

    const json& dev_obj = section_or_empty(doc, "device", false);
    Section dev(dev_obj, "device");
    if (const json* dt = dev.find({"device_type"})) {
        if (!dt->is_string()) throw Error(ErrorCode::BadValue, "device.device_type must be a string");
        cfg.device.device_type = dt->get<std::string>();
    }
    cfg.device.variation_enabled = dev.get_bool({"variation_enabled"}, false);
    if (const json* vt = dev.find({"variation_type"})) {
        if (!vt->is_string())
            throw Error(ErrorCode::BadValue, "device.variation_type must be a string");
        cfg.device.variation_type =
            parse_variation_kind(vt->get<std::string>(), "device.variation_type");
    }
    if (const json* vs = dev.find({"variation_spec", "variation_specification"})) {
        if (!vs->is_string())
            throw Error(ErrorCode::BadValue, "device.variation_spec must be a string");
        cfg.device.variation_spec =
            parse_variation_source(vs->get<std::string>(), "device.variation_spec");
    }
    cfg.device.variation_std = dev.get_number({"variation_std"}, 0.0);
    if (const json* tp = dev.find({"empirical_table_path"})) {
        if (!tp->is_string())
            throw Error(ErrorCode::BadValue, "device.empirical_table_path must be a string");
        cfg.device.empirical_table_path = tp->get<std::string>();
    }
    if (const json* sd = dev.find({"seed"})) {
        if (!sd->is_number_integer() ||
            (!sd->is_number_unsigned() && sd->get<long long>() < 0))
            throw Error(ErrorCode::BadValue, "device.seed must be a non-negative integer");
        cfg.device.seed = sd->get<std::uint64_t>();
    }

    if (auto it = doc.find("strict_merge"); it != doc.end()) {
        if (!it->is_boolean()) throw Error(ErrorCode::BadValue, "strict_merge must be a boolean");
        cfg.strict_merge = it->get<bool>();
    }

    for (const auto& k : app.unconsumed()) cfg.unknown_keys.push_back(k);
    for (const auto& k : arch.unconsumed()) cfg.unknown_keys.push_back(k);
    for (const auto& k : circ.unconsumed()) cfg.unknown_keys.push_back(k);
    for (const auto& k : dev.unconsumed()) cfg.unknown_keys.push_back(k);
    static const std::set<std::string> top_known = {"application", "architecture", "circuit",
                                                    "device", "strict_merge"};
    for (auto it = doc.begin(); it != doc.end(); ++it) {
        if (!top_known.count(it.key())) cfg.unknown_keys.push_back(it.key());
    }
    std::sort(cfg.unknown_keys.begin(), cfg.unknown_keys.end());

    return cfg;
}

std::string serialize_config(const SimConfig& cfg) {
    ordered_json doc;
    doc["application"] = {
        {"distance_function", to_string(cfg.app.distance_function)},
        {"match_type", to_string(cfg.app.match_type)},
        {"match_parameter", cfg.app.match_parameter},
        {"data_bits", cfg.app.data_bits},
    };
    doc["architecture"] = {
        {"subarrays_per_array", cfg.arch.subarrays_per_array},
        {"arrays_per_mat", cfg.arch.arrays_per_mat},
        {"mats_per_bank", cfg.arch.mats_per_bank},
        {"horizontal_merge", to_string(cfg.arch.horizontal_merge)},
        {"vertical_merge", to_string(cfg.arch.vertical_merge)},
    };
    doc["circuit"] = {
        {"rows", cfg.circuit.rows},
        {"columns", cfg.circuit.columns},
        {"cell_type", to_string(cfg.circuit.cell_type)},
        {"sensing_circuit", to_string(cfg.circuit.sensing_circuit)},
        {"sensing_limit", cfg.circuit.sensing_limit},
    };
    ordered_json dev = {
        {"device_type", cfg.device.device_type},
        {"variation_enabled", cfg.device.variation_enabled},
        {"variation_type", to_string(cfg.device.variation_type)},
        {"variation_spec", to_string(cfg.device.variation_spec)},
        {"variation_std", cfg.device.variation_std},
        {"seed", cfg.device.seed},
    };
    if (!cfg.device.empirical_table_path.empty())
        dev["empirical_table_path"] = cfg.device.empirical_table_path;
    doc["device"] = std::move(dev);
    doc["strict_merge"] = cfg.strict_merge;
    return doc.dump(2) + "\n";
}

std::vector<Violation> validate(const SimConfig& cfg) {
    std::vector<Violation> out;
    auto error = [&](const std::string& code, const std::string& msg) {
        out.push_back({Severity::Error, code, msg});
    };
    auto warning = [&](const std::string& code, const std::string& msg) {
        out.push_back({Severity::Warning, code, msg});
    };

    if (cfg.app.data_bits > 16) {
        error("BadValue",
              "data_bits must be <= 16, got " + std::to_string(cfg.app.data_bits));
    }

    bool single_bit_cell =
        cfg.circuit.cell_type == CellType::BCAM || cfg.circuit.cell_type == CellType::TCAM;
    if (single_bit_cell && cfg.app.data_bits != 1) {
        error("CellBits", std::string("cell type supports 1 bit: ") +
                              to_string(cfg.circuit.cell_type) + " cannot store " +
                              std::to_string(cfg.app.data_bits) + "-bit data");
    }
    if (cfg.circuit.cell_type == CellType::MCAM && cfg.app.data_bits < 2) {
        error("CellBits", "mcam requires data_bits >= 2, got " + std::to_string(cfg.app.data_bits));
    }

    if (cfg.app.match_type != cfg.circuit.sensing_circuit) {
        error("SensingMismatch",
              std::string("sensing circuit (") + to_string(cfg.circuit.sensing_circuit) +
                  ") must realize the application match type (" + to_string(cfg.app.match_type) +
                  ")");
    }

    if (cfg.app.match_type == MatchType::Best) {
        double k = cfg.app.match_parameter;
        if (k < 1.0 || k != std::floor(k))
            error("BadValue", "match_parameter for best match must be an integer >= 1");
    }
    if (cfg.app.match_type == MatchType::Threshold && cfg.app.match_parameter < 0) {
        error("BadValue", "match_parameter (threshold) must be >= 0");
    }

    if (cfg.circuit.sensing_limit < 0) error("BadValue", "circuit.sensing_limit must be >= 0");

    if (cfg.device.variation_enabled) {
        if (cfg.device.variation_spec == VariationSource::Statistical &&
            cfg.device.variation_std < 0)
            error("BadValue", "device.variation_std must be >= 0");
        if (cfg.device.variation_spec == VariationSource::Experimental &&
            cfg.device.empirical_table_path.empty())
            error("MissingField",
                  "device.empirical_table_path is required for experimental variation");
    }

    if (cfg.app.distance_function == DistanceFunction::Hamming && cfg.app.data_bits > 1) {
        warning("HammingMultiBit",
                "hamming distance over multi-bit levels counts unequal dimensions");
    }

    for (const auto& key : cfg.unknown_keys) {
        warning("UnknownKey", "unrecognized configuration key: " + key);
    }

    return out;
}

bool has_errors(const std::vector<Violation>& violations) {
    return std::any_of(violations.begin(), violations.end(),
                       [](const Violation& v) { return v.severity == Severity::Error; });
}

}  // namespace camsim
