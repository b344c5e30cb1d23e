// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellsim/cli/config.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <utility>

namespace bellsim::cli {

using nlohmann::json;

namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};

[[noreturn]] void fail(const std::string& path, const std::string& message) {
    throw ConfigError((path.empty() ? std::string("<root>") : path) + ": " + message);
}

std::string join(const std::string& path, const std::string& key) {
    return path.empty() ? key : path + "." + key;
}

// Reads one JSON object, remembering which keys were consumed so that
// leftovers can be reported.
class ObjectReader {
  public:
    ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            fail(path_, "expected an object");
        }
    }

    const std::string& path() const { return path_; }
    std::string at(const std::string& key) const { return join(path_, key); }

    bool has(const std::string& key) const { return node_.contains(key); }

    const json* find(const std::string& key) {
        const auto it = node_.find(key);
        if (it == node_.end()) {
            return nullptr;
        }
        seen_.insert(key);
        return &*it;
    }

    const json& require(const std::string& key) {
        const json* value = find(key);
        if (value == nullptr) {
            fail(at(key), "missing required key");
        }
        return *value;
    }

    double number(const std::string& key) { return as_number(require(key), at(key)); }

    double number_or(const std::string& key, double fallback) {
        const json* value = find(key);
        return value == nullptr ? fallback : as_number(*value, at(key));
    }

    std::uint64_t unsigned_integer(const std::string& key) {
        return as_unsigned(require(key), at(key));
    }

    std::string string(const std::string& key) {
        const json& value = require(key);
        if (!value.is_string()) {
            fail(at(key), "expected a string");
        }
        return value.get<std::string>();
    }

    /// Rejects keys that were never read.
    void finish() const {
        for (const auto& item : node_.items()) {
            if (!seen_.contains(item.key())) {
                fail(at(item.key()), "unknown key");
            }
        }
    }

    static double as_number(const json& value, const std::string& path) {
        if (!value.is_number()) {
            fail(path, "expected a number");
        }
        const double x = value.get<double>();
        if (!std::isfinite(x)) {
            fail(path, "expected a finite number");
        }
        return x;
    }

    static std::uint64_t as_unsigned(const json& value, const std::string& path) {
        if (value.is_number_unsigned()) {
            return value.get<std::uint64_t>();
        }
        if (value.is_number_integer() && value.get<std::int64_t>() >= 0) {
            return static_cast<std::uint64_t>(value.get<std::int64_t>());
        }
        fail(path, "expected a non-negative integer");
    }

  private:
    const json& node_;
    std::string path_;
    std::set<std::string> seen_;
};

std::vector<double> number_list(const json& node, const std::string& path) {
    if (!node.is_array()) {
        fail(path, "expected an array of numbers");
    }
    std::vector<double> out;
    out.reserve(node.size());
    for (std::size_t i = 0; i < node.size(); ++i) {
        out.push_back(ObjectReader::as_number(node[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

std::vector<double> linear_range(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    const double from = r.number("from");
    const double to = r.number("to");
    const std::uint64_t points = r.unsigned_integer("points");
    r.finish();
    if (points == 0) {
        fail(path, "empty range");
    }
    if (points == 1) {
        return {from};
    }
    std::vector<double> out;
    for (std::uint64_t i = 0; i < points; ++i) {
        const double t = static_cast<double>(i) / static_cast<double>(points - 1);
        out.push_back(i + 1 == points ? to : from + t * (to - from));
    }
    return out;
}

double degrees_to_radians(double deg) { return deg * (kPi / 180.0); }

// "<stem>_deg" or "<stem>_rad"; exactly one must be present unless optional.
std::optional<double> angle_value(ObjectReader& r, const std::string& stem, bool required) {
    const bool deg = r.has(stem + "_deg");
    const bool rad = r.has(stem + "_rad");
    if (deg && rad) {
        fail(r.at(stem + "_deg"), "give " + stem + "_deg or " + stem + "_rad, not both");
    }
    if (deg) {
        return degrees_to_radians(r.number(stem + "_deg"));
    }
    if (rad) {
        return r.number(stem + "_rad");
    }
    if (required) {
        fail(r.at(stem + "_deg"), "missing required key (or " + stem + "_rad)");
    }
    return std::nullopt;
}

Angle to_angle(double radians, const std::string& path) {
    try {
        return Angle::from_radians(radians);
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
}

ArmTarget parse_arm(const json& node, const std::string& path) {
    if (!node.is_string()) {
        fail(path, "expected one of both, a, b");
    }
    const auto s = node.get<std::string>();
    if (s == "both") return ArmTarget::Both;
    if (s == "a") return ArmTarget::A;
    if (s == "b") return ArmTarget::B;
    fail(path, "expected one of both, a, b; got '" + s + "'");
}

std::string arm_name(ArmTarget arm) {
    switch (arm) {
        case ArmTarget::A:
            return "a";
        case ArmTarget::B:
            return "b";
        case ArmTarget::Both:
            break;
    }
    return "both";
}

Efficiency parse_efficiency(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    const std::string family = r.string("family");
    Efficiency out;
    if (family == "uniform") {
        out = UniformEfficiency{r.number_or("eta0", 1.0)};
    } else if (family == "sin_dip") {
        out = SinDipEfficiency{r.number("eps"), r.number_or("p", 1.0)};
    } else if (family == "malus_power") {
        out = MalusPowerEfficiency{r.number("p")};
    } else {
        fail(r.at("family"), "unknown efficiency family '" + family + "'");
    }
    r.finish();
    return out;
}

Crosstalk parse_crosstalk(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    const std::string family = r.string("family");
    Crosstalk out;
    if (family == "none") {
        out = NoCrosstalk{};
    } else if (family == "uniform") {
        out = UniformCrosstalk{r.number("c")};
    } else if (family == "sin_peak") {
        out = SinPeakCrosstalk{r.number("c"), r.number_or("q", 1.0)};
    } else {
        fail(r.at("family"), "unknown crosstalk family '" + family + "'");
    }
    r.finish();
    return out;
}

DetectionProfile parse_profile(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    DetectionProfile profile;
    if (const json* e = r.find("efficiency")) {
        profile.efficiency = parse_efficiency(*e, r.at("efficiency"));
    }
    if (const json* x = r.find("crosstalk")) {
        profile.crosstalk = parse_crosstalk(*x, r.at("crosstalk"));
    }
    r.finish();
    try {
        profile.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return profile;
}

// Either one {efficiency, crosstalk} shared by both arms, or {"a": .., "b": ..}.
std::pair<DetectionProfile, DetectionProfile> parse_detection(const json& node, const std::string& path) {
    if (node.is_object() && (node.contains("a") || node.contains("b"))) {
        ObjectReader r(node, path);
        DetectionProfile a;
        DetectionProfile b;
        if (const json* n = r.find("a")) a = parse_profile(*n, r.at("a"));
        if (const json* n = r.find("b")) b = parse_profile(*n, r.at("b"));
        r.finish();
        return {a, b};
    }
    const DetectionProfile shared = parse_profile(node, path);
    return {shared, shared};
}

SourceSpec parse_source(const json* node, Model model, const std::string& path) {
    SourceSpec source;
    source.model = model;
    if (node == nullptr) {
        return source;
    }
    if (node->is_string()) {
        if (node->get<std::string>() != "uniform") {
            fail(path, "a string source must be \"uniform\"");
        }
    } else {
        ObjectReader r(*node, path);
        const std::string type = r.string("type");
        if (type == "fixed") {
            source.distribution = FixedTheta{to_angle(*angle_value(r, "theta", true), r.at("theta"))};
        } else if (type != "uniform") {
            fail(r.at("type"), "expected uniform or fixed, got '" + type + "'");
        }
        r.finish();
    }
    try {
        source.validate();
    } catch (const std::invalid_argument& e) {
        fail(path, e.what());
    }
    return source;
}

Model parse_model(const std::string& name, const std::string& path) {
    if (name == "classical") return Model::Classical;
    if (name == "quantum") return Model::Quantum;
    fail(path, "expected classical or quantum, got '" + name + "'");
}

SweepSpec parse_sweep(const json& node, const std::string& path, Model model) {
    ObjectReader r(node, path);
    SweepSpec sweep;
    const std::string axis = r.string("axis");
    const bool angular = axis == "delta" || axis == "theta";
    if (axis == "delta") {
        sweep.axis = SweepAxis::Delta;
    } else if (axis == "theta") {
        sweep.axis = SweepAxis::Theta;
        if (model == Model::Quantum) {
            fail(r.at("axis"), "a theta sweep needs the classical model");
        }
    } else if (axis == "parameter") {
        sweep.axis = SweepAxis::Parameter;
        sweep.parameter = r.string("parameter");
        if (const json* arm = r.find("arm")) {
            sweep.arm = parse_arm(*arm, r.at("arm"));
        }
    } else {
        fail(r.at("axis"), "expected delta, theta or parameter, got '" + axis + "'");
    }

    std::vector<std::pair<std::string, double>> sources;
    if (angular) {
        sources = {{"values_deg", kPi / 180.0}, {"values_rad", 1.0}, {"range_deg", kPi / 180.0},
                   {"range_rad", 1.0}};
    } else {
        sources = {{"values", 1.0}, {"range", 1.0}};
    }
    int given = 0;
    for (const auto& [key, scale] : sources) {
        const json* v = r.find(key);
        if (v == nullptr) {
            continue;
        }
        ++given;
        const bool is_range = key.starts_with("range");
        for (double x : is_range ? linear_range(*v, r.at(key)) : number_list(*v, r.at(key))) {
            sweep.values.push_back(x * scale);
        }
    }
    if (given == 0) {
        fail(path, angular ? "missing required key values_deg (or values_rad, range_deg, range_rad)"
                           : "missing required key values (or range)");
    }
    if (given > 1) {
        fail(path, "give exactly one list or range of sweep values");
    }
    if (sweep.values.empty()) {
        fail(path, "empty sweep axis");
    }
    r.finish();
    return sweep;
}

RunDocument parse_run(const json& root) {
    ObjectReader r(root, "");
    RunDocument doc;
    ExperimentConfig& cfg = doc.experiment;

    const Model model = parse_model(r.string("model"), "model");
    cfg.source = parse_source(r.find("source"), model, "source");

    const bool deg = r.has("angles_deg");
    const bool rad = r.has("angles_rad");
    if (deg && rad) {
        fail("angles_deg", "give angles_deg or angles_rad, not both");
    }
    if (!deg && !rad) {
        fail("angles_deg", "missing required key (or angles_rad)");
    }
    const std::string angles_key = deg ? "angles_deg" : "angles_rad";
    const double scale = deg ? kPi / 180.0 : 1.0;
    {
        ObjectReader angles(r.require(angles_key), angles_key);
        cfg.analyzer_a = to_angle(angles.number("a") * scale, angles.at("a"));
        cfg.analyzer_b = to_angle(angles.number("b") * scale, angles.at("b"));
        if (angles.has("a2")) doc.analyzer_a2 = to_angle(angles.number("a2") * scale, angles.at("a2"));
        if (angles.has("b2")) doc.analyzer_b2 = to_angle(angles.number("b2") * scale, angles.at("b2"));
        angles.finish();
    }

    cfg.n_pairs = r.unsigned_integer("n_pairs");
    if (cfg.n_pairs < 1) {
        fail("n_pairs", "must be at least 1");
    }
    if (const json* seed = r.find("seed")) {
        cfg.seed = ObjectReader::as_unsigned(*seed, "seed");
    }
    if (const json* detection = r.find("detection")) {
        std::tie(cfg.detection_a, cfg.detection_b) = parse_detection(*detection, "detection");
    }
    cfg.quantum_baseline_eta = r.number_or("quantum_baseline_eta", 1.0);
    if (!(cfg.quantum_baseline_eta >= 0.0 && cfg.quantum_baseline_eta <= 1.0)) {
        fail("quantum_baseline_eta", "must lie in [0, 1]");
    }
    if (const json* sweep = r.find("sweep")) {
        doc.sweep = parse_sweep(*sweep, "sweep", model);
    }
    r.finish();

    if (doc.sweep && doc.sweep->axis == SweepAxis::Parameter) {
        for (const double v : doc.sweep->values) {
            for (const auto* profile : {&cfg.detection_a, &cfg.detection_b}) {
                DetectionProfile probe = *profile;
                try {
                    set_profile_parameter(probe, doc.sweep->parameter, v);
                    probe.validate();
                } catch (const std::invalid_argument& e) {
                    fail("sweep.values", e.what());
                }
            }
        }
    }
    return doc;
}

ParameterAxis parse_axis(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    ParameterAxis axis;
    const std::string name = r.string("name");
    ArmTarget arm = ArmTarget::Both;
    if (const json* a = r.find("arm")) {
        arm = parse_arm(*a, r.at("arm"));
    }
    if (const json* values = r.find("values")) {
        if (r.has("min") || r.has("max") || r.has("resolution")) {
            fail(path, "give values or min/max/resolution, not both");
        }
        axis = ParameterAxis{name, arm, number_list(*values, r.at("values"))};
        if (axis.values.empty()) {
            fail(r.at("values"), "empty parameter range");
        }
    } else {
        const double min = r.number("min");
        const double max = r.number("max");
        const std::uint64_t resolution = r.unsigned_integer("resolution");
        try {
            axis = ParameterAxis::linear(name, min, max, resolution, arm);
        } catch (const std::invalid_argument& e) {
            fail(path, e.what());
        }
    }
    r.finish();
    return axis;
}

ChshSettings parse_chsh_angles(ObjectReader& parent, const std::string& stem) {
    const bool deg = parent.has(stem + "_deg");
    const bool rad = parent.has(stem + "_rad");
    if (deg && rad) {
        fail(parent.at(stem + "_deg"), "give degrees or radians, not both");
    }
    if (!deg && !rad) {
        return ChshSettings::standard();
    }
    const std::string key = stem + (deg ? "_deg" : "_rad");
    const double scale = deg ? kPi / 180.0 : 1.0;
    ObjectReader r(parent.require(key), parent.at(key));
    ChshSettings s;
    s.a = to_angle(r.number("a") * scale, r.at("a"));
    s.a2 = to_angle(r.number("a2") * scale, r.at("a2"));
    s.b = to_angle(r.number("b") * scale, r.at("b"));
    s.b2 = to_angle(r.number("b2") * scale, r.at("b2"));
    r.finish();
    return s;
}

SearchObjective parse_objective(const json& node, const std::string& path) {
    ObjectReader r(node, path);
    const std::string type = r.string("type");
    SearchObjective out;
    if (type == "max_parallel_r") {
        const auto setting = angle_value(r, "setting", false);
        out = MaxParallelR{to_angle(setting.value_or(0.0), r.at("setting"))};
    } else if (type == "max_chsh") {
        out = MaxChsh{parse_chsh_angles(r, "angles")};
    } else if (type == "match_quantum_curve") {
        const bool deg = r.has("settings_deg");
        if (deg == r.has("settings_rad")) {
            fail(path, "give exactly one of settings_deg, settings_rad");
        }
        const std::string key = deg ? "settings_deg" : "settings_rad";
        const double scale = deg ? kPi / 180.0 : 1.0;
        const json& list = r.require(key);
        if (!list.is_array() || list.empty()) {
            fail(r.at(key), "expected a non-empty array of [a, b] pairs");
        }
        MatchQuantumCurve curve;
        for (std::size_t i = 0; i < list.size(); ++i) {
            const std::string at = r.at(key) + "[" + std::to_string(i) + "]";
            const std::vector<double> pair = number_list(list[i], at);
            if (pair.size() != 2) {
                fail(at, "expected [a, b]");
            }
            curve.grid.emplace_back(to_angle(pair[0] * scale, at), to_angle(pair[1] * scale, at));
        }
        out = std::move(curve);
    } else {
        fail(r.at("type"), "expected max_parallel_r, max_chsh or match_quantum_curve, got '" + type + "'");
    }
    r.finish();
    return out;
}

SearchDocument parse_search(const json& root) {
    ObjectReader top(root, "");
    ObjectReader r(top.require("search"), "search");
    top.finish();

    SearchDocument doc;
    SearchSpace& space = doc.space;
    if (r.has("profile") && (r.has("profile_a") || r.has("profile_b"))) {
        fail(r.at("profile"), "give profile or profile_a/profile_b, not both");
    }
    if (const json* shared = r.find("profile")) {
        space.profile_a = space.profile_b = parse_profile(*shared, r.at("profile"));
    } else {
        space.profile_a = parse_profile(r.require("profile_a"), r.at("profile_a"));
        space.profile_b = parse_profile(r.require("profile_b"), r.at("profile_b"));
    }

    const json& axes = r.require("axes");
    if (!axes.is_array()) {
        fail(r.at("axes"), "expected an array");
    }
    if (axes.empty()) {
        fail(r.at("axes"), "empty search space");
    }
    for (std::size_t i = 0; i < axes.size(); ++i) {
        space.axes.push_back(parse_axis(axes[i], r.at("axes") + "[" + std::to_string(i) + "]"));
    }

    if (const json* objective = r.find("objective")) {
        space.objective = parse_objective(*objective, r.at("objective"));
    }
    if (const json* nodes = r.find("quadrature_nodes")) {
        space.quadrature_nodes = ObjectReader::as_unsigned(*nodes, r.at("quadrature_nodes"));
    }
    if (const json* confirm = r.find("confirm")) {
        ObjectReader c(*confirm, r.at("confirm"));
        doc.confirm_pairs = c.unsigned_integer("n_pairs");
        if (*doc.confirm_pairs < 1) {
            fail(c.at("n_pairs"), "must be at least 1");
        }
        if (const json* seed = c.find("seed")) {
            doc.confirm_seed = ObjectReader::as_unsigned(*seed, c.at("seed"));
        }
        c.finish();
    }
    r.finish();

    try {
        space.validate();
        for (std::size_t i = 0; i < space.axes.size(); ++i) {
            for (const double v : space.axes[i].values) {
                std::vector<double> params;
                for (std::size_t j = 0; j < space.axes.size(); ++j) {
                    params.push_back(j == i ? v : space.axes[j].values.front());
                }
                profiles_at(space, params);
            }
        }
    } catch (const std::invalid_argument& e) {
        fail("search", e.what());
    }
    return doc;
}

json parse_json(std::string_view text) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("<root>: malformed JSON: ") + e.what());
    }
}

json angle_json(Angle a) { return a.radians(); }

}  // namespace

ParsedConfig parse_config(std::string_view text) {
    const json root = parse_json(text);
    if (root.is_object() && root.contains("search")) {
        return parse_search(root);
    }
    return parse_run(root);
}

RunDocument parse_run_document(std::string_view text) {
    ParsedConfig parsed = parse_config(text);
    if (auto* run = std::get_if<RunDocument>(&parsed)) {
        return std::move(*run);
    }
    throw ConfigError("search: expected a run document, got a search document");
}

SearchDocument parse_search_document(std::string_view text) {
    ParsedConfig parsed = parse_config(text);
    if (auto* search = std::get_if<SearchDocument>(&parsed)) {
        return std::move(*search);
    }
    throw ConfigError("search: missing required key");
}

json render_profile(const DetectionProfile& profile) {
    json efficiency = std::visit(
        Overloaded{
            [](const UniformEfficiency& e) { return json{{"family", "uniform"}, {"eta0", e.eta0}}; },
            [](const SinDipEfficiency& e) {
                return json{{"family", "sin_dip"}, {"eps", e.eps}, {"p", e.p}};
            },
            [](const MalusPowerEfficiency& e) { return json{{"family", "malus_power"}, {"p", e.p}}; },
        },
        profile.efficiency);
    json crosstalk = std::visit(
        Overloaded{
            [](const NoCrosstalk&) { return json{{"family", "none"}}; },
            [](const UniformCrosstalk& x) { return json{{"family", "uniform"}, {"c", x.c}}; },
            [](const SinPeakCrosstalk& x) {
                return json{{"family", "sin_peak"}, {"c", x.c}, {"q", x.q}};
            },
        },
        profile.crosstalk);
    return json{{"efficiency", std::move(efficiency)}, {"crosstalk", std::move(crosstalk)}};
}

json render(const RunDocument& document) {
    const ExperimentConfig& cfg = document.experiment;
    json out;
    out["model"] = cfg.source.model == Model::Classical ? "classical" : "quantum";
    if (const auto* fixed = std::get_if<FixedTheta>(&cfg.source.distribution)) {
        out["source"] = json{{"type", "fixed"}, {"theta_rad", angle_json(fixed->theta)}};
    } else {
        out["source"] = json{{"type", "uniform"}};
    }
    json angles{{"a", angle_json(cfg.analyzer_a)}, {"b", angle_json(cfg.analyzer_b)}};
    if (document.analyzer_a2) angles["a2"] = angle_json(*document.analyzer_a2);
    if (document.analyzer_b2) angles["b2"] = angle_json(*document.analyzer_b2);
    out["angles_rad"] = std::move(angles);
    out["n_pairs"] = cfg.n_pairs;
    out["seed"] = cfg.seed;
    out["detection"] = json{{"a", render_profile(cfg.detection_a)}, {"b", render_profile(cfg.detection_b)}};
    out["quantum_baseline_eta"] = cfg.quantum_baseline_eta;
    if (document.sweep) {
        const SweepSpec& s = *document.sweep;
        json sweep;
        switch (s.axis) {
            case SweepAxis::Delta:
                sweep = json{{"axis", "delta"}, {"values_rad", s.values}};
                break;
            case SweepAxis::Theta:
                sweep = json{{"axis", "theta"}, {"values_rad", s.values}};
                break;
            case SweepAxis::Parameter:
                sweep = json{{"axis", "parameter"},
                             {"parameter", s.parameter},
                             {"arm", arm_name(s.arm)},
                             {"values", s.values}};
                break;
        }
        out["sweep"] = std::move(sweep);
    }
    return out;
}

json render(const SearchDocument& document) {
    const SearchSpace& space = document.space;
    json search;
    search["profile_a"] = render_profile(space.profile_a);
    search["profile_b"] = render_profile(space.profile_b);
    json axes = json::array();
    for (const ParameterAxis& axis : space.axes) {
        axes.push_back(json{{"name", axis.name}, {"arm", arm_name(axis.arm)}, {"values", axis.values}});
    }
    search["axes"] = std::move(axes);
    search["objective"] = std::visit(
        Overloaded{
            [](const MaxParallelR& o) {
                return json{{"type", "max_parallel_r"}, {"setting_rad", angle_json(o.setting)}};
            },
            [](const MaxChsh& o) {
                return json{{"type", "max_chsh"},
                            {"angles_rad",
                             {{"a", angle_json(o.settings.a)},
                              {"a2", angle_json(o.settings.a2)},
                              {"b", angle_json(o.settings.b)},
                              {"b2", angle_json(o.settings.b2)}}}};
            },
            [](const MatchQuantumCurve& o) {
                json grid = json::array();
                for (const auto& [a, b] : o.grid) {
                    grid.push_back(json::array({angle_json(a), angle_json(b)}));
                }
                return json{{"type", "match_quantum_curve"}, {"settings_rad", std::move(grid)}};
            },
        },
        space.objective);
    search["quadrature_nodes"] = space.quadrature_nodes;
    if (document.confirm_pairs) {
        search["confirm"] = json{{"n_pairs", *document.confirm_pairs}, {"seed", document.confirm_seed}};
    }
    return json{{"search", std::move(search)}};
}

}  // namespace bellsim::cli
