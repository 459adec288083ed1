#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "hjq/builtin_models.hpp"
#include "hjq/report.hpp"

#include "json.hpp"

#include <fstream>
#include <regex>
#include <sstream>
#include <string>
#include <vector>

using nlohmann::json;

namespace {

json load_schema() {
    std::ifstream in(HJQ_SCHEMA_PATH);
    REQUIRE(in.good());
    return json::parse(in);
}

bool type_matches(const json& value, const std::string& t) {
    if (t == "object") return value.is_object();
    if (t == "array") return value.is_array();
    if (t == "string") return value.is_string();
    if (t == "integer") return value.is_number_integer() || value.is_number_unsigned();
    if (t == "number") return value.is_number();
    if (t == "boolean") return value.is_boolean();
    if (t == "null") return value.is_null();
    return false;
}

// Checks the subset of JSON Schema draft-07 the report schema uses: type
// (single name or union), enum, pattern, required, properties,
// additionalProperties given as a schema, and single-schema items.
void check_schema(const json& value, const json& schema, const std::string& where,
                  std::vector<std::string>& errors) {
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) {
            ok = type_matches(value, t.get<std::string>());
        } else {
            for (const auto& alt : t) ok = ok || type_matches(value, alt.get<std::string>());
        }
        if (!ok) {
            errors.push_back(where + ": unexpected type");
            return;
        }
    }
    if (schema.contains("enum")) {
        bool ok = false;
        for (const auto& alt : schema["enum"]) ok = ok || (alt == value);
        if (!ok) errors.push_back(where + ": value not in enum");
    }
    if (schema.contains("pattern") && value.is_string()) {
        std::regex re(schema["pattern"].get<std::string>());
        if (!std::regex_search(value.get<std::string>(), re))
            errors.push_back(where + ": pattern mismatch");
    }
    if (value.is_object()) {
        if (schema.contains("required"))
            for (const auto& key : schema["required"])
                if (!value.contains(key.get<std::string>()))
                    errors.push_back(where + ": missing required key " + key.get<std::string>());
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        for (auto it = value.begin(); it != value.end(); ++it) {
            if (props && props->contains(it.key())) {
                check_schema(it.value(), (*props)[it.key()], where + "." + it.key(), errors);
            } else if (schema.contains("additionalProperties") &&
                       schema["additionalProperties"].is_object()) {
                check_schema(it.value(), schema["additionalProperties"], where + "." + it.key(),
                             errors);
            }
        }
    }
    if (value.is_array() && schema.contains("items")) {
        std::size_t i = 0;
        for (const auto& element : value)
            check_schema(element, schema["items"], where + "[" + std::to_string(i++) + "]",
                         errors);
    }
}

std::vector<std::string> validate(const json& value, const json& schema) {
    std::vector<std::string> errors;
    check_schema(value, schema, "$", errors);
    return errors;
}

hjq::AnalysisReport analyze_builtin(const std::string& name) {
    hjq::BuiltinModel b = hjq::builtin(name);
    return hjq::analyze_model(b.definition, "builtin:" + name);
}

} // namespace

TEST_CASE("fnv1a64 matches the published reference vectors") {
    CHECK(hjq::fnv1a64("") == 0xcbf29ce484222325ull);
    CHECK(hjq::fnv1a64("a") == 0xaf63dc4c8601ec8cull);
    CHECK(hjq::fnv1a64("foobar") == 0x85944171f73967e8ull);

    CHECK(hjq::content_hash("") == "fnv1a64:cbf29ce484222325");
    CHECK(hjq::content_hash("foobar") == "fnv1a64:85944171f73967e8");
    std::string h = hjq::content_hash("model frw");
    CHECK(h.size() == 8 + 16);
    CHECK(h.rfind("fnv1a64:", 0) == 0);
    for (std::size_t i = 8; i < h.size(); ++i) {
        bool hex = (h[i] >= '0' && h[i] <= '9') || (h[i] >= 'a' && h[i] <= 'f');
        CHECK(hex);
    }
}

TEST_CASE("reports are byte-identical across repeated runs") {
    hjq::AnalysisReport a = analyze_builtin("frw_lambda");
    hjq::AnalysisReport b = analyze_builtin("frw_lambda");
    CHECK(hjq::report_json(a) == hjq::report_json(b));
    CHECK(hjq::report_text(a) == hjq::report_text(b));

    hjq::AnalysisReport c = analyze_builtin("coupled_parameter");
    hjq::AnalysisReport d = analyze_builtin("coupled_parameter");
    CHECK(hjq::report_json(c) == hjq::report_json(d));
    CHECK(hjq::report_text(c) == hjq::report_text(d));
}

TEST_CASE("text report for an integrable model") {
    hjq::AnalysisReport r = analyze_builtin("frw");
    std::string text = hjq::report_text(r);
    CHECK(text.find("model: frw\n") != std::string::npos);
    CHECK(text.find("content hash: " + hjq::content_hash("builtin:frw") + "\n") !=
          std::string::npos);
    CHECK(text.find("tool: hjq 1.0.0\n") != std::string::npos);
    CHECK(text.find("hessian rank: 1\n") != std::string::npos);
    CHECK(text.find("expressible coordinates: a\n") != std::string::npos);
    CHECK(text.find("parameter coordinates: N\n") != std::string::npos);
    CHECK(text.find("pivot denominators: N\n") != std::string::npos);
    CHECK(text.find("H_0 = -N*p_a^2/(12*a)\n") != std::string::npos);
    CHECK(text.find("H_N = 0\n") != std::string::npos);
    CHECK(text.find("closure: integrable\n") != std::string::npos);
    CHECK(text.find("generation 1: H_1 = p_a^2/(12*a)   [H'_0, H'_N]\n") != std::string::npos);
    CHECK(text.find("independent parameters: tau N\n") != std::string::npos);
    CHECK(text.find("forced by") == std::string::npos);
    CHECK(text.find("numeric probing") == std::string::npos);
    CHECK(text.find("path integral:\n") != std::string::npos);
    CHECK(text.find("measure comparison:\n") != std::string::npos);
    CHECK(text.find("  canonical: ") != std::string::npos);
    CHECK(text.find("  Faddeev-Popov: ") != std::string::npos);
    CHECK(text.find("  Fradkin-Vilkovisky: ") != std::string::npos);
}

TEST_CASE("text report for a parameter-fixing model carries the probe line") {
    hjq::AnalysisReport r = analyze_builtin("coupled_parameter");
    std::string text = hjq::report_text(r);
    CHECK(text.find("closure: parameter-fixing\n") != std::string::npos);
    CHECK(text.find("dy forced by [p_x, H'_y] = 1 "
                    "(origin pair: generation-1 constraint p_x, H'_y)\n") != std::string::npos);
    CHECK(text.find("independent parameters: tau\n") != std::string::npos);
    CHECK(text.find("path integral:") == std::string::npos);
}

TEST_CASE("the probe note appears when a zero decision was probabilistic") {
    hjq::AnalysisReport r = analyze_builtin("oscillator2d");
    CHECK(hjq::report_text(r).find("numeric probing") == std::string::npos);
    r.closure.used_probabilistic_zero = true;
    CHECK(hjq::report_text(r).find(
              "note: some zero decisions relied on numeric probing\n") != std::string::npos);
    json j = json::parse(hjq::report_json(r));
    CHECK(j["closure"]["used_probabilistic_zero"] == true);
}

TEST_CASE("json report fields for an integrable model") {
    hjq::AnalysisReport r = analyze_builtin("frw_lambda");
    std::string dumped = hjq::report_json(r);
    CHECK(dumped.back() == '\n');
    json j = json::parse(dumped);

    CHECK(j["tool"]["name"] == "hjq");
    CHECK(j["tool"]["version"] == "1.0.0");
    CHECK(j["input"]["model"] == "frw_lambda");
    CHECK(j["input"]["content_hash"] == hjq::content_hash("builtin:frw_lambda"));
    CHECK(j["hessian"]["rank"] == 1);
    CHECK(j["hessian"]["expressible"] == json::array({"a"}));
    CHECK(j["hessian"]["unexpressible"] == json::array({"N"}));
    CHECK(j["hessian"]["pivot_denominators"] == json::array({"N"}));
    CHECK(j["h0"] == "(12*N*a^4*lambda - N*p_a^2)/(12*a)");
    CHECK(j["h_mu"]["N"] == "0");
    CHECK(j["generators"].size() == 2);
    CHECK(j["generators"]["H'_0"] == "(12*N*a^4*lambda - N*p_a^2 + 12*a*p_0)/(12*a)");
    CHECK(j["generators"]["H'_N"] == "p_N");

    CHECK(j["closure"]["status"] == "integrable");
    REQUIRE(j["closure"]["generations"].size() == 1);
    REQUIRE(j["closure"]["generations"][0].size() == 1);
    const json& rec = j["closure"]["generations"][0][0];
    CHECK(rec["label"] == "H_1");
    CHECK(rec["expression"] == "(12*a^4*lambda - p_a^2)/(12*a)");
    CHECK(rec["origin"] == json::array({"H'_0", "H'_N"}));
    CHECK(j["closure"]["independent_parameters"] == json::array({"tau", "N"}));
    CHECK(j["closure"]["fixings"].empty());
    CHECK(j["closure"]["used_probabilistic_zero"] == false);

    REQUIRE(!j["path_integral"].is_null());
    CHECK(j["path_integral"]["integration_variables"] == json::array({json::array({"a", "p_a"})}));
    CHECK(j["path_integral"]["parameters"] == json::array({"tau", "N"}));
    CHECK(j["path_integral"]["integrand"].contains("tau"));
    CHECK(j["path_integral"]["integrand"].contains("N"));
    CHECK(j["path_integral"]["side_conditions"].size() == 2);
    CHECK(j["measures"].contains("canonical"));
    CHECK(j["flows"] == json::array());
}

TEST_CASE("json report for a parameter-fixing model") {
    hjq::AnalysisReport r = analyze_builtin("coupled_parameter");
    json j = json::parse(hjq::report_json(r));
    CHECK(j["closure"]["status"] == "parameter-fixing");
    CHECK(j["path_integral"].is_null());
    REQUIRE(j["closure"]["fixings"].size() == 1);
    const json& fix = j["closure"]["fixings"][0];
    CHECK(fix["parameter"] == "y");
    CHECK(fix["generator"] == "H'_y");
    CHECK(fix["other"] == "p_x");
    CHECK(fix["other_generation"] == 1);
    CHECK(fix["value"] == "1");
    CHECK(j["closure"]["independent_parameters"] == json::array({"tau"}));
}

TEST_CASE("a second-class pair without a freed parameter serializes with a null slot") {
    hjq::ModelDefinition def =
        hjq::parse_model_text("model lincoup { coords: x, y; lagrangian: \"1/2*dx^2 - y*x\"; }");
    hjq::AnalysisReport r = hjq::analyze_model(def, "lincoup");
    json j = json::parse(hjq::report_json(r));
    CHECK(j["closure"]["status"] == "parameter-fixing");
    REQUIRE(j["closure"]["fixings"].size() == 1);
    CHECK(j["closure"]["fixings"][0]["parameter"].is_null());
    CHECK(j["closure"]["fixings"][0]["generator"] == "H_2");
    CHECK(j["closure"]["fixings"][0]["other_generation"] == 1);
}

TEST_CASE("flow summaries embed as json objects") {
    hjq::AnalysisReport r = analyze_builtin("frw");
    r.flow_summaries.push_back("{\"samples\": 3, \"z\": 0.0}");
    json j = json::parse(hjq::report_json(r));
    REQUIRE(j["flows"].size() == 1);
    CHECK(j["flows"][0]["samples"] == 3);
}

TEST_CASE("every builtin report validates against the shipped schema") {
    json schema = load_schema();
    for (const std::string& name : hjq::builtin_names()) {
        hjq::AnalysisReport r = analyze_builtin(name);
        json j = json::parse(hjq::report_json(r));
        auto errors = validate(j, schema);
        for (const auto& e : errors) MESSAGE(name << ": " << e);
        CHECK(errors.empty());
    }
}

TEST_CASE("the schema check rejects malformed reports") {
    json schema = load_schema();
    hjq::AnalysisReport r = analyze_builtin("frw");
    json good = json::parse(hjq::report_json(r));

    json missing = good;
    missing.erase("h0");
    CHECK(!validate(missing, schema).empty());

    json wrong_type = good;
    wrong_type["hessian"]["rank"] = "one";
    CHECK(!validate(wrong_type, schema).empty());

    json bad_hash = good;
    bad_hash["input"]["content_hash"] = "sha256:deadbeef";
    CHECK(!validate(bad_hash, schema).empty());

    json bad_status = good;
    bad_status["closure"]["status"] = "unknown";
    CHECK(!validate(bad_status, schema).empty());

    json bad_fixing = good;
    bad_fixing["closure"]["fixings"].push_back({{"parameter", 7},
                                               {"generator", "H'_y"},
                                               {"other", "p_x"},
                                               {"other_generation", 1},
                                               {"value", "1"}});
    CHECK(!validate(bad_fixing, schema).empty());
}
