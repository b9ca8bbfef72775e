#include "robinspec/curve_io.hpp"

#include "robinspec/errors.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace robinspec::geometry {

namespace {

double number(const nlohmann::json& j, std::initializer_list<const char*> keys, std::optional<double> fallback = {}) {
    for (const char* k : keys)
        if (j.contains(k)) {
            if (!j[k].is_number()) fail(ErrorCode::ParseError, std::string("field '") + k + "' must be a number");
            return j[k].get<double>();
        }
    if (fallback) return *fallback;
    fail(ErrorCode::ParseError, std::string("missing field '") + *keys.begin() + "'");
}

std::vector<double> list(const nlohmann::json& j, const char* key) {
    if (!j.contains(key)) return {};
    if (!j[key].is_array()) fail(ErrorCode::ParseError, std::string("field '") + key + "' must be an array");
    std::vector<double> v;
    for (const auto& x : j[key]) {
        if (!x.is_number()) fail(ErrorCode::ParseError, std::string("field '") + key + "' must hold numbers");
        v.push_back(x.get<double>());
    }
    return v;
}

}  // namespace

ParametricCurve curve_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorCode::ParseError, e.what());
    }
    if (!j.is_object() || !j.contains("shape") || !j["shape"].is_string())
        fail(ErrorCode::ParseError, "curve description needs a string 'shape'");
    auto shape = j["shape"].get<std::string>();
    if (shape == "circle" || shape == "disc") return ParametricCurve::circle(number(j, {"R", "radius"}, 1.0));
    if (shape == "ellipse") return ParametricCurve::ellipse(number(j, {"a"}), number(j, {"b"}));
    if (shape == "egg") return ParametricCurve::egg(number(j, {"a"}), number(j, {"b"}), number(j, {"eps", "epsilon"}, 0.1));
    if (shape == "fourier")
        return ParametricCurve::fourier(list(j, "x_cos"), list(j, "x_sin"), list(j, "y_cos"), list(j, "y_sin"));
    fail(ErrorCode::ParseError, "unknown shape '" + shape + "'");
}

ParametricCurve curve_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorCode::IoFailure, "cannot read " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return curve_from_json(ss.str());
}

}  // namespace robinspec::geometry
