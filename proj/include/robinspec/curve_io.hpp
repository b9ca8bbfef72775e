#pragma once

#include "robinspec/geometry.hpp"

#include <string>

namespace robinspec::geometry {

/// {"shape":"circle","R":1} | {"shape":"ellipse","a":2,"b":1} | {"shape":"egg","a":2,"b":1,"eps":0.1}
/// | {"shape":"fourier","x_cos":[...],"x_sin":[...],"y_cos":[...],"y_sin":[...]}
ParametricCurve curve_from_json(const std::string& text);
ParametricCurve curve_from_file(const std::string& path);

}  // namespace robinspec::geometry
