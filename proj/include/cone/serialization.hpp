#pragma once

#include <string>

#include <json.hpp>

#include "cone/geometry.hpp"
#include "cone/intensity.hpp"
#include "cone/measure.hpp"
#include "cone/test_function.hpp"

namespace cone {

using Json = nlohmann::json;

/// {"atoms": [{"s": 2.0, "x": [0.5]}, ...]} in canonical atom order.
Json measure_to_json(const FiniteDiscreteMeasure& eta);
FiniteDiscreteMeasure measure_from_json(const Json& j,
                                        const std::string& path = "measure");

/// [[lo, hi], ...], one pair per dimension.
Json box_to_json(const Box& box);
Box box_from_json(const Json& j, const std::string& path);

/// {"box": [[...]], "a": ..., "b": ...}.
Json window_to_json(const Window& w);
Window window_from_json(const Json& j, const std::string& path);

/// {"type": "indicator" | "bump" | "piecewise_constant" | "polynomial",
///  ...} with per-type parameters: box+height, box+height,
///  interval+values, interval+coeffs.
TestFunction test_function_from_json(const Json& j, const std::string& path);

/// {"tag": "gamma", "theta": ...} |
/// {"tag": "truncated_uniform", "lo": ..., "hi": ..., "height": ...} |
/// {"tag": "finite_beta", "alpha": ..., "beta": ..., "mass": ...}.
LevyIntensity levy_from_json(const Json& j, const std::string& path);

/// {"box": [[...]], "density": ...}.
BaseMeasure base_measure_from_json(const Json& j, const std::string& path);

}  // namespace cone
