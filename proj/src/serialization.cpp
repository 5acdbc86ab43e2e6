#include "cone/serialization.hpp"

#include <vector>

#include "cone/errors.hpp"

namespace cone {

namespace {

const Json& require(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object())
    throw ConfigError(path + ": expected an object");
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(path + "." + key + ": missing");
  return *it;
}

double as_number(const Json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path + ": expected a number");
  return j.get<double>();
}

double number_field(const Json& j, const char* key, const std::string& path) {
  return as_number(require(j, key, path), path + "." + key);
}

std::string string_field(const Json& j, const char* key,
                         const std::string& path) {
  const Json& v = require(j, key, path);
  if (!v.is_string()) throw ConfigError(path + "." + key + ": expected a string");
  return v.get<std::string>();
}

std::vector<double> number_array(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected an array");
  std::vector<double> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(as_number(j[i], path + "[" + std::to_string(i) + "]"));
  return out;
}

Interval interval_from_json(const Json& j, const std::string& path) {
  if (!j.is_array() || j.size() != 2)
    throw ConfigError(path + ": expected [lo, hi]");
  const double lo = as_number(j[0], path + "[0]");
  const double hi = as_number(j[1], path + "[1]");
  try {
    return Interval(lo, hi);
  } catch (const InvalidArgument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace

Json measure_to_json(const FiniteDiscreteMeasure& eta) {
  Json atoms = Json::array();
  for (const WeightedAtom& a : eta.atoms()) {
    Json atom;
    atom["s"] = a.weight;
    atom["x"] = a.position.coords();
    atoms.push_back(std::move(atom));
  }
  return Json{{"atoms", std::move(atoms)}};
}

FiniteDiscreteMeasure measure_from_json(const Json& j, const std::string& path) {
  const Json& atoms = require(j, "atoms", path);
  if (!atoms.is_array()) throw ConfigError(path + ".atoms: expected an array");
  std::vector<WeightedAtom> out;
  out.reserve(atoms.size());
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    const std::string apath = path + ".atoms[" + std::to_string(i) + "]";
    const Json& a = atoms[i];
    const double s = number_field(a, "s", apath);
    std::vector<double> x = number_array(require(a, "x", apath), apath + ".x");
    try {
      out.push_back(WeightedAtom{s, Point(std::move(x))});
    } catch (const InvalidArgument& e) {
      throw ConfigError(apath + ": " + e.what());
    }
  }
  try {
    return FiniteDiscreteMeasure(std::move(out));
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

Json box_to_json(const Box& box) {
  Json sides = Json::array();
  for (const Interval& s : box.sides())
    sides.push_back(Json::array({s.lo, s.hi}));
  return sides;
}

Box box_from_json(const Json& j, const std::string& path) {
  if (!j.is_array()) throw ConfigError(path + ": expected [[lo, hi], ...]");
  std::vector<Interval> sides;
  sides.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    sides.push_back(
        interval_from_json(j[i], path + "[" + std::to_string(i) + "]"));
  if (sides.empty()) throw ConfigError(path + ": box needs at least one side");
  return Box(std::move(sides));
}

Json window_to_json(const Window& w) {
  return Json{{"box", box_to_json(w.lambda)}, {"a", w.a}, {"b", w.b}};
}

Window window_from_json(const Json& j, const std::string& path) {
  const Box lambda = box_from_json(require(j, "box", path), path + ".box");
  const double a = number_field(j, "a", path);
  const double b = number_field(j, "b", path);
  try {
    return Window(lambda, a, b);
  } catch (const InvalidArgument& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

TestFunction test_function_from_json(const Json& j, const std::string& path) {
  const std::string type = string_field(j, "type", path);
  try {
    if (type == "indicator") {
      const Box box = box_from_json(require(j, "box", path), path + ".box");
      const double height =
          j.contains("height") ? number_field(j, "height", path) : 1.0;
      return TestFunction::indicator(box, height);
    }
    if (type == "bump") {
      const Box box = box_from_json(require(j, "box", path), path + ".box");
      const double height =
          j.contains("height") ? number_field(j, "height", path) : 1.0;
      return TestFunction::bump(box, height);
    }
    if (type == "piecewise_constant") {
      const Interval domain =
          interval_from_json(require(j, "interval", path), path + ".interval");
      std::vector<double> values =
          number_array(require(j, "values", path), path + ".values");
      return TestFunction::piecewise_constant(domain, std::move(values));
    }
    if (type == "polynomial") {
      const Interval domain =
          interval_from_json(require(j, "interval", path), path + ".interval");
      std::vector<double> coeffs =
          number_array(require(j, "coeffs", path), path + ".coeffs");
      return TestFunction::polynomial(domain, std::move(coeffs));
    }
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ".type: unknown test function type '" + type + "'");
}

LevyIntensity levy_from_json(const Json& j, const std::string& path) {
  const std::string tag = string_field(j, "tag", path);
  try {
    if (tag == "gamma") return LevyIntensity::gamma(number_field(j, "theta", path));
    if (tag == "truncated_uniform")
      return LevyIntensity::truncated_uniform(number_field(j, "lo", path),
                                              number_field(j, "hi", path),
                                              number_field(j, "height", path));
    if (tag == "finite_beta")
      return LevyIntensity::finite_beta(number_field(j, "alpha", path),
                                        number_field(j, "beta", path),
                                        number_field(j, "mass", path));
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
  throw ConfigError(path + ".tag: unknown intensity tag '" + tag + "'");
}

BaseMeasure base_measure_from_json(const Json& j, const std::string& path) {
  const Box box = box_from_json(require(j, "box", path), path + ".box");
  const double density = number_field(j, "density", path);
  try {
    return BaseMeasure(box, density);
  } catch (const Error& e) {
    throw ConfigError(path + ": " + e.what());
  }
}

}  // namespace cone
