#pragma once

#include <string>

#include "ellint/relaxations.hpp"
#include "ellint/simulate.hpp"

namespace ellint {

// JSON wire formats:
//   Ellipsoid          {"center": [...], "shape": [[...], ...]}  (row-major)
//   IntersectionSpec   {"ellipsoids": [...]}
//   MethodResult       {"method":..., "ellipsoid":..., "objective":...,
//                       "weights":[...], "diagnostics":{...}}
// Numbers are serialized with enough digits to round-trip (>= 15 significant).

std::string ellipsoid_to_json(const Ellipsoid& e, int indent = 2);
Ellipsoid ellipsoid_from_json(const std::string& text);

std::string spec_to_json(const IntersectionSpec& spec, int indent = 2);
IntersectionSpec spec_from_json(const std::string& text);

std::string result_to_json(const MethodResult& result, int indent = 2);

std::string scenario_to_json(const Scenario& sc, int indent = 2);
Scenario scenario_from_json(const std::string& text);

// File helpers; throw ellint::Error subclasses on parse failures.
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

// Fixed-width decimal with 15 significant digits (CSV cells).
std::string format_number(double v);

}  // namespace ellint
