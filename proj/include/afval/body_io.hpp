#pragma once

#include <string>

#include <json.hpp>

#include "afval/bodies.hpp"

namespace afval {

/// Document form {"n": 2, "body": {"type": ..., ...}}. Body types: ball
/// (radius, center?), ellipsoid (shape | axes, center?), polytope (vertices),
/// perturbed_ball (radius?, center?, terms: [{eps, function}]), minkowski
/// (terms: [{coef, body}]). Functions: re_z1_conj_z2, harmonic (k, l, pole,
/// part?), hermitian (re, im?), linear (v), constant (c).
/// Schema errors name the offending field path, e.g. "body.terms[1].radius".
BodyPtr parse_body(const nlohmann::json& doc);
BodyPtr parse_body_text(const std::string& text);
BodyPtr load_body(const std::string& path);

BodyPtr parse_body_node(const nlohmann::json& node, int n, const std::string& path);
SphereFunctionPtr parse_function_node(const nlohmann::json& node, int n, const std::string& path);

nlohmann::json serialize_body(const ConvexBody& body);
nlohmann::json body_node(const ConvexBody& body);
nlohmann::json function_node(const SphereFunction& f);

}  // namespace afval
