#include "afval/body_io.hpp"

#include <fstream>
#include <sstream>

#include "afval/error.hpp"
#include "afval/harmonics.hpp"

namespace afval {

using nlohmann::json;

namespace {

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw Error(ErrorKind::schema, path + ": " + what);
}

const json& field(const json& node, const char* key, const std::string& path) {
  if (!node.is_object()) schema_error(path, "expected an object");
  const auto it = node.find(key);
  if (it == node.end()) schema_error(path + "." + key, "missing");
  return *it;
}

double number(const json& node, const char* key, const std::string& path) {
  const json& v = field(node, key, path);
  if (!v.is_number()) schema_error(path + "." + key, "expected a number");
  return v.get<double>();
}

double number_or(const json& node, const char* key, double fallback, const std::string& path) {
  return node.contains(key) ? number(node, key, path) : fallback;
}

int integer(const json& node, const char* key, const std::string& path) {
  const json& v = field(node, key, path);
  if (!v.is_number_integer()) schema_error(path + "." + key, "expected an integer");
  return v.get<int>();
}

Vec vector_of(const json& v, Eigen::Index size, const std::string& path) {
  if (!v.is_array()) schema_error(path, "expected an array");
  if (size >= 0 && static_cast<Eigen::Index>(v.size()) != size)
    schema_error(path, "expected " + std::to_string(size) + " entries");
  Vec out(static_cast<Eigen::Index>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) schema_error(path + "[" + std::to_string(i) + "]", "expected a number");
    out[static_cast<Eigen::Index>(i)] = v[i].get<double>();
  }
  return out;
}

Mat matrix_of(const json& v, Eigen::Index rows, Eigen::Index cols, const std::string& path) {
  if (!v.is_array() || static_cast<Eigen::Index>(v.size()) != rows)
    schema_error(path, "expected " + std::to_string(rows) + " rows");
  Mat m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r)
    m.row(r) = vector_of(v[static_cast<std::size_t>(r)], cols, path + "[" + std::to_string(r) + "]");
  return m;
}

Vec center_of(const json& node, int n, const std::string& path) {
  if (!node.contains("center")) return Vec::Zero(2 * n);
  return vector_of(node["center"], 2 * n, path + ".center");
}

json to_json(const Vec& v) {
  json a = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

json to_json(const Mat& m) {
  json a = json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) a.push_back(to_json(Vec(m.row(r).transpose())));
  return a;
}

std::string type_of(const json& node, const std::string& path) {
  const json& t = field(node, "type", path);
  if (!t.is_string()) schema_error(path + ".type", "expected a string");
  return t.get<std::string>();
}

}  // namespace

SphereFunctionPtr parse_function_node(const json& node, int n, const std::string& path) {
  const std::string type = type_of(node, path);
  const int d = 2 * n;
  if (type == "re_z1_conj_z2") return std::make_shared<const HermitianQuadratic>(HermitianQuadratic::re_z1_conj_z2(n));
  if (type == "constant") return std::make_shared<const ConstantFunction>(d, number(node, "c", path));
  if (type == "linear") return std::make_shared<const LinearFunctional>(vector_of(field(node, "v", path), d, path + ".v"));
  if (type == "hermitian") {
    const Mat re = matrix_of(field(node, "re", path), n, n, path + ".re");
    const Mat im = node.contains("im") ? matrix_of(node["im"], n, n, path + ".im") : Mat::Zero(n, n);
    Eigen::MatrixXcd h(n, n);
    h.real() = re;
    h.imag() = im;
    try {
      return std::make_shared<const HermitianQuadratic>(h);
    } catch (const Error& e) {
      schema_error(path, e.what());
    }
  }
  if (type == "harmonic") {
    const int k = integer(node, "k", path), l = integer(node, "l", path);
    if (k < 0) schema_error(path + ".k", "must be >= 0");
    if (l < 0) schema_error(path + ".l", "must be >= 0");
    Vec pole = vector_of(field(node, "pole", path), d, path + ".pole");
    if (pole.norm() == 0.0) schema_error(path + ".pole", "must be non-zero");
    pole.normalize();
    HarmonicPart part = HarmonicPart::real;
    if (node.contains("part")) {
      const std::string p = node["part"].is_string() ? node["part"].get<std::string>() : "";
      if (p == "imag") part = HarmonicPart::imag;
      else if (p != "real") schema_error(path + ".part", "expected \"real\" or \"imag\"");
    }
    return std::make_shared<const SphericalHarmonic>(k, l, n, pole, part);
  }
  if (type == "combination") {
    const json& terms = field(node, "terms", path);
    if (!terms.is_array() || terms.empty()) schema_error(path + ".terms", "expected a non-empty array");
    std::vector<double> coefs;
    std::vector<SphereFunctionPtr> parts;
    for (std::size_t i = 0; i < terms.size(); ++i) {
      const std::string p = path + ".terms[" + std::to_string(i) + "]";
      coefs.push_back(number(terms[i], "coef", p));
      parts.push_back(parse_function_node(field(terms[i], "function", p), n, p + ".function"));
    }
    return std::make_shared<const LinearCombination>(coefs, parts);
  }
  if (type == "support") return support_function(parse_body_node(field(node, "body", path), n, path + ".body"));
  schema_error(path + ".type", "unknown function type '" + type + "'");
}

BodyPtr parse_body_node(const json& node, int n, const std::string& path) {
  const std::string type = type_of(node, path);
  const int d = 2 * n;
  try {
    if (type == "ball") {
      const double r = number(node, "radius", path);
      if (!(r > 0.0)) schema_error(path + ".radius", "must be > 0");
      return make_body(ConvexBody::ball(n, r, center_of(node, n, path)));
    }
    if (type == "ellipsoid") {
      if (node.contains("axes")) {
        const Vec axes = vector_of(node["axes"], d, path + ".axes");
        if ((axes.array() <= 0.0).any()) schema_error(path + ".axes", "semi-axes must be > 0");
        return make_body(ConvexBody::ellipsoid_axes(n, axes, center_of(node, n, path)));
      }
      const Mat q = matrix_of(field(node, "shape", path), d, d, path + ".shape");
      Eigen::LLT<Mat> llt(q);
      if (llt.info() != Eigen::Success || (q - q.transpose()).cwiseAbs().maxCoeff() > 1e-12 * q.cwiseAbs().maxCoeff())
        schema_error(path + ".shape", "must be symmetric positive definite");
      return make_body(ConvexBody::ellipsoid(n, q, center_of(node, n, path)));
    }
    if (type == "polytope") {
      const json& v = field(node, "vertices", path);
      if (!v.is_array() || v.empty()) schema_error(path + ".vertices", "expected a non-empty array");
      Mat verts(d, static_cast<Eigen::Index>(v.size()));
      for (std::size_t i = 0; i < v.size(); ++i)
        verts.col(static_cast<Eigen::Index>(i)) = vector_of(v[i], d, path + ".vertices[" + std::to_string(i) + "]");
      return make_body(ConvexBody::polytope(n, verts));
    }
    if (type == "perturbed_ball") {
      const double r = number_or(node, "radius", 1.0, path);
      if (!(r > 0.0)) schema_error(path + ".radius", "must be > 0");
      const json& terms = field(node, "terms", path);
      if (!terms.is_array()) schema_error(path + ".terms", "expected an array");
      std::vector<double> eps;
      std::vector<SphereFunctionPtr> fs;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string p = path + ".terms[" + std::to_string(i) + "]";
        eps.push_back(number(terms[i], "eps", p));
        fs.push_back(parse_function_node(field(terms[i], "function", p), n, p + ".function"));
      }
      return make_body(ConvexBody::perturbed_ball(n, r, eps, fs, center_of(node, n, path)));
    }
    if (type == "minkowski") {
      const json& terms = field(node, "terms", path);
      if (!terms.is_array() || terms.empty()) schema_error(path + ".terms", "expected a non-empty array");
      std::vector<std::pair<double, BodyPtr>> parts;
      for (std::size_t i = 0; i < terms.size(); ++i) {
        const std::string p = path + ".terms[" + std::to_string(i) + "]";
        const double c = number(terms[i], "coef", p);
        if (!(c >= 0.0)) schema_error(p + ".coef", "must be >= 0");
        parts.emplace_back(c, parse_body_node(field(terms[i], "body", p), n, p + ".body"));
      }
      return minkowski(std::move(parts));
    }
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::schema) throw;
    schema_error(path, e.what());
  }
  schema_error(path + ".type", "unknown body type '" + type + "'");
}

BodyPtr parse_body(const json& doc) {
  if (!doc.is_object()) schema_error("$", "expected an object");
  const int n = integer(doc, "n", "$");
  if (n < 2) schema_error("n", "must be >= 2");
  return parse_body_node(field(doc, "body", "$"), n, "body");
}

BodyPtr parse_body_text(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::schema, std::string("malformed document: ") + e.what());
  }
  return parse_body(doc);
}

BodyPtr load_body(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorKind::invalid_argument, "cannot open body file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_body_text(ss.str());
}

json function_node(const SphereFunction& f) {
  if (const auto* c = dynamic_cast<const ConstantFunction*>(&f)) return {{"type", "constant"}, {"c", c->constant()}};
  if (const auto* l = dynamic_cast<const LinearFunctional*>(&f)) return {{"type", "linear"}, {"v", to_json(l->vector())}};
  if (const auto* h = dynamic_cast<const HermitianQuadratic*>(&f))
    return {{"type", "hermitian"}, {"re", to_json(Mat(h->complex_form().real()))}, {"im", to_json(Mat(h->complex_form().imag()))}};
  if (const auto* s = dynamic_cast<const SphericalHarmonic*>(&f))
    return {{"type", "harmonic"},
            {"k", s->k()},
            {"l", s->l()},
            {"pole", to_json(s->pole())},
            {"part", s->part() == HarmonicPart::real ? "real" : "imag"}};
  if (const auto* m = dynamic_cast<const LinearCombination*>(&f)) {
    json terms = json::array();
    for (std::size_t i = 0; i < m->parts().size(); ++i)
      terms.push_back({{"coef", m->coefs()[i]}, {"function", function_node(*m->parts()[i])}});
    return {{"type", "combination"}, {"terms", terms}};
  }
  if (const auto* b = dynamic_cast<const BodySupport*>(&f)) return {{"type", "support"}, {"body", body_node(*b->body())}};
  throw Error(ErrorKind::schema, "function type has no document form");
}

json body_node(const ConvexBody& body) {
  return std::visit(
      [](const auto& s) -> json {
        using S = std::decay_t<decltype(s)>;
        if constexpr (std::is_same_v<S, Ball>) {
          return {{"type", "ball"}, {"radius", s.radius}, {"center", to_json(s.center)}};
        } else if constexpr (std::is_same_v<S, Ellipsoid>) {
          return {{"type", "ellipsoid"}, {"shape", to_json(s.shape)}, {"center", to_json(s.center)}};
        } else if constexpr (std::is_same_v<S, Polytope>) {
          json v = json::array();
          for (Eigen::Index c = 0; c < s.vertices.cols(); ++c) v.push_back(to_json(Vec(s.vertices.col(c))));
          return {{"type", "polytope"}, {"vertices", v}};
        } else if constexpr (std::is_same_v<S, PerturbedBall>) {
          json terms = json::array();
          for (std::size_t i = 0; i < s.terms.size(); ++i)
            terms.push_back({{"eps", s.eps[i]}, {"function", function_node(*s.terms[i])}});
          return {{"type", "perturbed_ball"}, {"radius", s.radius}, {"center", to_json(s.center)}, {"terms", terms}};
        } else {
          json terms = json::array();
          for (std::size_t i = 0; i < s.terms.size(); ++i)
            terms.push_back({{"coef", s.coefs[i]}, {"body", body_node(*s.terms[i])}});
          return {{"type", "minkowski"}, {"terms", terms}};
        }
      },
      body.shape());
}

json serialize_body(const ConvexBody& body) { return {{"n", body.n()}, {"body", body_node(body)}}; }

}  // namespace afval
