#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "photonbundle/core.hpp"
#include "photonbundle/errors.hpp"

namespace pb {

/// Quadrature grid on S^2. The lat-lon variant offsets rows off the poles by
/// half a cell and carries exact cell-area weights, so the weight sum is 4*pi
/// to machine precision at any resolution. Plaquettes (quads plus the two
/// polar cap polygons) tile the sphere with outward orientation.
struct SphereMesh {
  std::string type = "latlon";
  int n_theta = 0;
  int n_phi = 0;
  std::vector<SphericalPoint> nodes;
  std::vector<double> weights;
  std::vector<std::vector<int>> plaquettes;

  static SphereMesh latlon(int n_theta, int n_phi) {
    if (n_theta < 2 || n_phi < 3) {
      throw MeshTooCoarse("SphereMesh::latlon: need n_theta >= 2 and n_phi >= 3");
    }
    SphereMesh m;
    m.type = "latlon";
    m.n_theta = n_theta;
    m.n_phi = n_phi;
    const double dt = M_PI / n_theta;
    const double dp = 2.0 * M_PI / n_phi;
    m.nodes.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    m.weights.reserve(m.nodes.capacity());
    for (int i = 0; i < n_theta; ++i) {
      const double theta = (i + 0.5) * dt;
      const double band = std::cos(theta - 0.5 * dt) - std::cos(theta + 0.5 * dt);
      for (int j = 0; j < n_phi; ++j) {
        m.nodes.emplace_back(theta, j * dp);
        m.weights.push_back(band * dp);
      }
    }
    // Interior quads, oriented so the loop encloses positive d(theta)^d(phi).
    for (int i = 0; i + 1 < n_theta; ++i) {
      for (int j = 0; j < n_phi; ++j) {
        const int jn = (j + 1) % n_phi;
        m.plaquettes.push_back(
            {m.index(i, j), m.index(i + 1, j), m.index(i + 1, jn), m.index(i, jn)});
      }
    }
    // Polar caps: the first ring bounds the north cap traversed in +phi, the
    // last ring bounds the south cap traversed in -phi.
    std::vector<int> north, south;
    for (int j = 0; j < n_phi; ++j) north.push_back(m.index(0, j));
    south.push_back(m.index(n_theta - 1, 0));
    for (int j = n_phi - 1; j >= 1; --j) south.push_back(m.index(n_theta - 1, j));
    m.plaquettes.push_back(north);
    m.plaquettes.push_back(south);
    return m;
  }

  int index(int i, int j) const { return i * n_phi + j; }

  std::size_t size() const { return nodes.size(); }

  double total_weight() const {
    double s = 0.0;
    for (double w : weights) s += w;
    return s;
  }

  void require_weights_cover_sphere(double tol = 1e-8) const {
    if (std::abs(total_weight() - 4.0 * M_PI) > tol) {
      throw MeshTooCoarse("SphereMesh: quadrature weights do not sum to 4*pi");
    }
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    if (type == "latlon") {
      j["type"] = "latlon";
      j["n_theta"] = n_theta;
      j["n_phi"] = n_phi;
    } else {
      j["type"] = "explicit";
      auto& nj = j["nodes"] = nlohmann::ordered_json::array();
      for (const auto& n : nodes) nj.push_back({n.theta, n.phi});
      j["weights"] = weights;
    }
    return j;
  }

  static SphereMesh from_json(const nlohmann::json& j) {
    const std::string type = j.at("type").get<std::string>();
    if (type == "latlon") {
      return latlon(j.at("n_theta").get<int>(), j.at("n_phi").get<int>());
    }
    if (type == "explicit") {
      SphereMesh m;
      m.type = "explicit";
      for (const auto& n : j.at("nodes")) {
        m.nodes.emplace_back(n.at(0).get<double>(), n.at(1).get<double>());
      }
      m.weights = j.at("weights").get<std::vector<double>>();
      if (m.weights.size() != m.nodes.size()) {
        throw ConfigError("SphereMesh: node/weight arrays of different length");
      }
      return m;
    }
    throw ConfigError("SphereMesh: unknown mesh type '" + type + "'");
  }

  /// Parse "NxM" resolutions, e.g. "64x128".
  static SphereMesh parse_resolution(const std::string& spec) {
    const auto x = spec.find('x');
    if (x == std::string::npos) {
      throw ConfigError("mesh resolution must look like NxM, got '" + spec + "'");
    }
    try {
      return latlon(std::stoi(spec.substr(0, x)), std::stoi(spec.substr(x + 1)));
    } catch (const std::invalid_argument&) {
      throw ConfigError("mesh resolution must look like NxM, got '" + spec + "'");
    }
  }
};

}  // namespace pb
