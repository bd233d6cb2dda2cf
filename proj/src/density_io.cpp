#include "fermidiscord/density_io.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "fermidiscord/errors.hpp"

namespace fermidiscord {

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(const std::string& path, const std::string& what) {
  throw InvalidInput("density schema error at " + path + ": " + what);
}

double read_real(const json& node, const std::string& path) {
  if (!node.is_number()) schema_error(path, "expected a number");
  return node.get<double>();
}

const json& require_matrix_rows(const json& root, const char* key, int n) {
  const std::string path = std::string("/") + key;
  if (!root.contains(key)) schema_error(path, "missing field");
  const json& m = root.at(key);
  if (!m.is_array() || m.size() != static_cast<std::size_t>(n))
    schema_error(path, "expected an array of " + std::to_string(n) + " rows");
  for (int i = 0; i < n; ++i) {
    const json& row = m[static_cast<std::size_t>(i)];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(n))
      schema_error(path + "/" + std::to_string(i),
                   "expected a row of " + std::to_string(n) + " entries");
  }
  return m;
}

Eigen::MatrixXcd read_complex_matrix(const json& root, const char* key, int n) {
  const json& m = require_matrix_rows(root, key, n);
  Eigen::MatrixXcd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::string path =
          std::string("/") + key + "/" + std::to_string(i) + "/" + std::to_string(j);
      const json& z = m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (!z.is_array() || z.size() != 2) schema_error(path, "expected [re, im]");
      out(i, j) = Complex(read_real(z[0], path + "/0"), read_real(z[1], path + "/1"));
    }
  }
  return out;
}

Eigen::MatrixXd read_real_matrix(const json& root, const char* key, int n) {
  const json& m = require_matrix_rows(root, key, n);
  Eigen::MatrixXd out(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      out(i, j) = read_real(m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)],
                            std::string("/") + key + "/" + std::to_string(i) + "/" +
                                std::to_string(j));
    }
  }
  return out;
}

}  // namespace

DensitySet parse_density_json(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InvalidInput(std::string("density file is not valid JSON: ") + e.what());
  }
  if (!root.is_object()) schema_error("/", "expected an object");
  if (!root.contains("omega")) schema_error("/omega", "missing field");
  if (!root.at("omega").is_number_integer())
    schema_error("/omega", "expected an integer");
  const int n = root.at("omega").get<int>();
  if (n < 2) schema_error("/omega", "must be at least 2");

  Eigen::MatrixXcd gamma = read_complex_matrix(root, "gamma", n);
  Eigen::MatrixXcd kappa = read_complex_matrix(root, "kappa", n);

  bool qp_vacuum = false;
  if (root.contains("quasiparticle_vacuum")) {
    if (!root.at("quasiparticle_vacuum").is_boolean())
      schema_error("/quasiparticle_vacuum", "expected a boolean");
    qp_vacuum = root.at("quasiparticle_vacuum").get<bool>();
  }
  const bool has_two_body = root.contains("two_body_diag");
  if (qp_vacuum && has_two_body)
    schema_error("/two_body_diag",
                 "must not be combined with \"quasiparticle_vacuum\": true");
  if (!qp_vacuum && !has_two_body)
    schema_error("/two_body_diag",
                 "missing field (or set \"quasiparticle_vacuum\": true)");

  Eigen::MatrixXd two_body;
  if (has_two_body) {
    two_body = read_real_matrix(root, "two_body_diag", n);
  } else {
    // Symmetrize first so the Wick formula sees clean inputs.
    DensitySet tmp{n, gamma, kappa, Eigen::MatrixXd::Zero(n, n)};
    symmetrize(tmp);
    two_body = qp_vacuum_two_body(tmp.gamma, tmp.kappa);
  }
  return make_density_set(std::move(gamma), std::move(kappa), std::move(two_body));
}

DensitySet read_density_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open density file '" + path + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_density_json(buffer.str());
}

std::string density_to_json(const DensitySet& d) {
  json root;
  root["omega"] = d.omega;
  json gamma = json::array(), kappa = json::array(), two_body = json::array();
  for (int i = 0; i < d.omega; ++i) {
    json grow = json::array(), krow = json::array(), trow = json::array();
    for (int j = 0; j < d.omega; ++j) {
      grow.push_back({d.gamma(i, j).real(), d.gamma(i, j).imag()});
      krow.push_back({d.kappa(i, j).real(), d.kappa(i, j).imag()});
      trow.push_back(d.two_body_diag(i, j));
    }
    gamma.push_back(std::move(grow));
    kappa.push_back(std::move(krow));
    two_body.push_back(std::move(trow));
  }
  root["gamma"] = std::move(gamma);
  root["kappa"] = std::move(kappa);
  root["two_body_diag"] = std::move(two_body);
  return root.dump(2) + "\n";
}

}  // namespace fermidiscord
