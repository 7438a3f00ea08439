// Copyright 2026 The thetaphase Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "thetaphase/io.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace thetaphase {

namespace {

Complex complex_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ParseError("field '" + field + "': expected a [re, im] pair of numbers");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

CVector coefficients_from_json(const nlohmann::json& j, const std::string& field) {
  if (!j.is_array()) throw ParseError("field '" + field + "': expected an array of [re, im] pairs");
  CVector v(static_cast<Eigen::Index>(j.size()));
  for (std::size_t k = 0; k < j.size(); ++k) {
    v(static_cast<Eigen::Index>(k)) = complex_from_json(j[k], field + "[" + std::to_string(k) + "]");
  }
  return v;
}

nlohmann::json coefficients_to_json(const CVector& v) {
  nlohmann::json out = nlohmann::json::array();
  for (Eigen::Index k = 0; k < v.size(); ++k) out.push_back(to_json(v(k)));
  return out;
}

}  // namespace

nlohmann::json to_json(Complex z) { return nlohmann::json::array({z.real(), z.imag()}); }

nlohmann::json to_json(const FiniteState& g) { return coefficients_to_json(g.amplitudes()); }

nlohmann::json to_json(const CircleState& q) {
  return {{"n_max", q.n_max()}, {"q", coefficients_to_json(q.coeffs())}};
}

FiniteState finite_state_from_json(const nlohmann::json& j, bool normalize) {
  const CVector g = coefficients_from_json(j, "state");
  if (g.size() < 3 || g.size() % 2 == 0) {
    throw ParseError("field 'state': length " + std::to_string(g.size()) + " is not an odd dimension >= 3");
  }
  if (normalize && !(g.norm() > 0.0)) throw ParseError("field 'state': zero vector");
  return FiniteState(Dimension(static_cast<int>(g.size())), g, normalize);
}

CircleState circle_state_from_json(const nlohmann::json& j, bool normalize) {
  if (!j.is_object()) throw ParseError("circle state: expected an object with fields 'n_max' and 'q'");
  if (!j.contains("n_max")) throw ParseError("field 'n_max': missing");
  if (!j["n_max"].is_number_integer() || j["n_max"].get<long long>() < 0) {
    throw ParseError("field 'n_max': expected a non-negative integer");
  }
  if (!j.contains("q")) throw ParseError("field 'q': missing");
  const int n_max = j["n_max"].get<int>();
  const CVector q = coefficients_from_json(j["q"], "q");
  if (q.size() != 2 * n_max + 1) {
    throw ParseError("field 'q': expected " + std::to_string(2 * n_max + 1) + " entries for n_max = " +
                     std::to_string(n_max) + ", got " + std::to_string(q.size()));
  }
  if (normalize && !(q.norm() > 0.0)) throw ParseError("field 'q': zero vector");
  return CircleState(n_max, q, normalize);
}

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

nlohmann::json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(source + ": " + e.what());
  }
}

FiniteState load_finite_state(const std::filesystem::path& path) {
  return finite_state_from_json(parse_json_text(read_text_file(path), path.string()));
}

CircleState load_circle_state(const std::filesystem::path& path) {
  return circle_state_from_json(parse_json_text(read_text_file(path), path.string()));
}

std::vector<GridSample> torus_grid(const TorusFunction& g, int n_real, int n_imag) {
  if (n_real < 1 || n_imag < 1) throw InvalidArgument("torus_grid: grid sizes must be positive");
  const double side = g.side();
  std::vector<GridSample> out;
  out.reserve(static_cast<std::size_t>(n_real) * n_imag);
  for (int k = 0; k < n_imag; ++k) {
    for (int j = 0; j < n_real; ++j) {
      const Complex z(side * j / n_real, side * k / n_imag);
      out.push_back({z, g(z)});
    }
  }
  return out;
}

std::vector<GridSample> strip_grid(const StripFunction& q, int n_real, int n_imag) {
  if (n_real < 1 || n_imag < 2) throw InvalidArgument("strip_grid: need n_real >= 1 and n_imag >= 2");
  const double y_max = q.y_max();
  std::vector<GridSample> out;
  out.reserve(static_cast<std::size_t>(n_real) * n_imag);
  for (int k = 0; k < n_imag; ++k) {
    const double y = -y_max + 2.0 * y_max * k / (n_imag - 1);
    for (int j = 0; j < n_real; ++j) {
      const Complex z(2.0 * kPi * j / n_real, y);
      out.push_back({z, q(z)});
    }
  }
  return out;
}

void write_grid_csv(std::ostream& out, const std::vector<GridSample>& samples) {
  out << "z_re,z_im,G_re,G_im,G_abs\n" << std::setprecision(17);
  for (const GridSample& s : samples) {
    out << s.z.real() << ',' << s.z.imag() << ',' << s.value.real() << ',' << s.value.imag() << ','
        << std::abs(s.value) << '\n';
  }
}

void write_matrix_csv(std::ostream& out, const CMatrix& m) {
  out << "row,col,re,im\n" << std::setprecision(17);
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) out << r << ',' << c << ',' << m(r, c).real() << ',' << m(r, c).imag() << '\n';
  }
}

void write_table_csv(std::ostream& out, const CMatrix& table, const std::string& row_name,
                     const std::string& col_name) {
  out << row_name << ',' << col_name << ",re,im\n" << std::setprecision(17);
  for (Eigen::Index r = 0; r < table.rows(); ++r) {
    for (Eigen::Index c = 0; c < table.cols(); ++c) {
      out << r << ',' << c << ',' << table(r, c).real() << ',' << table(r, c).imag() << '\n';
    }
  }
}

std::pair<int, int> parse_grid_spec(const std::string& spec) {
  const auto parse_int = [&](const std::string& s) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(s, &used);
    } catch (const std::exception&) {
      throw ParseError("grid spec '" + spec + "': expected N or NRxNI");
    }
    if (used != s.size() || v < 1) throw ParseError("grid spec '" + spec + "': expected N or NRxNI");
    return v;
  };
  const std::size_t x = spec.find('x');
  if (x == std::string::npos) {
    const int n = parse_int(spec);
    return {n, n};
  }
  return {parse_int(spec.substr(0, x)), parse_int(spec.substr(x + 1))};
}

void export_grid(GridKind kind, const std::filesystem::path& state_file, const std::string& grid_spec,
                 const std::filesystem::path& out_file, const ThetaConfig<>& cfg) {
  const auto [nr, ni] = parse_grid_spec(grid_spec);
  std::vector<GridSample> samples;
  if (kind == GridKind::torus) {
    samples = torus_grid(TorusFunction(load_finite_state(state_file), cfg), nr, ni);
  } else {
    samples = strip_grid(strip_rep(load_circle_state(state_file), cfg), nr, ni);
  }
  std::ostringstream ss;
  write_grid_csv(ss, samples);
  write_text_file(out_file, ss.str());
}

}  // namespace thetaphase
