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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <filesystem>
#include <sstream>
#include <string>

#include "thetaphase/io.hpp"

using namespace thetaphase;

namespace {

std::string parse_error_message(const std::string& text, bool circle) {
  try {
    const auto j = nlohmann::json::parse(text);
    if (circle) {
      circle_state_from_json(j);
    } else {
      finite_state_from_json(j);
    }
  } catch (const ParseError& e) {
    return e.what();
  }
  return {};
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("thetaphase_test_io_" + name);
}

}  // namespace

TEST_CASE("finite state round trip is exact") {
  const FiniteState g = random_state(Dimension(5), 11);
  const FiniteState back = finite_state_from_json(nlohmann::json::parse(to_json(g).dump()), false);
  CHECK(back.amplitudes() == g.amplitudes());
}

TEST_CASE("circle state round trip is exact") {
  const CircleState q = random_circle_state(4, 3);
  const CircleState back = circle_state_from_json(nlohmann::json::parse(to_json(q).dump()), false);
  CHECK(back.n_max() == 4);
  CHECK(back.coeffs() == q.coeffs());
}

TEST_CASE("malformed states name the offending field") {
  CHECK(parse_error_message(R"([[1,0],[0,1],[1]])", false).find("state[2]") != std::string::npos);
  CHECK(parse_error_message(R"([[1,0],[0,1]])", false).find("odd") != std::string::npos);
  CHECK(parse_error_message(R"([[1,0],[0,"x"],[1,1]])", false).find("state[1]") != std::string::npos);
  CHECK(parse_error_message(R"({"q": [[1,0]]})", true).find("n_max") != std::string::npos);
  CHECK(parse_error_message(R"({"n_max": -1, "q": []})", true).find("n_max") != std::string::npos);
  CHECK(parse_error_message(R"({"n_max": 1, "q": [[1,0],[0,0]]})", true).find("'q'") != std::string::npos);
  CHECK(parse_error_message(R"({"n_max": 1, "q": [[1,0],[0,0],{"re":1}]})", true).find("q[2]") != std::string::npos);
  CHECK(parse_error_message(R"({"n_max": 0})", true).find("'q'") != std::string::npos);
  CHECK_THROWS_AS(parse_json_text("[[1,0],", "inline"), ParseError);
}

TEST_CASE("missing file raises IoError") {
  CHECK_THROWS_AS(load_finite_state(temp_path("does_not_exist.json")), IoError);
}

TEST_CASE("grid spec parsing") {
  CHECK(parse_grid_spec("64") == std::pair{64, 64});
  CHECK(parse_grid_spec("32x16") == std::pair{32, 16});
  CHECK_THROWS_AS(parse_grid_spec("32x"), ParseError);
  CHECK_THROWS_AS(parse_grid_spec("0"), ParseError);
  CHECK_THROWS_AS(parse_grid_spec("4y4"), ParseError);
}

TEST_CASE("torus grid of |P;0> at d = 3 has 4096 rows") {
  const Dimension dim(3);
  const std::filesystem::path in = temp_path("p0.json");
  const std::filesystem::path out = temp_path("p0.csv");
  write_text_file(in, to_json(momentum_state(dim, 0)).dump());
  export_grid(GridKind::torus, in, "64x64", out);
  const auto lines = lines_of(read_text_file(out));
  REQUIRE(lines.size() == 4097);
  CHECK(lines[0] == "z_re,z_im,G_re,G_im,G_abs");

  // Raster order: the real part cycles fastest.
  const TorusFunction g(momentum_state(dim, 0));
  const auto samples = torus_grid(g, 64, 64);
  CHECK(samples[1].z.imag() == 0.0);
  CHECK(samples[1].z.real() > 0.0);
  CHECK(samples[64].z.real() == 0.0);
  CHECK(samples[64].z.imag() > 0.0);
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST_CASE("strip grid of |N = 0> has constant modulus 2 pi") {
  const std::filesystem::path in = temp_path("n0.json");
  const std::filesystem::path out = temp_path("n0.csv");
  write_text_file(in, to_json(CircleState::momentum(0, 0)).dump());
  export_grid(GridKind::strip, in, "16x9", out);
  const auto lines = lines_of(read_text_file(out));
  REQUIRE(lines.size() == 1 + 16 * 9);
  for (std::size_t k = 1; k < lines.size(); ++k) {
    const double g_abs = std::stod(lines[k].substr(lines[k].rfind(',') + 1));
    CHECK(std::abs(g_abs - 2.0 * kPi) < 1e-12);
  }
  std::filesystem::remove(in);
  std::filesystem::remove(out);
}

TEST_CASE("CSV values round trip at 17 digits") {
  std::ostringstream ss;
  const Complex v(0.1 + 1e-17, -1.0 / 3.0);
  write_grid_csv(ss, {{Complex(kPi, -kPi), v}});
  const auto lines = lines_of(ss.str());
  REQUIRE(lines.size() == 2);
  std::istringstream row(lines[1]);
  std::string cell;
  std::vector<double> cells;
  while (std::getline(row, cell, ',')) cells.push_back(std::stod(cell));
  REQUIRE(cells.size() == 5);
  CHECK(cells[0] == kPi);
  CHECK(cells[1] == -kPi);
  CHECK(cells[2] == v.real());
  CHECK(cells[3] == v.imag());
}
