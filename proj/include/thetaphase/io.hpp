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

// State files and CSV exports.
//
// Finite state:  [[re, im], ...]            (length d, odd)
// Circle state:  {"n_max": n, "q": [[re, im], ...]}   (length 2n + 1)
//
// Grid CSV rows are raster ordered with the imaginary part outermost.

#ifndef THETAPHASE_IO_HPP
#define THETAPHASE_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "thetaphase/circle_system.hpp"
#include "thetaphase/finite_system.hpp"
#include "thetaphase/strip_analytic.hpp"
#include "thetaphase/torus.hpp"

namespace thetaphase {

nlohmann::json to_json(Complex z);
nlohmann::json to_json(const FiniteState& g);
nlohmann::json to_json(const CircleState& q);

/// Throws ParseError naming the offending field.
FiniteState finite_state_from_json(const nlohmann::json& j, bool normalize = true);
CircleState circle_state_from_json(const nlohmann::json& j, bool normalize = true);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, const std::string& text);
nlohmann::json parse_json_text(const std::string& text, const std::string& source);

FiniteState load_finite_state(const std::filesystem::path& path);
CircleState load_circle_state(const std::filesystem::path& path);

struct GridSample {
  Complex z;
  Complex value;
};

/// n_real x n_imag points z = L(j/n_real + i k/n_imag) on the cell.
std::vector<GridSample> torus_grid(const TorusFunction& g, int n_real, int n_imag);
/// n_real points on [0, 2pi) times n_imag points on [-y_max, y_max].
std::vector<GridSample> strip_grid(const StripFunction& q, int n_real, int n_imag);

/// Header z_re,z_im,G_re,G_im,G_abs; 17 significant digits.
void write_grid_csv(std::ostream& out, const std::vector<GridSample>& samples);
/// row,col,re,im for every entry.
void write_matrix_csv(std::ostream& out, const CMatrix& m);
/// a,b,re,im over a d x d table.
void write_table_csv(std::ostream& out, const CMatrix& table, const std::string& row_name,
                     const std::string& col_name);

/// Parses "NRxNI" or "N" (square).
std::pair<int, int> parse_grid_spec(const std::string& spec);

enum class GridKind { torus, strip };

/// Loads a state file, samples its representation on the grid and writes the CSV.
void export_grid(GridKind kind, const std::filesystem::path& state_file, const std::string& grid_spec,
                 const std::filesystem::path& out_file, const ThetaConfig<>& cfg = {});

}  // namespace thetaphase

#endif  // THETAPHASE_IO_HPP
