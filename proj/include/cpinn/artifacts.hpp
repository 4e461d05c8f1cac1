#pragma once

#include <string>
#include <vector>

#include "cpinn/problems.hpp"

namespace cpinn::io {

/// M x M grid of values, row-major over the x index (the eval_grid order).
struct FieldGrid {
  int M = 0;
  std::vector<double> values;
};

void write_csv_grid(const FieldGrid& grid, const std::string& path);
FieldGrid read_csv_grid(const std::string& path);

/// Binary PPM (P6) raster with a linear blue-white-red colormap over the
/// field's min/max; regenerable offline from the CSV grid.
void write_ppm_heatmap(const FieldGrid& grid, const std::string& path);

/// Samples the exact solution, the prediction, the pointwise error and the
/// predicted multiplier on the M x M grid and writes CSV + PPM per channel.
void export_fields(const prob::BenchmarkProblem& problem, const prob::PairEval& pair, int M,
                   const std::string& out_dir);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace cpinn::io
