#include "cpinn/artifacts.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace cpinn::io {

void write_csv_grid(const FieldGrid& grid, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write grid: " + path);
  char buf[40];
  for (int i = 0; i < grid.M; ++i) {
    for (int j = 0; j < grid.M; ++j) {
      std::snprintf(buf, sizeof(buf), "%.10g", grid.values[static_cast<std::size_t>(i) * grid.M + j]);
      f << buf << (j + 1 == grid.M ? "\n" : ",");
    }
  }
}

FieldGrid read_csv_grid(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot read grid: " + path);
  FieldGrid g;
  std::string line;
  while (std::getline(f, line)) {
    if (line.empty()) continue;
    std::istringstream is(line);
    std::string cell;
    int cols = 0;
    while (std::getline(is, cell, ',')) {
      g.values.push_back(std::stod(cell));
      ++cols;
    }
    if (g.M == 0) g.M = cols;
    else if (cols != g.M) throw std::runtime_error("ragged grid in " + path);
  }
  if (g.values.size() != static_cast<std::size_t>(g.M) * g.M)
    throw std::runtime_error("grid is not square in " + path);
  return g;
}

void write_ppm_heatmap(const FieldGrid& grid, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write heatmap: " + path);
  const auto [mn_it, mx_it] = std::minmax_element(grid.values.begin(), grid.values.end());
  const double mn = *mn_it, mx = *mx_it;
  const double span = mx > mn ? mx - mn : 1.0;
  f << "P6\n" << grid.M << " " << grid.M << "\n255\n";
  std::vector<unsigned char> row(static_cast<std::size_t>(grid.M) * 3);
  // image rows run top to bottom = decreasing y = decreasing j
  for (int j = grid.M - 1; j >= 0; --j) {
    for (int i = 0; i < grid.M; ++i) {
      const double v = grid.values[static_cast<std::size_t>(i) * grid.M + j];
      const double t = (v - mn) / span;  // 0 -> blue, 0.5 -> white, 1 -> red
      double rc, gc, bc;
      if (t < 0.5) {
        const double s = t / 0.5;
        rc = s;
        gc = s;
        bc = 1.0;
      } else {
        const double s = (t - 0.5) / 0.5;
        rc = 1.0;
        gc = 1.0 - s;
        bc = 1.0 - s;
      }
      row[static_cast<std::size_t>(i) * 3 + 0] = static_cast<unsigned char>(std::lround(255.0 * rc));
      row[static_cast<std::size_t>(i) * 3 + 1] = static_cast<unsigned char>(std::lround(255.0 * gc));
      row[static_cast<std::size_t>(i) * 3 + 2] = static_cast<unsigned char>(std::lround(255.0 * bc));
    }
    f.write(reinterpret_cast<const char*>(row.data()), static_cast<std::streamsize>(row.size()));
  }
}

namespace {

void write_channel(const FieldGrid& g, const std::string& base) {
  write_csv_grid(g, base + ".csv");
  write_ppm_heatmap(g, base + ".ppm");
}

std::string channel_suffix(int channels, int c) {
  return channels > 1 ? "_c" + std::to_string(c) : "";
}

}  // namespace

void export_fields(const prob::BenchmarkProblem& pb, const prob::PairEval& pair, int M,
                   const std::string& out_dir) {
  const auto pts = geom::eval_grid(pb.domain, M);
  const int fd = pb.field_dim;
  const int md = pb.multiplier_dim;
  std::vector<FieldGrid> exact(fd), pred(fd), err(fd), lam(md);
  for (auto& g : exact) { g.M = M; g.values.resize(pts.size()); }
  for (auto& g : pred) { g.M = M; g.values.resize(pts.size()); }
  for (auto& g : err) { g.M = M; g.values.resize(pts.size()); }
  for (auto& g : lam) { g.M = M; g.values.resize(pts.size()); }
  std::vector<ad::Jet> je(fd), ja(fd);
  std::vector<double> lv(md);
  for (std::size_t k = 0; k < pts.size(); ++k) {
    pb.exact_u_jets(pts[k], je.data());
    pair.u_jets(pts[k], ja.data());
    pair.lambda_values(pts[k], lv.data());
    for (int c = 0; c < fd; ++c) {
      exact[c].values[k] = je[c].v;
      pred[c].values[k] = ja[c].v;
      err[c].values[k] = ja[c].v - je[c].v;
    }
    for (int c = 0; c < md; ++c) lam[c].values[k] = lv[c];
  }
  for (int c = 0; c < fd; ++c) {
    write_channel(exact[c], out_dir + "/exact_u" + channel_suffix(fd, c));
    write_channel(pred[c], out_dir + "/predicted_u" + channel_suffix(fd, c));
    write_channel(err[c], out_dir + "/error_u" + channel_suffix(fd, c));
  }
  for (int c = 0; c < md; ++c)
    write_channel(lam[c], out_dir + "/predicted_lambda" + channel_suffix(md, c));
}

void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream f(path);
  if (!f) throw std::runtime_error("cannot write file: " + path);
  f << content;
}

}  // namespace cpinn::io
