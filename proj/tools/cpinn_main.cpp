#include <CLI11.hpp>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <map>

#include "cpinn/artifacts.hpp"
#include "cpinn/checks.hpp"
#include "cpinn/evaluation.hpp"
#include "cpinn/manifest.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitNumerical = 3;

int cmd_run(const cpinn::io::RunManifest& manifest) {
  using namespace cpinn;
  const auto t0 = std::chrono::steady_clock::now();
  prob::BenchmarkProblem pb;
  loss::LossConfig loss_cfg;
  try {
    pb = prob::make_problem(manifest.exp, manifest.problem_options());
    loss_cfg = manifest.loss_config();
    std::filesystem::create_directories(manifest.out);
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  try {
    eval::SingleRun run = eval::run_single(pb, loss_cfg.variant, manifest.n, manifest.seed,
                                           loss_cfg, manifest.engd_config(), manifest.eval_res,
                                           manifest.timing);
    const std::string dir = manifest.out;
    io::save_manifest(manifest, dir + "/manifest.txt");
    io::write_text_file(dir + "/history.csv", run.history_csv);
    io::write_text_file(dir + "/report.csv",
                        std::string(eval::kReportHeader) + "\n" + eval::report_row(run.report) +
                            "\n");
    run.nets.u_net.save_snapshot(dir + "/params_u.bin");
    run.nets.lambda_net.save_snapshot(dir + "/params_lambda.bin");
    io::export_fields(pb, prob::pair_from_networks(run.nets), manifest.eval_res, dir);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::printf("%s %s N=%d seed=%llu: rel H1 error %.4g%%, final loss %.6g (%.1f s)\n",
                manifest.exp.c_str(), manifest.variant.c_str(), manifest.n,
                static_cast<unsigned long long>(manifest.seed), run.report.rel_h1_pct,
                run.report.final_loss, wall);
    std::printf("artifacts written to %s\n", dir.c_str());
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "run failed: " << e.what() << "\n";
    return kExitNumerical;
  }
}

int cmd_table(cpinn::eval::TableSpec spec, const std::string& out_path) {
  using namespace cpinn;
  std::vector<eval::TableRow> rows;
  try {
    prob::make_problem(spec.problem_id, spec.options);  // validate early
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  }
  rows = eval::run_table(spec);
  std::string csv = std::string(eval::kReportHeader) + ",error\n";
  for (const auto& row : rows) csv += eval::report_row(row.report) + "," + row.error + "\n";
  try {
    if (!out_path.empty()) {
      std::filesystem::create_directories(std::filesystem::path(out_path).parent_path().empty()
                                              ? "."
                                              : std::filesystem::path(out_path).parent_path()
                                                    .string());
      io::write_text_file(out_path, csv);
    }
  } catch (const std::exception& e) {
    std::cerr << "cannot write table: " << e.what() << "\n";
    return kExitConfig;
  }
  if (out_path.empty()) std::cout << csv;
  // console summary: median error per (N, variant)
  std::map<int, std::map<std::string, std::vector<double>>> by_cell;
  for (const auto& row : rows)
    if (row.error.empty()) by_cell[row.report.N][row.report.variant].push_back(row.report.rel_h1_pct);
  auto median = [](std::vector<double> v) {
    std::sort(v.begin(), v.end());
    return v.empty() ? 0.0 : v[v.size() / 2];
  };
  std::printf("%-6s %-14s %-14s\n", "N", "PINN err(%)", "CPINN err(%)");
  for (auto& [N, cells] : by_cell) {
    const double p = cells.count("pinn") ? median(cells["pinn"]) : std::nan("");
    const double c = cells.count("cpinn") ? median(cells["cpinn"]) : std::nan("");
    std::printf("%-6d %-14.4g %-14.4g\n", N, p, c);
  }
  for (const auto& row : rows)
    if (!row.error.empty())
      std::fprintf(stderr, "row %s N=%d seed=%llu failed: %s\n", row.report.variant.c_str(),
                   row.report.N, static_cast<unsigned long long>(row.report.seed),
                   row.error.c_str());
  return kExitOk;
}

int cmd_check(const cpinn::checks::CheckTweaks& tweaks) {
  const auto results = cpinn::checks::run_fast_checks(tweaks);
  bool all = true;
  for (const auto& r : results) {
    std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.group.c_str(), r.detail.c_str());
    all = all && r.pass;
  }
  return all ? kExitOk : 1;
}

std::vector<std::uint64_t> parse_seed_list(const std::vector<std::uint64_t>& v) {
  return v.empty() ? std::vector<std::uint64_t>{1} : v;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Mesh-free mixed solver for elliptic obstacle problems"};
  app.require_subcommand(1);

  // ---- run ----
  auto* run = app.add_subcommand("run", "train one experiment and export artifacts");
  cpinn::io::RunManifest manifest;
  std::string manifest_path;
  run->add_option("--manifest", manifest_path, "load a key=value manifest (other flags ignored)");
  run->add_option("--exp", manifest.exp, "experiment id (exp1..exp7)");
  run->add_option("--variant", manifest.variant, "pinn | cpinn");
  run->add_option("--n", manifest.n, "grid parameter N");
  run->add_option("--seed", manifest.seed, "initialization seed");
  run->add_option("--epochs", manifest.epochs, "training epochs");
  run->add_option("--step", manifest.step, "initial step size");
  run->add_option("--damping", manifest.damping, "Gram damping");
  run->add_option("--nu", manifest.nu, "Poisson ratio (exp5)");
  run->add_option("--r", manifest.r, "contact radius (exp7)");
  run->add_option("--constraint", manifest.constraint, "literal | hard-lambda | hinge");
  run->add_option("--hinge-weight", manifest.hinge_weight, "hinge penalty weight");
  run->add_option("--out", manifest.out, "output directory");
  run->add_option("--eval-res", manifest.eval_res, "evaluation grid resolution");
  run->add_flag("--timing", manifest.timing, "record wall time in the report CSV");

  // ---- table ----
  auto* table = app.add_subcommand("table", "error table over N / variants / seeds");
  std::string t_exp = "exp1", t_out, t_constraint = "literal";
  std::vector<std::string> t_variants = {"pinn", "cpinn"};
  std::vector<int> t_ns = {5, 10, 15, 20, 25, 30};
  std::vector<std::uint64_t> t_seeds;
  int t_epochs = 500, t_eval_res = 201, t_threads = 0;
  double t_nu = 0.3, t_r = 0.7, t_hinge = 1.0;
  bool t_timing = false;
  table->add_option("--exp", t_exp, "experiment id");
  table->add_option("--variants", t_variants, "subset of {pinn, cpinn}");
  table->add_option("--ns", t_ns, "grid parameters");
  table->add_option("--seeds", t_seeds, "seeds (default 1)");
  table->add_option("--epochs", t_epochs, "training epochs");
  table->add_option("--nu", t_nu, "Poisson ratio (exp5)");
  table->add_option("--r", t_r, "contact radius (exp7)");
  table->add_option("--constraint", t_constraint, "literal | hard-lambda | hinge");
  table->add_option("--hinge-weight", t_hinge, "hinge penalty weight");
  table->add_option("--out", t_out, "output CSV path (stdout if omitted)");
  table->add_option("--eval-res", t_eval_res, "evaluation grid resolution");
  table->add_option("--threads", t_threads, "row parallelism (0 = CPINN_THREADS/auto)");
  table->add_flag("--timing", t_timing, "record wall times in the CSV");

  // ---- check ----
  auto* check = app.add_subcommand("check", "fast verification suite");
  cpinn::checks::CheckTweaks tweaks;
  check->add_flag("--corrupt-hessian", tweaks.corrupt_hessian)->group("");
  check->add_flag("--corrupt-ru-exponents", tweaks.corrupt_ru_exponents)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  if (run->parsed()) {
    if (!manifest_path.empty()) {
      try {
        manifest = cpinn::io::load_manifest(manifest_path);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return kExitConfig;
      }
    }
    return cmd_run(manifest);
  }
  if (table->parsed()) {
    cpinn::eval::TableSpec spec;
    spec.problem_id = t_exp;
    spec.options.nu = t_nu;
    spec.options.r = t_r;
    try {
      spec.variants.clear();
      for (const auto& v : t_variants) spec.variants.push_back(cpinn::io::variant_from_string(v));
      spec.constraint = cpinn::io::constraint_from_string(t_constraint);
    } catch (const std::exception& e) {
      std::cerr << "config error: " << e.what() << "\n";
      return kExitConfig;
    }
    spec.Ns = t_ns;
    spec.seeds = parse_seed_list(t_seeds);
    spec.hinge_weight = t_hinge;
    spec.engd.epochs = t_epochs;
    spec.eval_res = t_eval_res;
    spec.threads = t_threads;
    spec.timing = t_timing;
    return cmd_table(spec, t_out);
  }
  return cmd_check(tweaks);
}
