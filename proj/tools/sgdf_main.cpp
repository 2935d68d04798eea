// Command line front end: graph/energy/resistance exports, the gamma probe,
// Besov seminorm comparisons, and the full audit suite. Outputs are
// deterministic for a fixed (command, seed).

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include "sgdf/audit.hpp"
#include "sgdf/besov.hpp"
#include "sgdf/energy.hpp"
#include "sgdf/good_function.hpp"
#include "sgdf/graph.hpp"
#include "sgdf/harmonic_spline.hpp"
#include "sgdf/io.hpp"
#include "sgdf/resistance.hpp"

namespace {

constexpr int kUsageError = 2;
constexpr int kAuditFailure = 1;

struct CommonOptions {
  std::string out;
  std::string format = "csv";
  int max_level = 8;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
  cmd->add_option("--out", opts.out, "Output file (default: stdout)");
  cmd->add_option("--format", opts.format, "Output format: csv or json")
      ->check(CLI::IsMember({"csv", "json"}));
  cmd->add_option("--max-level", opts.max_level, "Raise the level cap (default 8)");
}

int emit(const sgdf::RowTable& table, const CommonOptions& opts) {
  std::ostringstream body;
  if (opts.format == "json")
    sgdf::write_json(body, table);
  else
    sgdf::write_csv(body, table);
  if (opts.out.empty()) {
    std::cout << body.str();
    return 0;
  }
  std::ofstream file(opts.out, std::ios::binary);
  if (!file) {
    std::cerr << "error: cannot open output file '" << opts.out << "'\n";
    return kUsageError;
  }
  file << body.str();
  return 0;
}

int check_level(int level, const CommonOptions& opts) {
  if (level < 1 || level > opts.max_level) {
    std::cerr << "error: --level must lie in [1, " << opts.max_level
              << "] (raise with --max-level)\n";
    return kUsageError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Discrete Dirichlet-form toolkit on the Sierpinski gasket"};
  app.require_subcommand(1);

  // graph
  auto* graph_cmd = app.add_subcommand("graph", "Export the cell graph X_n");
  CommonOptions graph_opts;
  int graph_level = 2;
  graph_cmd->add_option("--level", graph_level, "Graph level n >= 1")->required();
  add_common(graph_cmd, graph_opts);

  // resistance
  auto* res_cmd =
      app.add_subcommand("resistance", "Corner resistances, audits and network export");
  CommonOptions res_opts;
  int res_level = 4;
  bool res_audit = false;
  bool res_network = false;
  res_cmd->add_option("--level", res_level, "Level n >= 1")->required();
  res_cmd->add_flag("--audit", res_audit, "Emit the exhaustive corner-bound audit rows");
  res_cmd->add_flag("--network", res_network, "Emit the unit-conductance network i,j,conductance");
  add_common(res_cmd, res_opts);

  // energy
  auto* energy_cmd = app.add_subcommand("energy", "Energy profile A_n, D_n of a good function");
  CommonOptions energy_opts;
  int energy_level = 6;
  std::string energy_good = "1,0,0";
  bool energy_cells = false;
  energy_cmd->add_option("--level", energy_level, "Deepest level n")->required();
  energy_cmd->add_option("--good", energy_good, "Corner values x0,x1,x2 (rationals)");
  energy_cmd->add_flag("--cells", energy_cells, "Emit cell averages level,word,value instead");
  add_common(energy_cmd, energy_opts);

  // gamma
  auto* gamma_cmd = app.add_subcommand("gamma", "Abel probe (beta*-beta) E_beta toward beta*");
  CommonOptions gamma_opts;
  std::string gamma_good = "1,0,0";
  std::vector<double> gamma_eps;
  gamma_cmd->add_option("--good", gamma_good, "Corner values x0,x1,x2");
  gamma_cmd->add_option("--eps", gamma_eps, "Offsets beta*-beta (default grid)");
  add_common(gamma_cmd, gamma_opts);

  // besov
  auto* besov_cmd =
      app.add_subcommand("besov", "Seminorm family: discrete series, double integral, B^{2,2}");
  CommonOptions besov_opts;
  std::string besov_good = "1,0,0";
  std::vector<double> besov_betas;
  int besov_depth = 4;
  besov_cmd->add_option("--good", besov_good, "Corner values x0,x1,x2");
  besov_cmd->add_option("--beta", besov_betas, "Beta values in (alpha, beta*); default midpoint");
  besov_cmd->add_option("--depth", besov_depth, "Quadrature depth m");
  add_common(besov_cmd, besov_opts);

  // audit-all
  auto* audit_cmd = app.add_subcommand("audit-all", "Run the full audit suite");
  CommonOptions audit_opts;
  int audit_level = 6;
  std::uint64_t audit_seed = 12345;
  audit_cmd->add_option("--level", audit_level, "Level cap for every audit (default 6)");
  audit_cmd->add_option("--seed", audit_seed, "Seed for the randomized audits");
  add_common(audit_cmd, audit_opts);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : kUsageError;
  }

  try {
    if (graph_cmd->parsed()) {
      if (int rc = check_level(graph_level, graph_opts)) return rc;
      return emit(sgdf::graph_table(sgdf::build_graph(graph_level)), graph_opts);
    }

    if (res_cmd->parsed()) {
      if (int rc = check_level(res_level, res_opts)) return rc;
      if (res_audit) {
        const auto audit = sgdf::corner_bound_audit(sgdf::build_graph(res_level));
        return emit(sgdf::corner_audit_table(audit), res_opts);
      }
      if (res_network) {
        const auto net = sgdf::network_from_graph(sgdf::build_graph(res_level));
        return emit(sgdf::network_table(net), res_opts);
      }
      std::vector<sgdf::CornerResistanceRow> rows;
      for (int n = 1; n <= res_level; ++n) {
        const auto g = sgdf::build_graph(n);
        const auto net = sgdf::network_from_graph(g);
        const int a = static_cast<int>(sgdf::Word::repeated(0, n).index());
        const int b = static_cast<int>(sgdf::Word::repeated(1, n).index());
        const double R = sgdf::effective_resistance(net, a, b);
        const double closed = sgdf::to_double(2 * sgdf::corner_resistance_r(n));
        rows.push_back({n, R, closed, std::abs(R - closed) / closed});
      }
      return emit(sgdf::corner_resistance_table(rows), res_opts);
    }

    if (energy_cmd->parsed()) {
      if (int rc = check_level(energy_level, energy_opts)) return rc;
      const sgdf::GoodFunction U = sgdf::parse_good_function(energy_good);
      if (energy_cells) {
        const auto averages = sgdf::to_double(sgdf::exact_cell_averages(U, energy_level));
        return emit(sgdf::cells_table(averages), energy_opts);
      }
      sgdf::EnergyProfile profile;
      for (int n = 1; n <= energy_level; ++n) {
        const auto g = sgdf::build_graph(n);
        const auto e = sgdf::graph_energy(sgdf::exact_cell_averages(U, n), g);
        profile.A.push_back(sgdf::to_double(e.raw));
        profile.D.push_back(sgdf::to_double(e.scaled));
      }
      return emit(sgdf::profile_table(profile), energy_opts);
    }

    if (gamma_cmd->parsed()) {
      const sgdf::GoodFunction U = sgdf::parse_good_function(gamma_good);
      const auto& eps = gamma_eps.empty() ? sgdf::default_eps_grid() : gamma_eps;
      const auto rows = sgdf::abel_probe(sgdf::profile_source(U), eps);
      return emit(sgdf::probe_table(rows), gamma_opts);
    }

    if (besov_cmd->parsed()) {
      if (besov_depth < 1 || besov_depth + 1 > sgdf::BesovGrid::pair_budget_max_depth()) {
        std::cerr << "error: --depth must lie in [1, "
                  << sgdf::BesovGrid::pair_budget_max_depth() - 1 << "]\n";
        return kUsageError;
      }
      const sgdf::GoodFunction U = sgdf::parse_good_function(besov_good);
      const auto u = sgdf::HarmonicSpline::from_good(U);
      std::vector<double> betas = besov_betas;
      if (betas.empty())
        betas.push_back((sgdf::hausdorff_dimension() + sgdf::walk_dimension()) / 2.0);
      const sgdf::BesovGrid grid(besov_depth);
      const auto avg_m1 = sgdf::to_double(u.averages(besov_depth + 1));
      const auto avg_m = sgdf::mean_value(avg_m1, besov_depth);
      const auto src = sgdf::profile_source(u);

      sgdf::RowTable table;
      table.header = {"beta", "depth", "E_discrete", "E_double", "B22", "B2inf"};
      table.numeric = {true, true, true, true, true, true};
      for (double beta : betas) {
        if (!(beta > sgdf::hausdorff_dimension()) || !(beta < sgdf::walk_dimension())) {
          std::cerr << "error: --beta must lie in (alpha, beta*) = ("
                    << sgdf::hausdorff_dimension() << ", " << sgdf::walk_dimension() << ")\n";
          return kUsageError;
        }
        const double e_disc = sgdf::discrete_Ebeta(src, beta, 1e-9).value;
        const double e_dbl = grid.double_integral(avg_m.values, avg_m1.values, beta);
        const auto sem = grid.metric_seminorms(avg_m.values, beta, besov_depth);
        table.rows.push_back({sgdf::format_double(beta), std::to_string(besov_depth),
                              sgdf::format_double(e_disc), sgdf::format_double(e_dbl),
                              sgdf::format_double(sem.b22), sgdf::format_double(sem.b2inf)});
      }
      return emit(table, besov_opts);
    }

    if (audit_cmd->parsed()) {
      if (audit_level < 1) {
        std::cerr << "error: --level must be >= 1\n";
        return kUsageError;
      }
      sgdf::AuditConfig cfg = sgdf::capped(sgdf::acceptance_config(), audit_level);
      cfg.seed = audit_seed;
      const auto results = sgdf::run_all_criteria(cfg);

      std::vector<sgdf::AuditRow> rows;
      bool all_pass = true;
      for (const auto& r : results) {
        for (const auto& row : r.rows) rows.push_back(row);
        all_pass = all_pass && r.pass;
        std::cerr << (r.pass ? "[PASS] " : "[FAIL] ") << "check " << r.id << ": " << r.name
                  << " (" << r.summary << ", " << sgdf::format_double(r.seconds) << "s)\n";
      }
      const int rc = emit(sgdf::audit_table(rows), audit_opts);
      if (rc != 0) return rc;
      if (!all_pass) {
        std::cerr << "failing rows:\n";
        for (const auto& row : rows)
          if (!row.pass)
            std::cerr << "  " << row.check << " n=" << row.n << " lhs=" << row.lhs
                      << " rhs=" << row.rhs << "\n";
        return kAuditFailure;
      }
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  }
  return kUsageError;
}
