// bogospec: compute Bogoliubov excitation spectra and ground-state energies
// for a weakly interacting trapped Bose gas, and cross-check them against
// exact diagonalization at desk scale.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <future>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "bogospec/bogoliubov.hpp"
#include "bogospec/config.hpp"
#include "bogospec/fock.hpp"
#include "bogospec/hartree.hpp"
#include "bogospec/onebody.hpp"
#include "bogospec/report.hpp"
#include "bogospec/torus.hpp"

namespace bs = bogospec;

namespace {

struct Pipeline {
  bs::GridSpec grid;
  bs::ExternalPotential pot;
  bs::Interaction v;
  bs::HartreeSolution sol;
  bs::OneBodySet ob;
  bs::BogoliubovResult bog;
};

Pipeline run_pipeline(const bs::RunConfig& cfg) {
  Pipeline p;
  p.grid = cfg.make_grid();
  p.pot = cfg.make_potential();
  p.v = cfg.make_interaction();

  auto ptype = bs::validate_positive_type(p.v, p.grid);
  if (!ptype.pass)
    throw std::runtime_error("interaction failed positive-type validation (min coefficient " +
                             bs::format_real(ptype.min_coefficient) + ")");

  p.sol = bs::solve_hartree(p.grid, p.pot, p.v, cfg.scf);
  if (!p.sol.converged)
    throw std::runtime_error("Hartree SCF did not converge in " +
                             std::to_string(p.sol.iterations) +
                             " iterations (residual " + bs::format_real(p.sol.residual) + ")");
  p.ob = bs::assemble_onebody(p.sol, p.grid, p.pot, p.v, cfg.resolved_m_modes());
  p.bog = bs::compute_E(p.ob);
  return p;
}

void echo_config_meta(const bs::RunConfig& cfg, bs::ResultBundle& bundle) {
  auto add = [&](const std::string& k, const std::string& v) { bundle.meta.emplace_back(k, v); };
  add("version", "0.1.0");
  add("model.kind", cfg.model_kind);
  if (cfg.model_kind == "trap") {
    add("grid.L", bs::format_real(cfg.grid_L));
    add("grid.n", std::to_string(cfg.grid_n));
  } else {
    add("grid.n", std::to_string(cfg.grid_n));
    add("modes.d", std::to_string(cfg.modes_d));
    add("modes.K", std::to_string(cfg.modes_K));
  }
  add("potential.kind", cfg.potential_kind);
  add("interaction.kind", cfg.interaction_kind);
  add("interaction.g", bs::format_real(cfg.interaction_g));
  if (cfg.interaction_kind == "gaussian") add("interaction.s", bs::format_real(cfg.interaction_s));
  add("scf.eta", bs::format_real(cfg.scf.mixing));
  add("scf.tol", bs::format_real(cfg.scf.tol));
  add("spectrum.m_modes", std::to_string(cfg.resolved_m_modes()));
}

void write_outputs(const bs::ResultBundle& bundle, const bs::RunConfig& cfg) {
  const bool csv = cfg.output_format != bs::OutputFormat::json;
  const bool json = cfg.output_format != bs::OutputFormat::csv;
  for (const auto& path : bs::write_bundle(bundle, cfg.output_dir, csv, json))
    std::cout << "wrote " << path << "\n";
}

int cmd_validate(const bs::RunConfig& cfg) {
  auto grid = cfg.make_grid();
  auto v = cfg.make_interaction();
  auto rep = bs::validate_positive_type(v, grid);

  bs::ResultBundle bundle;
  bundle.command = "validate";
  echo_config_meta(cfg, bundle);
  bs::Table t;
  t.name = "validate";
  t.columns = {{"min_coefficient", bs::CellType::real},
               {"at_momentum", bs::CellType::real},
               {"v0", bs::CellType::real},
               {"samples", bs::CellType::integer},
               {"pass", bs::CellType::boolean}};
  t.add_row({rep.min_coefficient, rep.at_momentum, rep.v0, std::int64_t(rep.samples), rep.pass});
  bundle.tables.push_back(t);
  write_outputs(bundle, cfg);

  std::cout << "positive-type validation: " << (rep.pass ? "pass" : "FAIL")
            << " (min coefficient " << bs::format_real(rep.min_coefficient) << " at p = "
            << rep.at_momentum << ")\n";
  return rep.pass ? 0 : 1;
}

int cmd_hartree(const bs::RunConfig& cfg) {
  auto grid = cfg.make_grid();
  auto pot = cfg.make_potential();
  auto v = cfg.make_interaction();
  auto sol = bs::solve_hartree(grid, pot, v, cfg.scf);

  bs::ResultBundle bundle;
  bundle.command = "hartree";
  echo_config_meta(cfg, bundle);
  bs::Table t;
  t.name = "hartree";
  t.columns = {{"eps0", bs::CellType::real},
               {"hartree_energy", bs::CellType::real},
               {"h00", bs::CellType::real},
               {"v0000", bs::CellType::real},
               {"residual", bs::CellType::real},
               {"iterations", bs::CellType::integer},
               {"converged", bs::CellType::boolean},
               {"boundary_amplitude", bs::CellType::real}};
  t.add_row({sol.eps0, sol.hartree_energy, sol.kinetic_ext, sol.v0000, sol.residual,
             std::int64_t(sol.iterations), sol.converged, sol.boundary_amplitude});
  bundle.tables.push_back(t);
  write_outputs(bundle, cfg);

  std::cout << "eps0 = " << bs::format_real(sol.eps0) << "  (residual "
            << bs::format_real(sol.residual) << ", " << sol.iterations << " iterations)\n";
  if (!grid.periodic() && sol.boundary_amplitude > 1e-8)
    std::cout << "warning: phi0 boundary amplitude " << bs::format_real(sol.boundary_amplitude)
              << " > 1e-8; enlarge grid.L\n";
  return sol.converged ? 0 : 1;
}

int cmd_spectrum(const bs::RunConfig& cfg) {
  Pipeline p = run_pipeline(cfg);

  bs::ResultBundle bundle;
  bundle.command = "spectrum";
  echo_config_meta(cfg, bundle);
  bundle.meta.emplace_back("trace_correction", bs::format_real(p.bog.trace_correction));
  bundle.meta.emplace_back("coeff_linear", bs::format_real(p.bog.coeff_linear));
  bundle.meta.emplace_back("coeff_const", bs::format_real(p.bog.coeff_const));

  bs::Table t;
  t.name = "spectrum";
  t.columns = {{"index", bs::CellType::integer}, {"e_i", bs::CellType::real}};
  for (bs::Index i = 0; i < p.bog.e.size(); ++i)
    t.add_row({std::int64_t(i + 1), p.bog.e(i)});
  bundle.tables.push_back(t);

  if (cfg.spectrum_xi > 0.0) {
    std::vector<double> e(p.bog.e.data(), p.bog.e.data() + p.bog.e.size());
    auto sums = bs::enumerate_excitations(e, cfg.spectrum_xi, 1000);
    bs::Table ex;
    ex.name = "excitations";
    ex.columns = {{"index", bs::CellType::integer}, {"energy", bs::CellType::real}};
    for (std::size_t i = 0; i < sums.size(); ++i) ex.add_row({std::int64_t(i), sums[i]});
    bundle.tables.push_back(ex);
  }
  write_outputs(bundle, cfg);

  std::cout << "e_1 = " << bs::format_real(p.bog.e(0)) << ", tr(D+V-E) = "
            << bs::format_real(p.bog.trace_correction) << "\n"
            << "E0(N) ~ " << bs::format_real(p.bog.coeff_linear) << " * N + "
            << bs::format_real(p.bog.coeff_const) << "\n";
  return 0;
}

int cmd_bdg(const bs::RunConfig& cfg) {
  Pipeline p = run_pipeline(cfg);
  bs::Vec omega = bs::bdg_spectrum(p.ob);

  bs::ResultBundle bundle;
  bundle.command = "bdg";
  echo_config_meta(cfg, bundle);
  bs::Table t;
  t.name = "bdg";
  t.columns = {{"index", bs::CellType::integer},
               {"omega_bdg", bs::CellType::real},
               {"e_direct", bs::CellType::real},
               {"rel_diff", bs::CellType::real}};
  int bad_row = -1;
  double worst = 0.0;
  const int levels = static_cast<int>(std::min<bs::Index>(10, omega.size()));
  for (bs::Index i = 0; i < omega.size(); ++i) {
    double rel = std::abs(omega(i) - p.bog.e(i)) / p.bog.e(i);
    if (i < levels && rel > worst) worst = rel;
    if (i < levels && rel > 1e-8 && bad_row < 0) bad_row = static_cast<int>(i);
    t.add_row({std::int64_t(i + 1), omega(i), p.bog.e(i), rel});
  }
  bundle.tables.push_back(t);
  write_outputs(bundle, cfg);

  std::cout << "BdG vs direct spectrum: max relative difference "
            << bs::format_real(worst) << " over the first " << levels << " levels\n";
  if (bad_row >= 0) {
    std::cout << "FAIL: level " << (bad_row + 1) << " differs beyond 1e-8\n";
    return 1;
  }
  return 0;
}

int cmd_torus_oracle(const bs::RunConfig& cfg) {
  if (cfg.model_kind != "torus")
    throw bs::ConfigError("torus-oracle requires model.kind = torus", 2);
  auto basis = cfg.make_modes();
  auto v = cfg.make_interaction();
  auto exact = bs::torus_spectrum(basis, v);
  auto stencil = bs::torus_spectrum(basis, v, cfg.grid_n);

  bs::ResultBundle bundle;
  bundle.command = "torus-oracle";
  echo_config_meta(cfg, bundle);
  bundle.meta.emplace_back("trace_sum", bs::format_real(exact.trace_sum));
  bundle.meta.emplace_back("trace_sum_stencil", bs::format_real(stencil.trace_sum));

  bs::Table t;
  t.name = "torus_oracle";
  t.columns = {{"k1", bs::CellType::integer}, {"k2", bs::CellType::integer},
               {"k3", bs::CellType::integer}, {"vhat", bs::CellType::real},
               {"e", bs::CellType::real},     {"e_stencil", bs::CellType::real}};
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const auto& k = basis.indices[i];
    t.add_row({std::int64_t(k[0]), std::int64_t(k[1]), std::int64_t(k[2]), exact.vhat[i],
               exact.e[i], stencil.e[i]});
  }
  bundle.tables.push_back(t);
  write_outputs(bundle, cfg);

  std::cout << "trace sum = " << bs::format_real(exact.trace_sum)
            << " (stencil-corrected " << bs::format_real(stencil.trace_sum) << ")\n";
  return 0;
}

bs::Table ed_compare_table(const bs::TheoremReport& report) {
  bs::Table t;
  t.name = "ed_compare";
  t.columns = {{"N", bs::CellType::integer},
               {"E0_ed", bs::CellType::real},
               {"E0_bog", bs::CellType::real},
               {"delta0", bs::CellType::real},
               {"delta0_sqrtN", bs::CellType::real},
               {"gap1_ed", bs::CellType::real},
               {"gap1_bog", bs::CellType::real},
               {"depletion", bs::CellType::real},
               {"TH_expect", bs::CellType::real},
               {"overlap_sq", bs::CellType::real},
               {"lemma1_lower_ok", bs::CellType::boolean},
               {"lemma1_upper_ok", bs::CellType::boolean},
               {"lemma3_ok", bs::CellType::boolean}};
  for (const auto& r : report.rows) {
    t.add_row({std::int64_t(r.N), r.E0_ed, r.E0_pred, r.delta0, r.delta0 * std::sqrt(double(r.N)),
               r.gap1_ed, r.gap1_bog, r.depletion, r.th_expect, r.overlap_sq, r.lemma1_lower_ok,
               r.lemma1_upper_ok, r.lemma3_ok});
  }
  return t;
}

int finish_ed_command(const bs::RunConfig& cfg, const bs::TheoremReport& report,
                      const Pipeline& p, const char* command, bool trend_checks) {
  bs::ResultBundle bundle;
  bundle.command = command;
  echo_config_meta(cfg, bundle);
  bundle.meta.emplace_back("trace_full", bs::format_real(p.bog.trace_correction));
  if (!report.rows.empty())
    bundle.meta.emplace_back("trace_truncated", bs::format_real(report.rows[0].trace_truncated));
  bundle.tables.push_back(ed_compare_table(report));
  write_outputs(bundle, cfg);

  if (!report.rows.empty()) {
    const auto& r0 = report.rows.front();
    std::cout << "mode-truncation contribution to E0: "
              << bs::format_real(0.5 * std::abs(r0.trace_full - r0.trace_truncated))
              << " (trace " << bs::format_real(r0.trace_full) << " full vs "
              << bs::format_real(r0.trace_truncated) << " on the ED mode set)\n";
  }
  for (const auto& r : report.rows) {
    std::printf("N=%3d  E0_ed=%.10f  E0_bog=%.10f  delta0=%.3e  gap1_err=%.3e  ovl=%.10f\n", r.N,
                r.E0_ed, r.E0_pred, r.delta0, std::abs(r.gap1_ed - r.gap1_bog), r.overlap_sq);
    if (!r.lemma1_lower_ok || !r.lemma1_upper_ok)
      return std::cout << "FAIL: lemma1 bracket columns false at N=" << r.N << "\n", 1;
    if (!r.lemma3_ok) return std::cout << "FAIL: lemma3_ok false at N=" << r.N << "\n", 1;
    if (!r.expectation_ok)
      return std::cout << "FAIL: expectation-value bounds violated at N=" << r.N << "\n", 1;
  }

  if (trend_checks && report.rows.size() > 1) {
    for (std::size_t i = 1; i < report.rows.size(); ++i) {
      const auto& a = report.rows[i - 1];
      const auto& b = report.rows[i];
      if (b.delta0 >= a.delta0)
        return std::cout << "FAIL: delta0 not decreasing between N=" << a.N << " and N=" << b.N
                         << "\n", 1;
      if (std::abs(b.gap1_ed - b.gap1_bog) >= std::abs(a.gap1_ed - a.gap1_bog))
        return std::cout << "FAIL: gap error not decreasing between N=" << a.N << " and N=" << b.N
                         << "\n", 1;
      if (b.overlap_sq <= a.overlap_sq)
        return std::cout << "FAIL: overlap_sq not increasing between N=" << a.N << " and N=" << b.N
                         << "\n", 1;
    }
    std::cout << "sweep trends: delta0 decreasing, gap error decreasing, overlap increasing\n";
  }
  return 0;
}

int cmd_ed_compare(const bs::RunConfig& cfg) {
  Pipeline p = run_pipeline(cfg);
  bs::EdOptions opts;
  opts.excited_modes_M = cfg.ed_M;
  opts.particle_numbers = cfg.ed_N_list;
  opts.k_states = cfg.ed_k_states;
  opts.basis_cap = cfg.ed_cap;
  auto report = bs::verify_theorem(p.sol, p.grid, p.pot, p.v, p.ob, p.bog, opts);
  return finish_ed_command(cfg, report, p, "ed-compare", false);
}

int cmd_sweep(const bs::RunConfig& cfg) {
  Pipeline p = run_pipeline(cfg);

  // N-points are independent; run them concurrently and merge in N order
  std::vector<std::future<bs::TheoremReport>> futures;
  for (int N : cfg.ed_N_list) {
    futures.push_back(std::async(std::launch::async, [&, N]() {
      bs::EdOptions opts;
      opts.excited_modes_M = cfg.ed_M;
      opts.particle_numbers = {N};
      opts.k_states = cfg.ed_k_states;
      opts.basis_cap = cfg.ed_cap;
      return bs::verify_theorem(p.sol, p.grid, p.pot, p.v, p.ob, p.bog, opts);
    }));
  }
  bs::TheoremReport merged;
  for (auto& f : futures) {
    auto rep = f.get();
    merged.rows.insert(merged.rows.end(), rep.rows.begin(), rep.rows.end());
  }
  return finish_ed_command(cfg, merged, p, "sweep", true);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bogoliubov spectrum and exact-diagonalization cross-checks for trapped bosons"};
  app.require_subcommand(1);

  std::string config_path, out_dir, format;
  const std::vector<std::string> names = {"validate", "hartree",    "spectrum", "bdg",
                                          "torus-oracle", "ed-compare", "sweep"};
  const std::vector<std::string> descs = {
      "check the interaction is admissible (positive type)",
      "solve the self-consistent Hartree problem",
      "excitation energies e_i, trace correction and E0(N) coefficients",
      "Bogoliubov-de Gennes block eigenproblem vs direct spectrum",
      "closed-form translation-invariant reference values",
      "exact diagonalization vs Bogoliubov predictions",
      "ed-compare over ed.N_list plus convergence-trend assertions"};
  for (std::size_t i = 0; i < names.size(); ++i) {
    auto* sub = app.add_subcommand(names[i], descs[i]);
    sub->add_option("--config", config_path, "run configuration file")->required();
    sub->add_option("--out", out_dir, "output directory (overrides output.dir)");
    sub->add_option("--format", format, "csv|json|both (overrides output.format)")
        ->check(CLI::IsMember({"csv", "json", "both"}));
  }

  CLI11_PARSE(app, argc, argv);

  const std::string cmd = app.get_subcommands().front()->get_name();
  try {
    bs::RunConfig cfg = bs::load_config(config_path);
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    if (format == "csv") cfg.output_format = bs::OutputFormat::csv;
    if (format == "json") cfg.output_format = bs::OutputFormat::json;
    if (format == "both") cfg.output_format = bs::OutputFormat::both;

    const auto t0 = std::chrono::steady_clock::now();
    int rc = 1;
    if (cmd == "validate") rc = cmd_validate(cfg);
    else if (cmd == "hartree") rc = cmd_hartree(cfg);
    else if (cmd == "spectrum") rc = cmd_spectrum(cfg);
    else if (cmd == "bdg") rc = cmd_bdg(cfg);
    else if (cmd == "torus-oracle") rc = cmd_torus_oracle(cfg);
    else if (cmd == "ed-compare") rc = cmd_ed_compare(cfg);
    else if (cmd == "sweep") rc = cmd_sweep(cfg);
    const auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // wall time goes to stdout only; emitted files stay byte-identical per run
    std::printf("%s finished in %.2f s\n", cmd.c_str(), dt);
    return rc;
  } catch (const bs::ConfigError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
