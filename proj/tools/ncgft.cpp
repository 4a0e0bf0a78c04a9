#include "ncgft/config.hpp"
#include "ncgft/forms.hpp"
#include "ncgft/gauge.hpp"
#include "ncgft/lift.hpp"
#include "ncgft/ssbm.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>

using nlohmann::json;

namespace
{

  using namespace ncgft;

  struct CommonArgs
  {
    std::string config_path;
    std::string preset;
    std::string out_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    int threads = 0;
  };

  void add_common(CLI::App * cmd, CommonArgs & args)
  {
    cmd->add_option("--config", args.config_path, "configuration file (.json or .toml)");
    cmd->add_option("--preset", args.preset, "built-in case (case1..case4)");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_option("--seed", args.seed, "random seed")->each([&](const std::string &) {
      args.seed_set = true;
    });
    cmd->add_option("--threads", args.threads, "worker threads for restarts");
  }

  RunConfig resolve_config(const CommonArgs & args)
  {
    RunConfig cfg;
    if (!args.config_path.empty()) {
      cfg = load_config_file(args.config_path);
    } else if (!args.preset.empty()) {
      cfg = parse_config(preset_config(args.preset));
    } else {
      throw std::runtime_error("either --config or --preset is required");
    }
    if (!args.out_dir.empty()) cfg.output_dir = args.out_dir;
    if (args.seed_set) cfg.opts.seed = args.seed;
    if (args.threads > 0) cfg.opts.threads = args.threads;
    // refresh the echo for overridden values
    cfg.echo["seed"] = cfg.opts.seed;
    cfg.echo["threads"] = cfg.opts.threads;
    cfg.echo["output"] = cfg.output_dir;
    return cfg;
  }

  std::vector<SlBasis> source_bases(const EmbeddingSpec & spec)
  {
    std::vector<SlBasis> out;
    for (int n : spec.source.dims) out.push_back(gellmann_basis(n));
    return out;
  }

  void write_file(const std::filesystem::path & path, const std::string & text)
  {
    std::filesystem::create_directories(path.parent_path());
    std::ofstream os(path, std::ios::binary);
    os << text;
  }

  json spectrum_json(const MassSpectrum & spec)
  {
    json out;
    out["masses"] = json::array();
    for (size_t k = 0; k < spec.masses.size(); k++) {
      out["masses"].push_back({{"mass", spec.masses[k]}, {"label", spec.labels[k]}});
    }
    out["clusters"] = json::array();
    for (const MassCluster & cl : spec.clusters) {
      out["clusters"].push_back({{"mass", cl.mass},
                                 {"degeneracy", cl.degeneracy},
                                 {"label", cl.label}});
    }
    return out;
  }

  int cmd_basis(const RunConfig & cfg)
  {
    LiftedBasis basis = build_lifted_basis(cfg.spec, source_bases(cfg.spec));
    DofCounts dof = dof_counts(basis);
    json out;
    out["config"] = cfg.echo;
    out["n_idof"] = dof.n_idof;
    out["n_ndof"] = dof.n_ndof;
    out["r_dof"] = dof.r_dof;
    out["blocks"] = json::array();
    const char * family_names[] = {"pad-block", "off-envelope", "intra-envelope-offdiag",
                                   "copy-difference", "cross-envelope-diagonal"};
    for (const LiftedBlock & blk : basis.blocks) {
      json b;
      b["m"] = blk.m;
      b["inherited"] = blk.n_inherited;
      b["family_counts"] = blk.family_counts;
      b["generators"] = json::array();
      for (int g = 0; g < blk.full.dim(); g++) {
        const GenLabel & lab = blk.labels[g];
        json entry;
        entry["index"] = g;
        entry["class"] = lab.class_string();
        if (lab.inherited) {
          entry["inherited"] = {{"i", lab.i + 1}, {"ell", lab.ell + 1}, {"alpha", lab.alpha + 1}};
        } else {
          entry["family"] = family_names[lab.family];
        }
        json mat = json::array();
        for (int p = 0; p < blk.m; p++) {
          json row = json::array();
          for (int q = 0; q < blk.m; q++) {
            row.push_back({blk.full.E[g](p, q).real(), blk.full.E[g](p, q).imag()});
          }
          mat.push_back(row);
        }
        entry["matrix"] = mat;
        b["generators"].push_back(entry);
      }
      out["blocks"].push_back(b);
    }
    write_file(std::filesystem::path(cfg.output_dir) / "basis.json", out.dump(2) + "\n");
    std::cout << "n_idof=" << dof.n_idof << " n_ndof=" << dof.n_ndof
              << " r_dof=" << dof.r_dof << "\n";
    return 0;
  }

  int cmd_scan(const RunConfig & cfg)
  {
    LiftedBasis basis = build_lifted_basis(cfg.spec, source_bases(cfg.spec));
    ScanResult scan = scan_path(basis, cfg.path, cfg.opts);
    std::vector<double> disc = detect_discontinuities(basis, scan,
                                                      cfg.discontinuity_threshold, cfg.opts);
    std::ostringstream csv;
    write_csv(scan, csv);
    write_file(std::filesystem::path(cfg.output_dir) / "scan.csv", csv.str());

    bool all_converged = true;
    for (const ScanRow & row : scan.rows) all_converged &= row.min.converged;

    std::vector<SummaryRow> table = summarize({cfg.name}, {&basis}, {disc});
    json out;
    out["config"] = cfg.echo;
    out["discontinuities"] = disc;
    out["all_converged"] = all_converged;
    out["summary"] = json::array();
    for (const SummaryRow & row : table) {
      json r = {{"case", row.name},
                {"n_ndof", row.n_ndof},
                {"n_idof", row.n_idof},
                {"r_dof", row.r_dof}};
      if (std::isfinite(row.lambda_first)) r["lambda_first"] = row.lambda_first;
      if (std::isfinite(row.lambda_second)) r["lambda_second"] = row.lambda_second;
      if (!row.warnings.empty()) r["warnings"] = row.warnings;
      out["summary"].push_back(r);
    }
    write_file(std::filesystem::path(cfg.output_dir) / "summary.json", out.dump(2) + "\n");
    std::cout << "scan: " << scan.rows.size() << " points, "
              << disc.size() << " discontinuities";
    for (double d : disc) std::cout << " " << d;
    std::cout << (all_converged ? "" : " [UNCONVERGED POINTS]") << "\n";
    return all_converged ? 0 : 2;
  }

  int cmd_masses(const RunConfig & cfg)
  {
    LiftedBasis basis = build_lifted_basis(cfg.spec, source_bases(cfg.spec));
    std::vector<double> lambdas = cfg.masses_lambdas;
    if (lambdas.empty()) lambdas.assign(cfg.spec.source.rank(), 0.5);
    if (static_cast<int>(lambdas.size()) != cfg.spec.source.rank()) {
      throw std::runtime_error("masses.lambdas must have one entry per source summand");
    }
    MinResult min = minimize_at(basis, lambdas, cfg.opts);
    MassSpectrum spec = mass_spectrum(mass_form(basis, min.minimizer), probe_labels(basis));
    json out;
    out["config"] = cfg.echo;
    out["lambdas"] = lambdas;
    out["V_min"] = min.V_min;
    out["converged"] = min.converged;
    out["spectrum"] = spectrum_json(spec);
    write_file(std::filesystem::path(cfg.output_dir) / "masses.json", out.dump(2) + "\n");
    std::cout << "V_min=" << min.V_min << "\n";
    for (const MassCluster & cl : spec.clusters) {
      std::cout << "  mass " << cl.mass << " x" << cl.degeneracy << " [" << cl.label << "]\n";
    }
    return min.converged ? 0 : 2;
  }

  int cmd_k0(const RunConfig & cfg)
  {
    std::vector<long long> v = cfg.k0_vector;
    if (v.empty()) v.assign(cfg.spec.source.rank(), 1);
    std::vector<long long> beta = k0_pushforward(cfg.spec, v);
    std::cout << "K0 pushforward (beta_j = sum_i alpha_ji v_i)\n  v = (";
    for (size_t i = 0; i < v.size(); i++) std::cout << (i ? "," : "") << v[i];
    std::cout << ")  ->  (";
    for (size_t j = 0; j < beta.size(); j++) std::cout << (j ? "," : "") << beta[j];
    std::cout << ")\n";
    return 0;
  }

  int cmd_check(const RunConfig & cfg)
  {
    int failures = 0;
    auto report = [&](const std::string & name, bool ok) {
      std::cout << (ok ? "[ OK ] " : "[FAIL] ") << name << "\n";
      if (!ok) failures++;
    };

    for (int n = 2; n <= 5; n++) {
      SlBasis b = gellmann_basis(n);
      RMat dev = b.gram + RMat::Identity(b.dim(), b.dim());
      report("sl(" + std::to_string(n) + ") gram = -I",
             dev.cwiseAbs().maxCoeff() <= 1e-12);
      report("sl(" + std::to_string(n) + ") Jacobi residual",
             jacobi_residual(b) <= 1e-10);
    }

    LiftedBasis basis = build_lifted_basis(cfg.spec, source_bases(cfg.spec));
    DofCounts dof = dof_counts(basis);
    report("counting identity |J^phi| + |J^c| = sum m_j^2 - s", [&] {
      int total = 0;
      for (int m : cfg.spec.target.dims) total += m * m - 1;
      return dof.n_idof + dof.n_ndof == total;
    }());

    // inherited/complement Gram orthogonality
    bool ortho = true;
    for (const LiftedBlock & blk : basis.blocks) {
      RMat dev = blk.full.gram + RMat::Identity(blk.full.dim(), blk.full.dim());
      ortho &= dev.cwiseAbs().maxCoeff() <= 1e-10;
    }
    report("adapted basis orthonormal", ortho);

    // null and basis configurations are flat
    report("V(null) = 0", higgs_potential(basis, zero_config(basis)) <= 1e-10);
    report("V(basis) = 0", higgs_potential(basis, basis_config(basis)) <= 1e-10);

    // analytic gradient vs central differences at a deterministic point
    {
      RandomStream rng(42);
      int n = free_dimension(basis);
      RVec x(n);
      for (int k = 0; k < n; k++) x(k) = rng.uniform(-0.5, 0.5);
      std::vector<double> lambdas(cfg.spec.source.rank(), 0.3);
      FieldConfiguration c = unflatten_free(basis, lambdas, x);
      RVec g = higgs_gradient(basis, c);
      double h = 1e-5, worst = 0;
      for (int k = 0; k < std::min(n, 20); k++) {
        RVec xp = x, xm = x;
        xp(k) += h;
        xm(k) -= h;
        double fp = higgs_potential(basis, unflatten_free(basis, lambdas, xp));
        double fm = higgs_potential(basis, unflatten_free(basis, lambdas, xm));
        double fd = (fp - fm) / (2 * h);
        worst = std::max(worst, std::abs(fd - g(k)) / std::max(1.0, std::abs(fd)));
      }
      report("analytic gradient vs finite differences", worst <= 1e-5);
    }

    // mass lemma at the basis configuration
    {
      RMat M = mass_form(basis, basis_config(basis));
      MassSpectrum spec = mass_spectrum(M, probe_labels(basis));
      // per block: one vanishing (trace) eigenvalue, the rest equal to 2m
      bool ok = true;
      int zeros = 0;
      for (int k = 0; k < spec.eigenvalues.size(); k++) {
        double ev = spec.eigenvalues(k);
        if (ev <= 1e-8) {
          zeros++;
          continue;
        }
        bool matched = false;
        for (const LiftedBlock & blk : basis.blocks) {
          matched |= std::abs(ev - 2.0 * blk.m) <= 1e-6;
        }
        ok &= matched;
      }
      ok &= zeros == static_cast<int>(basis.blocks.size());
      report("mass lemma at the basis configuration", ok);
    }

    std::cout << (failures == 0 ? "check: all passed\n"
                                : "check: " + std::to_string(failures) + " failure(s)\n");
    return failures == 0 ? 0 : 1;
  }

}

int main(int argc, char ** argv)
{
  CLI::App app{"Derivation-based gauge theory on sums of matrix algebras"};
  app.require_subcommand(1);

  CommonArgs args;
  CLI::App * basis = app.add_subcommand("basis", "dump the adapted basis with labels");
  CLI::App * scan = app.add_subcommand("scan", "lambda scan with discontinuity detection");
  CLI::App * masses = app.add_subcommand("masses", "mass spectrum at a single lambda point");
  CLI::App * k0 = app.add_subcommand("k0", "K0 pushforward of a dimension vector");
  CLI::App * check = app.add_subcommand("check", "run the self-check suite");
  for (CLI::App * cmd : {basis, scan, masses, k0, check}) add_common(cmd, args);

  CLI11_PARSE(app, argc, argv);

  try {
    ncgft::RunConfig cfg = resolve_config(args);
    if (basis->parsed()) return cmd_basis(cfg);
    if (scan->parsed()) return cmd_scan(cfg);
    if (masses->parsed()) return cmd_masses(cfg);
    if (k0->parsed()) return cmd_k0(cfg);
    if (check->parsed()) return cmd_check(cfg);
  } catch (const std::exception & e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
