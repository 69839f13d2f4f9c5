// orthsig: command-line driver for orthogonal polynomials on path space.
//
// Subcommands: basis, orthcheck, expand, regress, sde-compare, bs,
// naturality, recurrence. Every run is deterministic given its flags; all
// outputs carry the configuration in their header.

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "orthsig/io.hpp"

using namespace orthsig;
using nlohmann::json;

namespace {

struct Output {
  std::string path;  // empty: stdout

  void write(const std::string& content) const {
    if (path.empty()) {
      std::cout << content;
      return;
    }
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open output file: " + path);
    f << content;
  }
};

std::string config_header(const std::string& command,
                          const std::vector<std::pair<std::string, std::string>>& kv) {
  std::ostringstream out;
  out << "# orthsig " << command << "\n";
  for (const auto& [k, v] : kv) out << "# " << k << "=" << v << "\n";
  return out.str();
}

json config_json(const std::string& command,
                 const std::vector<std::pair<std::string, std::string>>& kv) {
  json j{{"command", command}};
  for (const auto& [k, v] : kv) j[k] = v;
  return j;
}

std::string fmt_double(double v) {
  std::ostringstream s;
  s.precision(17);
  s << v;
  return s.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"orthogonal polynomials on path space: exact word algebra, "
               "expected-signature inner products, orthogonal bases and Monte Carlo experiments"};
  app.require_subcommand(1);

  // --- basis ---------------------------------------------------------------
  auto* cmd_basis = app.add_subcommand("basis", "Ito orthogonal basis on binary patterns");
  int basis_degree = 3;
  int basis_lift_d = 0;
  long basis_horizon = 1;
  std::string basis_out;
  cmd_basis->add_option("--max-degree", basis_degree, "max tensor degree of basis keys");
  cmd_basis->add_option("--lift-d", basis_lift_d, "also emit the basis lifted to d letters");
  cmd_basis->add_option("--horizon", basis_horizon, "time horizon T (integer)");
  cmd_basis->add_option("--out", basis_out, "output file (default stdout)");

  // --- orthcheck -----------------------------------------------------------
  auto* cmd_orthcheck = app.add_subcommand("orthcheck", "empirical correlation matrices of "
                                                        "Stratonovich, Ito and orthogonalized features");
  OrthcheckConfig oc;
  std::string oc_out;
  cmd_orthcheck->add_option("--d", oc.d, "spatial dimension");
  cmd_orthcheck->add_option("--max-degree", oc.truncation, "feature truncation degree");
  cmd_orthcheck->add_option("--paths", oc.paths, "number of sample paths");
  cmd_orthcheck->add_option("--steps", oc.steps, "grid steps per path");
  cmd_orthcheck->add_option("--seed", oc.seed, "random seed");
  cmd_orthcheck->add_option("--horizon", oc.horizon, "time horizon T");
  cmd_orthcheck->add_option("--threads", oc.threads, "worker threads");
  cmd_orthcheck->add_option("--out", oc_out, "output file (default stdout)");

  // --- expand / regress ----------------------------------------------------
  struct FitOpts {
    std::string target = "call";
    int d = 1;
    int truncation = 3;
    int paths = 10000;
    int test_paths = 2000;
    int steps = 300;
    std::uint64_t seed = 1;
    double horizon = 1.0;
    double ridge = 0.0;
    double sigma = 0.2, mu = 0.0, S0 = 1.0, strike = 1.0;
    bool augment_time = true;
    int threads = 1;
    std::string out;
  };
  auto add_fit_options = [](CLI::App* cmd, FitOpts& opts) {
    cmd->add_option("--target", opts.target, "target functional: call | lookback | bt2")
        ->check(CLI::IsMember({"call", "lookback", "bt2"}));
    cmd->add_option("--d", opts.d, "spatial dimension (bt2 target only)");
    cmd->add_option("--max-degree", opts.truncation, "truncation degree");
    cmd->add_option("--paths", opts.paths, "training paths");
    cmd->add_option("--test-paths", opts.test_paths, "held-out paths");
    cmd->add_option("--steps", opts.steps, "grid steps per path");
    cmd->add_option("--seed", opts.seed, "random seed");
    cmd->add_option("--horizon", opts.horizon, "time horizon T (integer)");
    cmd->add_option("--augment-time", opts.augment_time,
                    "carry the time coordinate (Ito features require it)");
    cmd->add_option("--sigma", opts.sigma, "Black-Scholes volatility");
    cmd->add_option("--mu", opts.mu, "Black-Scholes drift");
    cmd->add_option("--s0", opts.S0, "initial price");
    cmd->add_option("--strike", opts.strike, "call strike");
    cmd->add_option("--threads", opts.threads, "worker threads");
    cmd->add_option("--out", opts.out, "output file (default stdout)");
  };
  FitOpts expand_opts, regress_opts;
  auto* cmd_expand = app.add_subcommand("expand", "orthogonal series expansion of a payoff");
  add_fit_options(cmd_expand, expand_opts);
  auto* cmd_regress = app.add_subcommand("regress", "OLS signature regression of a payoff");
  add_fit_options(cmd_regress, regress_opts);
  cmd_regress->add_option("--ridge", regress_opts.ridge, "ridge parameter (default 0)");

  // --- sde-compare ----------------------------------------------------------
  auto* cmd_sde = app.add_subcommand("sde-compare", "Taylor vs orthogonal expansion on linear SDEs");
  SdeCompareConfig sc;
  std::string sc_out;
  cmd_sde->add_option("--d", sc.d, "driving dimension");
  cmd_sde->add_option("--state-dim", sc.state_dim, "SDE state dimension");
  cmd_sde->add_option("--n-mats", sc.n_mats, "number of random coefficient draws");
  cmd_sde->add_option("--max-degree", sc.max_truncation, "largest truncation degree");
  cmd_sde->add_option("--paths", sc.train_paths, "training paths");
  cmd_sde->add_option("--test-paths", sc.test_paths, "held-out paths");
  cmd_sde->add_option("--steps", sc.steps, "grid steps per path");
  cmd_sde->add_option("--seed", sc.seed, "random seed");
  cmd_sde->add_option("--horizon", sc.horizon, "time horizon T (integer)");
  cmd_sde->add_option("--threads", sc.threads, "worker threads");
  cmd_sde->add_option("--out", sc_out, "output file (default stdout)");

  // --- bs ---------------------------------------------------------------
  auto* cmd_bs = app.add_subcommand("bs", "Black-Scholes call and lookback payoffs");
  BlackScholesConfig bs;
  std::string bs_out;
  cmd_bs->add_option("--sigma", bs.sigma, "volatility");
  cmd_bs->add_option("--mu", bs.mu, "drift");
  cmd_bs->add_option("--s0", bs.S0, "initial price");
  cmd_bs->add_option("--strike", bs.strike, "call strike");
  cmd_bs->add_option("--max-degree", bs.max_truncation, "largest truncation degree");
  cmd_bs->add_option("--paths", bs.train_paths, "training paths");
  cmd_bs->add_option("--test-paths", bs.test_paths, "held-out paths");
  cmd_bs->add_option("--steps", bs.steps, "grid steps per path");
  cmd_bs->add_option("--seed", bs.seed, "random seed");
  cmd_bs->add_option("--horizon", bs.horizon, "time horizon T (integer)");
  cmd_bs->add_option("--ridge", bs.ridge, "ridge parameter for the regression");
  cmd_bs->add_option("--threads", bs.threads, "worker threads");
  cmd_bs->add_option("--out", bs_out, "output file (default stdout)");

  // --- naturality -------------------------------------------------------
  auto* cmd_nat = app.add_subcommand("naturality", "symbolic naturality audit of the "
                                                   "orthogonalization-map ansatz");
  int nat_degree = 4;
  bool nat_noncrossing = false;
  bool nat_allow_large = false;
  std::string nat_out;
  cmd_nat->add_option("--degree", nat_degree, "word length of the ansatz")->required();
  cmd_nat->add_flag("--noncrossing", nat_noncrossing, "restrict to the noncrossing caps ansatz");
  cmd_nat->add_flag("--allow-large", nat_allow_large, "permit degrees 7 and above (long run)");
  cmd_nat->add_option("--out", nat_out, "output file (default stdout)");

  // --- recurrence ---------------------------------------------------------
  auto* cmd_rec = app.add_subcommand("recurrence", "graded recurrence matrices and rank audit");
  int rec_d = 2;
  int rec_nmax = 4;
  long rec_horizon = 1;
  std::string rec_out;
  cmd_rec->add_option("--d", rec_d, "alphabet dimension");
  cmd_rec->add_option("--n-max", rec_nmax, "largest total degree");
  cmd_rec->add_option("--horizon", rec_horizon, "time horizon T (integer)");
  cmd_rec->add_option("--out", rec_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (cmd_basis->parsed()) {
      const TimeHorizon T{rat(basis_horizon)};
      json j{{"config", config_json("basis", {{"max_degree", std::to_string(basis_degree)},
                                              {"lift_d", std::to_string(basis_lift_d)},
                                              {"horizon", std::to_string(basis_horizon)}})}};
      j["binary"] = ortho_basis_to_json(lifted_ito_basis(1, basis_degree, T));
      if (basis_lift_d > 0) j["lifted"] = ortho_basis_to_json(lifted_ito_basis(basis_lift_d, basis_degree, T));
      Output{basis_out}.write(j.dump(2) + "\n");
    } else if (cmd_orthcheck->parsed()) {
      OrthcheckResult result = orthcheck_experiment(oc);
      std::ostringstream out;
      out << config_header("orthcheck", {{"d", std::to_string(oc.d)},
                                         {"max_degree", std::to_string(oc.truncation)},
                                         {"paths", std::to_string(oc.paths)},
                                         {"steps", std::to_string(oc.steps)},
                                         {"seed", std::to_string(oc.seed)},
                                         {"horizon", fmt_double(oc.horizon)},
                                         {"threads", std::to_string(oc.threads)}});
      out << "# strat_max_offdiag=" << fmt_double(result.strat_max_offdiag) << "\n";
      out << "# ito_max_interchaos=" << fmt_double(result.ito_max_interchaos) << "\n";
      out << "# orth_max_offdiag=" << fmt_double(result.orth_max_offdiag) << "\n";
      out << "# orth_max_se_ratio=" << fmt_double(result.orth_max_se_ratio) << "\n";
      out << correlation_csv(result);
      Output{oc_out}.write(out.str());
    } else if (cmd_expand->parsed() || cmd_regress->parsed()) {
      const bool is_expand = cmd_expand->parsed();
      FitOpts& o = is_expand ? expand_opts : regress_opts;
      if (o.target != "bt2") o.d = 1;
      PathSpec train_spec{.d = o.d, .augment_time = o.augment_time, .horizon = o.horizon,
                          .steps = o.steps, .paths = o.paths, .seed = o.seed};
      PathSpec test_spec = train_spec;
      test_spec.paths = o.test_paths;
      test_spec.seed = o.seed + 0x517E57ULL;  // disjoint stream
      PathBatch train = sample_paths(train_spec);
      PathBatch test = sample_paths(test_spec);
      auto targets = [&](const PathBatch& batch) {
        std::vector<double> y(static_cast<std::size_t>(batch.spec().paths));
        if (o.target == "bt2") {
          for (int p = 0; p < batch.spec().paths; ++p) {
            const double b = batch.terminal(p, 1);
            y[static_cast<std::size_t>(p)] = b * b;
          }
        } else {
          GbmBatch g = geometric_bm(batch, o.S0, o.sigma, o.mu, o.threads);
          for (std::size_t p = 0; p < y.size(); ++p)
            y[p] = (o.target == "call") ? std::max(g.terminal[p] - o.strike, 0.0) : g.running_max[p];
        }
        return y;
      };
      const auto y_train = targets(train);
      const auto y_test = targets(test);
      FeatureMatrix ito_train = ito_features(train, o.truncation, o.threads);
      FeatureMatrix ito_test = ito_features(test, o.truncation, o.threads);
      json j{{"config",
              config_json(is_expand ? "expand" : "regress",
                          {{"target", o.target},
                           {"d", std::to_string(o.d)},
                           {"max_degree", std::to_string(o.truncation)},
                           {"paths", std::to_string(o.paths)},
                           {"test_paths", std::to_string(o.test_paths)},
                           {"steps", std::to_string(o.steps)},
                           {"seed", std::to_string(o.seed)},
                           {"horizon", fmt_double(o.horizon)},
                           {"sigma", fmt_double(o.sigma)},
                           {"mu", fmt_double(o.mu)},
                           {"s0", fmt_double(o.S0)},
                           {"strike", fmt_double(o.strike)},
                           {"ridge", fmt_double(o.ridge)}})}};
      std::vector<double> pred_train, pred_test;
      if (is_expand) {
        const TimeHorizon T{rat(static_cast<long>(o.horizon))};
        OrthoBasis basis = lifted_ito_basis(o.d, o.truncation, T);
        ExpansionModel model = fit_expansion(y_train, ito_train, basis, o.truncation, o.horizon);
        pred_train = evaluate_expansion(model, basis, ito_train);
        pred_test = evaluate_expansion(model, basis, ito_test);
        j["model"] = expansion_model_to_json(model);
      } else {
        RegressionModel model = ols_fit(y_train, ito_train, o.truncation, o.ridge);
        pred_train = evaluate_regression(model, ito_train);
        pred_test = evaluate_regression(model, ito_test);
        j["model"] = regression_model_to_json(model);
      }
      const Metrics mtr = metrics(pred_train, y_train);
      const Metrics mte = metrics(pred_test, y_test);
      j["metrics"] = json{{"train", {{"l2", mtr.l2}, {"r2", mtr.r2}}},
                          {"test", {{"l2", mte.l2}, {"r2", mte.r2}}}};
      Output{o.out}.write(j.dump(2) + "\n");
    } else if (cmd_sde->parsed()) {
      const auto rows = sde_compare_experiment(sc);
      std::ostringstream out;
      out << config_header("sde-compare", {{"d", std::to_string(sc.d)},
                                           {"state_dim", std::to_string(sc.state_dim)},
                                           {"n_mats", std::to_string(sc.n_mats)},
                                           {"max_degree", std::to_string(sc.max_truncation)},
                                           {"paths", std::to_string(sc.train_paths)},
                                           {"test_paths", std::to_string(sc.test_paths)},
                                           {"steps", std::to_string(sc.steps)},
                                           {"seed", std::to_string(sc.seed)},
                                           {"horizon", fmt_double(sc.horizon)}});
      out << tidy_rows_to_csv(rows);
      Output{sc_out}.write(out.str());
    } else if (cmd_bs->parsed()) {
      const auto rows = black_scholes_experiment(bs);
      std::ostringstream out;
      out << config_header("bs", {{"sigma", fmt_double(bs.sigma)},
                                  {"mu", fmt_double(bs.mu)},
                                  {"s0", fmt_double(bs.S0)},
                                  {"strike", fmt_double(bs.strike)},
                                  {"max_degree", std::to_string(bs.max_truncation)},
                                  {"paths", std::to_string(bs.train_paths)},
                                  {"test_paths", std::to_string(bs.test_paths)},
                                  {"steps", std::to_string(bs.steps)},
                                  {"seed", std::to_string(bs.seed)},
                                  {"ridge", fmt_double(bs.ridge)},
                                  {"horizon", fmt_double(bs.horizon)}});
      out << tidy_rows_to_csv(rows);
      Output{bs_out}.write(out.str());
    } else if (cmd_nat->parsed()) {
      if (nat_degree >= 7 && !nat_allow_large)
        throw std::runtime_error("degree >= 7 is a long run; pass --allow-large to confirm");
      AnsatzSystem system = build_system(nat_degree, nat_noncrossing);
      RankReport report = rank_certify(system);
      json j = naturality_report_to_json(system, report);
      j["config"] = config_json("naturality", {{"degree", std::to_string(nat_degree)},
                                               {"noncrossing", nat_noncrossing ? "true" : "false"}});
      Output{nat_out}.write(j.dump(2) + "\n");
    } else if (cmd_rec->parsed()) {
      const TimeHorizon T{rat(rec_horizon)};
      GradedFrame frame = make_graded_frame(rec_d, rec_nmax);
      auto inner = make_inner_fawcett(T);
      auto polys = block_orth_polys(frame, inner);
      RecurrenceSet rset = recurrence_matrices(frame, polys, inner);
      RankAuditReport audit = rank_audit(frame, polys, rset);
      json j{{"config", config_json("recurrence", {{"d", std::to_string(rec_d)},
                                                   {"n_max", std::to_string(rec_nmax)},
                                                   {"horizon", std::to_string(rec_horizon)}})}};
      j["rank_audit"] = rank_audit_to_json(audit);
      j["commutativity_residual"] = commutativity_residual(rset, frame);
      json jac = json::array();
      for (int m = 1; m <= rec_nmax; ++m)
        for (std::size_t i = 0; i < frame.generator_count(m); ++i) {
          if (rec_nmax - m < 0) continue;
          Eigen::MatrixXd J = jacobi_truncation(rset, frame, m, static_cast<int>(i), rec_nmax - m);
          jac.push_back(json{{"m", m},
                             {"i", i},
                             {"generator",
                              frame.generators[static_cast<std::size_t>(m - 1)][i].to_string()},
                             {"degree_cut", rec_nmax - m},
                             {"symmetry_residual", (J - J.transpose()).cwiseAbs().maxCoeff()}});
        }
      j["jacobi"] = jac;
      Output{rec_out}.write(j.dump(2) + "\n");
    }
  } catch (const std::exception& e) {
    std::cerr << "orthsig: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
