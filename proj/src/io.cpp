#include "orthsig/io.hpp"

#include <sstream>

namespace orthsig {

using nlohmann::json;

json tensor_poly_to_json(const TensorPoly& p) {
  json j = json::object();
  for (const auto& [w, c] : p.terms()) j[w.to_string()] = rat_to_string(c);
  return j;
}

TensorPoly tensor_poly_from_json(const json& j) {
  TensorPoly p;
  for (const auto& [key, value] : j.items())
    p.add_term(Word::from_string(key), rat_from_string(value.get<std::string>()));
  return p;
}

namespace {

// Leading term first: highest degree down to the constant.
std::string poly_display(const TensorPoly& p) {
  if (p.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (auto it = p.terms().rbegin(); it != p.terms().rend(); ++it) {
    Rat a = it->second;
    if (first) {
      if (a < 0) {
        s += "-";
        a = -a;
      }
    } else {
      s += (a < 0) ? " - " : " + ";
      if (a < 0) a = -a;
    }
    const std::string word = it->first.empty() ? "()" : it->first.to_string();
    s += (a == 1) ? word : rat_to_string(a) + "*" + word;
    first = false;
  }
  return s;
}

}  // namespace

json ortho_basis_to_json(const OrthoBasis& basis) {
  json entries = json::array();
  for (const auto& e : basis.entries) {
    entries.push_back(json{{"word", e.key.to_string()},
                           {"terms", tensor_poly_to_json(e.poly)},
                           {"sq_norm", rat_to_string(e.sq_norm)},
                           {"display", e.key.to_string() + " -> " + poly_display(e.poly)}});
  }
  return json{{"inner", basis.inner_tag},
              {"d", basis.d},
              {"horizon", rat_to_string(basis.horizon)},
              {"entries", entries}};
}

OrthoBasis ortho_basis_from_json(const json& j) {
  OrthoBasis basis;
  basis.inner_tag = j.at("inner").get<std::string>();
  basis.d = j.at("d").get<int>();
  basis.horizon = rat_from_string(j.at("horizon").get<std::string>());
  for (const auto& e : j.at("entries")) {
    basis.entries.push_back(OrthoBasisEntry{Word::from_string(e.at("word").get<std::string>()),
                                            tensor_poly_from_json(e.at("terms")),
                                            rat_from_string(e.at("sq_norm").get<std::string>())});
  }
  return basis;
}

json expansion_model_to_json(const ExpansionModel& model) {
  json coeffs = json::object();
  for (const auto& [w, c] : model.coefficients) coeffs[w.to_string()] = c;
  return json{{"basis_id", model.basis_id}, {"N", model.truncation}, {"coefficients", coeffs}};
}

json regression_model_to_json(const RegressionModel& model) {
  json coeffs = json::object();
  for (std::size_t c = 0; c < model.columns.size(); ++c)
    coeffs[model.columns[c].to_string()] = model.beta(static_cast<long>(c));
  return json{{"features", model.feature_tag},
              {"N", model.truncation},
              {"ridge", model.ridge},
              {"effective_ridge", model.effective_ridge},
              {"rank_deficient", model.rank_deficient},
              {"coefficients", coeffs}};
}

json rank_audit_to_json(const RankAuditReport& report) {
  json blocks = json::array();
  for (const auto& b : report.blocks)
    blocks.push_back(json{{"n", b.n},
                          {"m", b.m},
                          {"i", b.i},
                          {"rank_A", b.rank_A},
                          {"rank_C", b.rank_C},
                          {"expected", b.expected},
                          {"L_orthonormal", b.L_orthonormal},
                          {"C_checked_directly", b.C_checked_directly},
                          {"C_direct_matches", b.C_direct_matches}});
  json joints = json::array();
  for (const auto& j : report.joints)
    joints.push_back(json{{"n", j.n},
                          {"rank_A_joint", j.rank_A_joint},
                          {"rank_C_joint", j.rank_C_joint},
                          {"rank_L_joint", j.rank_L_joint},
                          {"expected", j.expected}});
  return json{{"all_ok", report.all_ok},
              {"blocks", blocks},
              {"joints", joints},
              {"m_identity_failures", report.m_identity_failures},
              {"reconstruction_failures", report.reconstruction_failures},
              {"below_cutoff_failures", report.below_cutoff_failures}};
}

json naturality_report_to_json(const AnsatzSystem& system, const RankReport& report) {
  json j{{"degree", system.degree},
         {"noncrossing_only", system.noncrossing_only},
         {"vars", report.variables},
         {"equations", system.rows.size()},
         {"rank_A", report.rank_A},
         {"rank_aug", report.rank_aug},
         {"consistent", report.consistent}};
  if (report.solution.has_value()) {
    json sol = json::object();
    for (std::size_t v = 0; v < system.variables.size(); ++v)
      sol[system.variables[v].to_string()] = rat_to_string((*report.solution)[v]);
    j["solution"] = sol;
    j["unique"] = report.unique;
  }
  if (!report.certificate.empty()) {
    json cert = json::array();
    for (const auto& [idx, y] : report.certificate) {
      const auto& row = system.rows[idx];
      json coeffs = json::object();
      for (const auto& [v, c] : row.coeffs) coeffs[system.variables[v].to_string()] = rat_to_string(c);
      cert.push_back(json{{"row", idx},
                          {"test_len", row.test_len},
                          {"y", rat_to_string(y)},
                          {"coeffs", coeffs},
                          {"rhs", rat_to_string(row.rhs)}});
    }
    j["certificate"] = cert;
  }
  return j;
}

std::string gram_block_to_csv(const GramBlock& block) {
  std::ostringstream out;
  out << "row,col,value_exact,value_float\n";
  for (std::size_t i = 0; i < block.entries.rows(); ++i)
    for (std::size_t j = 0; j < block.entries.cols(); ++j)
      out << '"' << block.row_labels[i] << '"' << ',' << '"' << block.col_labels[j] << '"' << ','
          << rat_to_string(block.entries.at(i, j)) << ',' << rat_to_double(block.entries.at(i, j))
          << '\n';
  return out.str();
}

std::string conversion_matrix_to_csv(const ConversionMatrix& m) {
  std::ostringstream out;
  out << "row_word,col_word,value\n";
  for (const auto& [col, image] : m.columns)
    for (const auto& [row, c] : image.terms())
      out << row.to_string() << ',' << col.to_string() << ',' << rat_to_string(c) << '\n';
  return out.str();
}

std::string feature_matrix_to_csv(const FeatureMatrix& fm) {
  std::ostringstream out;
  out.precision(17);
  for (std::size_t c = 0; c < fm.columns.size(); ++c) {
    if (c) out << ',';
    out << (fm.columns[c].empty() ? std::string("()") : fm.columns[c].to_string());
  }
  out << '\n';
  for (std::size_t p = 0; p < fm.paths; ++p) {
    for (std::size_t c = 0; c < fm.columns.size(); ++c) {
      if (c) out << ',';
      out << fm.at(p, c);
    }
    out << '\n';
  }
  return out.str();
}

std::string tidy_rows_to_csv(const std::vector<TidyRow>& rows) {
  std::ostringstream out;
  out.precision(17);
  out << "method,N,paths,seed,metric,value\n";
  for (const auto& r : rows)
    out << r.method << ',' << r.truncation << ',' << r.paths << ',' << r.seed << ',' << r.metric
        << ',' << r.value << '\n';
  return out.str();
}

std::string correlation_csv(const OrthcheckResult& result) {
  std::ostringstream out;
  out.precision(17);
  out << "matrix,row_word,col_word,value\n";
  auto dump = [&](const char* name, const Eigen::MatrixXd& m) {
    for (long i = 0; i < m.rows(); ++i)
      for (long j = 0; j < m.cols(); ++j)
        out << name << ',' << result.words[static_cast<std::size_t>(i)].to_string() << ','
            << result.words[static_cast<std::size_t>(j)].to_string() << ',' << m(i, j) << '\n';
  };
  dump("stratonovich", result.strat);
  dump("ito", result.ito);
  dump("orthogonal", result.orth);
  return out.str();
}

}  // namespace orthsig
