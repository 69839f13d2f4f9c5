#ifndef ORTHSIG_IO_HPP
#define ORTHSIG_IO_HPP

#include <json.hpp>
#include <string>

#include "orthsig/expansion.hpp"
#include "orthsig/experiments.hpp"
#include "orthsig/expected_signature.hpp"
#include "orthsig/graded_recurrence.hpp"
#include "orthsig/hoffman.hpp"
#include "orthsig/naturality.hpp"
#include "orthsig/ortho_basis.hpp"

namespace orthsig {

// Words as digit strings, empty word as ""; coefficients as "p" or "p/q".
nlohmann::json tensor_poly_to_json(const TensorPoly& p);
TensorPoly tensor_poly_from_json(const nlohmann::json& j);

nlohmann::json ortho_basis_to_json(const OrthoBasis& basis);
OrthoBasis ortho_basis_from_json(const nlohmann::json& j);

nlohmann::json expansion_model_to_json(const ExpansionModel& model);
nlohmann::json regression_model_to_json(const RegressionModel& model);

nlohmann::json rank_audit_to_json(const RankAuditReport& report);
nlohmann::json naturality_report_to_json(const AnsatzSystem& system, const RankReport& report);

// Exact entries rendered "p/q" next to a float rendering.
std::string gram_block_to_csv(const GramBlock& block);

// Sparse triplets: row word, column word, rational.
std::string conversion_matrix_to_csv(const ConversionMatrix& m);

// Header row of word strings, one row per path.
std::string feature_matrix_to_csv(const FeatureMatrix& fm);

// Columns: method, N, paths, seed, metric, value.
std::string tidy_rows_to_csv(const std::vector<TidyRow>& rows);

std::string correlation_csv(const OrthcheckResult& result);

}  // namespace orthsig

#endif
