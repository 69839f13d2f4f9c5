#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sstream>

#include "orthsig/io.hpp"

using namespace orthsig;
using nlohmann::json;

namespace {
Word W(const std::string& s) { return Word::from_string(s); }
const TimeHorizon T1{};
}  // namespace

TEST_CASE("tensor poly json round trip") {
  TensorPoly p = TensorPoly(W("11112")) - TensorPoly(W("211"), rat(1, 80)) +
                 TensorPoly(W(""), rat(5, 96));
  json j = tensor_poly_to_json(p);
  CHECK(j["11112"] == "1");
  CHECK(j["211"] == "-1/80");
  CHECK(j[""] == "5/96");
  CHECK(tensor_poly_from_json(j) == p);
}

TEST_CASE("ortho basis json round trip preserves order and values") {
  OrthoBasis basis = lifted_ito_basis(2, 3, T1);
  json j = ortho_basis_to_json(basis);
  OrthoBasis back = ortho_basis_from_json(j);
  REQUIRE(back.entries.size() == basis.entries.size());
  for (std::size_t i = 0; i < basis.entries.size(); ++i) {
    CHECK(back.entries[i].key == basis.entries[i].key);
    CHECK(back.entries[i].poly == basis.entries[i].poly);
    CHECK(back.entries[i].sq_norm == basis.entries[i].sq_norm);
  }
  CHECK(back.d == 2);
  CHECK(back.horizon == 1);
  // The worked-table row appears verbatim in the display rendering.
  bool found = false;
  for (const auto& e : j["entries"])
    if (e["display"] == "001 -> 001 - 1/2*01 + 1/12*1") found = true;
  CHECK(found);
}

TEST_CASE("gram block csv carries exact and float renderings") {
  auto inner = make_inner_fawcett(T1);
  GramBlock g = gram_block({TensorPoly(W("11"))}, {TensorPoly(W("11"))}, inner);
  const std::string csv = gram_block_to_csv(g);
  CHECK(csv.find("row,col,value_exact,value_float") == 0);
  CHECK(csv.find("3/4,0.75") != std::string::npos);
}

TEST_CASE("conversion matrix csv is sparse triplets") {
  ConversionMatrix m = strat_to_ito_map(1, 2);
  const std::string csv = conversion_matrix_to_csv(m);
  CHECK(csv.find("row_word,col_word,value") == 0);
  // hoffman_log(11) = 11 - 1/2 0: column 11 has rows 11 -> 1 and 0 -> -1/2.
  CHECK(csv.find("11,11,1") != std::string::npos);
  CHECK(csv.find("0,11,-1/2") != std::string::npos);
}

TEST_CASE("feature matrix csv has a word header") {
  PathSpec spec{.d = 1, .augment_time = true, .horizon = 1.0, .steps = 4, .paths = 2, .seed = 2};
  FeatureMatrix fm = strat_features(PathBatch(spec), 2);
  const std::string csv = feature_matrix_to_csv(fm);
  CHECK(csv.substr(0, csv.find('\n')) == "(),0,1,00,01,10,11");
  // header + one row per path
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 3);
}

TEST_CASE("tidy csv") {
  std::vector<TidyRow> rows{{"orth", 3, 1000, 7, "r2", 0.5}};
  const std::string csv = tidy_rows_to_csv(rows);
  CHECK(csv == "method,N,paths,seed,metric,value\north,3,1000,7,r2,0.5\n");
}

TEST_CASE("naturality report json") {
  AnsatzSystem sys = build_system(5);
  RankReport rep = rank_certify(sys);
  json j = naturality_report_to_json(sys, rep);
  CHECK(j["degree"] == 5);
  CHECK(j["vars"] == 25);
  CHECK(j["rank_A"] == 25);
  CHECK(j["rank_aug"] == 26);
  CHECK(j["consistent"] == false);
  CHECK(j.contains("certificate"));
  CHECK(!j.contains("solution"));
}

TEST_CASE("expansion model json") {
  ExpansionModel m;
  m.basis_id = "ito:d=2:T=1";
  m.truncation = 3;
  m.coefficients[W("12")] = 2.0;
  json j = expansion_model_to_json(m);
  CHECK(j["basis_id"] == "ito:d=2:T=1");
  CHECK(j["N"] == 3);
  CHECK(j["coefficients"]["12"] == 2.0);
}
