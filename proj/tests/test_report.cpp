#include <doctest.h>

#include "cellimit/example_tables.hpp"
#include "cellimit/report.hpp"

using namespace cellimit;

TEST_CASE("pmf serialization") {
  const ExactPmf p = cell_pmf_exact(MarginVector::make(4, {2, 2, 2}));
  CHECK(io::to_csv(p) == "x,prob\n0,19/36\n1,4/9\n2,1/36\n");
  const io::json j = io::to_json(p);
  CHECK(j["probs"][1] == "4/9");
  CHECK(j["mode"] == "exact");
  CHECK(io::to_csv(p.to_float()).rfind("x,prob\n0,0.52777777777777779\n", 0) == 0);
}

TEST_CASE("moments serialization") {
  const MarginVector mv = MarginVector::make(10, {4, 5, 6});
  const MomentSequence ms = moments_recursive(mv);
  const io::json j = io::moments_json(mv, ms);
  CHECK(j["moments"][2]["V"] == "146/225");
  CHECK(io::moments_csv(ms).find("3,1.2,") != std::string::npos);
  CHECK(io::moments_text(mv, ms).find("146/225") != std::string::npos);
}

TEST_CASE("classification json") {
  const GrowthSpec g = reduce_cell(example_table(2), CellRef{{3, 2, 2}});
  const Classification c = classify(g);
  const io::json j = io::to_json(c, limit_statement(c, canonical_order(g)));
  CHECK(j["regime"] == "PoissonIII");
  CHECK(j["shift"] == "-n + 3*n^(1/2) + n^(1/4)");
  CHECK(j["rho_exact"] == "3");
  CHECK(j["transform"] == "X - n + 3*n^(1/2) + n^(1/4) -> Pois(3)");
}

TEST_CASE("histogram csv") {
  CHECK(io::histogram_csv(2, {5, 0, 1}) == "value,count\n2,5\n3,0\n4,1\n");
}

TEST_CASE("example table json and text") {
  const ExampleTableResult r = reproduce_example_table(3, {10000}, 2);
  const io::json j = to_json(r);
  CHECK(j["cells"].size() == 12);
  CHECK(j["cells"][0]["certificates"].size() == 1);
  const std::string text = render_text(r);
  CHECK(text.find("(2,2,2)") != std::string::npos);
  CHECK(render_text(reproduce_example_table(3, {10000}, 1)) == text);
}
