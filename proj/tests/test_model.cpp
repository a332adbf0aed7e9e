#include <doctest.h>

#include "cellimit/error.hpp"
#include "cellimit/model.hpp"
#include "cellimit/report.hpp"

using namespace cellimit;

namespace {

ErrorCode code_of(const auto& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInvalidArgument;
}

PowerSeries mono(Rational c, Exponent e) { return PowerSeries::monomial(c, e); }

}  // namespace

TEST_CASE("margins are sorted with a permutation tag") {
  const MarginVector mv = MarginVector::make(10, {5, 4, 6});
  CHECK(std::vector<std::int64_t>(mv.a().begin(), mv.a().end()) == std::vector<std::int64_t>{4, 5, 6});
  CHECK(std::vector<std::size_t>(mv.permutation().begin(), mv.permutation().end()) ==
        std::vector<std::size_t>{2, 1, 3});
  CHECK(mv.original() == std::vector<std::int64_t>{5, 4, 6});

  const MarginVector id = validate_margins(10, {4, 5});
  CHECK(std::vector<std::size_t>(id.permutation().begin(), id.permutation().end()) ==
        std::vector<std::size_t>{1, 2});
  CHECK(MarginVector::make(10, {4, 5, 6}) == MarginVector::make(10, {4, 5, 6}));
}

TEST_CASE("margin validation") {
  CHECK(code_of([] { MarginVector::make(10, {10, 4}); }) == ErrorCode::kMarginOutOfRange);
  CHECK(code_of([] { MarginVector::make(10, {0, 4}); }) == ErrorCode::kMarginOutOfRange);
  CHECK(code_of([] { MarginVector::make(10, {4}); }) == ErrorCode::kDimensionError);
}

TEST_CASE("canonicalization is idempotent") {
  const MarginVector once = MarginVector::make(20, {9, 3, 17, 3});
  const MarginVector twice = MarginVector::make(20, {once.a().begin(), once.a().end()});
  CHECK(std::vector<std::int64_t>(once.a().begin(), once.a().end()) ==
        std::vector<std::int64_t>(twice.a().begin(), twice.a().end()));
}

TEST_CASE("table cells reduce to margin vectors") {
  const MarginTable t = MarginTable::make({3, 2, 2}, 16, {{2, 4, 10}, {4, 12}, {4, 12}});
  const MarginVector a = reduce_cell(t, CellRef{{3, 1, 1}});
  CHECK(std::vector<std::int64_t>(a.a().begin(), a.a().end()) == std::vector<std::int64_t>{4, 4, 10});
  const MarginVector b = reduce_cell(t, CellRef{{1, 2, 2}});
  CHECK(std::vector<std::int64_t>(b.a().begin(), b.a().end()) == std::vector<std::int64_t>{2, 12, 12});
  CHECK(code_of([&] { reduce_cell(t, CellRef{{4, 1, 1}}); }) == ErrorCode::kCellOutOfRange);
  CHECK(code_of([&] { reduce_cell(t, CellRef{{1, 1}}); }) == ErrorCode::kCellOutOfRange);

  const MarginTable degenerate = MarginTable::make({2, 2}, 10, {{10, 0}, {5, 5}});
  CHECK(code_of([&] { reduce_cell(degenerate, CellRef{{1, 1}}); }) == ErrorCode::kMarginOutOfRange);
  CHECK(code_of([] { MarginTable::make({2, 2}, 10, {{4, 5}, {5, 5}}); }) == ErrorCode::kSpecError);
}

TEST_CASE("growth specs evaluate with round half up") {
  const PowerSeries n = PowerSeries::grand_total();
  const PowerSeries s = mono(1, Exponent(1, 2));
  const PowerSeries q = mono(1, Exponent(1, 4));

  const MarginVector a = eval_growth(GrowthSpec::make(16, {s, n - s}), 10000);
  CHECK(std::vector<std::int64_t>(a.a().begin(), a.a().end()) == std::vector<std::int64_t>{100, 9900});
  const MarginVector b = eval_growth(GrowthSpec::make(16, {q, s}), 10000);
  CHECK(std::vector<std::int64_t>(b.a().begin(), b.a().end()) == std::vector<std::int64_t>{10, 100});
  CHECK(evaluate_margin(n - q - s, Integer(1000000)) == 998968);
  CHECK(evaluate_margin(mono(1, Exponent(2, 3)), Integer(1000000)) == 10000);

  CHECK(code_of([&] { eval_growth(GrowthSpec::make(16, {q, s}), 8); }) == ErrorCode::kDomainError);
  CHECK(code_of([&] { GrowthSpec::make(16, {s}); }) == ErrorCode::kDimensionError);
  CHECK(code_of([&] { GrowthSpec::make(16, {mono(2, 1), s}); }) == ErrorCode::kSpecError);
  CHECK(code_of([&] { GrowthSpec::make(16, {mono(1, 2), s}); }) == ErrorCode::kSpecError);
}

TEST_CASE("eval_growth is monotone for single positive terms") {
  const GrowthSpec g = GrowthSpec::make(16, {mono(1, Exponent(1, 3)), mono(Rational(1, 3), 1)});
  std::int64_t last0 = 0;
  std::int64_t last1 = 0;
  for (std::int64_t n = 16; n < 5000; n += 7) {
    const MarginVector mv = eval_growth(g, n);
    const std::int64_t a0 = evaluate_margin(g.collector(0), Integer(n)).convert_to<std::int64_t>();
    const std::int64_t a1 = evaluate_margin(g.collector(1), Integer(n)).convert_to<std::int64_t>();
    CHECK(a0 >= last0);
    CHECK(a1 >= last1);
    CHECK(mv.m() == 2);
    last0 = a0;
    last1 = a1;
  }
}

TEST_CASE("growth tables check margin sums symbolically") {
  const PowerSeries n = PowerSeries::grand_total();
  const PowerSeries s = mono(1, Exponent(1, 2));
  CHECK_NOTHROW(GrowthTable::make(16, {2, 2}, {{s, n - s}, {s, n - s}}));
  CHECK(code_of([&] { GrowthTable::make(16, {2, 2}, {{s, n}, {s, n - s}}); }) == ErrorCode::kSpecError);
  const GrowthTable t = GrowthTable::make(16, {2, 2}, {{s, n - s}, {s, n - s}});
  const auto cells = t.cells();
  REQUIRE(cells.size() == 4);
  CHECK(cells[1].v == std::vector<std::int64_t>{1, 2});
  CHECK(reduce_cell(t, cells[1]).collector(1) == n - s);
}

TEST_CASE("json inputs") {
  using io::json;
  const MarginVector mv = io::margins_from_json(json::parse(R"({"n":10,"a":[5,4,6]})"), std::nullopt);
  CHECK(mv.a(0) == 4);
  const json table = json::parse(R"({"shape":[3,2,2],"n":16,"margins":[[2,4,10],[4,12],[4,12]]})");
  CHECK(io::margins_from_json(table, io::parse_cell("3,1,1")).a(2) == 10);
  CHECK(code_of([&] { io::margins_from_json(table, std::nullopt); }) == ErrorCode::kInvalidArgument);
  CHECK(code_of([&] { io::parse_cell("3,x"); }) == ErrorCode::kInvalidArgument);

  const json growth = json::parse(
      R"({"n_min":256,"collectors":[{"terms":[{"c":1.0,"gamma":0.5}]},{"terms":[{"c":"1/2","gamma":"1"}]}]})");
  const GrowthSpec g = io::growth_from_json(growth, std::nullopt);
  CHECK(g.collector(0) == mono(1, Exponent(1, 2)));
  CHECK(g.alpha(1) == Rational(1, 2));
  const json thirds = json::parse(R"({"n_min":16,"collectors":[{"terms":[{"c":1,"gamma":0.6666666667}]},
                                      {"terms":[{"c":1,"gamma":"2/3"}]}]})");
  CHECK(io::growth_from_json(thirds, std::nullopt).collector(0) == mono(1, Exponent(2, 3)));
}
