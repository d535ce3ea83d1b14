#include <doctest.h>

#include <random>

#include "simpeval/annotation/annotation.hpp"
#include "simpeval/error.hpp"
#include "test_support.hpp"

using namespace simpeval;
using namespace simpeval::testing;

namespace {

const std::vector<CriterionDefinition> kCriteria = {
    {"fluency", "Fluency", 1, 5, 2.0},
    {"meaning", "Meaning", 1, 2, 1.0},
    {"slider", "Simplicity", 0, 100, 0.5},
};

ErrorCode code_of(const auto& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::IoError;
}

double overall(const EvaluationSession& s) { return overall_percentage(s, "p1", "m1").value(); }

}  // namespace

TEST_CASE("upsert semantics") {
  auto s = make_terminal_session({"p1"}, {"m1"});
  upsert_score(s, kCriteria, {"p1", "m1", "fluency", 4});
  CHECK(s.annotations.at({"p1", "m1", "fluency"}) == 4);
  REQUIRE(s.find_criterion("fluency") != nullptr);
  CHECK(*s.find_criterion("fluency") == kCriteria[0]);

  upsert_score(s, kCriteria, {"p1", "m1", "fluency", 3});
  CHECK(s.annotations.at({"p1", "m1", "fluency"}) == 3);
  CHECK(s.annotations.size() == 1);

  upsert_score(s, kCriteria, {"p1", "m1", "slider", 37.5});
  CHECK(s.annotations.at({"p1", "m1", "slider"}) == 37.5);
}

TEST_CASE("upsert rejections") {
  auto s = make_terminal_session({"p1"}, {"m1", "m2"}, {"p1/m2"});
  CHECK(code_of([&] { upsert_score(s, kCriteria, {"p1", "m1", "fluency", 6}); }) == ErrorCode::OutOfScale);
  CHECK(code_of([&] { upsert_score(s, kCriteria, {"p1", "m1", "fluency", 0.99}); }) == ErrorCode::OutOfScale);
  CHECK(code_of([&] { upsert_score(s, kCriteria, {"p1", "m1", "nope", 1}); }) == ErrorCode::UnknownCriterion);
  CHECK(code_of([&] { upsert_score(s, kCriteria, {"p1", "m2", "fluency", 3}); }) ==
        ErrorCode::VariantFailedOrMissing);
  CHECK(code_of([&] { upsert_score(s, kCriteria, {"p9", "m1", "fluency", 3}); }) ==
        ErrorCode::VariantFailedOrMissing);
  CHECK(s.annotations.empty());
}

TEST_CASE("batch upsert is all or nothing") {
  auto s = make_terminal_session({"p1"}, {"m1"});
  const std::vector<AnnotationEntry> batch = {{"p1", "m1", "fluency", 4}, {"p1", "m1", "meaning", 3}};
  try {
    upsert_scores(s, kCriteria, batch);
    FAIL("expected OutOfScale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfScale);
    CHECK(e.field_path() == "[1].raw_score");
  }
  CHECK(s.annotations.empty());
  CHECK(s.criteria.empty());

  const std::vector<AnnotationEntry> good = {{"p1", "m1", "fluency", 4}, {"p1", "m1", "meaning", 2}};
  upsert_scores(s, kCriteria, good);
  CHECK(s.annotations.size() == 2);
}

TEST_CASE("overall percentage hand example and bounds") {
  auto s = make_terminal_session({"p1"}, {"m1"});
  CHECK_FALSE(overall_percentage(s, "p1", "m1").has_value());

  upsert_score(s, kCriteria, {"p1", "m1", "fluency", 4});
  upsert_score(s, kCriteria, {"p1", "m1", "meaning", 2});
  // 100 * (2 * 0.75 + 1 * 1.0) / 3
  CHECK(std::abs(overall(s) - 83.3333) < 0.01);

  auto single = make_terminal_session({"p1"}, {"m1"});
  upsert_score(single, kCriteria, {"p1", "m1", "fluency", 5});
  CHECK(overall(single) == 100.0);
  upsert_score(single, kCriteria, {"p1", "m1", "fluency", 1});
  CHECK(overall(single) == 0.0);
}

TEST_CASE("failed or missing variants are unscored") {
  auto s = make_terminal_session({"p1"}, {"m1", "m2"}, {"p1/m2"});
  CHECK_FALSE(overall_percentage(s, "p1", "m2").has_value());
  CHECK_FALSE(overall_percentage(s, "zz", "m1").has_value());
}

TEST_CASE("aggregation invariants over random annotation sets") {
  std::mt19937_64 rng(4242);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int round = 0; round < 300; ++round) {
    std::vector<CriterionDefinition> criteria;
    const std::size_t n = 1 + rng() % 5;
    for (std::size_t c = 0; c < n; ++c) {
      const int lo = static_cast<int>(rng() % 10) - 5;
      const int hi = lo + 1 + static_cast<int>(rng() % 20);
      criteria.push_back({"c" + std::to_string(c), "C" + std::to_string(c), lo, hi, 0.1 + unit(rng) * 9.9});
    }
    std::vector<double> fractions;
    auto s = make_terminal_session({"p1"}, {"m1"});
    for (const auto& c : criteria) {
      fractions.push_back(unit(rng));
      upsert_score(s, criteria, {"p1", "m1", c.criterion_id, c.scale_min + fractions.back() * (c.scale_max - c.scale_min)});
    }
    const double result = overall(s);
    CHECK(result >= 0.0);
    CHECK(result <= 100.0);

    // Uniform weight scaling.
    const double factor = 0.1 + unit(rng) * 0.9;
    auto scaled = s;
    for (auto& c : scaled.criteria) c.weight *= factor;
    CHECK(std::abs(overall(scaled) - result) <= 1e-9);

    // Affine remapping of one criterion's scale together with its score.
    auto remapped = s;
    auto& c0 = remapped.criteria.front();
    const double old_min = c0.scale_min, old_max = c0.scale_max;
    c0.scale_min *= 10;
    c0.scale_max *= 10;
    auto& score = remapped.annotations.at({"p1", "m1", c0.criterion_id});
    score = c0.scale_min + (score - old_min) / (old_max - old_min) * (c0.scale_max - c0.scale_min);
    CHECK(std::abs(overall(remapped) - result) <= 1e-9);

    // Adding a criterion without a score changes nothing.
    auto extra = s;
    extra.criteria.push_back({"unscored", "Unscored", 0, 1, 10.0});
    CHECK(overall(extra) == result);
  }
}

TEST_CASE("criterion validation") {
  CHECK_NOTHROW(validate_criterion({"c", "C", 1, 5, 0.1}));
  CHECK_NOTHROW(validate_criterion({"c", "C", 1, 5, 10.0}));
  auto path_of = [](const CriterionDefinition& c) {
    try {
      validate_criterion(c, "criteria[2]");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidSettings);
      return e.field_path();
    }
    return std::string("accepted");
  };
  CHECK(path_of({"c", "C", 1, 5, 0.05}) == "criteria[2].weight");
  CHECK(path_of({"c", "C", 1, 5, 10.5}) == "criteria[2].weight");
  CHECK(path_of({"c", "C", 3, 3, 1.0}) == "criteria[2].scale_max");
  CHECK(path_of({"c", "C", 5, 1, 1.0}) == "criteria[2].scale_max");
}
