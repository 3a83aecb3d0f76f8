#include <atomic>
#include <stdexcept>

#include <gtest/gtest.h>

#include "kelvin/kelvin.hpp"
#include "kelvin/orderderiv.hpp"
#include "kelvin/sweep.hpp"

using namespace kelvin;

TEST(ForEachIndex, VisitsEveryIndexOnce) {
  for (ExecMode mode : {ExecMode::serial, ExecMode::parallel}) {
    std::vector<std::atomic<int>> hits(257);
    for_each_index(hits.size(), [&](std::size_t i) { ++hits[i]; }, mode);
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
}

TEST(ForEachIndex, RethrowsLowestFailingIndex) {
  for (ExecMode mode : {ExecMode::serial, ExecMode::parallel}) {
    try {
      for_each_index(
          50,
          [](std::size_t i) {
            if (i == 7 || i == 31) throw std::runtime_error(std::to_string(i));
          },
          mode);
      FAIL() << "no exception";
    } catch (const std::runtime_error& e) {
      EXPECT_STREQ(e.what(), "7");
    }
  }
}

TEST(Sweep, KeepsInputOrder) {
  const std::vector<int> in = {5, 3, 9, 1};
  const auto out = sweep<int>(in, [](int v) { return v * v; }, ExecMode::parallel);
  EXPECT_EQ(out, (std::vector<int>{25, 9, 81, 1}));
}

TEST(MakeRange, InclusiveEndpoints) {
  EXPECT_EQ(make_range(0.0, 1.0, 0.5), (std::vector<double>{0.0, 0.5, 1.0}));
  EXPECT_EQ(make_range(0.0, 0.3, 0.1).size(), 4u);
  EXPECT_EQ(make_range(2.0, 2.0, 1.0), (std::vector<double>{2.0}));
}

TEST(MakeRange, Invalid) {
  EXPECT_THROW(make_range(0.0, 1.0, 0.0), ConfigError);
  EXPECT_THROW(make_range(0.0, 1.0, -0.1), ConfigError);
  EXPECT_THROW(make_range(1.0, 0.0, 0.1), ConfigError);
}

TEST(EvaluateRow, MatchesLibraryCalls) {
  const TableRow r = evaluate_row(0.5, 1.0);
  const KelvinQuad q = kelvin_all(0.5, 1.0);
  const OrderDerivQuad d = dkelvin(0.5, 1.0);
  EXPECT_TRUE(r.has_bb && r.has_kk);
  EXPECT_EQ(r.ber, q.ber);
  EXPECT_EQ(r.kei, q.kei);
  EXPECT_EQ(r.dber, d.dber);
  EXPECT_EQ(r.dkei, d.dkei);
  EXPECT_EQ(r.method, "closed_form|extrapolated");
}

TEST(EvaluateRow, ZeroArgument) {
  const TableRow r = evaluate_row(0.0, 0.0);
  EXPECT_TRUE(r.has_bb);
  EXPECT_FALSE(r.has_kk);
  EXPECT_EQ(r.ber, 1.0);
  EXPECT_EQ(r.method, "x0:ker_kei_undefined");
  const TableRow neg = evaluate_row(-0.5, 0.0);
  EXPECT_FALSE(neg.has_bb);
  EXPECT_EQ(neg.method, "x0:undefined");
}

TEST(EvaluateRow, DegradedSuffix) {
  EXPECT_EQ(evaluate_row(0.3, 22.0).method, "closed_form;degraded");
}

TEST(EvaluateGrid, OrderAndParallelEquivalence) {
  const std::vector<double> nus = {-1.5, 0.0, 0.7, 2.0};
  const std::vector<double> xs = {0.0, 0.5, 3.0};
  const auto serial = evaluate_grid(nus, xs, {}, ExecMode::serial);
  const auto parallel = evaluate_grid(nus, xs, {}, ExecMode::parallel);
  ASSERT_EQ(serial.size(), 12u);
  for (std::size_t i = 0; i < serial.size(); ++i) {
    EXPECT_EQ(serial[i].nu, nus[i / 3]);
    EXPECT_EQ(serial[i].x, xs[i % 3]);
    EXPECT_EQ(serial[i].ber, parallel[i].ber);
    EXPECT_EQ(serial[i].dkei, parallel[i].dkei);
    EXPECT_EQ(serial[i].method, parallel[i].method);
  }
}
