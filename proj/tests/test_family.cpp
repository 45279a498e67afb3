#include <gtest/gtest.h>

#include <cmath>

#include "eur/family.hpp"
#include "support.hpp"

using namespace eur;

TEST(FamilyParameter, Validation) {
  EXPECT_NO_THROW(FamilyParameter(0.0));
  EXPECT_NO_THROW(FamilyParameter(1.0));
  EXPECT_THROW(FamilyParameter(-1e-12), ValidationError);
  EXPECT_THROW(FamilyParameter(1.0 + 1e-12), ValidationError);
  EXPECT_THROW(FamilyParameter(std::nan("")), ValidationError);
  const FamilyParameter p(0.3);
  EXPECT_EQ(p.a() + p.b(), 1.0);
}

TEST(BuildFamily, HalfAndEndpoint) {
  const auto half = build_family(FamilyParameter(0.5));
  ASSERT_EQ(half.size(), 3u);
  EXPECT_NEAR(half[2][0][kZero].real(), std::sqrt(0.5), 1e-15);
  EXPECT_NEAR(half[2][0][kMinus].real(), std::sqrt(0.5), 1e-15);
  EXPECT_EQ(half[2][0][kPlus], Complex{});

  // a = 1: M3 rays coincide with M1 rays.
  const auto one = build_family(FamilyParameter(1.0));
  EXPECT_NEAR(overlap_c(one[0], one[2]), 1.0, 1e-15);
  for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(std::norm(inner(one[0][k], one[2][k])), 1.0, 1e-15);
  EXPECT_NEAR(one[2][1][kMinus].real(), -1.0, 1e-15);
}

TEST(BuildFamily, OrthonormalForAllA) {
  for (int i = 0; i <= 1000; ++i) {
    const auto fam = build_family(FamilyParameter(i / 1000.0));
    for (const auto& m : fam)
      for (std::size_t j = 0; j < 3; ++j)
        for (std::size_t k = 0; k < 3; ++k) EXPECT_NEAR(std::abs(inner(m[j], m[k])), j == k ? 1.0 : 0.0, 1e-12);
  }
}

TEST(ReferenceStates, LabelsAndPurity) {
  const auto states = reference_states();
  ASSERT_EQ(states.size(), 2u);
  EXPECT_EQ(states[0].label, "zero");
  EXPECT_EQ(states[1].label, "minus1");
  for (const auto& s : states) {
    EXPECT_NEAR(s.rho.matrix().trace().real(), 1.0, 1e-15);
    EXPECT_NEAR(s.rho.purity(), 1.0, 1e-15);
  }
  // minus1 attains the smaller sum.
  for (int i = 0; i <= 20; ++i) {
    const auto fam = build_family(FamilyParameter(i / 20.0));
    EXPECT_LE(entropy_sum(fam, states[1].rho).total, entropy_sum(fam, states[0].rho).total);
  }
}

TEST(UniformGrid, EndpointsAndValidation) {
  const auto g = default_grid();
  ASSERT_EQ(g.size(), 101u);
  EXPECT_EQ(g.front(), 0.0);
  EXPECT_EQ(g[50], 0.5);
  EXPECT_EQ(g.back(), 1.0);
  EXPECT_THROW(uniform_grid(0.0, 1.0, 1), ValidationError);
  EXPECT_THROW(uniform_grid(1.0, 0.0, 5), ValidationError);
}

TEST(Sweep, Examples) {
  const auto states = reference_states();
  const std::vector<LabeledState> minus{states[1]};
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto rows = sweep(grid, minus);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_NEAR(rows[0].entropy_total, 0.0, 1e-12);
  EXPECT_NEAR(rows[1].entropy_total, 1.0, 1e-12);
  EXPECT_NEAR(rows[2].entropy_total, 0.0, 1e-12);
  EXPECT_NEAR(rows[1].scb, 1.0, 1e-12);
  for (const auto* r : {&rows[0], &rows[2]}) {
    EXPECT_NEAR(r->scb, 0.0, 1e-12);
    EXPECT_NEAR(r->lmf, 0.0, 1e-12);
    EXPECT_NEAR(r->rpz, 0.0, 1e-12);
  }
}

TEST(Sweep, OrderingDominanceSymmetryDeterminism) {
  const auto states = reference_states();
  const auto grid = default_grid();
  const auto rows = sweep(grid, states);
  ASSERT_EQ(rows.size(), 202u);
  for (std::size_t i = 0; i < grid.size(); ++i) {
    EXPECT_EQ(rows[2 * i].state_label, "minus1");
    EXPECT_EQ(rows[2 * i + 1].state_label, "zero");
    EXPECT_EQ(rows[2 * i].a, grid[i]);
  }
  for (const auto& r : rows) {
    EXPECT_GE(r.entropy_total, std::max({r.scb, r.lmf, r.rpz}) - 1e-9) << r.a << " " << r.state_label;
    EXPECT_GE(r.rpz, 0.0);
  }
  // h(a) = h(1 - a) for minus1.
  for (std::size_t i = 0; i < grid.size(); ++i)
    EXPECT_NEAR(rows[2 * i].entropy_total, rows[2 * (grid.size() - 1 - i)].entropy_total, 1e-9);

  const auto again = sweep(grid, states);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].entropy_total, again[i].entropy_total);
    EXPECT_EQ(rows[i].scb, again[i].scb);
    EXPECT_EQ(rows[i].lmf, again[i].lmf);
    EXPECT_EQ(rows[i].rpz, again[i].rpz);
  }
}
