#include <gtest/gtest.h>

#include <random>

#include "fixtures.hpp"
#include "twwchi/matrix.hpp"

namespace twwchi {
namespace {
using namespace twwchi::testing;

// Independent mixedness check straight from the definition.
bool naive_mixed(const TriMatrix& m, Interval r, Interval c) {
  bool rows_const = true, cols_const = true, star = false;
  for (auto i = r.lo; i < r.hi; ++i)
    for (auto j = c.lo; j < c.hi; ++j) {
      if (m.at(i, j) != m.at(i, c.lo)) rows_const = false;
      if (m.at(i, j) != m.at(r.lo, j)) cols_const = false;
      if (m.at(i, j) == Tri::Star) star = true;
    }
  return !(rows_const || cols_const) || (star && r.size() > 1 && c.size() > 1);
}

bool naive_has_corner(const TriMatrix& m) {
  for (std::size_t r1 = 0; r1 < m.rows(); ++r1)
    for (std::size_t r2 = r1 + 1; r2 < m.rows(); ++r2)
      for (std::size_t c1 = 0; c1 < m.cols(); ++c1)
        for (std::size_t c2 = c1 + 1; c2 < m.cols(); ++c2) {
          auto s = m.submatrix({r1, r2}, {c1, c2});
          if (naive_mixed(s, {0, 2}, {0, 2})) return true;
        }
  return false;
}

TriMatrix matrix_from_code(std::size_t rows, std::size_t cols, std::uint64_t code, int base) {
  TriMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) {
      m.set(i, j, static_cast<Tri>(code % base));
      code /= base;
    }
  return m;
}

// All bound vectors 0 = b_0 < ... < b_k = n with parts of any size.
void all_compositions(std::size_t n, std::size_t k, std::vector<std::size_t>& b,
                      std::vector<std::vector<std::size_t>>& out) {
  if (b.size() == k) {
    if (b.back() < n) {
      b.push_back(n);
      out.push_back(b);
      b.pop_back();
    }
    return;
  }
  for (auto x = b.back() + 1; x < n; ++x) {
    b.push_back(x);
    all_compositions(n, k, b, out);
    b.pop_back();
  }
}

std::vector<std::vector<std::size_t>> compositions(std::size_t n, std::size_t k) {
  std::vector<std::vector<std::size_t>> out;
  std::vector<std::size_t> b{0};
  if (k == 1) return {{0, n}};
  all_compositions(n, k, b, out);
  return out;
}

bool naive_minor(const TriMatrix& m, std::size_t d, bool almost, bool symmetric) {
  for (const auto& rb : compositions(m.rows(), d))
    for (const auto& cb : compositions(m.cols(), d)) {
      if (symmetric && rb != cb) continue;
      bool ok = true;
      for (std::size_t i = 0; i < d && ok; ++i)
        for (std::size_t j = 0; j < d && ok; ++j)
          if (!(almost && i == j)) ok = naive_mixed(m, {rb[i], rb[i + 1]}, {cb[j], cb[j + 1]});
      if (ok) return true;
    }
  return false;
}

TEST(Classify, Examples) {
  EXPECT_EQ(classify(TriMatrix::parse("01\n01\n")), ZoneKind::Vertical);
  EXPECT_EQ(classify(TriMatrix::parse("00\n11\n")), ZoneKind::Horizontal);
  EXPECT_EQ(classify(TriMatrix::parse("00\n00\n")), ZoneKind::Constant);
  EXPECT_EQ(classify(TriMatrix::parse("01\n10\n")), ZoneKind::Mixed);
  EXPECT_EQ(classify(TriMatrix::parse("00\n0*\n")), ZoneKind::Mixed);
  EXPECT_EQ(classify(TriMatrix::parse("**\n**\n")), ZoneKind::Mixed);
}

TEST(Classify, ThinStarIsNotMixed) {
  auto row = TriMatrix::parse("0*1\n");
  EXPECT_EQ(classify(row), ZoneKind::Vertical);
  EXPECT_TRUE(is_thin_star(row));
  EXPECT_EQ(classify(row.transpose()), ZoneKind::Horizontal);
}

TEST(Classify, ParseErrors) {
  EXPECT_THROW(TriMatrix::parse("01\n0\n"), ParseError);
  EXPECT_THROW(TriMatrix::parse("0x\n"), ParseError);
  EXPECT_THROW(classify(TriMatrix()), std::invalid_argument);
}

TEST(Corner, ExistsIffMixedUpTo3x3) {
  for (std::size_t r = 1; r <= 3; ++r)
    for (std::size_t c = 1; c <= 3; ++c) {
      std::uint64_t total = 1;
      for (std::size_t i = 0; i < r * c; ++i) total *= 3;
      for (std::uint64_t code = 0; code < total; ++code) {
        auto m = matrix_from_code(r, c, code, 3);
        const bool mixed = classify(m) == ZoneKind::Mixed;
        ASSERT_EQ(mixed, naive_mixed(m, {0, r}, {0, c})) << m.dump();
        ASSERT_EQ(mixed, naive_has_corner(m)) << m.dump();
        auto k = find_corner(m);
        ASSERT_EQ(mixed, k.has_value()) << m.dump();
        if (k) {
          ASSERT_TRUE(is_corner(m, *k));
        }
      }
    }
}

TEST(Corner, SpanningCornerOn4x4) {
  std::mt19937_64 rng(3);
  const Division d{IntervalPartition({0, 2, 4}), IntervalPartition({0, 2, 4})};
  int tried = 0;
  for (int t = 0; t < 200000 && tried < 2000; ++t) {
    auto m = matrix_from_code(4, 4, rng(), 2);
    if (rng() % 4 == 0) m.set(rng() % 4, rng() % 4, Tri::Star);
    if (count_mixed_zones(m, d) != 4) continue;
    ++tried;
    auto k = find_spanning_corner(m, d);
    EXPECT_TRUE(is_corner(m, k));
    EXPECT_TRUE(k.r1 < 2 && k.r2 >= 2 && k.c1 < 2 && k.c2 >= 2);
  }
  EXPECT_GT(tried, 100);
}

TEST(Division, NotationRoundTrip) {
  auto d = parse_division("rows=0-1,2-4;cols=0-2,3-4");
  EXPECT_EQ(d.rows.bounds(), (std::vector<std::size_t>{0, 2, 5}));
  EXPECT_EQ(to_string(d), "rows=0-1,2-4;cols=0-2,3-4");
  EXPECT_THROW(parse_division("rows=0-1,3-4;cols=0-4"), ParseError);
  EXPECT_THROW(parse_division("cols=0-1"), ParseError);
}

TEST(ContractDelete, Examples) {
  auto m = TriMatrix::parse("0101\n1010\n0000\n0000\n");
  const Division d{IntervalPartition({0, 2, 4}), IntervalPartition({0, 2, 4})};
  EXPECT_EQ(contract(m, d), TriMatrix::parse("11\n00\n"));
  EXPECT_THROW(horizontal_deletion(m, d), std::invalid_argument);
  auto h = TriMatrix::parse("0011\n0011\n1100\n0000\n");
  EXPECT_EQ(horizontal_deletion(h, d), TriMatrix::parse("0011\n0011\n0000\n0000\n"));
  EXPECT_EQ(vertical_deletion(h, d), h);
}

// Contraction never creates mixedness; nor does deletion when no zone is mixed.
TEST(ContractDelete, MixednessKeptOnSampled4x4) {
  std::mt19937_64 rng(8);
  for (int t = 0; t < 20000; ++t) {
    auto m = matrix_from_code(4, 4, rng(), 2);
    auto rb = compositions(4, 2)[rng() % 3];
    auto cb = compositions(4, 2)[rng() % 3];
    const Division d{IntervalPartition(rb), IntervalPartition(cb)};
    const bool src = classify(m) == ZoneKind::Mixed;
    if (classify(contract(m, d)) == ZoneKind::Mixed) {
      EXPECT_TRUE(src) << m.dump();
    }
    if (count_mixed_zones(m, d) == 0) {
      if (classify(horizontal_deletion(m, d)) == ZoneKind::Mixed) {
        EXPECT_TRUE(src);
      }
      if (classify(vertical_deletion(m, d)) == ZoneKind::Mixed) {
        EXPECT_TRUE(src);
      }
    }
  }
}

TEST(MinorSearch, AgreesWithBruteForce) {
  std::mt19937_64 rng(21);
  for (int t = 0; t < 400; ++t) {
    const std::size_t n = 2 + rng() % 6;
    auto g = gnp_graph(n, 0.5, rng());
    auto m = adjacency_matrix(g);
    for (std::size_t d = 1; d <= 3; ++d) {
      auto mm = find_mixed_minor(m, d);
      ASSERT_EQ(mm.has_value(), naive_minor(m, d, false, false)) << m.dump() << d;
      if (mm) {
        EXPECT_TRUE(is_mixed_minor(m, *mm));
      }
      auto amm = find_almost_mixed_minor(m, d);
      ASSERT_EQ(amm.has_value(), naive_minor(m, d, true, true)) << m.dump() << d;
      if (amm) {
        EXPECT_TRUE(is_almost_mixed_minor(m, *amm));
      }
      auto gamm = find_almost_mixed_minor(m, d, DivisionMode::General);
      ASSERT_EQ(gamm.has_value(), naive_minor(m, d, true, false)) << m.dump() << d;
    }
  }
}

TEST(MinorSearch, MergeAlmostToMixed) {
  std::mt19937_64 rng(4);
  int merged = 0;
  for (int t = 0; t < 300; ++t) {
    auto m = adjacency_matrix(gnp_graph(8 + rng() % 3, 0.5, rng()));
    auto amm = find_almost_mixed_minor(m, 4);
    if (!amm) continue;
    auto mm = merge_to_mixed_minor(*amm, m);
    EXPECT_EQ(mm.k(), 2u);
    EXPECT_TRUE(is_mixed_minor(m, mm));
    ++merged;
  }
  EXPECT_GT(merged, 0);
}

TEST(MinorSearch, C5Adjacency) {
  auto m = adjacency_matrix(fix_c5());
  EXPECT_EQ(m.dump(), "*1100\n1*001\n10*10\n001*1\n0101*\n");
  EXPECT_EQ(find_almost_mixed_minor(m, 2).has_value(), naive_minor(m, 2, true, true));
  EXPECT_EQ(find_mixed_minor(m, 2).has_value(), naive_minor(m, 2, false, false));
}

}  // namespace
}  // namespace twwchi
