#include <atomic>
#include <stdexcept>
#include <vector>

#include <gtest/gtest.h>

#include "fermidiscord/errors.hpp"
#include "fermidiscord/grid.hpp"

using namespace fermidiscord;

TEST(GridRange, ParsesRangesAndSingles) {
  const auto r = GridRange::parse("0:3:0.05");
  const auto v = r.values();
  ASSERT_EQ(v.size(), 61u);
  EXPECT_EQ(v.front(), 0.0);
  EXPECT_NEAR(v.back(), 3.0, 1e-12);
  EXPECT_EQ(v[20], 20 * 0.05);
  EXPECT_EQ(GridRange::parse("2.5").values(), std::vector<double>{2.5});
  EXPECT_EQ(GridRange::parse("1:2:0.4").values().size(), 3u);
  EXPECT_EQ(GridRange::parse("1:1.3:0.4").values(), std::vector<double>{1.0});
  EXPECT_EQ(GridRange::parse("0:1:0.1").values().size(), 11u);
  EXPECT_EQ(GridRange::parse("0:0.3:0.1").values().size(), 4u);
}

TEST(GridRange, RejectsMalformedInput) {
  for (const char* bad : {"", "a", "1:2", "1:2:3:4", "1:2:0", "1:2:-1", "3:1:0.5", "1:2:", "nan", "1:inf:1"})
    EXPECT_THROW(GridRange::parse(bad).values(), InvalidInput) << bad;
}

TEST(ParallelFor, VisitsEveryIndexOnce) {
  for (int threads : {0, 1, 3, 16}) {
    std::vector<std::atomic<int>> hits(97);
    parallel_for(hits.size(), threads, [&](std::size_t k) { ++hits[k]; });
    for (const auto& h : hits) EXPECT_EQ(h.load(), 1);
  }
  parallel_for(0, 4, [](std::size_t) { FAIL(); });
}

TEST(ParallelFor, RethrowsWorkerExceptions) {
  EXPECT_THROW(parallel_for(10, 3,
                            [](std::size_t k) {
                              if (k == 7) throw InvalidInput("boom");
                            }),
               InvalidInput);
  EXPECT_THROW(parallel_for(5, 1, [](std::size_t) { throw std::runtime_error("x"); }),
               std::runtime_error);
}
