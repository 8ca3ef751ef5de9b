#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "oracles.hpp"
#include "rolevec/dtw.hpp"
#include "rolevec/rng.hpp"

using namespace rolevec;

TEST_CASE("degree cost is the ratio minus one", "[dtw]") {
  REQUIRE(degree_cost(5, 5) == 0.0);
  REQUIRE(degree_cost(1, 2) == 1.0);
  REQUIRE(degree_cost(2, 1) == 1.0);
  REQUIRE_THAT(degree_cost(101, 102), Catch::Matchers::WithinAbs(102.0 / 101.0 - 1.0, 1e-15));
  REQUIRE_THROWS_AS(degree_cost(0, 3), std::invalid_argument);
  REQUIRE_THROWS_AS(degree_cost(3, -1), std::invalid_argument);
}

TEST_CASE("compressed cost scales by the larger count", "[dtw]") {
  REQUIRE(compressed_cost({3, 2}, {3, 7}) == 0.0);
  REQUIRE(compressed_cost({1, 1}, {2, 1}) == 1.0);
  REQUIRE(compressed_cost({2, 3}, {4, 5}) == 5.0);
  REQUIRE_THROWS_AS(compressed_cost({0, 1}, {2, 1}), std::invalid_argument);
}

TEST_CASE("compress run-length encodes and round-trips", "[dtw]") {
  REQUIRE(compress({1, 1, 2}) == std::vector<DegreeRun>{{1, 2}, {2, 1}});
  REQUIRE(compress({7}) == std::vector<DegreeRun>{{7, 1}});
  REQUIRE(compress({1, 1, 1, 1, 1}) == std::vector<DegreeRun>{{1, 5}});

  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<int> seq;
    int d = 1;
    int len = 1 + static_cast<int>(rng.next_below(12));
    for (int i = 0; i < len; ++i) {
      seq.push_back(d);
      if (rng.next_double() < 0.5) d += 1 + static_cast<int>(rng.next_below(3));
    }
    REQUIRE(expand(compress(seq)) == seq);
  }
}

TEST_CASE("dtw handles the worked examples", "[dtw]") {
  REQUIRE(dtw(std::vector<int>{4, 4, 4}, std::vector<int>{4, 4}, degree_cost) == 0.0);
  REQUIRE(dtw(std::vector<int>{2}, std::vector<int>{4}, degree_cost) == 1.0);
  // brute-forced over every monotone alignment
  REQUIRE(dtw(std::vector<int>{1, 2, 4}, std::vector<int>{2, 4}, degree_cost) == 1.0);
  REQUIRE_THROWS_AS(dtw(std::vector<int>{}, std::vector<int>{1}, degree_cost),
                    std::invalid_argument);
}

TEST_CASE("dtw equals exhaustive alignment search", "[dtw][oracle]") {
  Rng rng(1234);
  for (int trial = 0; trial < 1000; ++trial) {
    auto draw = [&] {
      std::vector<int> seq(1 + rng.next_below(6));
      for (auto& x : seq) x = 1 + static_cast<int>(rng.next_below(9));
      std::sort(seq.begin(), seq.end());
      return seq;
    };
    std::vector<int> a = draw(), b = draw();
    double fast = dtw(a, b, degree_cost);
    double slow = oracle::brute_force_dtw(a, b, degree_cost);
    REQUIRE(fast == slow);
  }
}

TEST_CASE("dtw is symmetric", "[dtw]") {
  Rng rng(99);
  for (int trial = 0; trial < 300; ++trial) {
    auto draw = [&] {
      std::vector<int> seq(1 + rng.next_below(8));
      for (auto& x : seq) x = 1 + static_cast<int>(rng.next_below(20));
      std::sort(seq.begin(), seq.end());
      return seq;
    };
    std::vector<int> a = draw(), b = draw();
    REQUIRE(dtw(a, b, degree_cost) == dtw(b, a, degree_cost));
  }
}

TEST_CASE("compressed dtw matches plain dtw when degrees are distinct", "[dtw][oracle]") {
  Rng rng(555);
  for (int trial = 0; trial < 500; ++trial) {
    auto draw = [&] {
      // strictly increasing degrees, so every run has count 1
      std::vector<int> seq;
      int d = 0;
      int len = 1 + static_cast<int>(rng.next_below(7));
      for (int i = 0; i < len; ++i) {
        d += 1 + static_cast<int>(rng.next_below(5));
        seq.push_back(d);
      }
      return seq;
    };
    std::vector<int> a = draw(), b = draw();
    double plain = dtw(a, b, degree_cost);
    double compressed = dtw(compress(a), compress(b), compressed_cost);
    REQUIRE(plain == compressed);
  }
}
