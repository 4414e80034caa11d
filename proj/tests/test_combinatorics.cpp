#include "catch_amalgamated.hpp"

#include <set>

#include "kron/combinatorics.hpp"

using namespace kron;

TEST_CASE("choose matches the factorial formula") {
  CHECK(comb::choose(0, 0) == 1);
  CHECK(comb::choose(5, 2) == 10);
  CHECK(comb::choose(10, 5) == 252);
  CHECK(comb::choose(62, 31) == 465428353255261088ULL);
  CHECK(comb::choose(4, 5) == 0);
  CHECK(comb::choose(4, -1) == 0);
}

TEST_CASE("unrank enumerates every k-subset once and rank inverts it") {
  const std::vector<int> positions{1, 3, 4, 7, 9, 10};
  for (int k = 0; k <= 6; ++k) {
    std::set<std::uint64_t> seen;
    for (std::uint64_t r = 0; r < comb::choose(6, k); ++r) {
      const std::uint64_t m = comb::unrank_subset(r, k, positions);
      CHECK(std::popcount(m) == k);
      for (int b : comb::bit_positions(m)) CHECK(std::find(positions.begin(), positions.end(), b) != positions.end());
      seen.insert(m);
      std::vector<int> idx;
      for (int i = 0; i < 6; ++i)
        if ((m >> positions[i]) & 1U) idx.push_back(i);
      CHECK(comb::rank_subset(idx) == r);
    }
    CHECK(seen.size() == comb::choose(6, k));
  }
}

TEST_CASE("labels of weight are sorted and complete") {
  const auto l = comb::labels_of_weight(8, 3);
  CHECK(l.size() == 56);
  CHECK(std::is_sorted(l.begin(), l.end()));
  for (auto x : l) CHECK(std::popcount(x) == 3);
  CHECK(comb::labels_of_weight(4, 0) == std::vector<std::uint64_t>{0});
  CHECK(comb::labels_of_weight(4, 4) == std::vector<std::uint64_t>{15});
}

TEST_CASE("round half even") {
  CHECK(comb::round_half_even(2.5) == 2);
  CHECK(comb::round_half_even(3.5) == 4);
  CHECK(comb::round_half_even(2.8) == 3);
  CHECK(comb::round_half_even(1.49) == 1);
}
