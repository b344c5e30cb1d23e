// Copyright 2026 The bellsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "bellsim/random.hpp"

#include <cmath>
#include <set>

#include "gtest/gtest.h"

using namespace bellsim;

// Known-answer vectors published with Random123.
TEST(Philox, known_answers) {
    EXPECT_EQ(philox4x32_10({0, 0, 0, 0}, {0, 0}),
              (PhiloxCounter{0x6627e8d5, 0xe169c58d, 0xbc57ac4c, 0x9b00dbd8}));
    EXPECT_EQ(philox4x32_10({0xffffffff, 0xffffffff, 0xffffffff, 0xffffffff}, {0xffffffff, 0xffffffff}),
              (PhiloxCounter{0x408f276d, 0x41c83b0e, 0xa20bc7c6, 0x6d5451fd}));
    EXPECT_EQ(philox4x32_10({0x243f6a88, 0x85a308d3, 0x13198a2e, 0x03707344}, {0xa4093822, 0x299f31d0}),
              (PhiloxCounter{0xd16cfe09, 0x94fdcceb, 0x5001e420, 0x24126ea1}));
}

TEST(PairStream, same_key_same_sequence) {
    PairStream s1(42, 1000);
    PairStream s2(42, 1000);
    for (int i = 0; i < 37; ++i) {
        ASSERT_EQ(s1.next_u64(), s2.next_u64());
    }
    EXPECT_EQ(s1.draw_counter(), 37u);
}

TEST(PairStream, distinct_pairs_and_seeds_differ) {
    std::set<std::uint64_t> firsts;
    for (std::uint64_t pair = 0; pair < 1000; ++pair) {
        firsts.insert(PairStream(7, pair).next_u64());
        firsts.insert(PairStream(8, pair).next_u64());
    }
    EXPECT_EQ(firsts.size(), 2000u);
    // the high word of the pair index is part of the counter
    EXPECT_NE(PairStream(7, 1).next_u64(), PairStream(7, (1ull << 32) | 1).next_u64());
}

TEST(PairStream, open_unit_interval_and_extreme_bernoulli) {
    PairStream s(3, 9);
    double sum = 0.0;
    constexpr int kDraws = 200000;
    for (int i = 0; i < kDraws; ++i) {
        const double u = s.next_open_unit();
        ASSERT_GT(u, 0.0);
        ASSERT_LT(u, 1.0);
        sum += u;
    }
    // mean of U(0,1), 5 sigma with sigma = sqrt(1/12 / n)
    EXPECT_NEAR(sum / kDraws, 0.5, 5.0 * std::sqrt(1.0 / 12.0 / kDraws));
    for (int i = 0; i < 10000; ++i) {
        ASSERT_TRUE(s.bernoulli(1.0));
        ASSERT_FALSE(s.bernoulli(0.0));
    }
}

TEST(SplitMix, reference_output) {
    // first output of the reference generator seeded with 0
    EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafull);
}
