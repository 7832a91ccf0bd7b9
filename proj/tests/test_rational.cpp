#include <doctest.h>

#include <stdexcept>

#include "sepfam/rational.hpp"

using namespace sepfam;

TEST_CASE("pow2 and ceil_log2") {
    CHECK(pow2(0) == 1);
    CHECK(pow2(10) == 1024);
    CHECK(pow2(64) == Int(1) << 64);
    CHECK(ceil_log2(1) == 0);
    CHECK(ceil_log2(2) == 1);
    CHECK(ceil_log2(3) == 2);
    CHECK(ceil_log2(4) == 2);
    CHECK(ceil_log2(5) == 3);
    CHECK(ceil_log2(1ull << 40) == 40);
    CHECK_THROWS_AS(ceil_log2(0), std::invalid_argument);
}

TEST_CASE("least t with (t+2)/2^(t+1) below alpha") {
    // alpha = 1/4: 4/8, 5/16, 6/32 -> first strict drop below 1/4 at t = 4
    CHECK(least_t_above_threshold(Rat(1, 4)) == 4);
    // alpha = 1/2: 4/8 = 1/2 not below, 5/16 < 1/2 -> t = 3
    CHECK(least_t_above_threshold(Rat(1, 2)) == 3);
    CHECK(least_t_above_threshold(Rat(1), 1) == 1);  // 3/4 < 1 already at t = 1
    CHECK(least_t_above_threshold(Rat(1, 8)) == 5);  // 7/64 < 8/64 first; 6/32 = 12/64 is not
    CHECK_THROWS_AS(least_t_above_threshold(Rat(0)), std::invalid_argument);
    // exactness at the boundary: (t+2)/2^(t+1) == alpha must not stop the scan
    CHECK(least_t_above_threshold(Rat(5, 16)) == 4);
}

TEST_CASE("exact ceil of c*log2(1/alpha)") {
    CHECK(ceil_mul_log2_inv(Rat(1, 4), 10) == 20);
    CHECK(ceil_mul_log2_inv(Rat(1, 2), 10) == 10);
    CHECK(ceil_mul_log2_inv(Rat(1), 10) == 0);
    // 10*log2(4/3) = 4.15... -> 5, decided without floating point
    CHECK(ceil_mul_log2_inv(Rat(3, 4), 10) == 5);
    // 10*log2(16/15) = 0.931... -> 1
    CHECK(ceil_mul_log2_inv(Rat(15, 16), 10) == 1);
    CHECK_THROWS_AS(ceil_mul_log2_inv(Rat(2), 10), std::invalid_argument);
    CHECK_THROWS_AS(ceil_mul_log2_inv(Rat(0), 10), std::invalid_argument);
}

TEST_CASE("rational strings") {
    CHECK(rat_to_string(Rat(3, 4)) == "3/4");
    CHECK(rat_to_string(Rat(2)) == "2");
    CHECK(rat_to_string(Rat(6, 8)) == "3/4");
    CHECK(rat_from_string("3/4") == Rat(3, 4));
    CHECK(rat_from_string("7") == Rat(7));
    CHECK(rat_from_string("-1/3") == Rat(-1, 3));
    CHECK(rat_from_string(rat_to_string(Rat(123456789, 987654321))) == Rat(123456789, 987654321));
    CHECK_THROWS_AS(rat_from_string("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("1/-2"), std::invalid_argument);
    CHECK_THROWS_AS(rat_from_string("abc"), std::invalid_argument);
}
