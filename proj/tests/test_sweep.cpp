#include <doctest.h>

#include <atomic>
#include <stdexcept>
#include <vector>

#include "sweep.hpp"

using namespace mzm::cli;

TEST_CASE("range parsing") {
    const auto a = parse_range("0.2:1.2:0.02");
    CHECK(a.size() == 51);
    CHECK(a.front() == doctest::Approx(0.2));
    CHECK(a.back() == doctest::Approx(1.2));
    CHECK(parse_range("5") == std::vector<double>{5.0});
    CHECK(parse_range("1,2.5,4") == std::vector<double>{1.0, 2.5, 4.0});
    CHECK(parse_range("1:1:0.5").size() == 1);
}

TEST_CASE("bad ranges are rejected") {
    CHECK_THROWS_AS(parse_range("1:0:0.1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_range("0:1:0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_range("0:1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_range("abc"), std::invalid_argument);
    CHECK_THROWS_AS(parse_range(""), std::invalid_argument);
    CHECK_THROWS_AS(parse_range("1.5x"), std::invalid_argument);
}

TEST_CASE("number formatting is stable") {
    CHECK(fmt_num(0.1) == "0.1");
    CHECK(fmt_num(-0.0) == "0");
    CHECK(fmt_num(1.0 / 3) == "0.333333333333");
    CHECK(fmt_num(1e-20) == "1e-20");
}

TEST_CASE("parallel_for visits every index once") {
    for (int workers : {1, 3}) {
        std::vector<std::atomic<int>> hits(50);
        parallel_for(50, workers, [&](int i) { hits[static_cast<size_t>(i)]++; });
        for (const auto& h : hits) CHECK(h.load() == 1);
    }
}

TEST_CASE("parallel_for rethrows task errors") {
    CHECK_THROWS_AS(parallel_for(10, 2,
                                 [](int i) {
                                     if (i == 7) throw std::runtime_error("boom");
                                 }),
                    std::runtime_error);
}
