#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cstdint>

#include "kcnas/search_space.hpp"

using kcnas::Architecture;
using kcnas::GridPoint;
using kcnas::SearchSpace;

TEST_CASE("derive_architecture reproduces the worked examples") {
    CHECK(kcnas::derive_architecture({24, 3}, 11).hidden_sizes == std::vector<int>{24, 8, 2});
    CHECK(kcnas::derive_architecture({10, 2}, 11).hidden_sizes == std::vector<int>{10, 5, 2, 1});
    CHECK(kcnas::derive_architecture({9, 2}, 11).hidden_sizes == std::vector<int>{9, 4, 2, 1});
    CHECK(kcnas::derive_architecture({10, 4}, 11).hidden_sizes == std::vector<int>{10, 2});
    CHECK(kcnas::derive_architecture({1, 2}, 11).hidden_sizes == std::vector<int>{1});
}

TEST_CASE("df == 1 yields a single hidden layer") {
    CHECK(kcnas::derive_architecture({16, 1}, 11).hidden_sizes == std::vector<int>{16});
    CHECK(kcnas::derive_architecture({48, 1}, 11).hidden_sizes == std::vector<int>{48});
}

TEST_CASE("derive_architecture carries dimensions and origin") {
    const Architecture arch = kcnas::derive_architecture({10, 2}, 11);
    CHECK(arch.input_dim == 11);
    CHECK(arch.output_dim == 1);
    CHECK(arch.origin == GridPoint{10, 2});
}

TEST_CASE("derive_architecture rejects zero parameters") {
    CHECK_THROWS_AS((void)kcnas::derive_architecture({0, 2}, 11), std::invalid_argument);
    CHECK_THROWS_AS((void)kcnas::derive_architecture({4, 0}, 11), std::invalid_argument);
    CHECK_THROWS_AS((void)kcnas::derive_architecture({4, 2}, 0), std::invalid_argument);
}

TEST_CASE("division chain invariants hold across the grid") {
    for (int df : {2, 3, 4, 5, 8, 16, 64}) {
        for (int ihls = 1; ihls <= 96; ++ihls) {
            const auto sizes = kcnas::derive_architecture({ihls, df}, 7).hidden_sizes;
            REQUIRE(!sizes.empty());
            CHECK(sizes.front() == ihls);
            for (std::size_t i = 0; i + 1 < sizes.size(); ++i) {
                CHECK(sizes[i + 1] == sizes[i] / df);
                CHECK(sizes[i + 1] < sizes[i]);
            }
            CHECK(sizes.back() / df == 0);

            // chain length = floor(log_df(ihls)) + 1, checked via integer powers
            std::size_t expected = 1;
            for (std::int64_t power = df; power <= ihls; power *= df) ++expected;
            CHECK(sizes.size() == expected);
        }
    }
}

TEST_CASE("derive_architecture is deterministic") {
    const auto a = kcnas::derive_architecture({37, 3}, 11);
    const auto b = kcnas::derive_architecture({37, 3}, 11);
    CHECK(a == b);
}

TEST_CASE("build_space produces the default 64x6 grid") {
    const SearchSpace space = kcnas::build_space(64, 6, false, 11);
    CHECK(space.ihls_values().size() == 64);
    CHECK(space.ihls_values().front() == 1);
    CHECK(space.ihls_values().back() == 64);
    CHECK(space.df_values() == std::vector<int>{2, 4, 8, 16, 32, 64});
    CHECK(space.size() == 384);
    CHECK(space.input_dim() == 11);
    CHECK(space.output_dim() == 1);
}

TEST_CASE("build_space edge grids") {
    const SearchSpace one_row = kcnas::build_space(10, 1, false, 11);
    CHECK(one_row.df_values() == std::vector<int>{2});
    CHECK(one_row.size() == 10);

    const SearchSpace with_one = kcnas::build_space(3, 2, true, 11);
    CHECK(with_one.df_values() == std::vector<int>{1, 2, 4});
    CHECK(with_one.size() == 9);

    CHECK_THROWS_AS((void)kcnas::build_space(0, 2, false, 11), std::invalid_argument);
    CHECK_THROWS_AS((void)kcnas::build_space(4, 0, false, 11), std::invalid_argument);
}

TEST_CASE("every grid cell maps to exactly one architecture") {
    const SearchSpace space = kcnas::build_space(64, 6, true, 11);
    for (Eigen::Index r = 0; r < space.rows(); ++r)
        for (Eigen::Index c = 0; c < space.cols(); ++c) {
            const GridPoint p = space.at(c, r);
            const Architecture arch = kcnas::derive_architecture(p, space.input_dim());
            CHECK(!arch.hidden_sizes.empty());
            for (int h : arch.hidden_sizes) CHECK(h >= 1);
        }
}

TEST_CASE("index lookup round-trips and rejects outsiders") {
    const SearchSpace space = kcnas::build_space(8, 3, false, 11);
    const GridPoint p = space.at(4, 2);
    const SearchSpace::Index idx = space.index_of(p);
    CHECK(idx.ihls == 4);
    CHECK(idx.df == 2);
    CHECK(space.contains(p));
    CHECK(!space.contains({5, 3}));
    CHECK_THROWS_AS((void)space.index_of({5, 3}), std::invalid_argument);
    CHECK_THROWS_AS((void)space.at(8, 0), std::out_of_range);
}

TEST_CASE("SearchSpace validates axes") {
    CHECK_THROWS_AS(SearchSpace({}, {2}, 11), std::invalid_argument);
    CHECK_THROWS_AS(SearchSpace({1, 1}, {2}, 11), std::invalid_argument);
    CHECK_THROWS_AS(SearchSpace({2, 1}, {2}, 11), std::invalid_argument);
    CHECK_THROWS_AS(SearchSpace({1}, {0}, 11), std::invalid_argument);
    CHECK_THROWS_AS(SearchSpace({1}, {2}, 0), std::invalid_argument);
}
