#include <doctest.h>

#include <algorithm>
#include <numeric>

#include "impartial/axioms.hpp"
#include "impartial/json_io.hpp"
#include "impartial/permutation.hpp"

using namespace impartial;

namespace {

// Independent oracle: all permutations of [n] in lexicographic order via
// std::next_permutation.
std::vector<std::vector<int>> enumerate_lex(int n) {
    std::vector<int> line(n);
    std::iota(line.begin(), line.end(), 0);
    std::vector<std::vector<int>> out;
    do {
        out.push_back(line);
    } while (std::next_permutation(line.begin(), line.end()));
    return out;
}

}  // namespace

TEST_CASE("permutation validation") {
    CHECK_THROWS_AS(Permutation({0, 0, 1}), ValidationError);
    CHECK_THROWS_AS(Permutation({0, 3, 1}), ValidationError);
    CHECK_THROWS_AS(Permutation(std::vector<int>{}), ValidationError);
    const Permutation p({1, 2, 3, 0});
    CHECK(p.agent_at(0) == 1);
    CHECK(p.position_of(0) == 3);
    CHECK(p.to_string() == "(1 2 3 0)");
}

TEST_CASE("inverse of inverse is the identity map") {
    std::uint64_t state = 42;
    for (int n = 2; n <= 10; ++n) {
        for (int t = 0; t < 50; ++t) {
            const Permutation p = random_permutation(n, state);
            CHECK(p.inverse().inverse() == p);
            for (int agent = 0; agent < n; ++agent) {
                CHECK(p.agent_at(p.position_of(agent)) == agent);
            }
        }
    }
}

TEST_CASE("lex_rank endpoints and anchor") {
    for (int n = 1; n <= 8; ++n) {
        CHECK(lex_rank(Permutation::identity(n)) == 0);
        CHECK(lex_rank(Permutation::reversed(n)) == factorial(n) - 1);
    }
    CHECK(lex_rank(Permutation({1, 0, 2})) == 2);

    const auto oracle = enumerate_lex(3);
    CHECK(oracle[2] == std::vector<int>{1, 0, 2});
}

TEST_CASE("lex_unrank anchors") {
    CHECK(lex_unrank(3, 0) == Permutation({0, 1, 2}));
    CHECK(lex_unrank(3, 5) == Permutation({2, 1, 0}));
    CHECK(lex_unrank(4, 7) == Permutation({1, 0, 3, 2}));
    CHECK(lex_unrank(4, 7).one_line() == enumerate_lex(4)[7]);
    CHECK_THROWS_AS(lex_unrank(3, 6), ValidationError);
    CHECK_THROWS_AS(lex_unrank(0, 0), ValidationError);
}

TEST_CASE("rank/unrank bijection, exhaustive to n = 6") {
    for (int n = 1; n <= 6; ++n) {
        const auto oracle = enumerate_lex(n);
        for (std::uint64_t idx = 0; idx < factorial(n); ++idx) {
            const Permutation p = lex_unrank(n, idx);
            CHECK(p.one_line() == oracle[idx]);
            CHECK(lex_rank(p) == idx);
        }
    }
}

TEST_CASE("rank/unrank bijection, sampled for n in {7, 8}") {
    for (int n = 7; n <= 8; ++n) {
        const std::uint64_t total = factorial(n);
        for (int t = 0; t < 2000; ++t) {
            const std::uint64_t idx = (static_cast<std::uint64_t>(t) * 2654435761u + 17) % total;
            CHECK(lex_rank(lex_unrank(n, idx)) == idx);
        }
    }
}

TEST_CASE("unrank ordering is strictly increasing") {
    for (int n = 2; n <= 6; ++n) {
        for (std::uint64_t idx = 1; idx < factorial(n); ++idx) {
            CHECK(lex_unrank(n, idx - 1).one_line() < lex_unrank(n, idx).one_line());
        }
    }
}

TEST_CASE("factorial capacity") {
    CHECK(factorial(20) == 2432902008176640000ull);
    CHECK_THROWS_AS(factorial(21), CapacityError);
    CHECK_THROWS_AS(lex_unrank(21, 0), CapacityError);
}

TEST_CASE("modular helpers") {
    CHECK(mod_add(4, 3, 5) == 2);
    CHECK(mod_sub(1, 3, 5) == 3);
    CHECK(mod_sub(0, 1, 3) == 2);
    const ModIndex color(2, 3);
    CHECK((color + 1).value() == 0);
    CHECK((color - 4).value() == 1);
    CHECK_THROWS_AS(ModIndex(3, 3), ValidationError);
}

TEST_CASE("profile replace") {
    const RankingProfile two(std::vector<Permutation>{Permutation({0, 1}), Permutation({0, 1})});
    const RankingProfile swapped = replace(two, 0, Permutation({1, 0}));
    CHECK(swapped.ranking_of(0) == Permutation({1, 0}));
    CHECK(swapped.ranking_of(1) == Permutation({0, 1}));

    CHECK(replace(two, 1, two.ranking_of(1)) == two);

    const RankingProfile twice = replace(replace(two, 0, Permutation({1, 0})), 0, Permutation({0, 1}));
    CHECK(twice == replace(two, 0, Permutation({0, 1})));

    CHECK_THROWS_AS(replace(two, 2, Permutation({0, 1})), ValidationError);
    CHECK_THROWS_AS(replace(two, 0, Permutation({0, 1, 2})), ValidationError);
}

TEST_CASE("profile JSON parsing") {
    const RankingProfile p =
        parse_profile_json(R"({"n": 2, "rankings": [[1, 0], [0, 1]]})");
    CHECK(p.n() == 2);
    CHECK(p.ranking_of(0) == Permutation({1, 0}));

    CHECK(parse_profile_json(profile_to_json(p)) == p);

    CHECK_THROWS_AS(parse_profile_json("not json"), ValidationError);
    CHECK_THROWS_AS(parse_profile_json(R"({"rankings": [[0]]})"), ValidationError);
    CHECK_THROWS_AS(parse_profile_json(R"({"n": 2, "rankings": [[1, 0]]})"), ValidationError);
    CHECK_THROWS_WITH_AS(parse_profile_json(R"({"n": 2, "rankings": [[1, 0], [1, 1]]})"),
                         doctest::Contains("rankings[1]"), ValidationError);
    CHECK_THROWS_AS(parse_profile_json(R"({"n": 2, "rankings": [[1, 0], [0, 1, 2]]})"),
                    ValidationError);
}
