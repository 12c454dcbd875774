#include <doctest.h>

#include <bit>
#include <cmath>
#include <numbers>

#include "impartial/blocking.hpp"
#include "impartial/json_io.hpp"

using namespace impartial;

namespace {

MessageVector msg(std::initializer_list<int> bits) {
    return MessageVector::from_bits(std::vector<int>(bits));
}

}  // namespace

TEST_CASE("chi reads relative order") {
    CHECK(chi(0, Permutation({0, 1, 2}), 1) == 0);
    CHECK(chi(0, Permutation({1, 0, 2}), 1) == 1);
    CHECK(chi(2, Permutation({1, 2, 0, 3}), 3) == 0);
    CHECK_THROWS_AS(chi(1, Permutation({0, 1, 2}), 1), ValidationError);
}

TEST_CASE("realize_message round-trips through chi") {
    for (int n : {4, 6}) {
        for (int i = 0; i < n; ++i) {
            for (int rho = 0; rho < n; ++rho) {
                if (rho == i) continue;
                for (int b = 0; b < 2; ++b) {
                    CHECK(chi(i, realize_message(n, i, rho, b), rho) == b);
                }
            }
        }
    }
}

TEST_CASE("n = 4 table anchors") {
    CHECK(g4_rho().values() == std::vector<int>{1, 0, 1, 0});

    auto g = [](int b0, int b1, int b2, int b3) {
        return g4_table()[b0 | b1 << 1 | b2 << 2 | b3 << 3];
    };
    CHECK(g(0, 1, 0, 0) == Permutation({0, 3, 1, 2}));
    CHECK(g(1, 0, 0, 1) == Permutation({3, 1, 0, 2}));
    // Agent 0 can reach every position.
    CHECK(g(0, 1, 0, 0).agent_at(0) == 0);
    CHECK(g(0, 0, 1, 1).agent_at(1) == 0);
    CHECK(g(0, 0, 0, 1).agent_at(2) == 0);
    CHECK(g(0, 0, 0, 0).agent_at(3) == 0);
}

TEST_CASE("n = 4 positions of agents 0 and 1 across all message contexts") {
    // Rows keyed by (b1, b2, b3); columns: position of agent 0 under
    // b0 = 0 and 1, then position of agent 1 under b0 = 0 and 1.
    const int expected[8][4] = {
        {3, 3, 2, 2},  // 000
        {2, 2, 3, 1},  // 001
        {3, 3, 1, 0},  // 010
        {1, 1, 3, 0},  // 011
        {0, 0, 2, 2},  // 100
        {0, 0, 3, 1},  // 101
        {2, 2, 1, 0},  // 110
        {1, 1, 3, 0},  // 111
    };
    for (int row = 0; row < 8; ++row) {
        const int b1 = (row >> 2) & 1, b2 = (row >> 1) & 1, b3 = row & 1;
        const Permutation& low = g4_table()[0 | b1 << 1 | b2 << 2 | b3 << 3];
        const Permutation& high = g4_table()[1 | b1 << 1 | b2 << 2 | b3 << 3];
        CHECK(low.position_of(0) == expected[row][0]);
        CHECK(high.position_of(0) == expected[row][1]);
        CHECK(low.position_of(1) == expected[row][2]);
        CHECK(high.position_of(1) == expected[row][3]);
    }
}

TEST_CASE("fixture multigraphs") {
    auto [rho5, g5] = fixture_multigraph(5);
    CHECK(rho5.values() == std::vector<int>{3, 2, 3, 1, 1});

    auto [rho6, g6] = fixture_multigraph(6);
    CHECK(rho6.values() == std::vector<int>{1, 2, 3, 4, 5, 0});

    auto [rho7, g7] = fixture_multigraph(7);
    CHECK(g7.edges(0) == std::vector<std::pair<int, int>>{{2, 3}, {2, 6}, {3, 6}, {4, 5}});

    CHECK_THROWS_AS(fixture_multigraph(4), DescriptorError);
    CHECK_THROWS_AS(fixture_multigraph(11), DescriptorError);
}

TEST_CASE("verify_multigraph accepts the fixtures") {
    for (int n = 5; n <= 10; ++n) {
        auto [rho, graph] = fixture_multigraph(n);
        const MultigraphVerdict verdict = verify_multigraph(rho, graph);
        CAPTURE(n);
        CAPTURE(verdict.message);
        CHECK(verdict.ok);
    }
}

TEST_CASE("verify_multigraph rejects broken graphs") {
    // Required color edges absent entirely.
    const RhoVector rho5({3, 2, 3, 1, 1});
    const MultigraphVerdict empty_verdict = verify_multigraph(rho5, ColoredMultigraph(5));
    CHECK_FALSE(empty_verdict.ok);
    CHECK(empty_verdict.condition == "neighbor-prefix");

    // Rebuild the n = 7 fixture without the color-0 edge {4, 5}.
    auto [rho7, g7] = fixture_multigraph(7);
    ColoredMultigraph mutated(7);
    for (int color = 0; color < 7; ++color) {
        for (const auto& [j, k] : g7.edges(color)) {
            if (color == 0 && j == 4 && k == 5) continue;
            mutated.add_edge(color, j, k);
        }
    }
    const MultigraphVerdict verdict = verify_multigraph(rho7, mutated);
    CHECK_FALSE(verdict.ok);
}

TEST_CASE("multigraph edge bookkeeping") {
    ColoredMultigraph g(5);
    CHECK_THROWS_AS(g.add_edge(0, 0, 1), ValidationError);
    CHECK_THROWS_AS(g.add_edge(0, 1, 1), ValidationError);
    g.add_edge(0, 1, 3);
    CHECK(g.has_edge(0, 3, 1));
    CHECK(g.neighbors(0, 1) == std::vector<int>{3});
}

TEST_CASE("blocking sets from the n = 6 fixture match the worked values") {
    auto [rho, graph] = fixture_multigraph(6);
    const BlockingSets sets = blocking_from_multigraph(rho, graph);

    CHECK(sets.positions(1, 0, 0) == std::vector<int>{2, 4});
    CHECK(sets.positions(2, 1, 0) == std::vector<int>{1, 4, 5});

    for (int i = 0; i < 6; ++i) {
        for (int j = 0; j < 6; ++j) {
            if (i == j) continue;
            const std::uint64_t all = 0b111111ull & ~(1ull << i) & ~(1ull << j);
            CHECK((sets.mask(i, 0, j) | sets.mask(i, 1, j)) == all);
            CHECK((sets.mask(i, 0, j) & sets.mask(i, 1, j)) == 0);
        }
    }
}

TEST_CASE("blocking sets are symmetric across targets") {
    for (int n = 5; n <= 10; ++n) {
        auto [rho, graph] = fixture_multigraph(n);
        const BlockingSets sets = blocking_from_multigraph(rho, graph);
        for (int i = 0; i < n; ++i) {
            for (int b = 0; b < 2; ++b) {
                for (int j = 0; j < n; ++j) {
                    if (i == j) continue;
                    for (int k = 0; k < n; ++k) {
                        if (k == i || k == j) continue;
                        CHECK(((sets.mask(i, b, j) >> k) & 1u) ==
                              ((sets.mask(i, b, k) >> j) & 1u));
                    }
                }
            }
        }
    }
}

TEST_CASE("verify_blocking_sets") {
    auto [rho, graph] = fixture_multigraph(6);
    const BlockingSets sets = blocking_from_multigraph(rho, graph);
    CHECK(verify_blocking_sets(rho, sets).ok);
    CHECK(verify_blocking_sets(rho, sets, 2).ok);

    const BlockingSetsVerdict empty_verdict = verify_blocking_sets(rho, BlockingSets(6));
    CHECK_FALSE(empty_verdict.ok);
    CHECK(empty_verdict.condition == "disjoint-cover");

    // Move position 2 from S^0 to S^1 for the single pair (1, 0).
    BlockingSets mutated = sets;
    mutated.set_pair(1, 0, sets.mask(1, 0, 0) & ~(1ull << 2), sets.mask(1, 1, 0) | (1ull << 2));
    const BlockingSetsVerdict verdict = verify_blocking_sets(rho, mutated);
    CHECK_FALSE(verdict.ok);
    CHECK_FALSE(verdict.condition.empty());

    const BlockingSetsVerdict sampled = verify_blocking_sets_sampled(rho, sets, 500, 7);
    CHECK(sampled.ok);
    CHECK(sampled.sampled);
}

TEST_CASE("available positions for the worked message profile") {
    auto [rho, graph] = fixture_multigraph(6);
    const BlockingSets sets = blocking_from_multigraph(rho, graph);
    const MessageVector b = msg({0, 0, 1, 1, 1, 0});

    CHECK(available_positions(0, b, sets) == std::vector<int>{3});
    CHECK(available_positions(1, b, sets).empty());

    for (std::uint64_t bits = 0; bits < 64; ++bits) {
        const MessageVector m(6, bits);
        for (int j = 0; j < 6; ++j) {
            CHECK(std::popcount(available_positions_mask(j, m, sets)) <= 1);
        }
    }
}

TEST_CASE("assemble_g reproduces the worked example") {
    auto [rho, graph] = fixture_multigraph(6);
    const BlockingSets sets = blocking_from_multigraph(rho, graph);

    CHECK(assemble_g(rho, sets, msg({0, 0, 1, 1, 1, 0})) == Permutation({3, 1, 4, 0, 2, 5}));
    CHECK(assemble_g(rho, sets, msg({0, 1, 1, 1, 1, 0})) == Permutation({0, 1, 2, 3, 4, 5}));

    for (std::uint64_t bits = 0; bits < 64; ++bits) {
        CHECK_NOTHROW(assemble_g(rho, sets, MessageVector(6, bits)));
    }
}

TEST_CASE("mechanism evaluation factors through messages") {
    const BlockingMechanism n4 = BlockingMechanism::n4_table();
    // Every agent ranks its rho target below itself.
    const RankingProfile low = n4.realize(MessageVector(4, 0));
    CHECK(n4.rank(low) == g4_table()[0]);

    const BlockingMechanism n6 = BlockingMechanism::fixture(6);
    const MessageVector worked = msg({0, 0, 1, 1, 1, 0});
    CHECK(n6.rank(n6.realize(worked)) == Permutation({3, 1, 4, 0, 2, 5}));

    // A different ranking with the same message changes nothing.
    RankingProfile profile = n6.realize(worked);
    const Permutation variant({3, 2, 0, 1, 4, 5});  // still ranks 3 above 2
    CHECK(chi(2, variant, 3) == 1);
    CHECK(n6.rank(replace(profile, 2, variant)) == n6.rank(profile));

    CHECK_THROWS_AS(n6.rank(low), ValidationError);
}

TEST_CASE("message space sweep certifies the fixtures") {
    for (int n = 4; n <= 10; ++n) {
        const BlockingMechanism mech =
            n == 4 ? BlockingMechanism::n4_table() : BlockingMechanism::fixture(n);
        const MessageSpaceVerdict verdict = verify_message_space(mech);
        CAPTURE(n);
        CAPTURE(verdict.message);
        CHECK(verdict.impartial);
        CHECK(verdict.monotone);
        CHECK(verdict.full_rank);
        CHECK(verdict.cases == (1ull << n));
    }
    // Worker split returns the same verdict.
    CHECK(verify_message_space(BlockingMechanism::fixture(7), 3).ok());
}

TEST_CASE("ifr witnesses place every agent everywhere") {
    for (int n : {4, 6}) {
        const BlockingMechanism mech =
            n == 4 ? BlockingMechanism::n4_table() : BlockingMechanism::fixture(n);
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const RankingProfile witness = mech.ifr_witness(j, k);
                CHECK(mech.rank(witness).agent_at(k) == j);
            }
        }
    }

    const BlockingMechanism n4 = BlockingMechanism::n4_table();
    CHECK(n4.extract_messages(n4.ifr_witness(0, 0)) == msg({0, 1, 0, 0}));
}

TEST_CASE("ranking-level monotonicity on sampled upward swaps") {
    const BlockingMechanism mech = BlockingMechanism::fixture(6);
    std::uint64_t state = 99;
    auto next = [&state]() {
        state = state * 6364136223846793005ull + 1442695040888963407ull;
        return state >> 33;
    };
    for (int trial = 0; trial < 2000; ++trial) {
        std::vector<Permutation> rankings;
        for (int i = 0; i < 6; ++i) {
            std::vector<int> line{0, 1, 2, 3, 4, 5};
            for (int k = 5; k > 0; --k) {
                std::swap(line[k], line[next() % (k + 1)]);
            }
            rankings.emplace_back(std::move(line));
        }
        RankingProfile profile(std::move(rankings));
        const int agent = static_cast<int>(next() % 6);
        const int t = 1 + static_cast<int>(next() % 5);
        const int subject = profile.ranking_of(agent).agent_at(t);
        const Permutation moved_up = profile.ranking_of(agent).with_swapped_positions(t - 1, t);
        const int before = mech.rank(profile).position_of(subject);
        const int after = mech.rank(replace(profile, agent, moved_up)).position_of(subject);
        CHECK(after <= before);
    }
}

TEST_CASE("random multigraph construction") {
    const RhoVector rho = RhoVector::cyclic(11);

    const RandomGraphResult a = random_multigraph(11, rho, 7);
    const RandomGraphResult b = random_multigraph(11, rho, 7);
    CHECK(a.graph == b.graph);
    CHECK(a.attempts == b.attempts);
    CHECK(a.attempts <= 20);
    CHECK(verify_multigraph(rho, a.graph).ok);

    // Forced neighbor sets below each rho_i.
    for (int i = 0; i < 11; ++i) {
        const int anchor = rho[i];
        std::uint64_t expected = 0;
        for (int j = 0; j < anchor; ++j) {
            if (j != i) expected |= 1ull << j;
        }
        CHECK(a.graph.neighbor_mask(i, anchor) == expected);
    }

    CHECK_THROWS_AS(random_multigraph(10, RhoVector::cyclic(10), 1), DescriptorError);
    CHECK_THROWS_AS(random_multigraph(11, RhoVector({3, 2, 3, 1, 1, 6, 7, 8, 9, 10, 0}), 1),
                    ValidationError);
    CHECK_THROWS_AS(random_multigraph(11, rho, 7, 0), ValidationError);
}

TEST_CASE("lll margin") {
    CHECK(std::abs(lll_margin(11) - 35.0 * std::numbers::e / 128.0) < 1e-12);
    CHECK(lll_margin(11) == doctest::Approx(0.743).epsilon(0.001));
    for (int n = 4; n < 40; ++n) {
        CHECK(lll_margin(n + 1) < lll_margin(n));
    }
    CHECK(std::abs(lll_margin(12) - lll_margin(11) * (39.0 / 35.0) / 2.0) < 1e-12);
    CHECK_THROWS_AS(lll_margin(3), ValidationError);
}

TEST_CASE("multigraph JSON round trip") {
    for (int n : {5, 8}) {
        auto [rho, graph] = fixture_multigraph(n);
        const auto [rho2, graph2] = parse_multigraph_json(multigraph_to_json(rho, graph));
        CHECK(rho2 == rho);
        CHECK(graph2 == graph);
    }
    CHECK_THROWS_AS(parse_multigraph_json("{\"n\": 5}"), ValidationError);
    CHECK_THROWS_AS(parse_multigraph_json("{\"n\":5,\"rho\":[3,2,3,1,1],\"edges\":{\"0\":[[0,1]]}}"),
                    ValidationError);
}

TEST_CASE("message vector helpers") {
    CHECK_THROWS_AS(MessageVector::from_bits({0, 2}), ValidationError);
    const MessageVector m = msg({1, 0, 1});
    CHECK(m.bit(0) == 1);
    CHECK(m.bit(1) == 0);
    CHECK(m.with_flipped(1).bit(1) == 1);
    CHECK(m.with_bit(0, 0).bits == 4);
    CHECK(m.to_vector() == std::vector<int>{1, 0, 1});
}

TEST_CASE("rho vector validation") {
    CHECK_THROWS_AS(RhoVector({0, 0}), ValidationError);
    CHECK_THROWS_AS(RhoVector({1, 2}), ValidationError);
    CHECK(RhoVector::cyclic(6).is_cyclic());
    CHECK_FALSE(RhoVector({3, 2, 3, 1, 1}).is_cyclic());
}
