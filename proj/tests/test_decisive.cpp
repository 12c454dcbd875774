#include <doctest.h>

#include <memory>
#include <set>

#include "impartial/axioms.hpp"
#include "impartial/decisive.hpp"
#include "impartial/json_io.hpp"

using namespace impartial;

namespace {

std::vector<int> sorted_set(const CuttingFamily& family, int color, int index) {
    return family.set(color, index);
}

// Explicit 5x5 matrix triple with diagonals d^i_p = p + i (mod 5),
// transcribed entry by entry.
const std::array<std::vector<std::vector<int>>, 3> kExplicitTriple = {{
    {{0, 3, 4, 3, 4}, {4, 1, 4, 1, 4}, {3, 3, 2, 3, 2}, {3, 3, 2, 3, 2}, {0, 3, 4, 3, 4}},
    {{1, 2, 1, 1, 2}, {0, 2, 0, 4, 0}, {0, 0, 3, 1, 0}, {0, 0, 0, 4, 0}, {0, 0, 0, 1, 0}},
    {{2, 2, 4, 4, 2}, {1, 3, 1, 1, 1}, {2, 2, 4, 4, 2}, {2, 0, 0, 0, 2}, {1, 3, 1, 1, 1}},
}};

}  // namespace

TEST_CASE("the n = 5 cutting family is the explicit twelve-set one") {
    const CuttingFamily family = CuttingFamily::standard(5);
    CHECK(family.size(0) == 4);
    CHECK(family.size(1) == 4);
    CHECK(family.size(2) == 4);

    CHECK(sorted_set(family, 0, 0) == std::vector<int>{0, 1, 2});
    CHECK(sorted_set(family, 0, 1) == std::vector<int>{0, 3, 4});
    CHECK(sorted_set(family, 0, 2) == std::vector<int>{1, 3});
    CHECK(sorted_set(family, 0, 3) == std::vector<int>{2, 4});
    CHECK(sorted_set(family, 1, 0) == std::vector<int>{0, 1, 3});
    CHECK(sorted_set(family, 1, 1) == std::vector<int>{0, 2, 4});
    CHECK(sorted_set(family, 1, 2) == std::vector<int>{1, 4});
    CHECK(sorted_set(family, 1, 3) == std::vector<int>{2, 3});
    CHECK(sorted_set(family, 2, 0) == std::vector<int>{0, 1, 4});
    CHECK(sorted_set(family, 2, 1) == std::vector<int>{0, 2, 3});
    CHECK(sorted_set(family, 2, 2) == std::vector<int>{1, 2});
    CHECK(sorted_set(family, 2, 3) == std::vector<int>{3, 4});
}

TEST_CASE("circular cutting families") {
    const CuttingFamily six = CuttingFamily::standard(6);
    CHECK(sorted_set(six, 0, 4) == std::vector<int>{0, 4, 5});

    const CuttingFamily seven = CuttingFamily::standard(7);
    CHECK(sorted_set(seven, 2, 5) == std::vector<int>{1, 2, 5});

    CHECK_THROWS_AS(CuttingFamily::standard(4), DescriptorError);
}

TEST_CASE("verify_cutting_family accepts the standard families") {
    for (int n = 5; n <= 12; ++n) {
        const CuttingFamilyVerdict verdict = verify_cutting_family(CuttingFamily::standard(n));
        CAPTURE(n);
        CAPTURE(verdict.message);
        CHECK(verdict.ok);
    }
}

TEST_CASE("verify_cutting_family rejects containment") {
    // Append {0} to colors 0 and 1: separation still holds, but the new
    // color-1 set sits inside the new color-0 set.
    const CuttingFamily base = CuttingFamily::standard(5);
    std::array<std::vector<std::uint64_t>, 3> sets;
    for (int color = 0; color < 3; ++color) {
        for (int l = 0; l < base.size(color); ++l) sets[color].push_back(base.set_mask(color, l));
    }
    sets[0].push_back(1);
    sets[1].push_back(1);
    const CuttingFamilyVerdict verdict = verify_cutting_family(CuttingFamily(5, sets));
    CHECK_FALSE(verdict.ok);
    CHECK(verdict.condition == "non-containment");
}

TEST_CASE("pairwise intersections witnessing separation for n = 5") {
    const CuttingFamily family = CuttingFamily::standard(5);
    // k(i, u) and k'(i, u): the two sets of color i meeting exactly in u.
    const int k[3][5] = {{0, 0, 0, 1, 1}, {0, 0, 1, 0, 1}, {0, 0, 1, 1, 0}};
    const int kp[3][5] = {{1, 2, 3, 2, 3}, {1, 2, 3, 3, 2}, {1, 2, 2, 3, 3}};
    for (int i = 0; i < 3; ++i) {
        for (int u = 0; u < 5; ++u) {
            const std::uint64_t meet = family.set_mask(i, k[i][u]) & family.set_mask(i, kp[i][u]);
            CHECK(meet == (std::uint64_t{1} << u));
        }
    }
    CHECK((family.set_mask(0, 1) & family.set_mask(0, 2)) == (std::uint64_t{1} << 3));
}

TEST_CASE("diagonal positions") {
    CHECK(diagonal(5, 0, 0) == 0);
    CHECK(diagonal(5, 2, 0) == 2);
    CHECK(diagonal(5, 1, 119) == 3);
}

TEST_CASE("ell_index picks the first separating set") {
    const MatrixTriple triple = MatrixTriple::for_mechanism(5);

    const std::uint64_t p = lex_rank(Permutation({2, 1, 4, 0, 3}));
    REQUIRE(triple.diagonal_entry(0, p) == 3);
    REQUIRE(triple.diagonal_entry(1, p) == 1);
    CHECK(triple.ell_index(0, p) == 1);

    for (std::uint64_t q = 0; q < triple.m(); ++q) {
        for (int i = 0; i < 3; ++i) {
            const int l = triple.ell_index(i, q);
            CHECK(l == triple.ell_index(i, q));  // deterministic
            const std::uint64_t mask = triple.family().set_mask(i, l);
            CHECK(((mask >> triple.diagonal_entry(i, q)) & 1u) == 1u);
            CHECK(((mask >> triple.diagonal_entry(mod_add(i, 1, 3), q)) & 1u) == 0u);
        }
    }
}

TEST_CASE("matrix entries with custom diagonals") {
    const MatrixTriple triple(5, 5, CuttingFamily::standard(5),
                              [](int i, std::uint64_t p) { return mod_add(static_cast<int>(p), i, 5); });
    for (int p = 0; p < 5; ++p) {
        CHECK(triple.entry(0, p, p) == p);
    }
    // Cross-matrix non-clash on all 3 * 5^3 index combinations.
    for (int i = 0; i < 3; ++i) {
        for (int p = 0; p < 5; ++p) {
            for (int q = 0; q < 5; ++q) {
                const int left = triple.entry(i, p, q);
                if (p != q) {
                    const std::uint64_t column = triple.family().set_mask(i, triple.ell_index(i, q));
                    CHECK(((column >> left) & 1u) == 1u);
                }
                for (int r = 0; r < 5; ++r) {
                    CHECK(left != triple.entry(mod_add(i, 1, 3), q, r));
                }
            }
        }
    }
}

TEST_CASE("explicit matrix fixture satisfies both conditions") {
    std::array<std::vector<int>, 3> d;
    for (int i = 0; i < 3; ++i) {
        for (int p = 0; p < 5; ++p) d[i].push_back(mod_add(p, i, 5));
    }
    const MatrixConditionsVerdict verdict = verify_matrix_conditions(5, kExplicitTriple, d);
    CAPTURE(verdict.message);
    CHECK(verdict.ok);

    auto broken = kExplicitTriple;
    broken[0][2][2] = 0;
    CHECK_FALSE(verify_matrix_conditions(5, broken, d).ok);
}

TEST_CASE("non-decisive placement") {
    const MatrixTriple triple = MatrixTriple::for_mechanism(5);

    for (int agent = 3; agent < 5; ++agent) {
        CHECK(triple.nondecisive_position(agent, 0, 0, 0) == agent);
    }

    // Independent recomputation for (p, q, r) = (0, 1, 0).
    const std::uint64_t taken0 = triple.entry(0, 1, 0);
    const std::uint64_t taken1 = triple.entry(1, 0, 0);
    const std::uint64_t taken2 = triple.entry(2, 0, 1);
    std::vector<int> remaining;
    for (int pos = 0; pos < 5; ++pos) {
        if (pos != static_cast<int>(taken0) && pos != static_cast<int>(taken1) &&
            pos != static_cast<int>(taken2)) {
            remaining.push_back(pos);
        }
    }
    REQUIRE(remaining.size() == 2);
    CHECK(triple.nondecisive_position(3, 0, 1, 0) == remaining[0]);
    CHECK(triple.nondecisive_position(4, 0, 1, 0) == remaining[1]);

    CHECK_THROWS_AS(triple.nondecisive_position(2, 0, 1, 0), ValidationError);
}

TEST_CASE("weak unanimity of the decisive mechanism") {
    const DecisiveMechanism five(5);
    for (const Permutation& agreed : all_permutations(5)) {
        CHECK(five.rank(RankingProfile::unanimous(agreed)) == agreed);
    }

    std::uint64_t state = 5;
    for (int n : {6, 7}) {
        const DecisiveMechanism mech(n);
        for (int t = 0; t < 60; ++t) {
            const Permutation agreed = random_permutation(n, state);
            CHECK(mech.rank(RankingProfile::unanimous(agreed)) == agreed);
        }
    }
}

TEST_CASE("non-decisive rankings are ignored") {
    const DecisiveMechanism mech(5);
    std::uint64_t state = 11;
    for (int t = 0; t < 200; ++t) {
        std::vector<Permutation> rankings;
        for (int i = 0; i < 5; ++i) rankings.push_back(random_permutation(5, state));
        const RankingProfile profile(rankings);
        const Permutation base = mech.rank(profile);
        for (int agent = 3; agent < 5; ++agent) {
            CHECK(mech.rank(replace(profile, agent, random_permutation(5, state))) == base);
        }
    }
}

TEST_CASE("decisive outputs are valid permutations on sampled triples") {
    for (int n : {5, 6}) {
        const DecisiveMechanism mech(n);
        const std::uint64_t m = factorial(n);
        std::uint64_t state = 3;
        auto next = [&state, m]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return (state >> 11) % m;
        };
        for (int t = 0; t < 5000; ++t) {
            CHECK_NOTHROW(mech.rank_indices(next(), next(), next()));
        }
    }
}

TEST_CASE("cross-matrix condition holds on sampled quadruples") {
    for (int n : {5, 6, 7}) {
        const MatrixTriple triple = MatrixTriple::for_mechanism(n);
        const std::uint64_t m = triple.m();
        std::uint64_t state = 17;
        auto next = [&state, m]() {
            state = state * 6364136223846793005ull + 1442695040888963407ull;
            return (state >> 13) % m;
        };
        for (int t = 0; t < 20000; ++t) {
            const int i = static_cast<int>(next() % 3);
            const std::uint64_t p = next(), q = next(), r = next();
            CHECK(triple.entry(i, p, q) != triple.entry(mod_add(i, 1, 3), q, r));
        }
    }
}

TEST_CASE("relabeling moves the decisive set") {
    auto inner = std::make_shared<DecisiveMechanism>(5);
    // Outer agents 3, 4, 0 play the decisive roles.
    const RelabeledMechanism outer(inner, Permutation({3, 4, 0, 1, 2}));

    std::uint64_t state = 23;
    for (int t = 0; t < 100; ++t) {
        const Permutation agreed = random_permutation(5, state);
        CHECK(outer.rank(RankingProfile::unanimous(agreed)) == agreed);
    }

    for (int t = 0; t < 100; ++t) {
        std::vector<Permutation> rankings;
        for (int i = 0; i < 5; ++i) rankings.push_back(random_permutation(5, state));
        const RankingProfile profile(rankings);
        const Permutation base = outer.rank(profile);
        // Outer agents 1 and 2 are the non-decisive ones now.
        CHECK(outer.rank(replace(profile, 1, random_permutation(5, state))) == base);
        CHECK(outer.rank(replace(profile, 2, random_permutation(5, state))) == base);
    }
}

TEST_CASE("cutting family JSON round trip") {
    const CuttingFamily family = CuttingFamily::standard(5);
    CHECK(parse_cutting_family_json(cutting_family_to_json(family)) == family);
    CHECK_THROWS_AS(parse_cutting_family_json("{\"n\":5}"), ValidationError);
    CHECK_THROWS_AS(parse_cutting_family_json("{\"n\":5,\"sets\":{\"0\":[[9]],\"1\":[[0]],\"2\":[[0]]}}"),
                    ValidationError);
}

TEST_CASE("decisive mechanism input validation") {
    const DecisiveMechanism mech(5);
    CHECK_THROWS_AS(mech.rank(RankingProfile::unanimous(Permutation::identity(4))), ValidationError);
    CHECK_THROWS_AS(DecisiveMechanism(4), DescriptorError);
}
