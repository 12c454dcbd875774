#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "impartial/mechanism.hpp"
#include "impartial/permutation.hpp"

namespace impartial {

/// Target vector for the one-bit messages: agent i reports whether it
/// ranks agent rho[i] above itself. rho[i] != i always.
class RhoVector {
public:
    explicit RhoVector(std::vector<int> rho);

    /// rho_i = i + 1 (mod n), the form used by the randomized construction.
    static RhoVector cyclic(int n);

    int n() const { return static_cast<int>(rho_.size()); }
    int operator[](int i) const { return rho_[i]; }
    const std::vector<int>& values() const { return rho_; }
    bool is_cyclic() const;

    bool operator==(const RhoVector&) const = default;

private:
    std::vector<int> rho_;
};

/// Multigraph on vertex set [n] with one edge set per color i, where no
/// edge of color i touches vertex i. Neighborhoods are kept as bitmasks,
/// so n is limited to 64.
class ColoredMultigraph {
public:
    explicit ColoredMultigraph(int n);

    int n() const { return n_; }
    void add_edge(int color, int j, int k);
    bool has_edge(int color, int j, int k) const;

    /// N_i(j): neighbors of j through edges of color i.
    std::uint64_t neighbor_mask(int color, int vertex) const { return adjacency_[color][vertex]; }
    std::vector<int> neighbors(int color, int vertex) const;

    /// Edges of one color as sorted (j, k) pairs with j < k.
    std::vector<std::pair<int, int>> edges(int color) const;

    bool operator==(const ColoredMultigraph&) const = default;

private:
    int n_;
    std::vector<std::vector<std::uint64_t>> adjacency_;  // [color][vertex] -> mask
};

/// Position-blocking sets S^b_{ij} for every ordered pair (i, j), i != j,
/// and both messages b, stored as position bitmasks.
class BlockingSets {
public:
    explicit BlockingSets(int n);

    int n() const { return n_; }
    void set_pair(int i, int j, std::uint64_t s0, std::uint64_t s1);
    std::uint64_t mask(int i, int b, int j) const { return sets_[b][index(i, j)]; }
    std::vector<int> positions(int i, int b, int j) const;

    bool operator==(const BlockingSets&) const = default;

private:
    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_ + j; }

    int n_;
    std::array<std::vector<std::uint64_t>, 2> sets_;
};

/// One bit per agent. Kept as a mask; bit i is agent i's message.
struct MessageVector {
    int n = 0;
    std::uint64_t bits = 0;

    MessageVector() = default;
    MessageVector(int n, std::uint64_t bits) : n(n), bits(bits) {}
    static MessageVector from_bits(const std::vector<int>& bits);

    int bit(int i) const { return static_cast<int>((bits >> i) & 1u); }
    MessageVector with_flipped(int i) const { return MessageVector(n, bits ^ (std::uint64_t{1} << i)); }
    MessageVector with_bit(int i, int value) const;
    std::vector<int> to_vector() const;

    bool operator==(const MessageVector&) const = default;
};

/// chi_i(p, rho_i): 1 iff agent rho_i is ranked strictly above agent i.
int chi(int i, const Permutation& ranking, int rho_i);

/// Canonical ranking realizing message `bit` for agent i: the identity, or
/// the identity with the positions of i and rho_i exchanged.
Permutation realize_message(int n, int i, int rho_i, int bit);

/// The explicit 16-entry message-to-ranking table for n = 4, indexed by
/// b0 | b1<<1 | b2<<2 | b3<<3.
const std::array<Permutation, 16>& g4_table();

/// rho = (1, 0, 1, 0), the target vector paired with g4_table().
const RhoVector& g4_rho();

/// Hand-built multigraphs for 5 <= n <= 10, with their rho vectors:
/// rho = (3, 2, 3, 1, 1) for n = 5 and rho_i = i+1 (mod n) otherwise.
std::pair<RhoVector, ColoredMultigraph> fixture_multigraph(int n);

struct MultigraphVerdict {
    bool ok = false;
    std::string condition;       // "neighbor-prefix" or "triple-path"
    std::vector<int> witness;    // violating (i) or (j, k, l)
    std::string message;
};

/// Checks the two structural conditions a multigraph must satisfy to
/// induce valid blocking sets:
///  (i) for every color i, the color-i neighbors of rho_i are exactly the
///      vertices j != i with j < rho_i;
///  (ii) for every vertex k and distinct j, l != k, some color
///       i not in {j, k, l} has exactly one of the edges {j,k}, {k,l}.
MultigraphVerdict verify_multigraph(const RhoVector& rho, const ColoredMultigraph& graph);

struct RandomGraphResult {
    ColoredMultigraph graph;
    int attempts = 0;       // verification attempts used, >= 1
    std::uint64_t seed = 0; // seed that was supplied
};

/// Seeded rejection sampling for n >= 11: edges of color i incident to
/// rho_i are forced ({rho_i, j} for all j < rho_i, j != i); every other
/// pair not touching i or rho_i is drawn with probability 1/2. Redraws
/// with derived sub-seeds until verify_multigraph passes or max_retries is
/// hit (SearchExhaustedError). Deterministic in (n, seed).
RandomGraphResult random_multigraph(int n, const RhoVector& rho, std::uint64_t seed,
                                    int max_retries = 1000);

/// S^0_{ij} = N_i(j), S^1_{ij} = complement within [n] \ {i, j}.
/// Verifies the multigraph first and throws ValidationError on failure.
BlockingSets blocking_from_multigraph(const RhoVector& rho, const ColoredMultigraph& graph);

struct BlockingSetsVerdict {
    bool ok = false;
    bool sampled = false;        // true when only a sampled sweep was run
    std::uint64_t cases = 0;     // message vectors inspected
    std::string condition;       // which condition failed
    std::string message;
};

/// Checks the five blocking-set conditions: disjoint-cover and the rho
/// split directly, the per-message-vector union-size and cross-agent
/// conditions by sweeping all 2^n message vectors (n <= 22).
BlockingSetsVerdict verify_blocking_sets(const RhoVector& rho, const BlockingSets& sets,
                                         int jobs = 1);

/// Sampled variant for n beyond the exhaustive cutoff; never claims more
/// than "no violation found in `trials` samples".
BlockingSetsVerdict verify_blocking_sets_sampled(const RhoVector& rho, const BlockingSets& sets,
                                                 int trials, std::uint64_t seed);

/// Positions other than j's default that no other agent blocks for j
/// under the given messages (agent j's own bit is ignored). Size is 0 or
/// 1 for verified sets.
std::uint64_t available_positions_mask(int j, const MessageVector& messages, const BlockingSets& sets);
std::vector<int> available_positions(int j, const MessageVector& messages, const BlockingSets& sets);

/// Assembles the output ranking: each agent takes its unique unblocked
/// non-default position if one exists, its default position otherwise.
/// Throws ValidationError if the result is not a bijection, which cannot
/// happen for verified sets.
Permutation assemble_g(const RhoVector& rho, const BlockingSets& sets, const MessageVector& messages);

/// e * (4n - 9) / 2^(n-4); the randomized construction is guaranteed
/// viable where this is at most 1 (all n >= 11).
double lll_margin(int n);

/// The impartial, monotone, individual-full-rank mechanism: extracts one
/// bit per agent via chi and applies the table (n = 4) or the
/// blocking-set assembly (n >= 5).
class BlockingMechanism : public Mechanism {
public:
    static BlockingMechanism n4_table();
    static BlockingMechanism fixture(int n);
    static BlockingMechanism random_search(int n, std::uint64_t seed, int max_retries = 1000);
    static BlockingMechanism from_sets(RhoVector rho, BlockingSets sets, bool verify = true);

    int n() const override { return rho_.n(); }
    std::string name() const override;
    Permutation rank(const RankingProfile& profile) const override;

    MessageVector extract_messages(const RankingProfile& profile) const;
    Permutation evaluate(const MessageVector& messages) const;

    /// Canonical profile whose extracted messages equal the given vector.
    RankingProfile realize(const MessageVector& messages) const;

    /// Profile placing agent j in output position k, built from the
    /// constructive argument: pick non-blocking messages for k != j, grow
    /// the blocked set greedily for k == j.
    RankingProfile ifr_witness(int j, int k) const;

    const RhoVector& rho() const { return rho_; }
    const BlockingSets* sets() const { return sets_ ? &*sets_ : nullptr; }
    int search_attempts() const { return attempts_; }

private:
    BlockingMechanism(RhoVector rho, std::optional<BlockingSets> sets, std::string name, int attempts);

    RhoVector rho_;
    std::optional<BlockingSets> sets_;  // empty for the n = 4 table
    std::string name_;
    int attempts_ = 0;
};

struct MessageSpaceVerdict {
    bool impartial = false;        // position of i invariant under flipping bit i
    bool monotone = false;         // flipping bit i to 1 never moves rho_i down
    bool full_rank = false;        // every (agent, position) pair realized
    std::uint64_t cases = 0;       // message vectors swept
    std::string message;           // first violation, if any
    bool ok() const { return impartial && monotone && full_rank; }
};

/// Exhaustive sweep of all 2^n message vectors checking the three
/// message-level mechanism conditions. Partitioned across `jobs` workers.
MessageSpaceVerdict verify_message_space(const BlockingMechanism& mechanism, int jobs = 1);

}  // namespace impartial
