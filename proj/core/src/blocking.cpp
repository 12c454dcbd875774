#include "impartial/blocking.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

namespace impartial {

namespace {

std::uint64_t full_mask(int n) {
    return n >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n) - 1;
}

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed, int attempt) {
    return splitmix64(seed + 0x9E3779B97F4A7C15ULL * static_cast<std::uint64_t>(attempt + 1));
}

std::string mask_to_string(std::uint64_t mask) {
    std::ostringstream out;
    out << '{';
    bool first = true;
    while (mask != 0) {
        if (!first) out << ',';
        out << std::countr_zero(mask);
        mask &= mask - 1;
        first = false;
    }
    out << '}';
    return out.str();
}

}  // namespace

RhoVector::RhoVector(std::vector<int> rho) : rho_(std::move(rho)) {
    const int n = static_cast<int>(rho_.size());
    if (n < 2) throw ValidationError("rho vector needs at least two agents");
    if (n > 64) throw ValidationError("rho vector supports at most 64 agents");
    for (int i = 0; i < n; ++i) {
        if (rho_[i] < 0 || rho_[i] >= n) {
            throw ValidationError("rho[" + std::to_string(i) + "] out of range");
        }
        if (rho_[i] == i) {
            throw ValidationError("rho[" + std::to_string(i) + "] must differ from " + std::to_string(i));
        }
    }
}

RhoVector RhoVector::cyclic(int n) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = mod_add(i, 1, n);
    return RhoVector(std::move(v));
}

bool RhoVector::is_cyclic() const {
    for (int i = 0; i < n(); ++i) {
        if (rho_[i] != mod_add(i, 1, n())) return false;
    }
    return true;
}

ColoredMultigraph::ColoredMultigraph(int n) : n_(n) {
    if (n < 2 || n > 64) throw ValidationError("multigraph supports 2 to 64 vertices");
    adjacency_.assign(n, std::vector<std::uint64_t>(n, 0));
}

void ColoredMultigraph::add_edge(int color, int j, int k) {
    if (color < 0 || color >= n_ || j < 0 || j >= n_ || k < 0 || k >= n_) {
        throw ValidationError("edge index out of range");
    }
    if (j == k) throw ValidationError("self-loops are not allowed");
    if (j == color || k == color) {
        throw ValidationError("edge of color " + std::to_string(color) + " may not touch vertex " +
                              std::to_string(color));
    }
    adjacency_[color][j] |= bit(k);
    adjacency_[color][k] |= bit(j);
}

bool ColoredMultigraph::has_edge(int color, int j, int k) const {
    return (adjacency_[color][j] >> k) & 1u;
}

std::vector<int> ColoredMultigraph::neighbors(int color, int vertex) const {
    std::vector<int> out;
    std::uint64_t mask = adjacency_[color][vertex];
    while (mask != 0) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

std::vector<std::pair<int, int>> ColoredMultigraph::edges(int color) const {
    std::vector<std::pair<int, int>> out;
    for (int j = 0; j < n_; ++j) {
        std::uint64_t mask = adjacency_[color][j] & ~(full_mask(j + 1));
        while (mask != 0) {
            out.emplace_back(j, std::countr_zero(mask));
            mask &= mask - 1;
        }
    }
    return out;
}

BlockingSets::BlockingSets(int n) : n_(n) {
    if (n < 2 || n > 64) throw ValidationError("blocking sets support 2 to 64 agents");
    sets_[0].assign(static_cast<std::size_t>(n) * n, 0);
    sets_[1].assign(static_cast<std::size_t>(n) * n, 0);
}

void BlockingSets::set_pair(int i, int j, std::uint64_t s0, std::uint64_t s1) {
    if (i == j || i < 0 || j < 0 || i >= n_ || j >= n_) {
        throw ValidationError("blocking set pair index out of range");
    }
    sets_[0][index(i, j)] = s0;
    sets_[1][index(i, j)] = s1;
}

std::vector<int> BlockingSets::positions(int i, int b, int j) const {
    std::vector<int> out;
    std::uint64_t m = mask(i, b, j);
    while (m != 0) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

MessageVector MessageVector::from_bits(const std::vector<int>& bits) {
    MessageVector m(static_cast<int>(bits.size()), 0);
    for (int i = 0; i < m.n; ++i) {
        if (bits[i] != 0 && bits[i] != 1) throw ValidationError("message bits must be 0 or 1");
        m.bits |= static_cast<std::uint64_t>(bits[i]) << i;
    }
    return m;
}

MessageVector MessageVector::with_bit(int i, int value) const {
    MessageVector m = *this;
    m.bits = (m.bits & ~bit(i)) | (static_cast<std::uint64_t>(value & 1) << i);
    return m;
}

std::vector<int> MessageVector::to_vector() const {
    std::vector<int> out(n);
    for (int i = 0; i < n; ++i) out[i] = bit(i) & bits ? 1 : 0;
    return out;
}

int chi(int i, const Permutation& ranking, int rho_i) {
    if (rho_i == i) throw ValidationError("chi: rho_i must differ from i");
    return ranking.position_of(rho_i) < ranking.position_of(i) ? 1 : 0;
}

Permutation realize_message(int n, int i, int rho_i, int bit_value) {
    Permutation p = Permutation::identity(n);
    if (chi(i, p, rho_i) != bit_value) {
        p = p.with_swapped_positions(p.position_of(i), p.position_of(rho_i));
    }
    return p;
}

const std::array<Permutation, 16>& g4_table() {
    // Indexed by b0 | b1<<1 | b2<<2 | b3<<3.
    static const std::array<Permutation, 16> table = {
        Permutation({2, 3, 1, 0}),  // 0000
        Permutation({3, 2, 1, 0}),  // 1000
        Permutation({0, 3, 1, 2}),  // 0100
        Permutation({0, 2, 1, 3}),  // 1100
        Permutation({2, 1, 3, 0}),  // 0010
        Permutation({1, 2, 3, 0}),  // 1010
        Permutation({3, 1, 0, 2}),  // 0110
        Permutation({1, 2, 0, 3}),  // 1110
        Permutation({2, 3, 0, 1}),  // 0001
        Permutation({3, 1, 0, 2}),  // 1001
        Permutation({0, 3, 2, 1}),  // 0101
        Permutation({0, 1, 2, 3}),  // 1101
        Permutation({2, 0, 3, 1}),  // 0011
        Permutation({1, 0, 3, 2}),  // 1011
        Permutation({3, 0, 2, 1}),  // 0111
        Permutation({1, 0, 2, 3}),  // 1111
    };
    return table;
}

const RhoVector& g4_rho() {
    static const RhoVector rho(std::vector<int>{1, 0, 1, 0});
    return rho;
}

std::pair<RhoVector, ColoredMultigraph> fixture_multigraph(int n) {
    using EdgeList = std::vector<std::pair<int, int>>;
    // One edge list per color, transcribed graph by graph.
    static const std::vector<std::vector<EdgeList>> kEdges = {
        // n = 5
        {{{1, 3}, {1, 4}, {2, 3}},
         {{0, 2}, {0, 3}, {3, 4}},
         {{0, 3}, {0, 4}, {1, 3}},
         {{0, 1}, {0, 2}, {2, 4}},
         {{0, 1}, {0, 3}, {2, 3}}},
        // n = 6
        {{{2, 3}, {2, 5}, {3, 4}},
         {{0, 2}, {0, 4}, {3, 5}},
         {{0, 3}, {1, 3}, {1, 5}},
         {{0, 4}, {0, 5}, {1, 4}, {2, 4}},
         {{0, 1}, {0, 3}, {0, 5}, {1, 5}, {2, 5}, {3, 5}},
         {{1, 2}, {1, 4}, {2, 3}}},
        // n = 7
        {{{2, 3}, {2, 6}, {3, 6}, {4, 5}},
         {{0, 2}, {0, 6}, {3, 4}, {3, 5}, {3, 6}, {4, 5}},
         {{0, 3}, {0, 5}, {1, 3}, {1, 4}, {1, 5}, {4, 6}},
         {{0, 2}, {0, 4}, {1, 4}, {1, 6}, {2, 4}, {2, 5}, {2, 6}},
         {{0, 1}, {0, 2}, {0, 5}, {1, 3}, {1, 5}, {1, 6}, {2, 5}, {3, 5}, {3, 6}},
         {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 6}, {1, 4}, {1, 6}, {2, 6}, {3, 4}, {3, 6}, {4, 6}},
         {{1, 4}, {1, 5}, {2, 3}, {2, 5}, {3, 4}}},
        // n = 8
        {{{2, 3}, {2, 4}, {3, 5}, {3, 7}, {4, 7}, {5, 6}},
         {{0, 2}, {0, 4}, {3, 5}, {3, 6}, {3, 7}, {4, 6}, {5, 7}},
         {{0, 3}, {0, 6}, {1, 3}, {1, 5}, {1, 6}, {4, 5}, {4, 6}, {6, 7}},
         {{0, 4}, {1, 2}, {1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 6}, {2, 7}, {5, 7}},
         {{0, 2}, {0, 5}, {1, 3}, {1, 5}, {1, 7}, {2, 5}, {2, 7}, {3, 5}},
         {{0, 2}, {0, 6}, {1, 6}, {2, 3}, {2, 6}, {3, 6}, {4, 6}, {4, 7}},
         {{0, 2}, {0, 4}, {0, 7}, {1, 4}, {1, 5}, {1, 7}, {2, 3}, {2, 5}, {2, 7}, {3, 7}, {4, 7}, {5, 7}},
         {{1, 2}, {1, 3}, {1, 4}, {1, 5}, {1, 6}, {2, 4}, {3, 4}, {3, 5}, {4, 5}}},
        // n = 9
        {{{2, 4}, {2, 5}, {2, 7}, {3, 5}, {3, 7}, {4, 5}, {4, 8}, {6, 8}, {7, 8}},
         {{0, 2}, {0, 3}, {0, 6}, {0, 8}, {3, 4}, {3, 6}, {3, 8}},
         {{0, 3}, {0, 4}, {1, 3}, {1, 4}, {4, 5}, {4, 8}, {5, 6}, {5, 8}, {6, 8}},
         {{0, 1}, {0, 4}, {0, 5}, {0, 8}, {1, 4}, {1, 7}, {2, 4}, {2, 8}, {5, 7}, {6, 8}, {7, 8}},
         {{0, 1}, {0, 3}, {0, 5}, {0, 6}, {1, 2}, {1, 5}, {2, 5}, {2, 6}, {2, 7}, {3, 5}, {3, 7},
          {3, 8}, {6, 7}, {6, 8}},
         {{0, 1}, {0, 4}, {0, 6}, {1, 4}, {1, 6}, {1, 8}, {2, 6}, {2, 8}, {3, 6}, {3, 7}, {4, 6},
          {4, 8}},
         {{0, 1}, {0, 4}, {0, 7}, {0, 8}, {1, 4}, {1, 7}, {2, 3}, {2, 7}, {3, 4}, {3, 5}, {3, 7},
          {4, 7}, {5, 7}},
         {{0, 2}, {0, 5}, {0, 8}, {1, 3}, {1, 4}, {1, 8}, {2, 5}, {2, 8}, {3, 5}, {3, 6}, {3, 8},
          {4, 8}, {5, 8}, {6, 8}},
         {{1, 5}, {1, 6}, {2, 3}, {2, 6}, {3, 6}, {3, 7}, {4, 7}, {5, 6}, {5, 7}}},
        // n = 10
        {{{2, 3}, {2, 7}, {3, 4}, {3, 9}, {4, 8}, {4, 9}, {5, 8}, {5, 9}, {7, 8}},
         {{0, 2}, {0, 4}, {3, 9}, {4, 7}, {8, 9}},
         {{0, 3}, {0, 5}, {0, 7}, {0, 9}, {1, 3}, {1, 7}, {1, 8}, {5, 7}, {5, 8}, {5, 9}, {6, 9},
          {7, 8}, {7, 9}, {8, 9}},
         {{0, 2}, {0, 4}, {0, 7}, {1, 4}, {1, 6}, {1, 9}, {2, 4}, {2, 5}, {2, 6}, {2, 8}, {5, 7},
          {6, 8}, {7, 8}, {8, 9}},
         {{0, 2}, {0, 5}, {0, 6}, {0, 9}, {1, 3}, {1, 5}, {1, 8}, {2, 3}, {2, 5}, {2, 9}, {3, 5},
          {6, 7}},
         {{0, 6}, {1, 6}, {2, 6}, {2, 8}, {3, 4}, {3, 6}, {4, 6}, {7, 9}},
         {{0, 5}, {0, 7}, {1, 5}, {1, 7}, {2, 7}, {3, 5}, {3, 7}, {3, 8}, {4, 5}, {4, 7}, {4, 8},
          {4, 9}, {5, 7}, {5, 9}},
         {{0, 2}, {0, 8}, {0, 9}, {1, 6}, {1, 8}, {2, 8}, {3, 6}, {3, 8}, {4, 6}, {4, 8}, {5, 8},
          {6, 8}},
         {{0, 1}, {0, 9}, {1, 3}, {1, 5}, {1, 9}, {2, 4}, {2, 6}, {2, 9}, {3, 4}, {3, 6}, {3, 9},
          {4, 5}, {4, 9}, {5, 9}, {6, 9}, {7, 9}},
         {{1, 4}, {1, 5}, {1, 7}, {2, 7}, {3, 5}, {3, 8}, {4, 6}, {4, 8}, {5, 7}}},
    };

    if (n < 5 || n > 10) {
        throw DescriptorError("fixture multigraphs exist for 5 <= n <= 10, got n = " + std::to_string(n));
    }
    RhoVector rho = n == 5 ? RhoVector({3, 2, 3, 1, 1}) : RhoVector::cyclic(n);
    ColoredMultigraph graph(n);
    const auto& per_color = kEdges[static_cast<std::size_t>(n - 5)];
    for (int color = 0; color < n; ++color) {
        for (const auto& [j, k] : per_color[color]) graph.add_edge(color, j, k);
    }
    return {std::move(rho), std::move(graph)};
}

MultigraphVerdict verify_multigraph(const RhoVector& rho, const ColoredMultigraph& graph) {
    MultigraphVerdict verdict;
    const int n = graph.n();
    if (rho.n() != n) {
        verdict.condition = "dimension";
        verdict.message = "rho and graph disagree on n";
        return verdict;
    }

    for (int i = 0; i < n; ++i) {
        const std::uint64_t expected = (full_mask(rho[i])) & ~bit(i);
        if (graph.neighbor_mask(i, rho[i]) != expected) {
            verdict.condition = "neighbor-prefix";
            verdict.witness = {i};
            verdict.message = "color " + std::to_string(i) + ": neighbors of rho_i = " +
                              std::to_string(rho[i]) + " are " +
                              mask_to_string(graph.neighbor_mask(i, rho[i])) + ", expected " +
                              mask_to_string(expected);
            return verdict;
        }
    }

    for (int k = 0; k < n; ++k) {
        for (int j = 0; j < n; ++j) {
            if (j == k) continue;
            for (int l = j + 1; l < n; ++l) {
                if (l == k) continue;
                const std::uint64_t pair_mask = bit(j) | bit(l);
                bool found = false;
                for (int i = 0; i < n && !found; ++i) {
                    if (i == j || i == k || i == l) continue;
                    found = std::popcount(graph.neighbor_mask(i, k) & pair_mask) == 1;
                }
                if (!found) {
                    verdict.condition = "triple-path";
                    verdict.witness = {j, k, l};
                    verdict.message = "no color splits the path (" + std::to_string(j) + ", " +
                                      std::to_string(k) + ", " + std::to_string(l) + ")";
                    return verdict;
                }
            }
        }
    }

    verdict.ok = true;
    return verdict;
}

RandomGraphResult random_multigraph(int n, const RhoVector& rho, std::uint64_t seed, int max_retries) {
    if (n < 11) {
        throw DescriptorError("random multigraph construction requires n >= 11, got n = " +
                              std::to_string(n));
    }
    if (rho.n() != n || !rho.is_cyclic()) {
        throw ValidationError("random multigraph construction requires rho_i = i + 1 (mod n)");
    }
    if (max_retries < 1) throw ValidationError("max_retries must be positive");

    for (int attempt = 1; attempt <= max_retries; ++attempt) {
        std::mt19937_64 rng(derive_seed(seed, attempt - 1));
        ColoredMultigraph graph(n);
        for (int i = 0; i < n; ++i) {
            const int anchor = rho[i];
            for (int j = 0; j < anchor; ++j) {
                if (j != i) graph.add_edge(i, anchor, j);
            }
            for (int j = 0; j < n; ++j) {
                if (j == i || j == anchor) continue;
                for (int k = j + 1; k < n; ++k) {
                    if (k == i || k == anchor) continue;
                    if (rng() & 1u) graph.add_edge(i, j, k);
                }
            }
        }
        if (verify_multigraph(rho, graph).ok) {
            return RandomGraphResult{std::move(graph), attempt, seed};
        }
    }
    throw SearchExhaustedError("random multigraph search for n = " + std::to_string(n) +
                                   " found no valid graph in " + std::to_string(max_retries) +
                                   " attempts",
                               max_retries);
}

BlockingSets blocking_from_multigraph(const RhoVector& rho, const ColoredMultigraph& graph) {
    const MultigraphVerdict verdict = verify_multigraph(rho, graph);
    if (!verdict.ok) {
        throw ValidationError("multigraph fails verification (" + verdict.condition +
                              "): " + verdict.message);
    }
    const int n = graph.n();
    BlockingSets sets(n);
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::uint64_t s0 = graph.neighbor_mask(i, j);
            const std::uint64_t s1 = full_mask(n) & ~s0 & ~bit(i) & ~bit(j);
            sets.set_pair(i, j, s0, s1);
        }
    }
    return sets;
}

namespace {

// Per-message-vector body of the blocking-set sweep; shared by the
// exhaustive and sampled modes.
bool check_message_vector(const BlockingSets& sets, std::uint64_t b,
                          BlockingSetsVerdict& verdict) {
    const int n = sets.n();
    std::vector<std::uint64_t> unions(n, 0);
    for (int j = 0; j < n; ++j) {
        std::uint64_t u = 0;
        for (int i = 0; i < n; ++i) {
            if (i == j) continue;
            u |= sets.mask(i, static_cast<int>((b >> i) & 1u), j);
        }
        unions[j] = u;
    }
    for (int j = 0; j < n; ++j) {
        const int size = std::popcount(unions[j]);
        if (size != n - 1 && size != n - 2) {
            verdict.condition = "union-size";
            verdict.message = "messages " + std::to_string(b) + ": blocked set for agent " +
                              std::to_string(j) + " has size " + std::to_string(size);
            return false;
        }
        if (size == n - 1) {
            for (int other = 0; other < n; ++other) {
                if (other == j) continue;
                if (!((unions[other] >> j) & 1u)) {
                    verdict.condition = "default-position";
                    verdict.message = "messages " + std::to_string(b) + ": agent " + std::to_string(j) +
                                      " is fully blocked but position " + std::to_string(j) +
                                      " stays open for agent " + std::to_string(other);
                    return false;
                }
            }
        } else {
            const std::uint64_t open = full_mask(n) & ~unions[j] & ~bit(j);
            const int k = std::countr_zero(open);
            for (int other = 0; other < n; ++other) {
                if (other == j || other == k) continue;
                if (!((unions[other] >> k) & 1u)) {
                    verdict.condition = "non-default-position";
                    verdict.message = "messages " + std::to_string(b) + ": position " + std::to_string(k) +
                                      " is open for both agents " + std::to_string(j) + " and " +
                                      std::to_string(other);
                    return false;
                }
            }
        }
    }
    return true;
}

bool check_static_conditions(const RhoVector& rho, const BlockingSets& sets,
                             BlockingSetsVerdict& verdict) {
    const int n = sets.n();
    if (rho.n() != n) {
        verdict.condition = "dimension";
        verdict.message = "rho and blocking sets disagree on n";
        return false;
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            const std::uint64_t s0 = sets.mask(i, 0, j);
            const std::uint64_t s1 = sets.mask(i, 1, j);
            const std::uint64_t expected_union = full_mask(n) & ~bit(i) & ~bit(j);
            if ((s0 & s1) != 0 || (s0 | s1) != expected_union) {
                verdict.condition = "disjoint-cover";
                verdict.message = "pair (" + std::to_string(i) + ", " + std::to_string(j) +
                                  "): S0/S1 must partition the other positions";
                return false;
            }
        }
        const std::uint64_t low = full_mask(rho[i]) & ~bit(i);
        if (sets.mask(i, 0, rho[i]) != low) {
            verdict.condition = "rho-split";
            verdict.message = "S^0 of pair (" + std::to_string(i) + ", " + std::to_string(rho[i]) +
                              ") must be exactly the positions below rho_i";
            return false;
        }
    }
    return true;
}

}  // namespace

BlockingSetsVerdict verify_blocking_sets(const RhoVector& rho, const BlockingSets& sets, int jobs) {
    BlockingSetsVerdict verdict;
    const int n = sets.n();
    if (n > 22) {
        throw DescriptorError("exhaustive blocking-set verification is limited to n <= 22; "
                              "use the sampled mode beyond that");
    }
    if (!check_static_conditions(rho, sets, verdict)) return verdict;

    const std::uint64_t total = std::uint64_t{1} << n;
    verdict.cases = total;
    jobs = std::max(1, jobs);
    if (jobs == 1) {
        for (std::uint64_t b = 0; b < total; ++b) {
            if (!check_message_vector(sets, b, verdict)) return verdict;
        }
        verdict.ok = true;
        return verdict;
    }

    std::vector<std::uint64_t> first_bad(jobs, total);
    std::vector<BlockingSetsVerdict> worker_verdicts(jobs);
    std::vector<std::thread> workers;
    for (int w = 0; w < jobs; ++w) {
        workers.emplace_back([&, w] {
            const std::uint64_t lo = total * w / jobs;
            const std::uint64_t hi = total * (w + 1) / jobs;
            for (std::uint64_t b = lo; b < hi; ++b) {
                if (!check_message_vector(sets, b, worker_verdicts[w])) {
                    first_bad[w] = b;
                    return;
                }
            }
        });
    }
    for (auto& t : workers) t.join();
    int best = -1;
    for (int w = 0; w < jobs; ++w) {
        if (first_bad[w] < total && (best == -1 || first_bad[w] < first_bad[best])) best = w;
    }
    if (best >= 0) {
        worker_verdicts[best].cases = total;
        return worker_verdicts[best];
    }
    verdict.ok = true;
    return verdict;
}

BlockingSetsVerdict verify_blocking_sets_sampled(const RhoVector& rho, const BlockingSets& sets,
                                                 int trials, std::uint64_t seed) {
    BlockingSetsVerdict verdict;
    verdict.sampled = true;
    if (!check_static_conditions(rho, sets, verdict)) return verdict;
    const int n = sets.n();
    std::mt19937_64 rng(seed);
    for (int t = 0; t < trials; ++t) {
        const std::uint64_t b = rng() & full_mask(n);
        ++verdict.cases;
        if (!check_message_vector(sets, b, verdict)) return verdict;
    }
    verdict.ok = true;  // "no violation found in the sample", not a proof
    verdict.message = "sampled, not proven: " + std::to_string(trials) + " message vectors";
    return verdict;
}

std::uint64_t available_positions_mask(int j, const MessageVector& messages, const BlockingSets& sets) {
    const int n = sets.n();
    std::uint64_t blocked = 0;
    for (int i = 0; i < n; ++i) {
        if (i == j) continue;
        blocked |= sets.mask(i, messages.bit(i), j);
    }
    return full_mask(n) & ~blocked & ~bit(j);
}

std::vector<int> available_positions(int j, const MessageVector& messages, const BlockingSets& sets) {
    std::vector<int> out;
    std::uint64_t mask = available_positions_mask(j, messages, sets);
    while (mask != 0) {
        out.push_back(std::countr_zero(mask));
        mask &= mask - 1;
    }
    return out;
}

Permutation assemble_g(const RhoVector& rho, const BlockingSets& sets, const MessageVector& messages) {
    const int n = sets.n();
    if (rho.n() != n) throw ValidationError("rho and blocking sets disagree on n");
    if (messages.n != n) throw ValidationError("message vector has wrong length");
    std::vector<int> one_line(n, -1);
    for (int j = 0; j < n; ++j) {
        const std::uint64_t avail = available_positions_mask(j, messages, sets);
        int position;
        if (avail == 0) {
            position = j;
        } else if (std::popcount(avail) == 1) {
            position = std::countr_zero(avail);
        } else {
            throw ValidationError("blocking sets leave " + std::to_string(std::popcount(avail)) +
                                  " positions open for agent " + std::to_string(j) +
                                  "; they fail verification");
        }
        if (one_line[position] != -1) {
            throw ValidationError("agents " + std::to_string(one_line[position]) + " and " +
                                  std::to_string(j) + " both assigned position " +
                                  std::to_string(position) + "; blocking sets fail verification");
        }
        one_line[position] = j;
    }
    return Permutation(std::move(one_line));
}

double lll_margin(int n) {
    if (n < 4) throw ValidationError("lll_margin is defined for n >= 4");
    return std::numbers::e * (4.0 * n - 9.0) / std::exp2(n - 4);
}

BlockingMechanism::BlockingMechanism(RhoVector rho, std::optional<BlockingSets> sets, std::string name,
                                     int attempts)
    : rho_(std::move(rho)), sets_(std::move(sets)), name_(std::move(name)), attempts_(attempts) {}

BlockingMechanism BlockingMechanism::n4_table() {
    return BlockingMechanism(g4_rho(), std::nullopt, "blocking-n4", 0);
}

BlockingMechanism BlockingMechanism::fixture(int n) {
    auto [rho, graph] = fixture_multigraph(n);
    BlockingSets sets = blocking_from_multigraph(rho, graph);
    return BlockingMechanism(std::move(rho), std::move(sets), "blocking-fixture-n" + std::to_string(n),
                             0);
}

BlockingMechanism BlockingMechanism::random_search(int n, std::uint64_t seed, int max_retries) {
    RhoVector rho = RhoVector::cyclic(n);
    RandomGraphResult result = random_multigraph(n, rho, seed, max_retries);
    BlockingSets sets = blocking_from_multigraph(rho, result.graph);
    return BlockingMechanism(std::move(rho), std::move(sets),
                             "blocking-random-n" + std::to_string(n) + "-seed" + std::to_string(seed),
                             result.attempts);
}

BlockingMechanism BlockingMechanism::from_sets(RhoVector rho, BlockingSets sets, bool verify) {
    if (verify) {
        const BlockingSetsVerdict verdict = verify_blocking_sets(rho, sets);
        if (!verdict.ok) {
            throw ValidationError("blocking sets fail verification (" + verdict.condition +
                                  "): " + verdict.message);
        }
    }
    const int n = rho.n();
    return BlockingMechanism(std::move(rho), std::move(sets), "blocking-n" + std::to_string(n), 0);
}

std::string BlockingMechanism::name() const { return name_; }

Permutation BlockingMechanism::rank(const RankingProfile& profile) const {
    if (profile.n() != n()) {
        throw ValidationError("profile has " + std::to_string(profile.n()) + " agents, mechanism needs " +
                              std::to_string(n()));
    }
    return evaluate(extract_messages(profile));
}

MessageVector BlockingMechanism::extract_messages(const RankingProfile& profile) const {
    MessageVector m(n(), 0);
    for (int i = 0; i < n(); ++i) {
        m.bits |= static_cast<std::uint64_t>(chi(i, profile.ranking_of(i), rho_[i])) << i;
    }
    return m;
}

Permutation BlockingMechanism::evaluate(const MessageVector& messages) const {
    if (messages.n != n()) throw ValidationError("message vector has wrong length");
    if (!sets_) return g4_table()[messages.bits & 15u];
    return assemble_g(rho_, *sets_, messages);
}

RankingProfile BlockingMechanism::realize(const MessageVector& messages) const {
    if (messages.n != n()) throw ValidationError("message vector has wrong length");
    std::vector<Permutation> rankings;
    rankings.reserve(static_cast<std::size_t>(n()));
    for (int i = 0; i < n(); ++i) {
        rankings.push_back(realize_message(n(), i, rho_[i], messages.bit(i)));
    }
    return RankingProfile(std::move(rankings));
}

RankingProfile BlockingMechanism::ifr_witness(int j, int k) const {
    const int nn = n();
    if (j < 0 || j >= nn || k < 0 || k >= nn) throw ValidationError("ifr_witness: index out of range");

    MessageVector messages(nn, 0);
    if (!sets_) {
        // n = 4 table: scan the 16 message vectors.
        bool found = false;
        for (std::uint64_t b = 0; b < 16 && !found; ++b) {
            if (g4_table()[b].agent_at(k) == j) {
                messages.bits = b;
                found = true;
            }
        }
        if (!found) throw ValidationError("table mechanism realizes no witness; table is corrupt");
        return realize(messages);
    }

    if (k != j) {
        // Pick, for each other agent, the message that leaves k open for j.
        for (int i = 0; i < nn; ++i) {
            if (i == j || i == k) continue;
            const int b = (sets_->mask(i, 0, j) >> k) & 1u ? 1 : 0;
            messages = messages.with_bit(i, b);
        }
    } else {
        // Grow the blocked set one position per agent until only the
        // default position j remains.
        std::uint64_t blocked = 0;
        bool first = true;
        for (int i = 0; i < nn; ++i) {
            if (i == j) continue;
            if (first) {
                const int b = std::popcount(sets_->mask(i, 0, j)) >= 2 ? 0 : 1;
                messages = messages.with_bit(i, b);
                blocked = sets_->mask(i, b, j);
                first = false;
                continue;
            }
            int chosen = 0;
            for (int b = 0; b < 2; ++b) {
                if (std::popcount(blocked | sets_->mask(i, b, j)) > std::popcount(blocked)) {
                    chosen = b;
                    break;
                }
            }
            messages = messages.with_bit(i, chosen);
            blocked |= sets_->mask(i, chosen, j);
        }
    }

    const Permutation output = evaluate(messages);
    if (output.agent_at(k) != j) {
        throw ValidationError("ifr witness construction failed for agent " + std::to_string(j) +
                              ", position " + std::to_string(k) + "; blocking sets fail verification");
    }
    return realize(messages);
}

MessageSpaceVerdict verify_message_space(const BlockingMechanism& mechanism, int jobs) {
    MessageSpaceVerdict verdict;
    const int n = mechanism.n();
    if (n > 24) throw DescriptorError("message-space sweep is limited to n <= 24");
    const std::uint64_t total = std::uint64_t{1} << n;
    verdict.cases = total;

    // Positions of every agent under every message vector.
    std::vector<std::int8_t> position(static_cast<std::size_t>(total) * n);
    jobs = std::max(1, jobs);
    auto fill_range = [&](std::uint64_t lo, std::uint64_t hi) {
        for (std::uint64_t b = lo; b < hi; ++b) {
            const Permutation out = mechanism.evaluate(MessageVector(n, b));
            for (int agent = 0; agent < n; ++agent) {
                position[b * n + agent] = static_cast<std::int8_t>(out.position_of(agent));
            }
        }
    };
    if (jobs == 1) {
        fill_range(0, total);
    } else {
        std::vector<std::thread> workers;
        for (int w = 0; w < jobs; ++w) {
            workers.emplace_back(fill_range, total * w / jobs, total * (w + 1) / jobs);
        }
        for (auto& t : workers) t.join();
    }

    verdict.impartial = true;
    verdict.monotone = true;
    const auto& rho = mechanism.rho();
    std::vector<std::uint64_t> reached(n, 0);  // reached[agent] = mask of positions
    for (std::uint64_t b = 0; b < total; ++b) {
        for (int agent = 0; agent < n; ++agent) {
            reached[agent] |= std::uint64_t{1} << position[b * n + agent];
        }
        for (int i = 0; i < n; ++i) {
            if ((b >> i) & 1u) continue;
            const std::uint64_t flipped = b | (std::uint64_t{1} << i);
            if (verdict.impartial && position[b * n + i] != position[flipped * n + i]) {
                verdict.impartial = false;
                verdict.message = "agent " + std::to_string(i) + " moves when flipping its own bit at " +
                                  std::to_string(b);
            }
            if (verdict.monotone && position[flipped * n + rho[i]] > position[b * n + rho[i]]) {
                verdict.monotone = false;
                verdict.message = "agent " + std::to_string(rho[i]) +
                                  " moves down when agent " + std::to_string(i) +
                                  " raises it at " + std::to_string(b);
            }
        }
    }
    verdict.full_rank = true;
    for (int agent = 0; agent < n; ++agent) {
        if (reached[agent] != full_mask(n)) {
            verdict.full_rank = false;
            if (verdict.message.empty()) {
                verdict.message = "agent " + std::to_string(agent) + " never reaches positions " +
                                  mask_to_string(full_mask(n) & ~reached[agent]);
            }
            break;
        }
    }
    return verdict;
}

}  // namespace impartial
