#include "impartial/impossibility.hpp"

#include <algorithm>
#include <bit>
#include <ostream>
#include <set>

#include "impartial/errors.hpp"

namespace impartial {

namespace {

constexpr std::size_t kWuReducedBase = 24;         // 4!
constexpr std::size_t kWuReducedCount = 13824;     // 24^3
constexpr int kWuAgents = 4;

std::uint8_t value_bit(int v) { return static_cast<std::uint8_t>(1u << v); }

}  // namespace

PositionAssignment PositionAssignment::empty(int n) {
    PositionAssignment a;
    a.n = n;
    a.h.assign(static_cast<std::size_t>(n),
               std::vector<int>(reduced_profile_count(n), -1));
    return a;
}

bool PositionAssignment::complete() const {
    for (const auto& table : h) {
        for (int v : table) {
            if (v < 0) return false;
        }
    }
    return true;
}

std::size_t reduced_profile_count(int n) {
    const std::uint64_t base = factorial(n);
    std::uint64_t count = 1;
    for (int i = 0; i + 1 < n; ++i) count *= base;
    return static_cast<std::size_t>(count);
}

std::size_t reduced_index(int n, int agent, const std::vector<std::uint64_t>& ranks) {
    const std::uint64_t base = factorial(n);
    std::uint64_t idx = 0;
    for (int j = 0; j < n; ++j) {
        if (j == agent) continue;
        idx = idx * base + ranks[j];
    }
    return static_cast<std::size_t>(idx);
}

std::optional<std::vector<int>> candidate_positions(const PositionAssignment& candidate,
                                                    const std::vector<std::uint64_t>& ranks) {
    const int n = candidate.n;
    std::vector<int> positions(n);
    for (int agent = 0; agent < n; ++agent) {
        const int value = candidate.h[agent][reduced_index(n, agent, ranks)];
        if (value < 0) return std::nullopt;
        positions[agent] = value;
    }
    return positions;
}

namespace {

/// Visits every full profile of lexicographic ranks; stops early when the
/// callback returns false.
template <typename Fn>
bool for_each_rank_profile(int n, Fn&& fn) {
    const std::uint64_t base = factorial(n);
    std::vector<std::uint64_t> ranks(static_cast<std::size_t>(n), 0);
    while (true) {
        if (!fn(ranks)) return false;
        int pos = 0;
        while (pos < n && ++ranks[pos] == base) ranks[pos++] = 0;
        if (pos == n) return true;
    }
}

}  // namespace

bool candidate_feasible(const PositionAssignment& candidate) {
    const int n = candidate.n;
    return for_each_rank_profile(n, [&](const std::vector<std::uint64_t>& ranks) {
        const auto positions = candidate_positions(candidate, ranks);
        if (!positions) return false;
        std::uint32_t seen = 0;
        for (int p : *positions) {
            if ((seen >> p) & 1u) return false;
            seen |= 1u << p;
        }
        return true;
    });
}

bool candidate_full_rank(const PositionAssignment& candidate) {
    for (const auto& table : candidate.h) {
        std::uint32_t seen = 0;
        for (int v : table) {
            if (v >= 0) seen |= 1u << v;
        }
        if (seen != (1u << candidate.n) - 1) return false;
    }
    return true;
}

namespace {

/// Forward-checking backtracker over the n = 3 decomposition. Variables
/// are (agent, reduced profile) pairs, assigned in lexicographic order of
/// (reduced profile, agent) so the permutation constraints bite from the
/// first few assignments; values are tried in ascending position order.
/// Domains that shrink to one value are assigned eagerly.
class TripleSearcher {
public:
    explicit TripleSearcher(const RefutationOptions& options)
        : require_ifr_(options.require_full_rank), rotation_(options.rotation_pruning) {
        domain_.assign(kVars, 0x7);
        value_.assign(kVars, -1);
        for (auto& per_value : support_) per_value.fill(36);

        neighbors_.assign(kVars, {});
        for (int p = 0; p < 6; ++p) {
            for (int q = 0; q < 6; ++q) {
                for (int r = 0; r < 6; ++r) {
                    const int v0 = var_of(0, q, r);
                    const int v1 = var_of(1, p, r);
                    const int v2 = var_of(2, p, q);
                    const int pid = profile_id(p, q, r);
                    profile_vars_[pid] = {v0, v1, v2};
                    link(v0, v1);
                    link(v0, v2);
                    link(v1, v2);
                }
            }
        }
        for (auto& adj : neighbors_) {
            std::sort(adj.begin(), adj.end());
            adj.erase(std::unique(adj.begin(), adj.end()), adj.end());
        }
        order_.reserve(kVars);
        for (int reduced = 0; reduced < 36; ++reduced) {
            for (int agent = 0; agent < 3; ++agent) order_.push_back(var_of(agent, reduced / 6, reduced % 6));
        }
        profile_assigned_.fill(0);
        output_count_.fill(0);
        orbit_distinct_.fill(0);

        // Orbit structure of the six outputs under one-step cyclic shift.
        for (int t = 0; t < 6; ++t) orbit_of_[t] = -1;
        int next_orbit = 0;
        for (int t = 0; t < 6; ++t) {
            if (orbit_of_[t] >= 0) continue;
            int cur = t;
            while (orbit_of_[cur] < 0) {
                orbit_of_[cur] = next_orbit;
                cur = shifted(cur);
            }
            ++next_orbit;
        }
    }

    static int var_of(int agent, int a, int b) { return agent * 36 + a * 6 + b; }
    static int profile_id(int p, int q, int r) { return (p * 6 + q) * 6 + r; }

    bool apply_forced(const std::vector<std::array<int, 3>>& forced) {
        for (const auto& [agent, reduced, position] : forced) {
            if (agent < 0 || agent >= 3 || reduced < 0 || reduced >= 36 || position < 0 ||
                position >= 3) {
                throw ValidationError("forced assignment out of range");
            }
            const int var = agent * 36 + reduced;
            ++nodes_;
            if (value_[var] >= 0) {
                if (value_[var] != position) return false;
                continue;
            }
            if (!((domain_[var] >> position) & 1u)) return false;
            if (!assign(var, position)) return false;
        }
        return true;
    }

    bool search(std::size_t index) {
        while (index < order_.size() && value_[order_[index]] >= 0) ++index;
        if (index == order_.size()) return true;
        const int var = order_[index];
        for (int v = 0; v < 3; ++v) {
            if (!((domain_[var] >> v) & 1u)) continue;
            ++nodes_;
            const std::size_t mark = trail_.size();
            if (assign(var, v) && search(index + 1)) return true;
            undo(mark);
        }
        return false;
    }

    PositionAssignment extract() const {
        PositionAssignment a = PositionAssignment::empty(3);
        for (int agent = 0; agent < 3; ++agent) {
            for (int reduced = 0; reduced < 36; ++reduced) {
                a.h[agent][reduced] = value_[agent * 36 + reduced];
            }
        }
        return a;
    }

    std::uint64_t nodes() const { return nodes_; }

private:
    static constexpr int kVars = 108;

    enum class Entry : std::uint8_t { domain, assign, profile_count, profile_output };

    struct TrailItem {
        Entry kind;
        int var;       // domain/assign: variable; profile_*: profile id
        std::uint8_t payload;  // domain: removed mask; profile_output: output id
    };

    void link(int a, int b) {
        neighbors_[a].push_back(b);
        neighbors_[b].push_back(a);
    }

    /// Output id (lexicographic rank) after a one-step cyclic shift.
    static int shifted(int rank) {
        const Permutation p = lex_unrank(3, static_cast<std::uint64_t>(rank));
        const std::vector<int> line = {p.agent_at(2), p.agent_at(0), p.agent_at(1)};
        return static_cast<int>(lex_rank(Permutation(line)));
    }

    bool remove_value(int var, int v) {
        const std::uint8_t bit = value_bit(v);
        if (!(domain_[var] & bit)) return true;
        domain_[var] = static_cast<std::uint8_t>(domain_[var] & ~bit);
        trail_.push_back({Entry::domain, var, bit});
        if (--support_[var / 36][v] == 0 && require_ifr_) return false;
        if (domain_[var] == 0) return false;
        if (value_[var] < 0 && std::popcount(domain_[var]) == 1) queue_.push_back(var);
        return true;
    }

    bool assign(int var, int v) {
        queue_.clear();
        queue_head_ = 0;
        if (!set_value(var, v)) {
            queue_.clear();
            return false;
        }
        while (queue_head_ < queue_.size()) {
            const int forced = queue_[queue_head_++];
            if (value_[forced] >= 0) continue;
            if (!set_value(forced, std::countr_zero(domain_[forced]))) {
                queue_.clear();
                return false;
            }
        }
        queue_.clear();
        return true;
    }

    bool set_value(int var, int v) {
        value_[var] = v;
        trail_.push_back({Entry::assign, var, 0});
        for (int other = 0; other < 3; ++other) {
            if (other != v && !remove_value(var, other)) return false;
        }
        for (int u : neighbors_[var]) {
            if (value_[u] >= 0) {
                if (value_[u] == v) return false;
                continue;
            }
            if (!remove_value(u, v)) return false;
        }
        if (rotation_) {
            const int agent = var / 36;
            const int reduced = var % 36;
            // Profiles that touch this variable: one free coordinate.
            for (int free = 0; free < 6; ++free) {
                int pid;
                if (agent == 0) {
                    pid = profile_id(free, reduced / 6, reduced % 6);
                } else if (agent == 1) {
                    pid = profile_id(reduced / 6, free, reduced % 6);
                } else {
                    pid = profile_id(reduced / 6, reduced % 6, free);
                }
                ++profile_assigned_[pid];
                trail_.push_back({Entry::profile_count, pid, 0});
                if (profile_assigned_[pid] == 3 && !record_output(pid)) return false;
            }
        }
        return true;
    }

    bool record_output(int pid) {
        const auto& vars = profile_vars_[pid];
        std::vector<int> one_line(3);
        for (int agent = 0; agent < 3; ++agent) one_line[value_[vars[agent]]] = agent;
        const int out = static_cast<int>(lex_rank(Permutation(one_line)));
        trail_.push_back({Entry::profile_output, pid, static_cast<std::uint8_t>(out)});
        if (output_count_[out]++ == 0) {
            if (++orbit_distinct_[orbit_of_[out]] > 1) return false;
        }
        return true;
    }

    void undo(std::size_t mark) {
        while (trail_.size() > mark) {
            const TrailItem item = trail_.back();
            trail_.pop_back();
            switch (item.kind) {
                case Entry::domain:
                    domain_[item.var] = static_cast<std::uint8_t>(domain_[item.var] | item.payload);
                    ++support_[item.var / 36][std::countr_zero(item.payload)];
                    break;
                case Entry::assign:
                    value_[item.var] = -1;
                    break;
                case Entry::profile_count:
                    --profile_assigned_[item.var];
                    break;
                case Entry::profile_output:
                    if (--output_count_[item.payload] == 0) {
                        --orbit_distinct_[orbit_of_[item.payload]];
                    }
                    break;
            }
        }
    }

    bool require_ifr_;
    bool rotation_;
    std::vector<std::uint8_t> domain_;
    std::vector<std::int8_t> value_;
    std::vector<int> order_;
    std::vector<int> queue_;
    std::size_t queue_head_ = 0;
    std::vector<std::vector<int>> neighbors_;
    std::array<std::array<int, 3>, 3> support_;  // [agent][value]
    std::array<std::array<int, 3>, 216> profile_vars_;
    std::array<int, 216> profile_assigned_;
    std::array<int, 6> output_count_;
    std::array<int, 6> orbit_of_;
    std::array<int, 2> orbit_distinct_;
    std::vector<TrailItem> trail_;
    std::uint64_t nodes_ = 0;
};

RefutationCertificate refute_n2(const RefutationOptions& options) {
    RefutationCertificate cert;
    cert.n = 2;
    cert.full_rank_required = options.require_full_rank;
    for (int h00 = 0; h00 < 2; ++h00) {
        for (int h01 = 0; h01 < 2; ++h01) {
            for (int h10 = 0; h10 < 2; ++h10) {
                for (int h11 = 0; h11 < 2; ++h11) {
                    ++cert.nodes;
                    PositionAssignment a = PositionAssignment::empty(2);
                    a.h[0] = {h00, h01};
                    a.h[1] = {h10, h11};
                    if (!candidate_feasible(a)) continue;
                    if (options.require_full_rank && !candidate_full_rank(a)) continue;
                    cert.satisfiable = true;
                    cert.model = std::move(a);
                    return cert;
                }
            }
        }
    }
    return cert;
}

}  // namespace

RefutationCertificate refute_impartial_ifr(int n, const RefutationOptions& options) {
    if (n == 2) return refute_n2(options);
    if (n != 3) {
        throw DescriptorError("refutation search covers n in {2, 3}, got n = " + std::to_string(n));
    }
    RefutationCertificate cert;
    cert.n = 3;
    cert.full_rank_required = options.require_full_rank;
    cert.rotation_pruning = options.rotation_pruning;

    TripleSearcher searcher(options);
    bool sat = searcher.apply_forced(options.forced) && searcher.search(0);
    cert.nodes = searcher.nodes();
    cert.satisfiable = sat;
    if (sat) {
        PositionAssignment model = searcher.extract();
        if (!candidate_feasible(model)) {
            throw ValidationError("search returned an infeasible candidate; internal error");
        }
        if (options.require_full_rank && !candidate_full_rank(model)) {
            throw ValidationError("search returned a candidate without full rank; internal error");
        }
        cert.model = std::move(model);
    }
    return cert;
}

RotationClaimVerdict check_rotation_claim(const PositionAssignment& candidate) {
    RotationClaimVerdict verdict;
    if (candidate.n != 3) throw DescriptorError("rotation claim applies to n = 3 candidates");
    if (!candidate.complete()) throw ValidationError("rotation claim needs a complete candidate");

    // Profiles where the candidate is not permutation-valued produce no
    // output ranking; they are feasibility violations, not claim inputs.
    std::set<int> outputs;
    for_each_rank_profile(3, [&](const std::vector<std::uint64_t>& ranks) {
        const auto positions = candidate_positions(candidate, ranks);
        std::vector<int> one_line(3, -1);
        for (int agent = 0; agent < 3; ++agent) {
            if (one_line[(*positions)[agent]] != -1) return true;
            one_line[(*positions)[agent]] = agent;
        }
        outputs.insert(static_cast<int>(lex_rank(Permutation(one_line))));
        return true;
    });
    verdict.outputs.assign(outputs.begin(), outputs.end());

    for (int a : outputs) {
        const Permutation pa = lex_unrank(3, static_cast<std::uint64_t>(a));
        const Permutation shift(
            std::vector<int>{pa.agent_at(2), pa.agent_at(0), pa.agent_at(1)});
        const int b = static_cast<int>(lex_rank(shift));
        if (b != a && outputs.count(b) != 0) {
            verdict.ok = false;
            verdict.message = "outputs " + pa.to_string() + " and " + shift.to_string() +
                              " are one-step cyclic shifts of each other";
            return verdict;
        }
    }
    verdict.ok = true;
    return verdict;
}

RankingProfile chain_profile(int n, int ell) {
    if (n < 2) throw ValidationError("chain profiles need n >= 2");
    if (ell < 0 || ell >= n) throw ValidationError("chain index out of range");
    std::vector<int> cycle_line(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) cycle_line[k] = mod_add(k, 1, n);
    const Permutation cycle{cycle_line};
    const Permutation identity = Permutation::identity(n);
    std::vector<Permutation> rankings;
    rankings.reserve(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) rankings.push_back(i < n - ell ? cycle : identity);
    return RankingProfile(std::move(rankings));
}

namespace {

/// First unanimously ordered pair the output breaks, if any.
std::optional<std::pair<int, int>> broken_unanimous_pair(const RankingProfile& profile,
                                                         const Permutation& output) {
    const int n = profile.n();
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            bool unanimous = true;
            for (int i = 0; i < n && unanimous; ++i) {
                unanimous =
                    profile.ranking_of(i).position_of(a) < profile.ranking_of(i).position_of(b);
            }
            if (unanimous && output.position_of(a) > output.position_of(b)) {
                return std::make_pair(a, b);
            }
        }
    }
    return std::nullopt;
}

}  // namespace

ChainAuditResult unanimity_chain_audit(const Mechanism& mechanism) {
    const int n = mechanism.n();

    auto unanimity_result = [&](RankingProfile profile, Permutation output,
                                std::pair<int, int> pair) {
        ChainAuditResult result{ChainAuditResult::Kind::unanimity_violation, std::move(profile),
                                std::move(output)};
        result.pair_first = pair.first;
        result.pair_second = pair.second;
        result.details = "all agents rank " + std::to_string(pair.first) + " above " +
                         std::to_string(pair.second) + " but the output does not";
        return result;
    };
    auto impartiality_result = [&](RankingProfile profile, Permutation output, int agent,
                                   RankingProfile previous, Permutation previous_output) {
        ChainAuditResult result{ChainAuditResult::Kind::impartiality_violation, std::move(profile),
                                std::move(output)};
        result.agent = agent;
        result.previous = std::move(previous);
        result.previous_output = std::move(previous_output);
        result.details = "agent " + std::to_string(agent) +
                         " changed its own ranking and moved in the output";
        return result;
    };

    RankingProfile previous = chain_profile(n, 0);
    Permutation previous_output = mechanism.rank(previous);
    if (auto pair = broken_unanimous_pair(previous, previous_output)) {
        return unanimity_result(previous, previous_output, *pair);
    }

    for (int ell = 1; ell < n; ++ell) {
        const RankingProfile profile = chain_profile(n, ell);
        const Permutation output = mechanism.rank(profile);
        const int changed = n - ell;
        if (output.position_of(changed) != previous_output.position_of(changed)) {
            return impartiality_result(profile, output, changed, previous, previous_output);
        }
        if (auto pair = broken_unanimous_pair(profile, output)) {
            return unanimity_result(profile, output, *pair);
        }
        previous = profile;
        previous_output = output;
    }

    const RankingProfile final_profile = replace(previous, 0, Permutation::identity(n));
    const Permutation final_output = mechanism.rank(final_profile);
    if (final_output.position_of(0) != previous_output.position_of(0)) {
        return impartiality_result(final_profile, final_output, 0, previous, previous_output);
    }
    if (auto pair = broken_unanimous_pair(final_profile, final_output)) {
        return unanimity_result(final_profile, final_output, *pair);
    }
    throw ValidationError(
        "the chain audit found no violation; the mechanism cannot be impartial, and the audit "
        "did not catch where impartiality breaks");
}

int WuEncoding::var_id(int agent, std::size_t reduced, int position) {
    return 1 + static_cast<int>((static_cast<std::size_t>(agent) * kWuReducedCount + reduced) * 4 +
                                static_cast<std::size_t>(position));
}

std::array<int, 3> WuEncoding::decode_var(int id) {
    const std::size_t zero_based = static_cast<std::size_t>(id - 1);
    const int position = static_cast<int>(zero_based % 4);
    const std::size_t slot = zero_based / 4;
    const int agent = static_cast<int>(slot / kWuReducedCount);
    const std::size_t reduced = slot % kWuReducedCount;
    return {agent, static_cast<int>(reduced), position};
}

std::uint64_t wu_n4_variable_count() {
    return static_cast<std::uint64_t>(kWuAgents) * kWuReducedCount * 4;
}

std::uint64_t wu_n4_full_clause_count() {
    const std::uint64_t slots = static_cast<std::uint64_t>(kWuAgents) * kWuReducedCount;
    const std::uint64_t profiles = 24ull * 24 * 24 * 24;
    return slots            // at-least-one per slot
           + slots * 6      // at-most-one pairs per slot
           + profiles * 24  // per profile: 4 positions x 6 agent pairs
           + 96;            // weak-unanimity units
}

namespace {

std::vector<std::uint64_t> profile_ranks(const RankingProfile& profile) {
    std::vector<std::uint64_t> ranks;
    ranks.reserve(static_cast<std::size_t>(profile.n()));
    for (int i = 0; i < profile.n(); ++i) ranks.push_back(lex_rank(profile.ranking_of(i)));
    return ranks;
}

template <typename Emit>
void emit_wu_exactly_one(Emit&& emit) {
    for (int agent = 0; agent < kWuAgents; ++agent) {
        for (std::size_t reduced = 0; reduced < kWuReducedCount; ++reduced) {
            std::vector<int> alo(4);
            for (int k = 0; k < 4; ++k) alo[k] = WuEncoding::var_id(agent, reduced, k);
            emit(alo);
            for (int k = 0; k < 4; ++k) {
                for (int k2 = k + 1; k2 < 4; ++k2) {
                    emit(std::vector<int>{-WuEncoding::var_id(agent, reduced, k),
                                          -WuEncoding::var_id(agent, reduced, k2)});
                }
            }
        }
    }
}

template <typename Emit>
void emit_wu_profile(const std::vector<std::uint64_t>& ranks, Emit&& emit) {
    std::array<std::size_t, 4> reduced{};
    for (int agent = 0; agent < kWuAgents; ++agent) {
        reduced[agent] = reduced_index(4, agent, ranks);
    }
    for (int position = 0; position < 4; ++position) {
        for (int i = 0; i < kWuAgents; ++i) {
            for (int j = i + 1; j < kWuAgents; ++j) {
                emit(std::vector<int>{-WuEncoding::var_id(i, reduced[i], position),
                                      -WuEncoding::var_id(j, reduced[j], position)});
            }
        }
    }
}

template <typename Emit>
void emit_wu_units(Emit&& emit) {
    for (std::uint64_t t = 0; t < 24; ++t) {
        const Permutation agreed = lex_unrank(4, t);
        const std::vector<std::uint64_t> ranks(4, t);
        for (int agent = 0; agent < kWuAgents; ++agent) {
            emit(std::vector<int>{
                WuEncoding::var_id(agent, reduced_index(4, agent, ranks), agreed.position_of(agent))});
        }
    }
}

}  // namespace

WuEncoding encode_wu_n4(const std::vector<RankingProfile>& profiles) {
    WuEncoding encoding;
    encoding.scope = profiles;
    encoding.cnf.num_vars = static_cast<int>(wu_n4_variable_count());
    auto emit = [&](const std::vector<int>& clause) { encoding.cnf.clauses.push_back(clause); };
    emit_wu_exactly_one(emit);
    for (const RankingProfile& profile : profiles) {
        if (profile.n() != 4) throw ValidationError("the encoding is fixed to n = 4 profiles");
        emit_wu_profile(profile_ranks(profile), emit);
    }
    emit_wu_units(emit);
    return encoding;
}

void write_dimacs(const Cnf& cnf, std::ostream& out) {
    out << "p cnf " << cnf.num_vars << ' ' << cnf.clauses.size() << '\n';
    for (const auto& clause : cnf.clauses) {
        for (int lit : clause) out << lit << ' ';
        out << "0\n";
    }
}

DimacsStats write_wu_n4_full_dimacs(std::ostream& out) {
    DimacsStats stats{wu_n4_variable_count(), wu_n4_full_clause_count()};
    out << "p cnf " << stats.variables << ' ' << stats.clauses << '\n';

    std::string buffer;
    buffer.reserve(1 << 20);
    auto emit = [&](const std::vector<int>& clause) {
        for (int lit : clause) {
            buffer += std::to_string(lit);
            buffer += ' ';
        }
        buffer += "0\n";
        if (buffer.size() > (1u << 20) - 64) {
            out << buffer;
            buffer.clear();
        }
    };

    emit_wu_exactly_one(emit);
    std::vector<std::uint64_t> ranks(4, 0);
    for_each_rank_profile(4, [&](const std::vector<std::uint64_t>& r) {
        emit_wu_profile(r, emit);
        return true;
    });
    emit_wu_units(emit);
    out << buffer;
    return stats;
}

void write_wu_n4_sidecar(std::ostream& out) {
    out << "{\"n\":4,\"variables\":" << wu_n4_variable_count()
        << ",\"reduced_base\":24,\"layout\":\"id = 1 + (agent*13824 + reduced)*4 + position\","
        << "\"map\":[";
    const std::uint64_t total = wu_n4_variable_count();
    std::string buffer;
    buffer.reserve(1 << 20);
    for (std::uint64_t id = 1; id <= total; ++id) {
        const auto [agent, reduced, position] = WuEncoding::decode_var(static_cast<int>(id));
        if (id > 1) buffer += ',';
        buffer += '[';
        buffer += std::to_string(agent);
        buffer += ',';
        buffer += std::to_string(reduced);
        buffer += ',';
        buffer += std::to_string(position);
        buffer += ']';
        if (buffer.size() > (1u << 20) - 64) {
            out << buffer;
            buffer.clear();
        }
    }
    out << buffer << "]}\n";
}

std::array<std::vector<int>, 4> decode_wu_assignment(const std::vector<std::int8_t>& assignment) {
    std::array<std::vector<int>, 4> tables;
    for (auto& table : tables) table.assign(kWuReducedCount, -1);
    const std::uint64_t total = wu_n4_variable_count();
    if (assignment.size() < total + 1) {
        throw ValidationError("assignment vector too short for the encoding");
    }
    for (std::uint64_t id = 1; id <= total; ++id) {
        if (assignment[id] <= 0) continue;
        const auto [agent, reduced, position] = WuEncoding::decode_var(static_cast<int>(id));
        if (tables[agent][reduced] != -1) {
            throw ValidationError("assignment sets two positions for one slot");
        }
        tables[agent][reduced] = position;
    }
    return tables;
}

bool wu_tables_satisfy(const std::array<std::vector<int>, 4>& tables,
                       const std::vector<RankingProfile>& profiles) {
    for (const RankingProfile& profile : profiles) {
        const auto ranks = profile_ranks(profile);
        std::uint32_t seen = 0;
        for (int agent = 0; agent < kWuAgents; ++agent) {
            const int position = tables[agent][reduced_index(4, agent, ranks)];
            if (position < 0 || ((seen >> position) & 1u)) return false;
            seen |= 1u << position;
        }
    }
    for (std::uint64_t t = 0; t < 24; ++t) {
        const Permutation agreed = lex_unrank(4, t);
        const std::vector<std::uint64_t> ranks(4, t);
        for (int agent = 0; agent < kWuAgents; ++agent) {
            const int position = tables[agent][reduced_index(4, agent, ranks)];
            if (position >= 0 && position != agreed.position_of(agent)) return false;
        }
    }
    return true;
}

namespace {

/// Two-watched-literal DPLL with chronological backtracking.
class DpllSolver {
public:
    explicit DpllSolver(const Cnf& cnf) : num_vars_(cnf.num_vars) {
        clauses_.reserve(cnf.clauses.size());
        for (const auto& clause : cnf.clauses) {
            if (clause.empty()) {
                root_conflict_ = true;
                continue;
            }
            for (int lit : clause) {
                if (lit == 0 || std::abs(lit) > num_vars_) {
                    throw ValidationError("clause literal out of range");
                }
            }
            clauses_.push_back(clause);
        }
        assign_.assign(static_cast<std::size_t>(num_vars_) + 1, 0);
        watches_.assign(2 * static_cast<std::size_t>(num_vars_) + 2, {});
        for (std::size_t c = 0; c < clauses_.size(); ++c) {
            if (clauses_[c].size() == 1) {
                root_units_.push_back(clauses_[c][0]);
            } else {
                watches_[lit_index(clauses_[c][0])].push_back(c);
                watches_[lit_index(clauses_[c][1])].push_back(c);
            }
        }
    }

    SolveResult solve(std::uint64_t budget) {
        SolveResult result;
        if (root_conflict_) {
            result.status = SolveStatus::unsatisfiable;
            return result;
        }
        for (int lit : root_units_) {
            if (!enqueue(lit)) {
                result.status = SolveStatus::unsatisfiable;
                return result;
            }
        }
        if (!propagate()) {
            result.status = SolveStatus::unsatisfiable;
            return result;
        }

        int next_var = 1;
        while (true) {
            while (next_var <= num_vars_ && assign_[next_var] != 0) ++next_var;
            if (next_var > num_vars_) {
                result.status = SolveStatus::satisfiable;
                result.assignment = assign_;
                result.decisions = decisions_;
                return result;
            }
            if (++decisions_ > budget) {
                result.status = SolveStatus::budget_exceeded;
                result.decisions = decisions_;
                return result;
            }
            decision_var_.push_back(next_var);
            decision_flipped_.push_back(false);
            trail_marks_.push_back(trail_.size());
            enqueue(next_var);
            while (!propagate()) {
                // Conflict: revert to the most recent unflipped decision.
                // Decisions take the lowest unassigned variable, so after
                // flipping one everything below it is still assigned.
                while (!decision_var_.empty() && decision_flipped_.back()) {
                    pop_level();
                }
                if (decision_var_.empty()) {
                    result.status = SolveStatus::unsatisfiable;
                    result.decisions = decisions_;
                    return result;
                }
                const int var = decision_var_.back();
                unwind_to(trail_marks_.back());
                decision_flipped_.back() = true;
                enqueue(-var);
                next_var = var;
            }
        }
    }

private:
    static std::size_t lit_index(int lit) {
        return 2 * static_cast<std::size_t>(std::abs(lit)) + (lit < 0 ? 1 : 0);
    }

    bool value_true(int lit) const {
        const std::int8_t v = assign_[std::abs(lit)];
        return lit > 0 ? v > 0 : v < 0;
    }
    bool value_false(int lit) const {
        const std::int8_t v = assign_[std::abs(lit)];
        return lit > 0 ? v < 0 : v > 0;
    }

    bool enqueue(int lit) {
        if (value_true(lit)) return true;
        if (value_false(lit)) return false;
        assign_[std::abs(lit)] = lit > 0 ? 1 : -1;
        trail_.push_back(lit);
        queue_.push_back(lit);
        return true;
    }

    bool propagate() {
        while (!queue_.empty()) {
            const int lit = queue_.back();
            queue_.pop_back();
            auto& watch_list = watches_[lit_index(-lit)];
            std::size_t keep = 0;
            for (std::size_t w = 0; w < watch_list.size(); ++w) {
                const std::size_t c = watch_list[w];
                auto& clause = clauses_[c];
                // Put the falsified literal second.
                if (clause[0] == -lit) std::swap(clause[0], clause[1]);
                if (value_true(clause[0])) {
                    watch_list[keep++] = c;
                    continue;
                }
                bool moved = false;
                for (std::size_t k = 2; k < clause.size(); ++k) {
                    if (!value_false(clause[k])) {
                        std::swap(clause[1], clause[k]);
                        watches_[lit_index(clause[1])].push_back(c);
                        moved = true;
                        break;
                    }
                }
                if (moved) continue;
                watch_list[keep++] = c;
                if (!enqueue(clause[0])) {
                    // Conflict: keep remaining watchers, clear the queue.
                    for (std::size_t rest = w + 1; rest < watch_list.size(); ++rest) {
                        watch_list[keep++] = watch_list[rest];
                    }
                    watch_list.resize(keep);
                    queue_.clear();
                    return false;
                }
            }
            watch_list.resize(keep);
        }
        return true;
    }

    void unwind_to(std::size_t mark) {
        while (trail_.size() > mark) {
            assign_[std::abs(trail_.back())] = 0;
            trail_.pop_back();
        }
        queue_.clear();
    }

    void pop_level() {
        unwind_to(trail_marks_.back());
        trail_marks_.pop_back();
        decision_var_.pop_back();
        decision_flipped_.pop_back();
    }

    int num_vars_;
    bool root_conflict_ = false;
    std::vector<std::vector<int>> clauses_;
    std::vector<int> root_units_;
    std::vector<std::int8_t> assign_;
    std::vector<std::vector<std::size_t>> watches_;
    std::vector<int> trail_;
    std::vector<std::size_t> trail_marks_;
    std::vector<int> decision_var_;
    std::vector<bool> decision_flipped_;
    std::vector<int> queue_;
    std::uint64_t decisions_ = 0;
};

}  // namespace

SolveResult dpll_solve(const Cnf& cnf, std::uint64_t node_budget) {
    DpllSolver solver(cnf);
    return solver.solve(node_budget);
}

}  // namespace impartial
