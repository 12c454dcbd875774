#include "impartial/axioms.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <thread>

#include "impartial/blocking.hpp"
#include "impartial/decisive.hpp"
#include "impartial/errors.hpp"
#include "impartial/impossibility.hpp"

namespace impartial {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

/// Odometer over profiles as indices into all_permutations(n); returns
/// false once the space is exhausted.
bool advance(std::vector<std::size_t>& digits, std::size_t base) {
    for (std::size_t pos = 0; pos < digits.size(); ++pos) {
        if (++digits[pos] < base) return true;
        digits[pos] = 0;
    }
    return false;
}

RankingProfile profile_from_digits(const std::vector<Permutation>& perms,
                                   const std::vector<std::size_t>& digits) {
    std::vector<Permutation> rankings;
    rankings.reserve(digits.size());
    for (std::size_t d : digits) rankings.push_back(perms[d]);
    return RankingProfile(std::move(rankings));
}

constexpr int kExhaustiveProfileLimit = 4;  // 24^4 full profiles is the ceiling

void require_exhaustive_feasible(int n, const char* axiom) {
    if (n > kExhaustiveProfileLimit) {
        throw DescriptorError(std::string("exhaustive ") + axiom + " enumeration is limited to n <= " +
                              std::to_string(kExhaustiveProfileLimit) +
                              "; use reduced-exhaustive or sampled mode");
    }
}

AxiomReport base_report(const char* axiom, const CheckOptions& options) {
    AxiomReport report;
    report.axiom = axiom;
    report.mode = options.mode;
    if (options.mode == CheckMode::sampled) {
        report.trials = options.trials;
        report.seed = options.seed;
    }
    return report;
}

}  // namespace

std::string to_string(Verdict verdict) {
    switch (verdict) {
        case Verdict::holds: return "holds";
        case Verdict::violated: return "violated";
        case Verdict::inconclusive_sampled: return "inconclusive-sampled";
    }
    return "unknown";
}

std::string to_string(CheckMode mode) {
    switch (mode) {
        case CheckMode::exhaustive: return "exhaustive";
        case CheckMode::reduced_exhaustive: return "reduced-exhaustive";
        case CheckMode::sampled: return "sampled";
    }
    return "unknown";
}

const std::vector<Permutation>& all_permutations(int n) {
    static std::map<int, std::vector<Permutation>> cache;
    static std::mutex cache_mutex;
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(n);
    if (it == cache.end()) {
        if (n > 8) throw CapacityError("all_permutations is limited to n <= 8");
        std::vector<Permutation> perms;
        const std::uint64_t total = factorial(n);
        perms.reserve(total);
        for (std::uint64_t idx = 0; idx < total; ++idx) perms.push_back(lex_unrank(n, idx));
        it = cache.emplace(n, std::move(perms)).first;
    }
    return it->second;
}

Permutation random_permutation(int n, std::uint64_t& state) {
    std::vector<int> v(n);
    for (int i = 0; i < n; ++i) v[i] = i;
    for (int i = n - 1; i > 0; --i) {
        const int j = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(i + 1));
        std::swap(v[i], v[j]);
    }
    return Permutation(std::move(v));
}

AxiomReport check_impartiality(const Mechanism& mechanism, const CheckOptions& options) {
    AxiomReport report = base_report("impartiality", options);
    const int n = mechanism.n();

    auto record_violation = [&](const RankingProfile& profile, const Permutation& deviation, int agent,
                                int pos_before, int pos_after) {
        report.verdict = Verdict::violated;
        Witness w{profile, deviation, agent, agent, -1,
                  "agent " + std::to_string(agent) + " moves from position " +
                      std::to_string(pos_before) + " to " + std::to_string(pos_after) +
                      " by changing its own ranking"};
        report.witness = std::move(w);
    };

    if (options.mode == CheckMode::exhaustive) {
        require_exhaustive_feasible(n, "impartiality");
        const auto& perms = all_permutations(n);
        for (int agent = 0; agent < n; ++agent) {
            std::vector<std::size_t> digits(static_cast<std::size_t>(n) - 1, 0);
            do {
                // digits are the rankings of everyone except `agent`.
                std::vector<Permutation> rankings;
                rankings.reserve(n);
                std::size_t d = 0;
                for (int i = 0; i < n; ++i) {
                    rankings.push_back(i == agent ? perms[0] : perms[digits[d++]]);
                }
                RankingProfile base(rankings);
                const int reference = mechanism.rank(base).position_of(agent);
                ++report.cases;
                for (std::size_t v = 1; v < perms.size(); ++v) {
                    const RankingProfile variant = replace(base, agent, perms[v]);
                    const int pos = mechanism.rank(variant).position_of(agent);
                    ++report.cases;
                    if (pos != reference) {
                        record_violation(base, perms[v], agent, reference, pos);
                        return report;
                    }
                }
            } while (advance(digits, perms.size()));
        }
        report.verdict = Verdict::holds;
        return report;
    }

    if (options.mode == CheckMode::reduced_exhaustive) {
        if (const auto* blocking = dynamic_cast<const BlockingMechanism*>(&mechanism)) {
            // Message classes: realize every vector, flip one agent at a time.
            const std::uint64_t total = std::uint64_t{1} << n;
            std::vector<std::vector<int>> positions(total);
            auto fill_range = [&](std::uint64_t lo, std::uint64_t hi) {
                for (std::uint64_t b = lo; b < hi; ++b) {
                    const Permutation out = blocking->rank(blocking->realize(MessageVector(n, b)));
                    positions[b].resize(n);
                    for (int agent = 0; agent < n; ++agent) {
                        positions[b][agent] = out.position_of(agent);
                    }
                }
            };
            const int jobs = std::max(1, options.jobs);
            if (jobs == 1) {
                fill_range(0, total);
            } else {
                std::vector<std::thread> workers;
                for (int w = 0; w < jobs; ++w) {
                    workers.emplace_back(fill_range, total * w / jobs, total * (w + 1) / jobs);
                }
                for (auto& t : workers) t.join();
            }
            for (std::uint64_t b = 0; b < total; ++b) {
                for (int agent = 0; agent < n; ++agent) {
                    if ((b >> agent) & 1u) continue;
                    const std::uint64_t flipped = b | (std::uint64_t{1} << agent);
                    ++report.cases;
                    if (positions[b][agent] != positions[flipped][agent]) {
                        const MessageVector base(n, b);
                        record_violation(blocking->realize(base),
                                         blocking->realize(MessageVector(n, flipped)).ranking_of(agent),
                                         agent, positions[b][agent], positions[flipped][agent]);
                        return report;
                    }
                }
            }
            report.verdict = Verdict::holds;
            return report;
        }
        if (const auto* decisive = dynamic_cast<const DecisiveMechanism*>(&mechanism)) {
            // Decisive agents: sweep all index triples and check that each
            // decisive position ignores its own coordinate. Non-decisive
            // agents never appear in the mechanism's inputs at all. The
            // full triple space is feasible for n = 5 only.
            if (n != 5) {
                throw DescriptorError("reduced-exhaustive impartiality sweeps all decisive triples; "
                                      "feasible for n = 5 only");
            }
            const std::uint64_t m = decisive->matrices().m();
            // Partitioned by p-index ranges; each worker records the first
            // position it sees per (agent, other-coordinates) key, and the
            // per-worker tables must agree cell by cell afterwards.
            const int jobs = std::max(1, options.jobs);
            std::vector<std::vector<std::int8_t>> first(
                jobs, std::vector<std::int8_t>(3 * m * m, -1));
            std::vector<std::uint64_t> bad_triple(jobs, m * m * m);
            auto sweep = [&](int w, std::uint64_t lo, std::uint64_t hi) {
                auto& table = first[w];
                for (std::uint64_t p = lo; p < hi; ++p) {
                    for (std::uint64_t q = 0; q < m; ++q) {
                        for (std::uint64_t r = 0; r < m; ++r) {
                            const Permutation out = decisive->rank_indices(p, q, r);
                            // Own coordinates: agent 0 -> p, agent 1 -> q, agent 2 -> r.
                            const std::uint64_t keys[3] = {q * m + r, r * m + p, p * m + q};
                            for (int agent = 0; agent < 3; ++agent) {
                                auto& slot = table[static_cast<std::size_t>(agent) * m * m +
                                                   keys[agent]];
                                const int pos = out.position_of(agent);
                                if (slot < 0) {
                                    slot = static_cast<std::int8_t>(pos);
                                } else if (slot != pos) {
                                    bad_triple[w] = (p * m + q) * m + r;
                                    return;
                                }
                            }
                        }
                    }
                }
            };
            if (jobs == 1) {
                sweep(0, 0, m);
            } else {
                std::vector<std::thread> workers;
                for (int w = 0; w < jobs; ++w) {
                    workers.emplace_back(sweep, w, m * w / jobs, m * (w + 1) / jobs);
                }
                for (auto& t : workers) t.join();
            }
            report.cases = 3 * m * m * m;
            auto fail_at = [&](std::uint64_t code) {
                const std::uint64_t p = code / (m * m), q = code / m % m, r = code % m;
                const auto& perms = all_permutations(n);
                std::vector<Permutation> rankings{perms[p], perms[q], perms[r]};
                for (int extra = 3; extra < n; ++extra) rankings.push_back(perms[0]);
                record_violation(RankingProfile(rankings), perms[p], 0, -1, -1);
            };
            for (int w = 0; w < jobs; ++w) {
                if (bad_triple[w] < m * m * m) {
                    fail_at(bad_triple[w]);
                    return report;
                }
            }
            // Merge: workers saw disjoint p-ranges but share (q, r) keys.
            for (int w = 1; w < jobs; ++w) {
                for (std::size_t cell = 0; cell < first[0].size(); ++cell) {
                    if (first[w][cell] < 0) continue;
                    if (first[0][cell] < 0) {
                        first[0][cell] = first[w][cell];
                    } else if (first[0][cell] != first[w][cell]) {
                        fail_at(0);
                        return report;
                    }
                }
            }
            report.verdict = Verdict::holds;
            return report;
        }
        throw DescriptorError("reduced-exhaustive impartiality needs mechanism structure hints");
    }

    // Sampled mode.
    std::uint64_t state = options.seed;
    for (int t = 0; t < options.trials; ++t) {
        std::vector<Permutation> rankings;
        rankings.reserve(n);
        for (int i = 0; i < n; ++i) rankings.push_back(random_permutation(n, state));
        RankingProfile profile(std::move(rankings));
        const int agent = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
        const Permutation deviation = random_permutation(n, state);
        const int before = mechanism.rank(profile).position_of(agent);
        const int after = mechanism.rank(replace(profile, agent, deviation)).position_of(agent);
        ++report.cases;
        if (before != after) {
            record_violation(profile, deviation, agent, before, after);
            return report;
        }
    }
    report.verdict = Verdict::inconclusive_sampled;
    return report;
}

AxiomReport check_monotonicity(const Mechanism& mechanism, const CheckOptions& options) {
    AxiomReport report = base_report("monotonicity", options);
    const int n = mechanism.n();

    auto record_violation = [&](const RankingProfile& profile, const Permutation& deviation, int agent,
                                int subject, int pos_before, int pos_after) {
        report.verdict = Verdict::violated;
        Witness w{profile, deviation, agent, subject, -1,
                  "agent " + std::to_string(subject) + " moves up in the ranking of agent " +
                      std::to_string(agent) + " but drops from output position " +
                      std::to_string(pos_before) + " to " + std::to_string(pos_after)};
        report.witness = std::move(w);
    };

    // One adjacent upward swap of the agent at position t in `ranking`.
    auto swapped_up = [](const Permutation& ranking, int t) {
        return ranking.with_swapped_positions(t - 1, t);
    };

    if (options.mode == CheckMode::exhaustive) {
        require_exhaustive_feasible(n, "monotonicity");
        const auto& perms = all_permutations(n);
        std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
        do {
            const RankingProfile profile = profile_from_digits(perms, digits);
            const Permutation base_out = mechanism.rank(profile);
            for (int agent = 0; agent < n; ++agent) {
                for (int t = 1; t < n; ++t) {
                    const int subject = profile.ranking_of(agent).agent_at(t);
                    const Permutation deviation = swapped_up(profile.ranking_of(agent), t);
                    const int before = base_out.position_of(subject);
                    const int after =
                        mechanism.rank(replace(profile, agent, deviation)).position_of(subject);
                    ++report.cases;
                    if (after > before) {
                        record_violation(profile, deviation, agent, subject, before, after);
                        return report;
                    }
                }
            }
        } while (advance(digits, perms.size()));
        report.verdict = Verdict::holds;
        return report;
    }

    if (options.mode == CheckMode::reduced_exhaustive) {
        const auto* blocking = dynamic_cast<const BlockingMechanism*>(&mechanism);
        if (blocking == nullptr) {
            throw DescriptorError("reduced-exhaustive monotonicity needs the blocking structure");
        }
        // Raising rho_i in agent i's ranking is the only deviation that can
        // change anything; sweep the message classes.
        const std::uint64_t total = std::uint64_t{1} << n;
        const auto& rho = blocking->rho();
        for (std::uint64_t b = 0; b < total; ++b) {
            const MessageVector low(n, b);
            for (int agent = 0; agent < n; ++agent) {
                if ((b >> agent) & 1u) continue;
                const MessageVector high = low.with_flipped(agent);
                const int before =
                    blocking->rank(blocking->realize(low)).position_of(rho[agent]);
                const int after =
                    blocking->rank(blocking->realize(high)).position_of(rho[agent]);
                ++report.cases;
                if (after > before) {
                    record_violation(blocking->realize(low),
                                     blocking->realize(high).ranking_of(agent), agent, rho[agent],
                                     before, after);
                    return report;
                }
            }
        }
        report.verdict = Verdict::holds;
        return report;
    }

    std::uint64_t state = options.seed;
    for (int t = 0; t < options.trials; ++t) {
        std::vector<Permutation> rankings;
        rankings.reserve(n);
        for (int i = 0; i < n; ++i) rankings.push_back(random_permutation(n, state));
        RankingProfile profile(std::move(rankings));
        const int agent = static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n));
        const int position = 1 + static_cast<int>(splitmix64(state) % static_cast<std::uint64_t>(n - 1));
        const int subject = profile.ranking_of(agent).agent_at(position);
        const Permutation deviation = swapped_up(profile.ranking_of(agent), position);
        const int before = mechanism.rank(profile).position_of(subject);
        const int after = mechanism.rank(replace(profile, agent, deviation)).position_of(subject);
        ++report.cases;
        if (after > before) {
            record_violation(profile, deviation, agent, subject, before, after);
            return report;
        }
    }
    report.verdict = Verdict::inconclusive_sampled;
    return report;
}

AxiomReport check_individual_full_rank(const Mechanism& mechanism) {
    AxiomReport report;
    report.axiom = "individual-full-rank";
    const int n = mechanism.n();

    if (const auto* blocking = dynamic_cast<const BlockingMechanism*>(&mechanism)) {
        report.mode = CheckMode::reduced_exhaustive;
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                const RankingProfile witness = blocking->ifr_witness(j, k);
                ++report.cases;
                if (mechanism.rank(witness).agent_at(k) != j) {
                    report.verdict = Verdict::violated;
                    report.witness = Witness{witness, std::nullopt, -1, j, k,
                                             "constructed witness fails to place agent " +
                                                 std::to_string(j) + " at position " + std::to_string(k)};
                    return report;
                }
            }
        }
        report.verdict = Verdict::holds;
        return report;
    }

    if (dynamic_cast<const DecisiveMechanism*>(&mechanism) != nullptr) {
        // Weak unanimity supplies the witness: a unanimous profile on any
        // ranking placing j at k.
        report.mode = CheckMode::reduced_exhaustive;
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) {
                std::vector<int> one_line;
                one_line.reserve(n);
                for (int agent = 0; agent < n; ++agent) {
                    if (agent != j) one_line.push_back(agent);
                }
                one_line.insert(one_line.begin() + k, j);
                const Permutation target{one_line};
                const RankingProfile witness = RankingProfile::unanimous(target);
                ++report.cases;
                if (mechanism.rank(witness).agent_at(k) != j) {
                    report.verdict = Verdict::violated;
                    report.witness = Witness{witness, std::nullopt, -1, j, k,
                                             "unanimous witness fails to place agent " +
                                                 std::to_string(j) + " at position " + std::to_string(k)};
                    return report;
                }
            }
        }
        report.verdict = Verdict::holds;
        return report;
    }

    report.mode = CheckMode::exhaustive;
    require_exhaustive_feasible(n, "individual-full-rank");
    const auto& perms = all_permutations(n);
    std::vector<std::vector<char>> reached(n, std::vector<char>(n, 0));
    std::vector<std::vector<RankingProfile>> examples(
        n, std::vector<RankingProfile>(n, RankingProfile::unanimous(perms[0])));
    std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
    do {
        const RankingProfile profile = profile_from_digits(perms, digits);
        const Permutation out = mechanism.rank(profile);
        ++report.cases;
        for (int k = 0; k < n; ++k) {
            const int j = out.agent_at(k);
            if (!reached[j][k]) {
                reached[j][k] = 1;
                examples[j][k] = profile;
            }
        }
    } while (advance(digits, perms.size()));
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < n; ++k) {
            if (!reached[j][k]) {
                report.verdict = Verdict::violated;
                report.witness = Witness{RankingProfile::unanimous(perms[0]), std::nullopt, -1, j, k,
                                         "no profile places agent " + std::to_string(j) +
                                             " at position " + std::to_string(k) +
                                             " (full space exhausted)"};
                return report;
            }
        }
    }
    report.verdict = Verdict::holds;
    return report;
}

AxiomReport check_weak_unanimity(const Mechanism& mechanism, const CheckOptions& options) {
    AxiomReport report = base_report("weak-unanimity", options);
    const int n = mechanism.n();

    auto check_one = [&](const Permutation& agreed) -> bool {
        const RankingProfile profile = RankingProfile::unanimous(agreed);
        const Permutation out = mechanism.rank(profile);
        ++report.cases;
        if (out != agreed) {
            report.verdict = Verdict::violated;
            report.witness = Witness{profile, std::nullopt, -1, -1, -1,
                                     "unanimous ranking " + agreed.to_string() + " maps to " +
                                         out.to_string()};
            return false;
        }
        return true;
    };

    if (options.mode == CheckMode::sampled) {
        std::uint64_t state = options.seed;
        for (int t = 0; t < options.trials; ++t) {
            if (!check_one(random_permutation(n, state))) return report;
        }
        report.verdict = Verdict::inconclusive_sampled;
        return report;
    }

    if (n > 8) {
        throw DescriptorError("exhaustive weak-unanimity enumeration is limited to n <= 8; "
                              "use sampled mode");
    }
    for (const Permutation& agreed : all_permutations(n)) {
        if (!check_one(agreed)) return report;
    }
    report.verdict = Verdict::holds;
    return report;
}

std::optional<Witness> unanimous_pair_violation(const Mechanism& mechanism,
                                                const RankingProfile& profile) {
    const int n = profile.n();
    const Permutation out = mechanism.rank(profile);
    for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
            if (a == b) continue;
            bool unanimous = true;
            for (int i = 0; i < n && unanimous; ++i) {
                unanimous = profile.ranking_of(i).position_of(a) < profile.ranking_of(i).position_of(b);
            }
            if (unanimous && out.position_of(a) > out.position_of(b)) {
                return Witness{profile, std::nullopt, -1, a, b,
                               "all agents rank " + std::to_string(a) + " above " + std::to_string(b) +
                                   " but the output ranks " + std::to_string(b) + " above " +
                                   std::to_string(a)};
            }
        }
    }
    return std::nullopt;
}

AxiomReport check_unanimity(const Mechanism& mechanism, const CheckOptions& options) {
    AxiomReport report = base_report("unanimity", options);
    const int n = mechanism.n();

    if (options.mode == CheckMode::exhaustive) {
        require_exhaustive_feasible(n, "unanimity");
        const auto& perms = all_permutations(n);
        std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
        do {
            const RankingProfile profile = profile_from_digits(perms, digits);
            ++report.cases;
            if (auto witness = unanimous_pair_violation(mechanism, profile)) {
                report.verdict = Verdict::violated;
                report.witness = std::move(witness);
                return report;
            }
        } while (advance(digits, perms.size()));
        report.verdict = Verdict::holds;
        return report;
    }

    if (options.mode == CheckMode::reduced_exhaustive) {
        const ChainAuditResult audit = unanimity_chain_audit(mechanism);
        report.cases = static_cast<std::uint64_t>(n) + 1;
        if (audit.kind != ChainAuditResult::Kind::unanimity_violation) {
            throw DescriptorError("the unanimity chain applies to impartial mechanisms only; "
                                  "the audit found an impartiality violation instead");
        }
        report.verdict = Verdict::violated;
        report.witness = Witness{audit.profile, std::nullopt, -1, audit.pair_first, audit.pair_second,
                                 audit.details};
        return report;
    }

    std::uint64_t state = options.seed;
    for (int t = 0; t < options.trials; ++t) {
        std::vector<Permutation> rankings;
        rankings.reserve(n);
        for (int i = 0; i < n; ++i) rankings.push_back(random_permutation(n, state));
        const RankingProfile profile(std::move(rankings));
        ++report.cases;
        if (auto witness = unanimous_pair_violation(mechanism, profile)) {
            report.verdict = Verdict::violated;
            report.witness = std::move(witness);
            return report;
        }
    }
    report.verdict = Verdict::inconclusive_sampled;
    return report;
}

bool replay_witness(const Mechanism& mechanism, const AxiomReport& report) {
    if (report.verdict != Verdict::violated || !report.witness) return false;
    const Witness& w = *report.witness;

    if (report.axiom == "impartiality") {
        if (!w.deviation || w.agent < 0) return false;
        const int before = mechanism.rank(w.profile).position_of(w.agent);
        const int after =
            mechanism.rank(replace(w.profile, w.agent, *w.deviation)).position_of(w.agent);
        return before != after;
    }
    if (report.axiom == "monotonicity") {
        if (!w.deviation || w.agent < 0 || w.subject < 0) return false;
        const int before = mechanism.rank(w.profile).position_of(w.subject);
        const int after =
            mechanism.rank(replace(w.profile, w.agent, *w.deviation)).position_of(w.subject);
        return after > before;
    }
    if (report.axiom == "weak-unanimity") {
        const Permutation& agreed = w.profile.ranking_of(0);
        for (int i = 0; i < w.profile.n(); ++i) {
            if (w.profile.ranking_of(i) != agreed) return false;
        }
        return mechanism.rank(w.profile) != agreed;
    }
    if (report.axiom == "unanimity") {
        if (w.subject < 0 || w.subject2 < 0) return false;
        for (int i = 0; i < w.profile.n(); ++i) {
            const Permutation& r = w.profile.ranking_of(i);
            if (r.position_of(w.subject) > r.position_of(w.subject2)) return false;
        }
        const Permutation out = mechanism.rank(w.profile);
        return out.position_of(w.subject) > out.position_of(w.subject2);
    }
    if (report.axiom == "individual-full-rank") {
        // The witness names an unreached (agent, position) pair; replay by
        // re-running the exhaustive search for that pair.
        const int n = mechanism.n();
        if (n > kExhaustiveProfileLimit) return false;
        const auto& perms = all_permutations(n);
        std::vector<std::size_t> digits(static_cast<std::size_t>(n), 0);
        do {
            const RankingProfile profile = profile_from_digits(perms, digits);
            if (mechanism.rank(profile).agent_at(w.subject2) == w.subject) return false;
        } while (advance(digits, perms.size()));
        return true;
    }
    return false;
}

MetaCheckResult implication_meta_check(const std::vector<AxiomReport>& reports) {
    MetaCheckResult result;
    auto proof_grade = [](const AxiomReport& r) {
        return r.mode == CheckMode::exhaustive || r.mode == CheckMode::reduced_exhaustive;
    };
    const AxiomReport* unanimity = nullptr;
    const AxiomReport* weak = nullptr;
    const AxiomReport* ifr = nullptr;
    for (const AxiomReport& r : reports) {
        if (r.axiom == "unanimity") unanimity = &r;
        if (r.axiom == "weak-unanimity") weak = &r;
        if (r.axiom == "individual-full-rank") ifr = &r;
    }
    auto conflict_if = [&](const AxiomReport* strong, const AxiomReport* weaker) {
        if (strong == nullptr || weaker == nullptr) return;
        if (!proof_grade(*strong) || !proof_grade(*weaker)) return;
        if (strong->verdict == Verdict::holds && weaker->verdict == Verdict::violated) {
            result.consistent = false;
            result.conflicts.push_back(strong->axiom + " holds but " + weaker->axiom +
                                       " is violated; the implication chain is broken");
        }
    };
    conflict_if(unanimity, weak);
    conflict_if(weak, ifr);
    conflict_if(unanimity, ifr);
    return result;
}

}  // namespace impartial
