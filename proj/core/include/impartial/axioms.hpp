#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "impartial/mechanism.hpp"
#include "impartial/permutation.hpp"

namespace impartial {

enum class Verdict { holds, violated, inconclusive_sampled };
enum class CheckMode { exhaustive, reduced_exhaustive, sampled };

std::string to_string(Verdict verdict);
std::string to_string(CheckMode mode);

/// Concrete, replayable evidence of a violation.
struct Witness {
    RankingProfile profile;
    std::optional<Permutation> deviation;  // replacement ranking for `agent`
    int agent = -1;                        // deviating agent
    int subject = -1;                      // tracked agent, or first of a pair
    int subject2 = -1;                     // second of a pair
    std::string details;
};

struct AxiomReport {
    std::string axiom;
    CheckMode mode = CheckMode::exhaustive;
    Verdict verdict = Verdict::inconclusive_sampled;
    std::uint64_t cases = 0;  // checks actually performed
    int trials = 0;           // requested sample size (sampled mode)
    std::uint64_t seed = 0;   // sampling seed (sampled mode)
    std::optional<Witness> witness;
};

struct CheckOptions {
    CheckMode mode = CheckMode::exhaustive;
    int trials = 10000;
    std::uint64_t seed = 1;
    int jobs = 1;
};

/// Position of each agent must not depend on its own ranking. Exhaustive
/// mode enumerates full profile space (n <= 4); reduced-exhaustive uses
/// mechanism structure (message classes for the blocking mechanism,
/// decisive index triples for the weak-unanimity mechanism).
AxiomReport check_impartiality(const Mechanism& mechanism, const CheckOptions& options = {});

/// Moving an agent up one step in a single input ranking must not move it
/// down in the output. Deviations are generated as adjacent upward swaps;
/// any upward move is a composition of those.
AxiomReport check_monotonicity(const Mechanism& mechanism, const CheckOptions& options = {});

/// Every (agent, position) pair must be realized by some profile. Uses
/// constructive witnesses where the mechanism provides them, exhaustive
/// profile search otherwise (n <= 4).
AxiomReport check_individual_full_rank(const Mechanism& mechanism);

/// A ranking submitted by every agent must be the output.
AxiomReport check_weak_unanimity(const Mechanism& mechanism, const CheckOptions& options = {});

/// Pairwise orders agreed by all agents must be preserved.
/// Reduced-exhaustive mode walks the unanimity chain profiles, which is
/// guaranteed to produce a violation for impartial mechanisms.
AxiomReport check_unanimity(const Mechanism& mechanism, const CheckOptions& options = {});

/// First unanimously agreed pair whose order the output breaks, if any.
std::optional<Witness> unanimous_pair_violation(const Mechanism& mechanism,
                                                const RankingProfile& profile);

/// Re-evaluates the mechanism on a report's witness; true iff the recorded
/// violation reproduces.
bool replay_witness(const Mechanism& mechanism, const AxiomReport& report);

struct MetaCheckResult {
    bool consistent = true;
    std::vector<std::string> conflicts;
};

/// Verifies the implication chain unanimity => weak unanimity =>
/// individual full rank across one mechanism's reports: a stronger axiom
/// may not hold while a weaker one is violated when both verdicts are
/// proof-grade (non-sampled).
MetaCheckResult implication_meta_check(const std::vector<AxiomReport>& reports);

/// All n! permutations of [n] in lexicographic order; shared by the
/// exhaustive checkers.
const std::vector<Permutation>& all_permutations(int n);

/// Deterministic Fisher-Yates draw (std::shuffle is implementation
/// defined, this is not).
Permutation random_permutation(int n, std::uint64_t& state);

}  // namespace impartial
