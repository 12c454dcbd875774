#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "impartial/mechanism.hpp"
#include "impartial/permutation.hpp"

namespace impartial {

/// Candidate impartial mechanism for tiny n, decomposed by agent: agent
/// i's position is a function h[i] of the others' rankings only. Reduced
/// profiles are indexed by the lexicographic ranks of the other agents'
/// rankings in agent order, combined base n!.
struct PositionAssignment {
    int n = 0;
    std::vector<std::vector<int>> h;  // h[agent][reduced index] in [n]; -1 = unassigned

    static PositionAssignment empty(int n);
    bool complete() const;
};

std::size_t reduced_profile_count(int n);

/// Reduced-profile index of `agent` within a full profile given by
/// lexicographic ranks.
std::size_t reduced_index(int n, int agent, const std::vector<std::uint64_t>& ranks);

/// Positions the candidate assigns on a full profile; empty optional if
/// any involved entry is unassigned.
std::optional<std::vector<int>> candidate_positions(const PositionAssignment& candidate,
                                                    const std::vector<std::uint64_t>& ranks);

/// True iff every full profile yields pairwise-distinct positions.
bool candidate_feasible(const PositionAssignment& candidate);

/// True iff every h[agent] covers all n positions.
bool candidate_full_rank(const PositionAssignment& candidate);

struct RefutationOptions {
    bool require_full_rank = true;
    bool rotation_pruning = false;
    /// Pre-assigned (agent, reduced index, position) triples, applied
    /// before the search starts.
    std::vector<std::array<int, 3>> forced;
};

struct RefutationCertificate {
    int n = 0;
    bool satisfiable = false;
    std::uint64_t nodes = 0;  // value assignments attempted
    bool rotation_pruning = false;
    bool full_rank_required = true;
    std::optional<PositionAssignment> model;  // present iff satisfiable
};

/// Decides whether an impartial mechanism with individual full rank exists
/// for n in {2, 3}: full enumeration for n = 2, backtracking with forward
/// checking for n = 3. Any model returned is re-verified by direct
/// evaluation on every full profile.
RefutationCertificate refute_impartial_ifr(int n, const RefutationOptions& options = {});

struct RotationClaimVerdict {
    bool ok = false;
    std::string message;
    std::vector<int> outputs;  // distinct outputs as lexicographic ranks
};

/// For a complete, feasible n = 3 candidate: no two realized outputs may
/// be cyclic shifts of one another.
RotationClaimVerdict check_rotation_claim(const PositionAssignment& candidate);

/// The ell-th profile of the unanimity contradiction chain: the first
/// n - ell agents submit (1 2 ... n-1 0), the rest the identity.
RankingProfile chain_profile(int n, int ell);

struct ChainAuditResult {
    enum class Kind { unanimity_violation, impartiality_violation };
    Kind kind;
    RankingProfile profile;  // profile exhibiting the violation
    Permutation output;
    int pair_first = -1;   // unanimity case: unanimously ordered pair
    int pair_second = -1;
    int agent = -1;                            // impartiality case: deviating agent
    std::optional<RankingProfile> previous;    // impartiality case
    std::optional<Permutation> previous_output;
    std::string details;
};

/// Walks the chain profiles and the final identity substitution, checking
/// at each step the position forced by impartiality and the pairwise
/// orders forced by unanimity. An impartial mechanism always fails a
/// pairwise check somewhere along the chain.
ChainAuditResult unanimity_chain_audit(const Mechanism& mechanism);

struct Cnf {
    int num_vars = 0;
    std::vector<std::vector<int>> clauses;
};

void write_dimacs(const Cnf& cnf, std::ostream& out);

/// Propositional encoding of "an impartial, weakly unanimous 4-ranking
/// mechanism exists", with variables x(agent, reduced profile, position).
/// Exactly-one clauses and weak-unanimity units are always included; the
/// one-agent-per-position constraints range over `profiles` (possibly
/// empty). The full 24^4 scope is available as a streaming writer.
struct WuEncoding {
    Cnf cnf;
    std::vector<RankingProfile> scope;

    static int var_id(int agent, std::size_t reduced, int position);
    static std::array<int, 3> decode_var(int id);  // (agent, reduced index, position)
};

WuEncoding encode_wu_n4(const std::vector<RankingProfile>& profiles);

std::uint64_t wu_n4_variable_count();
std::uint64_t wu_n4_full_clause_count();

struct DimacsStats {
    std::uint64_t variables = 0;
    std::uint64_t clauses = 0;
};

/// Streams the full-scope instance without materializing it.
DimacsStats write_wu_n4_full_dimacs(std::ostream& out);

/// Variable-map sidecar: id order, one (agent, reduced index, position)
/// triple per variable.
void write_wu_n4_sidecar(std::ostream& out);

/// Position tables extracted from a satisfying assignment (1-based ids;
/// assignment[v] > 0 means true).
std::array<std::vector<int>, 4> decode_wu_assignment(const std::vector<std::int8_t>& assignment);

/// Direct evaluation of decoded tables against the subset constraints:
/// distinct positions on every scoped profile, agreed positions on
/// unanimous profiles.
bool wu_tables_satisfy(const std::array<std::vector<int>, 4>& tables,
                       const std::vector<RankingProfile>& profiles);

enum class SolveStatus { satisfiable, unsatisfiable, budget_exceeded };

struct SolveResult {
    SolveStatus status = SolveStatus::budget_exceeded;
    std::vector<std::int8_t> assignment;  // 1-based; +1 true, -1 false
    std::uint64_t decisions = 0;
};

/// Chronological DPLL with two-watched-literal propagation. Sound and
/// complete within the decision budget; budget exhaustion is reported
/// separately from unsatisfiability.
SolveResult dpll_solve(const Cnf& cnf, std::uint64_t node_budget = 1'000'000);

}  // namespace impartial
