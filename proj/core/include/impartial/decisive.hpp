#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "impartial/mechanism.hpp"
#include "impartial/permutation.hpp"

namespace impartial {

/// Per-color families of subsets of [n] satisfying two conditions:
/// separation (for every color and ordered pair u != v, some set contains
/// u but not v) and cross-color non-containment (no set of color i+1 is
/// contained in a set of color i). Sets are position bitmasks.
class CuttingFamily {
public:
    CuttingFamily(int n, std::array<std::vector<std::uint64_t>, 3> sets);

    /// The construction used by the mechanism: an explicit twelve-set
    /// family for n = 5, circular triples for n >= 6.
    static CuttingFamily standard(int n);

    int n() const { return n_; }
    int size(int color) const { return static_cast<int>(sets_[color].size()); }
    std::uint64_t set_mask(int color, int index) const { return sets_[color][index]; }
    std::vector<int> set(int color, int index) const;

    bool operator==(const CuttingFamily&) const = default;

private:
    int n_;
    std::array<std::vector<std::uint64_t>, 3> sets_;
};

struct CuttingFamilyVerdict {
    bool ok = false;
    std::string condition;     // "separation" or "non-containment"
    std::vector<int> witness;  // (i, u, v) or (i, l, l')
    std::string message;
};

CuttingFamilyVerdict verify_cutting_family(const CuttingFamily& family);

/// Position of decisive agent i in the p-th permutation of [n] in
/// lexicographic order.
int diagonal(int n, int i, std::uint64_t p);

/// Three virtual m x m position matrices with fixed diagonals: entries are
/// produced on demand from a cutting family, never materialized. Row p of
/// matrix i draws from the complement of the set chosen for column p of
/// matrix i-1, which forces the cross-matrix non-clash condition.
class MatrixTriple {
public:
    /// Diagonals given by an arbitrary callable d(i, p); the three values
    /// at each p must be pairwise distinct.
    MatrixTriple(int n, std::uint64_t m, CuttingFamily family,
                 std::function<int(int, std::uint64_t)> diagonals);

    /// m = n! and d(i, p) = position of agent i in the p-th permutation,
    /// as the weak-unanimity mechanism requires.
    static MatrixTriple for_mechanism(int n, CuttingFamily family);
    static MatrixTriple for_mechanism(int n);

    int n() const { return n_; }
    std::uint64_t m() const { return m_; }
    const CuttingFamily& family() const { return family_; }

    int diagonal_entry(int i, std::uint64_t p) const;

    /// Smallest set index l of color i whose set contains d^i_p but not
    /// d^{i+1}_p.
    int ell_index(int i, std::uint64_t p) const;

    /// A^i_{pq}: the diagonal for p = q, otherwise the smallest element of
    /// the column-q set minus the row-p complement source.
    int entry(int i, std::uint64_t p, std::uint64_t q) const;

    /// Output position of non-decisive agent (index >= 3) when the
    /// decisive agents submit rankings p, q, r: their position in the
    /// common ranking if p = q = r, otherwise the (agent-3)-th smallest
    /// position not taken by a decisive agent.
    int nondecisive_position(int agent, std::uint64_t p, std::uint64_t q, std::uint64_t r) const;

private:
    int n_;
    std::uint64_t m_;
    CuttingFamily family_;
    std::function<int(int, std::uint64_t)> diagonals_;
    // Cached per-color diagonal and set-index tables for small m.
    std::array<std::vector<std::int8_t>, 3> diag_cache_;
    std::array<std::vector<std::int16_t>, 3> ell_cache_;
    bool cached_ = false;
};

/// The impartial, weakly unanimous mechanism: agents 0, 1, 2 are decisive,
/// each placed by a matrix entry indexed by the other two decisive
/// rankings; everyone else is placed from the decisive triple.
class DecisiveMechanism : public Mechanism {
public:
    explicit DecisiveMechanism(int n);
    DecisiveMechanism(int n, CuttingFamily family);

    int n() const override { return triple_.n(); }
    std::string name() const override;
    Permutation rank(const RankingProfile& profile) const override;

    /// Fast path on lexicographic indices of the decisive rankings.
    Permutation rank_indices(std::uint64_t p, std::uint64_t q, std::uint64_t r) const;

    const MatrixTriple& matrices() const { return triple_; }

private:
    MatrixTriple triple_;
};

/// Wrapper that renames agents, letting callers choose which three agents
/// are decisive: outer agent labels(a) plays inner agent a.
class RelabeledMechanism : public Mechanism {
public:
    RelabeledMechanism(std::shared_ptr<const Mechanism> inner, Permutation labels);

    int n() const override { return labels_.n(); }
    std::string name() const override;
    Permutation rank(const RankingProfile& profile) const override;

private:
    std::shared_ptr<const Mechanism> inner_;
    Permutation labels_;  // inner agent -> outer agent
};

struct MatrixConditionsVerdict {
    bool ok = false;
    std::string condition;     // "diagonal" or "cross-clash"
    std::vector<int> witness;  // (i, p) or (i, p, q, r)
    std::string message;
};

/// Checks explicit matrices against the two defining conditions: fixed
/// diagonals and A^i_{pq} != A^{i+1}_{qr} for all index combinations.
MatrixConditionsVerdict verify_matrix_conditions(int n,
                                                 const std::array<std::vector<std::vector<int>>, 3>& a,
                                                 const std::array<std::vector<int>, 3>& d);

}  // namespace impartial
