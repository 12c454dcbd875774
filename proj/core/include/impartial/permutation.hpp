#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "impartial/errors.hpp"

namespace impartial {

/// Largest n for which n! fits into 64 bits (21! overflows).
inline constexpr int kMaxFactorialAgents = 20;

/// n! for n <= 20; throws CapacityError beyond that.
std::uint64_t factorial(int n);

int mod_add(int a, int b, int modulus);
int mod_sub(int a, int b, int modulus);

/// Value in [modulus) with wrapping arithmetic. Used for color and agent
/// index stepping (mod 3 and mod n).
class ModIndex {
public:
    ModIndex(int value, int modulus);

    int value() const { return value_; }
    int modulus() const { return modulus_; }

    ModIndex operator+(int delta) const { return ModIndex(mod_add(value_, delta, modulus_), modulus_); }
    ModIndex operator-(int delta) const { return ModIndex(mod_sub(value_, delta, modulus_), modulus_); }

    bool operator==(const ModIndex&) const = default;

private:
    int value_;
    int modulus_;
};

/// Ranking of n agents in one-line notation: agent_at(k) is the agent in
/// position k, position_of(j) is where agent j sits. The one-line form is
/// canonical; the inverse is kept alongside since both directions are used
/// constantly.
class Permutation {
public:
    explicit Permutation(std::vector<int> one_line);

    static Permutation identity(int n);
    static Permutation reversed(int n);

    int n() const { return static_cast<int>(image_.size()); }
    int agent_at(int position) const { return image_[position]; }
    int position_of(int agent) const { return inverse_[agent]; }

    const std::vector<int>& one_line() const { return image_; }

    Permutation inverse() const;

    /// Copy with the agents in positions a and b exchanged.
    Permutation with_swapped_positions(int a, int b) const;

    bool operator==(const Permutation& other) const { return image_ == other.image_; }
    bool operator!=(const Permutation& other) const { return !(*this == other); }

    /// "(3 1 4 0 2 5)"
    std::string to_string() const;

private:
    std::vector<int> image_;
    std::vector<int> inverse_;
};

/// One ranking per agent; all over the same agent set.
class RankingProfile {
public:
    explicit RankingProfile(std::vector<Permutation> rankings);

    static RankingProfile unanimous(const Permutation& ranking);

    int n() const { return static_cast<int>(rankings_.size()); }
    const Permutation& ranking_of(int agent) const { return rankings_[agent]; }
    const std::vector<Permutation>& rankings() const { return rankings_; }

    bool operator==(const RankingProfile&) const = default;

private:
    std::vector<Permutation> rankings_;
};

/// Profile with agent i's ranking substituted.
RankingProfile replace(const RankingProfile& profile, int agent, Permutation ranking);

/// 0-based index of p among the n! permutations of [n] in lexicographic
/// order.
std::uint64_t lex_rank(const Permutation& p);

/// Inverse of lex_rank, via the factorial number system.
Permutation lex_unrank(int n, std::uint64_t index);

}  // namespace impartial
