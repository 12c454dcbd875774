#include "impartial/permutation.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace impartial {

std::uint64_t factorial(int n) {
    if (n < 0 || n > kMaxFactorialAgents) {
        throw CapacityError("factorial(" + std::to_string(n) + ") exceeds 64-bit capacity (max n = " +
                            std::to_string(kMaxFactorialAgents) + ")");
    }
    std::uint64_t f = 1;
    for (int k = 2; k <= n; ++k) f *= static_cast<std::uint64_t>(k);
    return f;
}

int mod_add(int a, int b, int modulus) {
    int r = (a + b) % modulus;
    return r < 0 ? r + modulus : r;
}

int mod_sub(int a, int b, int modulus) {
    int r = (a - b) % modulus;
    return r < 0 ? r + modulus : r;
}

ModIndex::ModIndex(int value, int modulus) : value_(value), modulus_(modulus) {
    if (modulus <= 0) throw ValidationError("ModIndex modulus must be positive");
    if (value < 0 || value >= modulus) {
        throw ValidationError("ModIndex value " + std::to_string(value) + " out of range [0, " +
                              std::to_string(modulus) + ")");
    }
}

Permutation::Permutation(std::vector<int> one_line) : image_(std::move(one_line)) {
    const int n = static_cast<int>(image_.size());
    if (n == 0) throw ValidationError("permutation must be nonempty");
    inverse_.assign(n, -1);
    for (int pos = 0; pos < n; ++pos) {
        const int agent = image_[pos];
        if (agent < 0 || agent >= n) {
            throw ValidationError("permutation entry " + std::to_string(agent) + " at position " +
                                  std::to_string(pos) + " out of range [0, " + std::to_string(n) + ")");
        }
        if (inverse_[agent] != -1) {
            throw ValidationError("permutation repeats agent " + std::to_string(agent));
        }
        inverse_[agent] = pos;
    }
}

Permutation Permutation::identity(int n) {
    std::vector<int> v(n);
    std::iota(v.begin(), v.end(), 0);
    return Permutation(std::move(v));
}

Permutation Permutation::reversed(int n) {
    std::vector<int> v(n);
    for (int k = 0; k < n; ++k) v[k] = n - 1 - k;
    return Permutation(std::move(v));
}

Permutation Permutation::inverse() const {
    return Permutation(inverse_);
}

Permutation Permutation::with_swapped_positions(int a, int b) const {
    std::vector<int> v = image_;
    std::swap(v.at(a), v.at(b));
    return Permutation(std::move(v));
}

std::string Permutation::to_string() const {
    std::ostringstream out;
    out << '(';
    for (int k = 0; k < n(); ++k) {
        if (k > 0) out << ' ';
        out << image_[k];
    }
    out << ')';
    return out.str();
}

RankingProfile::RankingProfile(std::vector<Permutation> rankings) : rankings_(std::move(rankings)) {
    if (rankings_.empty()) throw ValidationError("profile must contain at least one ranking");
    const int n = static_cast<int>(rankings_.size());
    for (const Permutation& p : rankings_) {
        if (p.n() != n) {
            throw ValidationError("profile of " + std::to_string(n) + " agents contains a ranking of " +
                                  std::to_string(p.n()) + " agents");
        }
    }
}

RankingProfile RankingProfile::unanimous(const Permutation& ranking) {
    return RankingProfile(std::vector<Permutation>(ranking.n(), ranking));
}

RankingProfile replace(const RankingProfile& profile, int agent, Permutation ranking) {
    if (agent < 0 || agent >= profile.n()) {
        throw ValidationError("replace: agent index " + std::to_string(agent) + " out of range");
    }
    if (ranking.n() != profile.n()) {
        throw ValidationError("replace: ranking has wrong number of agents");
    }
    std::vector<Permutation> rankings = profile.rankings();
    rankings[agent] = std::move(ranking);
    return RankingProfile(std::move(rankings));
}

std::uint64_t lex_rank(const Permutation& p) {
    const int n = p.n();
    factorial(n);  // enforce capacity
    std::uint64_t rank = 0;
    std::uint64_t f = factorial(n - 1);
    std::vector<bool> used(n, false);
    for (int pos = 0; pos < n; ++pos) {
        const int agent = p.agent_at(pos);
        int smaller = 0;
        for (int a = 0; a < agent; ++a) {
            if (!used[a]) ++smaller;
        }
        rank += static_cast<std::uint64_t>(smaller) * f;
        used[agent] = true;
        if (pos + 1 < n) f /= static_cast<std::uint64_t>(n - 1 - pos);
    }
    return rank;
}

Permutation lex_unrank(int n, std::uint64_t index) {
    if (n <= 0) throw ValidationError("lex_unrank: n must be positive");
    const std::uint64_t total = factorial(n);
    if (index >= total) {
        throw ValidationError("lex_unrank: index " + std::to_string(index) + " out of range [0, " +
                              std::to_string(total) + ")");
    }
    std::vector<int> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<int> one_line;
    one_line.reserve(n);
    std::uint64_t f = factorial(n - 1);
    for (int pos = 0; pos < n; ++pos) {
        const auto digit = static_cast<std::size_t>(index / f);
        index %= f;
        one_line.push_back(remaining[digit]);
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(digit));
        if (pos + 1 < n) f /= static_cast<std::uint64_t>(n - 1 - pos);
    }
    return Permutation(std::move(one_line));
}

}  // namespace impartial
