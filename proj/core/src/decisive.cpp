#include "impartial/decisive.hpp"

#include <algorithm>
#include <bit>

#include "impartial/errors.hpp"

namespace impartial {

namespace {

std::uint64_t bit(int i) { return std::uint64_t{1} << i; }

std::uint64_t mask_of(std::initializer_list<int> values) {
    std::uint64_t m = 0;
    for (int v : values) m |= bit(v);
    return m;
}

constexpr std::uint64_t kCacheLimit = 40320;  // 8!

}  // namespace

CuttingFamily::CuttingFamily(int n, std::array<std::vector<std::uint64_t>, 3> sets)
    : n_(n), sets_(std::move(sets)) {
    if (n < 2 || n > 64) throw ValidationError("cutting family supports 2 to 64 positions");
    for (int color = 0; color < 3; ++color) {
        if (sets_[color].empty()) throw ValidationError("cutting family has an empty color");
        for (std::uint64_t m : sets_[color]) {
            if (n < 64 && (m >> n) != 0) throw ValidationError("cutting set contains out-of-range positions");
        }
    }
}

CuttingFamily CuttingFamily::standard(int n) {
    if (n < 5) throw DescriptorError("cutting families exist for n >= 5, got n = " + std::to_string(n));
    std::array<std::vector<std::uint64_t>, 3> sets;
    if (n == 5) {
        sets[0] = {mask_of({0, 1, 2}), mask_of({0, 3, 4}), mask_of({1, 3}), mask_of({2, 4})};
        sets[1] = {mask_of({0, 1, 3}), mask_of({0, 2, 4}), mask_of({1, 4}), mask_of({2, 3})};
        sets[2] = {mask_of({0, 1, 4}), mask_of({0, 2, 3}), mask_of({1, 2}), mask_of({3, 4})};
    } else {
        // Circular triples: color i uses offsets {0, i+1, i+2} around the cycle.
        for (int color = 0; color < 3; ++color) {
            sets[color].reserve(static_cast<std::size_t>(n));
            for (int l = 0; l < n; ++l) {
                sets[color].push_back(bit(l) | bit(mod_add(l, color + 1, n)) | bit(mod_add(l, color + 2, n)));
            }
        }
    }
    return CuttingFamily(n, std::move(sets));
}

std::vector<int> CuttingFamily::set(int color, int index) const {
    std::vector<int> out;
    std::uint64_t m = sets_[color][index];
    while (m != 0) {
        out.push_back(std::countr_zero(m));
        m &= m - 1;
    }
    return out;
}

CuttingFamilyVerdict verify_cutting_family(const CuttingFamily& family) {
    CuttingFamilyVerdict verdict;
    const int n = family.n();
    for (int color = 0; color < 3; ++color) {
        for (int u = 0; u < n; ++u) {
            for (int v = 0; v < n; ++v) {
                if (u == v) continue;
                bool separated = false;
                for (int l = 0; l < family.size(color) && !separated; ++l) {
                    const std::uint64_t m = family.set_mask(color, l);
                    separated = ((m >> u) & 1u) && !((m >> v) & 1u);
                }
                if (!separated) {
                    verdict.condition = "separation";
                    verdict.witness = {color, u, v};
                    verdict.message = "color " + std::to_string(color) + ": no set contains " +
                                      std::to_string(u) + " without " + std::to_string(v);
                    return verdict;
                }
            }
        }
    }
    for (int color = 0; color < 3; ++color) {
        const int next = mod_add(color, 1, 3);
        for (int l = 0; l < family.size(color); ++l) {
            for (int lp = 0; lp < family.size(next); ++lp) {
                if ((family.set_mask(next, lp) & ~family.set_mask(color, l)) == 0) {
                    verdict.condition = "non-containment";
                    verdict.witness = {color, l, lp};
                    verdict.message = "set " + std::to_string(lp) + " of color " + std::to_string(next) +
                                      " is contained in set " + std::to_string(l) + " of color " +
                                      std::to_string(color);
                    return verdict;
                }
            }
        }
    }
    verdict.ok = true;
    return verdict;
}

int diagonal(int n, int i, std::uint64_t p) {
    return lex_unrank(n, p).position_of(i);
}

MatrixTriple::MatrixTriple(int n, std::uint64_t m, CuttingFamily family,
                           std::function<int(int, std::uint64_t)> diagonals)
    : n_(n), m_(m), family_(std::move(family)), diagonals_(std::move(diagonals)) {
    if (family_.n() != n) throw ValidationError("cutting family built for a different n");
    const CuttingFamilyVerdict verdict = verify_cutting_family(family_);
    if (!verdict.ok) {
        throw ValidationError("cutting family fails verification (" + verdict.condition +
                              "): " + verdict.message);
    }
    if (m_ <= kCacheLimit) {
        for (int color = 0; color < 3; ++color) {
            diag_cache_[color].resize(m_);
            for (std::uint64_t p = 0; p < m_; ++p) {
                diag_cache_[color][p] = static_cast<std::int8_t>(diagonals_(color, p));
            }
        }
        for (int color = 0; color < 3; ++color) {
            ell_cache_[color].resize(m_);
            for (std::uint64_t p = 0; p < m_; ++p) {
                ell_cache_[color][p] = static_cast<std::int16_t>(ell_index(color, p));
            }
        }
        cached_ = true;
    }
}

MatrixTriple MatrixTriple::for_mechanism(int n, CuttingFamily family) {
    const std::uint64_t m = factorial(n);
    return MatrixTriple(n, m, std::move(family),
                        [n](int i, std::uint64_t p) { return diagonal(n, i, p); });
}

MatrixTriple MatrixTriple::for_mechanism(int n) {
    return for_mechanism(n, CuttingFamily::standard(n));
}

int MatrixTriple::diagonal_entry(int i, std::uint64_t p) const {
    if (p >= m_) throw ValidationError("matrix index out of range");
    if (cached_) return diag_cache_[i][p];
    return diagonals_(i, p);
}

int MatrixTriple::ell_index(int i, std::uint64_t p) const {
    if (cached_ && !ell_cache_[i].empty() && p < ell_cache_[i].size() && ell_cache_[i][p] >= 0) {
        return ell_cache_[i][p];
    }
    const int du = diagonal_entry(i, p);
    const int dv = diagonal_entry(mod_add(i, 1, 3), p);
    for (int l = 0; l < family_.size(i); ++l) {
        const std::uint64_t m = family_.set_mask(i, l);
        if (((m >> du) & 1u) && !((m >> dv) & 1u)) return l;
    }
    throw ValidationError("cutting family separates no set for diagonal pair (" + std::to_string(du) +
                          ", " + std::to_string(dv) + ")");
}

int MatrixTriple::entry(int i, std::uint64_t p, std::uint64_t q) const {
    if (p >= m_ || q >= m_) throw ValidationError("matrix index out of range");
    if (p == q) return diagonal_entry(i, p);
    const int prev = mod_sub(i, 1, 3);
    const std::uint64_t column = family_.set_mask(i, ell_index(i, q));
    const std::uint64_t row_excluded = family_.set_mask(prev, ell_index(prev, p));
    const std::uint64_t feasible = column & ~row_excluded;
    if (feasible == 0) {
        throw ValidationError("empty feasible set for matrix entry; cutting family fails verification");
    }
    return std::countr_zero(feasible);
}

int MatrixTriple::nondecisive_position(int agent, std::uint64_t p, std::uint64_t q,
                                       std::uint64_t r) const {
    if (agent < 3 || agent >= n_) {
        throw ValidationError("nondecisive_position expects an agent index in [3, n)");
    }
    if (p == q && q == r) {
        return lex_unrank(n_, p).position_of(agent);
    }
    const std::uint64_t taken = bit(entry(0, q, r)) | bit(entry(1, r, p)) | bit(entry(2, p, q));
    int remaining = agent - 3;
    for (int position = 0; position < n_; ++position) {
        if ((taken >> position) & 1u) continue;
        if (remaining == 0) return position;
        --remaining;
    }
    throw ValidationError("ran out of positions for non-decisive agents");
}

DecisiveMechanism::DecisiveMechanism(int n) : triple_(MatrixTriple::for_mechanism(n)) {}

DecisiveMechanism::DecisiveMechanism(int n, CuttingFamily family)
    : triple_(MatrixTriple::for_mechanism(n, std::move(family))) {}

std::string DecisiveMechanism::name() const {
    return "weak-unanimity-n" + std::to_string(n());
}

Permutation DecisiveMechanism::rank(const RankingProfile& profile) const {
    if (profile.n() != n()) {
        throw ValidationError("profile has " + std::to_string(profile.n()) + " agents, mechanism needs " +
                              std::to_string(n()));
    }
    return rank_indices(lex_rank(profile.ranking_of(0)), lex_rank(profile.ranking_of(1)),
                        lex_rank(profile.ranking_of(2)));
}

Permutation DecisiveMechanism::rank_indices(std::uint64_t p, std::uint64_t q, std::uint64_t r) const {
    const int nn = n();
    std::vector<int> one_line(nn, -1);
    auto place = [&](int agent, int position) {
        if (one_line[position] != -1) {
            throw ValidationError("agents " + std::to_string(one_line[position]) + " and " +
                                  std::to_string(agent) + " both assigned position " +
                                  std::to_string(position));
        }
        one_line[position] = agent;
    };
    place(0, triple_.entry(0, q, r));
    place(1, triple_.entry(1, r, p));
    place(2, triple_.entry(2, p, q));
    if (p == q && q == r) {
        const Permutation common = lex_unrank(nn, p);
        for (int agent = 3; agent < nn; ++agent) place(agent, common.position_of(agent));
    } else {
        int remaining = 0;
        for (int position = 0; position < nn && remaining < nn - 3; ++position) {
            if (one_line[position] == -1) {
                place(3 + remaining, position);
                ++remaining;
            }
        }
    }
    return Permutation(std::move(one_line));
}

RelabeledMechanism::RelabeledMechanism(std::shared_ptr<const Mechanism> inner, Permutation labels)
    : inner_(std::move(inner)), labels_(std::move(labels)) {
    if (!inner_) throw ValidationError("relabeled mechanism needs an inner mechanism");
    if (labels_.n() != inner_->n()) {
        throw ValidationError("label permutation has wrong number of agents");
    }
}

std::string RelabeledMechanism::name() const {
    return inner_->name() + "-relabeled" + labels_.to_string();
}

Permutation RelabeledMechanism::rank(const RankingProfile& profile) const {
    const int nn = n();
    if (profile.n() != nn) throw ValidationError("profile has wrong number of agents");
    // Inner agent a submits the ranking of outer agent labels(a), rewritten
    // into inner labels.
    std::vector<Permutation> inner_rankings;
    inner_rankings.reserve(static_cast<std::size_t>(nn));
    for (int a = 0; a < nn; ++a) {
        const Permutation& outer = profile.ranking_of(labels_.agent_at(a));
        std::vector<int> one_line(nn);
        for (int k = 0; k < nn; ++k) one_line[k] = labels_.position_of(outer.agent_at(k));
        inner_rankings.emplace_back(std::move(one_line));
    }
    const Permutation inner_out = inner_->rank(RankingProfile(std::move(inner_rankings)));
    std::vector<int> one_line(nn);
    for (int k = 0; k < nn; ++k) one_line[k] = labels_.agent_at(inner_out.agent_at(k));
    return Permutation(std::move(one_line));
}

MatrixConditionsVerdict verify_matrix_conditions(int n,
                                                 const std::array<std::vector<std::vector<int>>, 3>& a,
                                                 const std::array<std::vector<int>, 3>& d) {
    MatrixConditionsVerdict verdict;
    const std::size_t m = a[0].size();
    for (int i = 0; i < 3; ++i) {
        if (a[i].size() != m || d[i].size() != m) {
            verdict.condition = "shape";
            verdict.message = "matrices and diagonals must share one m";
            return verdict;
        }
        for (std::size_t p = 0; p < m; ++p) {
            if (a[i][p].size() != m) {
                verdict.condition = "shape";
                verdict.message = "matrix " + std::to_string(i) + " is not square";
                return verdict;
            }
            for (std::size_t q = 0; q < m; ++q) {
                if (a[i][p][q] < 0 || a[i][p][q] >= n) {
                    verdict.condition = "range";
                    verdict.message = "entry out of position range";
                    return verdict;
                }
            }
            if (a[i][p][p] != d[i][p]) {
                verdict.condition = "diagonal";
                verdict.witness = {i, static_cast<int>(p)};
                verdict.message = "matrix " + std::to_string(i) + " diagonal at " + std::to_string(p) +
                                  " is " + std::to_string(a[i][p][p]) + ", expected " +
                                  std::to_string(d[i][p]);
                return verdict;
            }
        }
    }
    for (int i = 0; i < 3; ++i) {
        const int next = mod_add(i, 1, 3);
        for (std::size_t p = 0; p < m; ++p) {
            for (std::size_t q = 0; q < m; ++q) {
                for (std::size_t r = 0; r < m; ++r) {
                    if (a[i][p][q] == a[next][q][r]) {
                        verdict.condition = "cross-clash";
                        verdict.witness = {i, static_cast<int>(p), static_cast<int>(q),
                                           static_cast<int>(r)};
                        verdict.message = "A^" + std::to_string(i) + "[" + std::to_string(p) + "][" +
                                          std::to_string(q) + "] collides with A^" +
                                          std::to_string(next) + "[" + std::to_string(q) + "][" +
                                          std::to_string(r) + "]";
                        return verdict;
                    }
                }
            }
        }
    }
    verdict.ok = true;
    return verdict;
}

}  // namespace impartial
