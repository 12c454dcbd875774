#pragma once

// Small reference mechanisms used to exercise the axiom checkers.

#include <string>

#include "impartial/blocking.hpp"
#include "impartial/mechanism.hpp"

namespace impartial::testing {

/// Ignores the profile entirely.
class ConstantMechanism : public Mechanism {
public:
    explicit ConstantMechanism(Permutation output) : output_(std::move(output)) {}

    int n() const override { return output_.n(); }
    std::string name() const override { return "constant" + output_.to_string(); }
    Permutation rank(const RankingProfile& profile) const override {
        if (profile.n() != n()) throw ValidationError("profile has wrong number of agents");
        return output_;
    }

private:
    Permutation output_;
};

/// Outputs agent 0's ranking verbatim.
class DictatorshipMechanism : public Mechanism {
public:
    explicit DictatorshipMechanism(int n) : n_(n) {}

    int n() const override { return n_; }
    std::string name() const override { return "dictatorship-n" + std::to_string(n_); }
    Permutation rank(const RankingProfile& profile) const override {
        if (profile.n() != n_) throw ValidationError("profile has wrong number of agents");
        return profile.ranking_of(0);
    }

private:
    int n_;
};

/// n = 4 toy that moves agent 1 down when agent 0 raises it: the inverted
/// reading of the one-bit message.
class AntiMonotoneToy : public Mechanism {
public:
    int n() const override { return 4; }
    std::string name() const override { return "anti-monotone-toy"; }
    Permutation rank(const RankingProfile& profile) const override {
        if (profile.n() != 4) throw ValidationError("profile has wrong number of agents");
        if (chi(0, profile.ranking_of(0), 1) == 1) {
            return Permutation({0, 1, 2, 3});
        }
        return Permutation({1, 0, 2, 3});
    }
};

/// Forwarding wrapper hiding the concrete type, so checkers fall back to
/// their generic (hint-free) paths.
class OpaqueMechanism : public Mechanism {
public:
    explicit OpaqueMechanism(const Mechanism& inner) : inner_(inner) {}

    int n() const override { return inner_.n(); }
    std::string name() const override { return "opaque(" + inner_.name() + ")"; }
    Permutation rank(const RankingProfile& profile) const override { return inner_.rank(profile); }

private:
    const Mechanism& inner_;
};

}  // namespace impartial::testing
