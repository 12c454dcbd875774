#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>

#include "impartial/permutation.hpp"

namespace impartial {

/// An n-ranking mechanism: maps a profile of n rankings to one social
/// ranking. Implementations are immutable after construction and rank() is
/// pure, so instances can be shared freely across threads.
class Mechanism {
public:
    virtual ~Mechanism() = default;

    virtual int n() const = 0;
    virtual std::string name() const = 0;
    virtual Permutation rank(const RankingProfile& profile) const = 0;
};

enum class MechanismKind {
    blocking_n4,
    blocking_fixture,
    blocking_random,
    weak_unanimity,
};

std::string to_string(MechanismKind kind);

/// Serializable handle naming a concrete mechanism instance.
struct MechanismDescriptor {
    MechanismKind kind;
    int n = 0;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> fixture_id;

    /// Accepts the explicit kind names plus the shorthand "blocking",
    /// which resolves to n4 / fixture / random based on n.
    static MechanismDescriptor parse(const std::string& kind, int n,
                                     std::optional<std::uint64_t> seed = std::nullopt);

    std::string to_string() const;
};

/// Builds the mechanism named by the descriptor, validating kind/parameter
/// compatibility (DescriptorError on mismatch).
std::unique_ptr<Mechanism> make_mechanism(const MechanismDescriptor& descriptor);

}  // namespace impartial
