#include "impartial/mechanism.hpp"

#include "impartial/blocking.hpp"
#include "impartial/decisive.hpp"
#include "impartial/errors.hpp"

namespace impartial {

std::string to_string(MechanismKind kind) {
    switch (kind) {
        case MechanismKind::blocking_n4: return "blocking-n4";
        case MechanismKind::blocking_fixture: return "blocking-fixture";
        case MechanismKind::blocking_random: return "blocking-random";
        case MechanismKind::weak_unanimity: return "weak-unanimity";
    }
    return "unknown";
}

MechanismDescriptor MechanismDescriptor::parse(const std::string& kind, int n,
                                               std::optional<std::uint64_t> seed) {
    MechanismDescriptor d;
    d.n = n;
    d.seed = seed;
    if (kind == "blocking") {
        if (n == 4) {
            d.kind = MechanismKind::blocking_n4;
        } else if (n >= 5 && n <= 10) {
            d.kind = MechanismKind::blocking_fixture;
        } else if (n >= 11) {
            d.kind = MechanismKind::blocking_random;
        } else {
            throw DescriptorError("blocking mechanisms exist for n >= 4, got n = " + std::to_string(n));
        }
    } else if (kind == "blocking-n4") {
        d.kind = MechanismKind::blocking_n4;
    } else if (kind == "blocking-fixture") {
        d.kind = MechanismKind::blocking_fixture;
    } else if (kind == "blocking-random") {
        d.kind = MechanismKind::blocking_random;
    } else if (kind == "weak-unanimity") {
        d.kind = MechanismKind::weak_unanimity;
    } else {
        throw DescriptorError("unknown mechanism kind '" + kind + "'");
    }
    return d;
}

std::string MechanismDescriptor::to_string() const {
    std::string out = impartial::to_string(kind) + "-n" + std::to_string(n);
    if (seed) out += "-seed" + std::to_string(*seed);
    return out;
}

std::unique_ptr<Mechanism> make_mechanism(const MechanismDescriptor& descriptor) {
    switch (descriptor.kind) {
        case MechanismKind::blocking_n4:
            if (descriptor.n != 4) {
                throw DescriptorError("blocking-n4 requires n = 4, got n = " +
                                      std::to_string(descriptor.n));
            }
            return std::make_unique<BlockingMechanism>(BlockingMechanism::n4_table());
        case MechanismKind::blocking_fixture:
            if (descriptor.n < 5 || descriptor.n > 10) {
                throw DescriptorError("blocking-fixture requires 5 <= n <= 10, got n = " +
                                      std::to_string(descriptor.n));
            }
            return std::make_unique<BlockingMechanism>(BlockingMechanism::fixture(descriptor.n));
        case MechanismKind::blocking_random:
            if (descriptor.n < 11) {
                throw DescriptorError("blocking-random requires n >= 11, got n = " +
                                      std::to_string(descriptor.n));
            }
            if (!descriptor.seed) {
                throw DescriptorError("blocking-random requires a seed");
            }
            return std::make_unique<BlockingMechanism>(
                BlockingMechanism::random_search(descriptor.n, *descriptor.seed));
        case MechanismKind::weak_unanimity:
            if (descriptor.n < 5) {
                throw DescriptorError("weak-unanimity requires n >= 5, got n = " +
                                      std::to_string(descriptor.n));
            }
            if (descriptor.n > kMaxFactorialAgents) {
                throw CapacityError("weak-unanimity requires n <= " +
                                    std::to_string(kMaxFactorialAgents) +
                                    " (lexicographic index capacity), got n = " +
                                    std::to_string(descriptor.n));
            }
            return std::make_unique<DecisiveMechanism>(descriptor.n);
    }
    throw DescriptorError("unhandled mechanism kind");
}

}  // namespace impartial
