#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "adequal/lcfield.hpp"

namespace adequal {

/// Identities and order laws of an ordered field, each stated over a triple
/// (x, y, z). Checking them at points carrying infinitesimal and unlimited
/// components is the finite, desk-scale form of transfer.
enum class Identity {
    add_commutative,    // x + y = y + x
    mul_commutative,    // x * y = y * x
    add_associative,    // (x + y) + z = x + (y + z)
    mul_associative,    // (x * y) * z = x * (y * z)
    distributive,       // x * (y + z) = x*y + x*z
    order_translation,  // x < y  =>  x + z < y + z
    order_scaling,      // x < y and z > 0  =>  x*z < y*z
    abs_multiplicative, // |x*y| = |x| * |y|
};

inline constexpr std::array<Identity, 8> transfer_schema = {
    Identity::add_commutative, Identity::mul_commutative, Identity::add_associative,
    Identity::mul_associative, Identity::distributive,    Identity::order_translation,
    Identity::order_scaling,   Identity::abs_multiplicative,
};

inline const char* to_string(Identity id) noexcept
{
    switch (id) {
    case Identity::add_commutative: return "add_commutative";
    case Identity::mul_commutative: return "mul_commutative";
    case Identity::add_associative: return "add_associative";
    case Identity::mul_associative: return "mul_associative";
    case Identity::distributive: return "distributive";
    case Identity::order_translation: return "order_translation";
    case Identity::order_scaling: return "order_scaling";
    case Identity::abs_multiplicative: return "abs_multiplicative";
    }
    return "?";
}

inline std::optional<Identity> identity_from_string(const std::string& name)
{
    for (Identity id : transfer_schema)
        if (name == to_string(id)) return id;
    return std::nullopt;
}

using Sample = std::array<LCNumber, 3>;

struct Violation {
    Identity identity;
    std::size_t sample_index;
};

struct TransferReport {
    std::size_t evaluations = 0; // identity/sample pairs evaluated
    std::size_t vacuous = 0;     // implications whose hypothesis was false
    std::vector<Violation> violations;

    bool holds() const noexcept { return violations.empty(); }
};

/// True when the identity holds at (x, y, z); implications with a false
/// hypothesis hold vacuously.
inline bool identity_holds(Identity id, const LCNumber& x, const LCNumber& y, const LCNumber& z)
{
    switch (id) {
    case Identity::add_commutative: return x + y == y + x;
    case Identity::mul_commutative: return x * y == y * x;
    case Identity::add_associative: return (x + y) + z == x + (y + z);
    case Identity::mul_associative: return (x * y) * z == x * (y * z);
    case Identity::distributive: return x * (y + z) == x * y + x * z;
    case Identity::order_translation: return !(x < y) || x + z < y + z;
    case Identity::order_scaling: return !(x < y && z > 0) || x * z < y * z;
    case Identity::abs_multiplicative: return abs(x * y) == abs(x) * abs(y);
    }
    return false;
}

inline bool hypothesis_holds(Identity id, const LCNumber& x, const LCNumber& y, const LCNumber& z)
{
    switch (id) {
    case Identity::order_translation: return x < y;
    case Identity::order_scaling: return x < y && z > 0;
    default: return true;
    }
}

inline TransferReport check_transfer_identity(Identity id, std::span<const Sample> samples)
{
    TransferReport report;
    for (std::size_t i = 0; i < samples.size(); ++i) {
        const auto& [x, y, z] = samples[i];
        ++report.evaluations;
        if (!hypothesis_holds(id, x, y, z)) ++report.vacuous;
        if (!identity_holds(id, x, y, z)) report.violations.push_back({id, i});
    }
    return report;
}

/// Runs every identity of the schema over every sample.
inline TransferReport check_transfer_schema(std::span<const Sample> samples)
{
    TransferReport total;
    for (Identity id : transfer_schema) {
        auto r = check_transfer_identity(id, samples);
        total.evaluations += r.evaluations;
        total.vacuous += r.vacuous;
        total.violations.insert(total.violations.end(), r.violations.begin(), r.violations.end());
    }
    return total;
}

} // namespace adequal
