#pragma once

#include <compare>
#include <cstdint>
#include <functional>
#include <string>

namespace movecrdt {

/// Replica identifier. Serialized as a decimal string so that a later swap
/// to UUID-like identifiers stays format compatible.
using ActorId = std::uint64_t;

/// Lamport pair identifying one operation. Ordered by counter, then actor.
struct OpId {
    std::uint64_t counter = 0;
    ActorId actor = 0;

    friend auto operator<=>(const OpId&, const OpId&) = default;

    /// ⟨0,0⟩ doubles as the root object ID and the list head anchor.
    bool is_root() const { return counter == 0 && actor == 0; }
};

inline constexpr OpId kRootId{0, 0};

std::string to_string(const OpId& id);

struct OpIdHash {
    std::size_t operator()(const OpId& id) const noexcept {
        std::size_t h = std::hash<std::uint64_t>{}(id.counter);
        h ^= std::hash<std::uint64_t>{}(id.actor) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

}  // namespace movecrdt
