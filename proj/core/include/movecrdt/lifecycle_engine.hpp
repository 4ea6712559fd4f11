#pragma once

#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "movecrdt/engine.hpp"

namespace movecrdt {

/// One shift of an object between the document tree and the trash. Events
/// are recorded once, at admission; whether an event currently takes effect
/// is decided at query time from the move stacks, so winner flips during
/// restore/reapply never rewrite timelines.
struct LifecycleEvent {
    OpId at;              // id of the operation that caused the shift
    bool present;         // true: created or moved here; false: trashed
    OpId parent;          // destination parent (present events only)
    bool src_is_move = false;  // the causing op is a move (gated on its stack)
    OpId src_elem;             // element that op moves
    bool pred_is_move = false; // trash via a move predecessor (trash only)
    OpId pred_id;              // that predecessor's id
};

/// Merged, ID-sorted present/trash timeline of one object.
using LifecycleList = std::vector<LifecycleEvent>;

/// Engine variant that restores and reapplies move operations only.
/// Non-move operations merely shift objects between tree and trash without
/// changing parents, so their effect is answered by parent-at-time queries
/// over the lifecycle timelines instead of being replayed.
class LifecycleEngine : public Engine {
public:
    void insert(const Operation& op) override;

    const OpSet& opset() const override { return ops_; }
    const ValidityMap& validity() const override { return valid_; }
    const Counters& counters() const override { return counters_; }
    Variant variant() const override { return Variant::rar_lifecycle; }

    const LifecycleList* timeline(const OpId& object) const;

    /// Parent the object would have in a tree built from all operations with
    /// ID < t; nullopt when trashed or not yet created at that point.
    /// Throws UnknownObject for objects without a timeline.
    std::optional<OpId> parent_at(const OpId& object, const OpId& t) const;

    /// Current parent (t = infinity).
    std::optional<OpId> parent_now(const OpId& object) const;

private:
    static constexpr OpId kEndOfTime{~0ULL, ~0ULL};

    void record_lifecycle(const Operation& op);
    bool event_effective(const LifecycleEvent& ev) const;
    bool is_ancestor_at(OpId node, const OpId& ancestor, const OpId& t) const;
    void apply_move(const Operation& op);

    OpSet ops_;
    std::unordered_map<OpId, LifecycleList, OpIdHash> timelines_;
    std::set<OpId> move_ids_;
    std::unordered_map<OpId, std::vector<OpId>, OpIdHash> stacks_;
    ValidityMap valid_;
    Counters counters_;
};

}  // namespace movecrdt
