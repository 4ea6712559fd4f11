#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "movecrdt/engine.hpp"
#include "movecrdt/naive_engine.hpp"

namespace movecrdt {

/// Incremental validity engine: inserting an operation restores every
/// operation with a greater ID, applies the newcomer, then reapplies the
/// suffix. Per-element move stacks (ID-ascending, top = winner) restore
/// validity; a per-operation parents log restores the tree exactly.
class RarEngine : public Engine {
public:
    /// batched = true turns insert_batch into a single restore/reapply pass.
    explicit RarEngine(bool batched = false) : batched_(batched) {}

    void insert(const Operation& op) override;
    void insert_batch(const std::vector<Operation>& ops) override;

    const OpSet& opset() const override { return ops_; }
    const ValidityMap& validity() const override { return valid_; }
    const Counters& counters() const override { return counters_; }
    Variant variant() const override { return batched_ ? Variant::rar_batch : Variant::rar; }

    const TreeState& tree() const { return tree_; }
    using MoveStacks = std::unordered_map<OpId, std::vector<OpId>, OpIdHash>;
    const MoveStacks& move_stacks() const { return stacks_; }

    /// Rewinds so that (tree, valid, moves) reflect exactly ops[0..index].
    /// Exposed for testing; apply_forward(index + 1) is its inverse.
    void restore_suffix(std::size_t index);

    /// Applies/reapplies operations from sorted position index to the end.
    /// Precondition: state reflects exactly the prefix before that position.
    void apply_forward(std::size_t index);

private:
    // Prior tree entries of one applied operation, in write order. The outer
    // nullopt marks a key that was absent before the write.
    using RestoreLog = std::vector<std::pair<OpId, std::optional<std::optional<OpId>>>>;

    void restore_above(const OpId& id);
    void apply_from(const OpId& id);
    void restore_one(const Operation& op);
    void apply_one(const Operation& op);

    bool batched_;
    OpSet ops_;
    TreeState tree_;
    MoveStacks stacks_;
    ValidityMap valid_;
    std::unordered_map<OpId, RestoreLog, OpIdHash> logs_;
    Counters counters_;
};

}  // namespace movecrdt
