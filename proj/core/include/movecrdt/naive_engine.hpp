#pragma once

#include <optional>
#include <unordered_map>
#include <vector>

#include "movecrdt/engine.hpp"

namespace movecrdt {

/// Child id -> parent id. A nullopt parent means the object sits in the
/// trash; a missing entry means it never entered the tree.
struct TreeState {
    std::unordered_map<OpId, std::optional<OpId>, OpIdHash> parent;

    friend bool operator==(const TreeState&, const TreeState&) = default;
};

/// True iff ancestor lies on the parent chain from node, node included.
/// The walk stops at the root or at a trashed/unknown object.
bool is_ancestor(const TreeState& tree, OpId node, const OpId& ancestor);

struct NaiveResult {
    ValidityMap valid;
    TreeState tree;
};

/// Full forward replay of an ascending, causally closed operation sequence.
/// Kept deliberately separate from the incremental engine: this is the
/// oracle the other variants are checked against.
NaiveResult update_validity_naive(const std::vector<Operation>& ops);

/// Engine variant that re-runs the full replay after every insertion.
class NaiveEngine : public Engine {
public:
    void insert(const Operation& op) override;
    void insert_batch(const std::vector<Operation>& ops) override;

    const OpSet& opset() const override { return ops_; }
    const ValidityMap& validity() const override { return result_.valid; }
    const Counters& counters() const override { return counters_; }
    Variant variant() const override { return Variant::naive; }

    const TreeState& tree() const { return result_.tree; }

private:
    void recompute();

    OpSet ops_;
    NaiveResult result_;
    Counters counters_;
};

}  // namespace movecrdt
