#pragma once

#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <variant>
#include <vector>

#include "movecrdt/engine.hpp"

namespace movecrdt {

/// Target of a local edit that places a value into a map entry.
struct MapDest {
    OpId obj;
    std::string key;
};

/// Target of a local edit that inserts a fresh list element. after names the
/// element-creating operation to anchor behind; nullopt inserts at the head.
struct ListDest {
    OpId list;
    std::optional<OpId> after;
};

using Dest = std::variant<MapDest, ListDest>;

/// One peer: an actor identity plus a validity engine over its own OpSet.
/// Local edits mint causally closed operations whose predecessors are the
/// currently visible operations at the target location.
class Replica {
public:
    Replica(ActorId actor, Variant variant);

    ActorId actor() const { return actor_; }
    Engine& engine() { return *engine_; }
    const Engine& engine() const { return *engine_; }
    const OpSet& opset() const { return engine_->opset(); }
    JsonDoc doc() const { return engine_->doc(); }
    std::string digest() const { return canonical_json(doc()); }

    /// Visibility queries against the current (OpSet, ValidityMap).
    const DocView& view() const;

    /// Fresh OpId: counter greater than any counter seen, this actor.
    OpId mint() const;

    // --- Remote ingestion -------------------------------------------------
    void apply(const Operation& op);
    void apply_batch(const std::vector<Operation>& ops);

    // --- Local edits (each returns the minted, already-applied op) --------
    Operation put_map(const OpId& obj, const std::string& key, const std::string& value);
    Operation make_child(const OpId& obj, const std::string& key, Value::Kind kind);
    Operation insert_scalar(const ListDest& at, const std::string& value);
    Operation insert_child(const ListDest& at, Value::Kind kind);
    Operation overwrite_element(const OpId& list, const OpId& elem, const std::string& value);
    Operation erase_map(const OpId& obj, const std::string& key);
    Operation erase_element(const OpId& list, const OpId& elem);

    /// Moves the value placed by the visible operation value_op to dest.
    /// Containers travel by reference (object move); scalars by copy.
    Operation move_value(const Dest& dest, const OpId& value_op);

    // --- World snapshot for random edit generation ------------------------
    struct MapEntry {
        OpId obj;
        std::string key;
        OpId value_op;    // default winner at this entry
        OpId value_root;  // element_root of that winner
        bool is_container = false;
    };
    struct ListEntry {
        OpId list;
        OpId elem;        // element-creating op (ElemRef / erase target)
        OpId value_op;    // default winner among the element's value ops
        OpId value_root;
        bool is_container = false;
    };
    struct Snapshot {
        std::vector<OpId> maps;   // visible map containers, root included
        std::vector<OpId> lists;  // visible list containers
        std::vector<MapEntry> map_entries;
        std::vector<ListEntry> list_entries;
        // list -> element-creating op ids usable as anchors (tombstones too)
        std::unordered_map<OpId, std::vector<OpId>, OpIdHash> anchors;
        // container -> containing container (for cycle-biased move picking)
        std::unordered_map<OpId, OpId, OpIdHash> parent;
    };
    Snapshot snapshot() const;

    /// Exchanges the operations each side lacks; afterwards both replicas
    /// hold the union OpSet. Deltas travel as ascending (causally closed)
    /// batches of immutable operations.
    static void sync(Replica& a, Replica& b);

private:
    std::vector<OpId> visible_at_map(const OpId& obj, const std::string& key) const;
    std::vector<OpId> visible_element_values(const OpId& list, const OpId& elem) const;
    Operation commit(Operation op);

    ActorId actor_;
    std::unique_ptr<Engine> engine_;
    mutable std::unique_ptr<DocView> view_;  // cache, dropped on mutation
};

}  // namespace movecrdt
