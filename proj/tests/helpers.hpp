#pragma once

#include <algorithm>
#include <random>
#include <string>
#include <vector>

#include "movecrdt/codec.hpp"
#include "movecrdt/fuzz.hpp"
#include "movecrdt/lifecycle_engine.hpp"
#include "movecrdt/naive_engine.hpp"
#include "movecrdt/rar_engine.hpp"
#include "movecrdt/replica.hpp"

namespace movecrdt::testing {

// The running example document:
//   {"A":"a","B":["b2","b3"],"C":{"D":"d"}}  (b1 inserted then deleted)
inline std::vector<Operation> example_doc_ops() {
    return {
        ops::put(OpId{1, 0}, kRootId, MapKey{"A"}, "a"),
        ops::make_list(OpId{2, 0}, kRootId, MapKey{"B"}),
        ops::insert_scalar(OpId{3, 0}, OpId{2, 0}, HeadRef{}, "b1"),
        ops::insert_scalar(OpId{4, 0}, OpId{2, 0}, ElemRef{OpId{3, 0}}, "b2"),
        ops::insert_scalar(OpId{5, 0}, OpId{2, 0}, ElemRef{OpId{4, 0}}, "b3"),
        ops::make_map(OpId{6, 0}, kRootId, MapKey{"C"}),
        ops::put(OpId{7, 0}, OpId{6, 0}, MapKey{"D"}, "d"),
        ops::del(OpId{8, 0}, {OpId{3, 0}}),
    };
}

// Cross-move scenario: A and B are siblings under root; actor 1 moves B
// under A while actor 2 concurrently moves A under B. The lower-ID move
// must win on every replica: {"a":{"b":{}}}.
inline std::vector<Operation> cross_move_base() {
    return {
        ops::make_map(OpId{1, 0}, kRootId, MapKey{"a"}),
        ops::make_map(OpId{2, 0}, kRootId, MapKey{"b"}),
    };
}

inline Operation cross_move_m1() {  // B under A, minted by actor 1
    return ops::move_object(OpId{3, 1}, OpId{1, 0}, MapKey{"b"}, OpId{2, 0}, {OpId{2, 0}});
}

inline Operation cross_move_m2() {  // A under B, minted by actor 2
    return ops::move_object(OpId{3, 2}, OpId{2, 0}, MapKey{"a"}, OpId{1, 0}, {OpId{1, 0}});
}

inline OpSet to_set(const std::vector<Operation>& ops) {
    std::vector<Operation> sorted = ops;
    std::sort(sorted.begin(), sorted.end(),
              [](const Operation& a, const Operation& b) { return a.id < b.id; });
    OpSet s;
    for (const Operation& op : sorted) s.insert(op);
    return s;
}

inline std::string digest(const OpSet& s, const ValidityMap& valid) {
    return canonical_json(materialize(s, valid));
}

inline std::string oracle_digest(const std::vector<Operation>& ops) {
    std::vector<Operation> sorted = ops;
    std::sort(sorted.begin(), sorted.end(),
              [](const Operation& a, const Operation& b) { return a.id < b.id; });
    return digest(to_set(sorted), update_validity_naive(sorted).valid);
}

/// Random causally closed, ascending op log produced by the replica harness
/// (multiple actors, partial syncs, moves with cycle bias, overwrites).
inline std::vector<Operation> random_log(std::uint64_t seed, std::size_t total_ops,
                                         std::size_t replicas = 3) {
    FuzzConfig cfg;
    cfg.replicas = replicas;
    cfg.total_ops = total_ops;
    cfg.seed = seed;
    cfg.variant = Variant::naive;
    cfg.op_mix.move_object = 3;
    cfg.op_mix.move_scalar = 2;
    return fuzz_run(cfg).union_ops;
}

/// Random insertion order consistent with causal closure: repeatedly pick an
/// op all of whose references are already delivered.
inline std::vector<Operation> admissible_permutation(const std::vector<Operation>& ops,
                                                     std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    OpSet delivered;
    std::vector<Operation> pending = ops;
    std::vector<Operation> order;
    while (!pending.empty()) {
        std::size_t start = rng() % pending.size();
        for (std::size_t k = 0; k < pending.size(); ++k) {
            std::size_t i = (start + k) % pending.size();
            if (delivered.causally_closed(pending[i])) {
                delivered.insert(pending[i]);
                order.push_back(pending[i]);
                pending.erase(pending.begin() + static_cast<std::ptrdiff_t>(i));
                break;
            }
        }
    }
    return order;
}

/// Walks every parent chain; true iff no chain revisits a node.
inline bool acyclic(const TreeState& tree) {
    for (const auto& [start, parent] : tree.parent) {
        OpId node = start;
        std::size_t hops = 0;
        while (true) {
            if (node.is_root()) break;
            auto it = tree.parent.find(node);
            if (it == tree.parent.end() || !it->second) break;
            node = *it->second;
            if (++hops > tree.parent.size()) return false;
        }
    }
    return true;
}

/// True iff no container object is placed (visibly) at two positions: for
/// every object, at most one visible operation renders it.
inline bool unique_object_placement(const OpSet& s, const ValidityMap& valid) {
    DocView view(s, valid);
    std::unordered_map<OpId, int, OpIdHash> placements;
    for (const auto& [id, op] : s) {
        if (op.type == OpType::del || (op.value && op.value->is_scalar())) continue;
        if (!view.visible(op)) continue;
        if (++placements[element_root(op)] > 1) return false;
    }
    return true;
}

}  // namespace movecrdt::testing
