#include "movecrdt/naive_engine.hpp"

namespace movecrdt {

bool is_ancestor(const TreeState& tree, OpId node, const OpId& ancestor) {
    while (true) {
        if (node == ancestor) return true;
        if (node.is_root()) return false;
        auto it = tree.parent.find(node);
        if (it == tree.parent.end() || !it->second) return false;  // trashed or unknown
        node = *it->second;
    }
}

NaiveResult update_validity_naive(const std::vector<Operation>& ops) {
    NaiveResult r;
    std::unordered_map<OpId, OpId, OpIdHash> winners;        // element -> current winner
    std::unordered_map<OpId, const Operation*, OpIdHash> by_id;

    for (const Operation& op : ops) {
        by_id.emplace(op.id, &op);

        // Cycle check first: an invalid move is invisible, so it supersedes
        // nothing and must leave the tree alone. The check itself is not
        // affected by this op's own pred trashing (preds sit below the
        // destination, never on its ancestor chain).
        bool op_is_valid_move = false;
        if (op.is_object_move()) {
            if (is_ancestor(r.tree, *op.obj, *op.move_id)) {
                r.valid[op.id] = false;
                continue;
            }
            op_is_valid_move = true;
        } else if (op.is_scalar_move()) {
            op_is_valid_move = true;  // a scalar value cannot form a cycle
        }

        // Deleted and overwritten objects go to the trash. A move's own
        // element is exempt: it is being re-placed, not removed (an object
        // move re-parents it below; a scalar element has no tree entry).
        for (const OpId& p : op.pred) {
            const Operation* po = by_id.at(p);
            OpId target;
            if (po->is_move() && move_valid(r.valid, p)) {
                target = *po->move_id;
            } else if (po->type == OpType::make) {
                target = po->id;
            } else {
                continue;
            }
            if (op.move_id && target == *op.move_id) continue;
            r.tree.parent[target] = std::nullopt;
        }

        if (op.type == OpType::make) {
            r.tree.parent[op.id] = *op.obj;
        } else if (op_is_valid_move) {
            r.valid[op.id] = true;
            if (op.is_object_move()) r.tree.parent[*op.move_id] = *op.obj;
            auto [it, fresh] = winners.try_emplace(*op.move_id, op.id);
            if (!fresh) {
                r.valid[it->second] = false;
                it->second = op.id;
            }
        }
    }
    return r;
}

void NaiveEngine::insert(const Operation& op) {
    std::size_t before = ops_.size();
    ops_.insert(op);
    if (ops_.size() != before) recompute();
}

void NaiveEngine::insert_batch(const std::vector<Operation>& ops) {
    std::size_t before = ops_.size();
    for (const Operation& op : ops) ops_.insert(op);
    if (ops_.size() != before) recompute();
}

void NaiveEngine::recompute() {
    result_ = update_validity_naive(ops_.sorted_ops());
    counters_.reapply_steps += ops_.size();
}

}  // namespace movecrdt
