#include "movecrdt/rar_engine.hpp"

#include <algorithm>
#include <cassert>
#include <iterator>

namespace movecrdt {

void RarEngine::insert(const Operation& op) {
    std::size_t before = ops_.size();
    ops_.insert(op);
    if (ops_.size() == before) return;  // identical duplicate
    restore_above(op.id);
    apply_from(op.id);
}

void RarEngine::insert_batch(const std::vector<Operation>& ops) {
    if (!batched_) {
        Engine::insert_batch(ops);
        return;
    }
    std::vector<Operation> fresh;
    for (const Operation& op : ops) {
        if (const Operation* existing = ops_.find(op.id)) {
            if (*existing != op) {
                throw ConflictingDuplicate("conflicting payloads for op " + to_string(op.id));
            }
            continue;
        }
        fresh.push_back(op);
    }
    if (fresh.empty()) return;
    std::sort(fresh.begin(), fresh.end(),
              [](const Operation& a, const Operation& b) { return a.id < b.id; });

    // One restore down to the smallest incoming ID, then one reapply pass
    // over the merged suffix.
    restore_above(fresh.front().id);
    for (const Operation& op : fresh) ops_.insert(op);
    apply_from(fresh.front().id);
}

void RarEngine::restore_above(const OpId& id) {
    auto stop = ops_.upper_bound(id);
    for (auto it = ops_.end(); it != stop;) {
        --it;
        restore_one(it->second);
    }
}

void RarEngine::apply_from(const OpId& id) {
    for (auto it = ops_.lower_bound(id); it != ops_.end(); ++it) apply_one(it->second);
}

void RarEngine::restore_suffix(std::size_t index) {
    assert(index < ops_.size());
    auto it = std::next(ops_.begin(), static_cast<std::ptrdiff_t>(index));
    restore_above(it->first);
}

void RarEngine::apply_forward(std::size_t index) {
    assert(index <= ops_.size());
    auto it = std::next(ops_.begin(), static_cast<std::ptrdiff_t>(index));
    if (it != ops_.end()) apply_from(it->first);
}

void RarEngine::restore_one(const Operation& op) {
    counters_.restore_steps++;

    // Reverse-apply this operation's tree writes.
    if (auto lt = logs_.find(op.id); lt != logs_.end()) {
        for (auto rit = lt->second.rbegin(); rit != lt->second.rend(); ++rit) {
            if (rit->second) {
                tree_.parent[rit->first] = *rit->second;
            } else {
                tree_.parent.erase(rit->first);
            }
        }
        lt->second.clear();
    }

    // A restored move that was pushed must be the current top of its stack;
    // popping it re-validates the previous winner underneath.
    if (op.is_move() && move_valid(valid_, op.id)) {
        auto& stack = stacks_[*op.move_id];
        assert(!stack.empty() && stack.back() == op.id);
        stack.pop_back();
        if (!stack.empty()) valid_[stack.back()] = true;
    }
}

void RarEngine::apply_one(const Operation& op) {
    counters_.reapply_steps++;

    RestoreLog& log = logs_[op.id];
    log.clear();  // rebuilt from scratch on every reapply

    auto write = [&](const OpId& key, std::optional<OpId> parent) {
        auto it = tree_.parent.find(key);
        bool already_logged = std::any_of(log.begin(), log.end(),
                                          [&](const auto& e) { return e.first == key; });
        if (!already_logged) {
            if (it == tree_.parent.end()) {
                log.emplace_back(key, std::nullopt);
            } else {
                log.emplace_back(key, std::optional<std::optional<OpId>>(it->second));
            }
        }
        tree_.parent[key] = parent;
    };

    bool op_is_valid_move = false;
    if (op.type == OpType::make) {
        write(op.id, *op.obj);
    } else if (op.is_move()) {
        const OpId mid = *op.move_id;
        if (op.is_object_move()) {
            if (is_ancestor(tree_, *op.obj, mid)) {
                valid_[op.id] = false;
                return;  // invisible: no re-parent, no pred trashing
            }
            write(mid, *op.obj);
        }
        op_is_valid_move = true;
        valid_[op.id] = true;
        auto& stack = stacks_[mid];
        if (!stack.empty()) valid_[stack.back()] = false;  // before the pred loop
        assert(stack.empty() || stack.back() < op.id);
        stack.push_back(op.id);
    }

    // Deleted, overwritten and superseded objects go to the trash. The
    // previous winner of this move's element was invalidated above, so its
    // pred entry no longer matches; a make pred equal to the moved element
    // must be skipped explicitly or it would clobber the fresh re-parenting.
    for (const OpId& p : op.pred) {
        const Operation* po = ops_.find(p);
        OpId target;
        if (po->is_move() && move_valid(valid_, p)) {
            target = *po->move_id;
        } else if (po->type == OpType::make) {
            target = po->id;
        } else {
            continue;
        }
        if (op_is_valid_move && target == *op.move_id) continue;
        write(target, std::nullopt);
    }
}

}  // namespace movecrdt
