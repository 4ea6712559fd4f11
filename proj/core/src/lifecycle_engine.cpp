#include "movecrdt/lifecycle_engine.hpp"

#include <algorithm>
#include <cassert>

namespace movecrdt {

const LifecycleList* LifecycleEngine::timeline(const OpId& object) const {
    auto it = timelines_.find(object);
    return it == timelines_.end() ? nullptr : &it->second;
}

void LifecycleEngine::record_lifecycle(const Operation& op) {
    auto add = [&](const OpId& object, LifecycleEvent ev) {
        auto& list = timelines_[object];
        auto pos = std::lower_bound(list.begin(), list.end(), ev.at,
                                    [](const LifecycleEvent& e, const OpId& id) { return e.at < id; });
        if (pos != list.end() && pos->at == ev.at) return;  // idempotent per op
        list.insert(pos, std::move(ev));
        counters_.timeline_touches++;
    };

    if (op.type == OpType::make || op.type == OpType::put || op.is_move()) {
        LifecycleEvent ev;
        ev.at = op.id;
        ev.present = true;
        ev.parent = *op.obj;
        ev.src_is_move = op.is_move();
        if (op.is_move()) ev.src_elem = *op.move_id;
        add(element_root(op), std::move(ev));
    }

    for (const OpId& p : op.pred) {
        const Operation* po = ops_.find(p);
        const OpId target = element_root(*po);
        // A move supersedes the prior placement of its own element by
        // re-parenting it, not by trashing it.
        if (op.is_move() && target == *op.move_id) continue;
        LifecycleEvent ev;
        ev.at = op.id;
        ev.present = false;
        ev.src_is_move = op.is_move();
        if (op.is_move()) ev.src_elem = *op.move_id;
        ev.pred_is_move = po->is_move();
        ev.pred_id = p;
        add(target, std::move(ev));
    }
}

bool LifecycleEngine::event_effective(const LifecycleEvent& ev) const {
    // A move only took effect if it sits on its element's stack, i.e. it was
    // not cycle-invalid when applied against the operations below it.
    auto pushed = [&](const OpId& elem, const OpId& move) {
        auto it = stacks_.find(elem);
        if (it == stacks_.end()) return false;
        return std::binary_search(it->second.begin(), it->second.end(), move);
    };
    if (ev.src_is_move && !pushed(ev.src_elem, ev.at)) return false;
    if (!ev.present && ev.pred_is_move) {
        // Trashing through a move predecessor only happened if that move was
        // still the winner of its element when this operation applied.
        const Operation* pred = ops_.find(ev.pred_id);
        auto it = stacks_.find(*pred->move_id);
        if (it == stacks_.end()) return false;
        const auto& stack = it->second;
        auto pos = std::lower_bound(stack.begin(), stack.end(), ev.at);
        if (pos == stack.begin()) return false;
        return *std::prev(pos) == ev.pred_id;
    }
    return true;
}

std::optional<OpId> LifecycleEngine::parent_at(const OpId& object, const OpId& t) const {
    auto it = timelines_.find(object);
    if (it == timelines_.end()) throw UnknownObject("no timeline for " + to_string(object));
    const LifecycleList& list = it->second;
    auto pos = std::lower_bound(list.begin(), list.end(), t,
                                [](const LifecycleEvent& e, const OpId& id) { return e.at < id; });
    while (pos != list.begin()) {
        --pos;
        if (!event_effective(*pos)) continue;
        if (pos->present) return pos->parent;
        return std::nullopt;
    }
    return std::nullopt;
}

std::optional<OpId> LifecycleEngine::parent_now(const OpId& object) const {
    return parent_at(object, kEndOfTime);
}

bool LifecycleEngine::is_ancestor_at(OpId node, const OpId& ancestor, const OpId& t) const {
    while (true) {
        if (node == ancestor) return true;
        if (node.is_root()) return false;
        auto it = timelines_.find(node);
        if (it == timelines_.end()) return false;
        auto parent = parent_at(node, t);
        if (!parent) return false;
        node = *parent;
    }
}

void LifecycleEngine::apply_move(const Operation& op) {
    counters_.reapply_steps++;
    const OpId mid = *op.move_id;
    if (op.is_object_move() && is_ancestor_at(*op.obj, mid, op.id)) {
        valid_[op.id] = false;
        return;
    }
    valid_[op.id] = true;
    auto& stack = stacks_[mid];
    if (!stack.empty()) valid_[stack.back()] = false;
    assert(stack.empty() || stack.back() < op.id);
    stack.push_back(op.id);
}

void LifecycleEngine::insert(const Operation& op) {
    std::size_t before = ops_.size();
    ops_.insert(op);
    if (ops_.size() == before) return;
    record_lifecycle(op);

    bool later_moves = !move_ids_.empty() && *move_ids_.rbegin() > op.id;
    if (!op.is_move() && !later_moves) return;  // newest non-move: no RAR at all

    // Restore: pop every move above the newcomer, re-validating the winners
    // they had shadowed. Their tree effects are reconstructed from the
    // timelines on demand, so only the stacks need rewinding.
    for (auto it = move_ids_.rbegin(); it != move_ids_.rend() && *it > op.id; ++it) {
        counters_.restore_steps++;
        if (!move_valid(valid_, *it)) continue;  // cycle-invalid: never pushed
        const Operation* mo = ops_.find(*it);
        auto& stack = stacks_[*mo->move_id];
        assert(!stack.empty() && stack.back() == *it);
        stack.pop_back();
        if (!stack.empty()) valid_[stack.back()] = true;
    }

    if (op.is_move()) move_ids_.insert(op.id);

    // Apply and reapply move operations only, ascending.
    for (auto it = move_ids_.lower_bound(op.id); it != move_ids_.end(); ++it) {
        apply_move(*ops_.find(*it));
    }
}

}  // namespace movecrdt
