#include "movecrdt/opset.hpp"

#include <algorithm>

namespace movecrdt {

namespace {

template <typename Fn>
void for_each_reference(const Operation& op, Fn&& fn) {
    if (op.obj) fn(*op.obj);
    for (const OpId& p : op.pred) fn(p);
    if (op.key) {
        if (const auto* elem = std::get_if<ElemRef>(&*op.key)) fn(elem->elem);
    }
    if (op.move_id) fn(*op.move_id);
}

}  // namespace

bool OpSet::causally_closed(const Operation& op) const {
    bool ok = true;
    for_each_reference(op, [&](const OpId& ref) {
        if (!ref.is_root() && ref != op.id && !contains(ref)) ok = false;
    });
    return ok;
}

OpSet::const_iterator OpSet::insert(const Operation& op) {
    auto it = ops_.find(op.id);
    if (it != ops_.end()) {
        if (it->second != op) {
            throw ConflictingDuplicate("conflicting payloads for op " + to_string(op.id));
        }
        return it;
    }
    if (!causally_closed(op)) {
        throw MissingDependency("op " + to_string(op.id) + " references an absent operation");
    }
    return ops_.emplace(op.id, op).first;
}

std::size_t OpSet::insert_indexed(const Operation& op) {
    auto it = insert(op);
    return static_cast<std::size_t>(std::distance(ops_.cbegin(), it));
}

const Operation* OpSet::find(const OpId& id) const {
    auto it = ops_.find(id);
    return it == ops_.end() ? nullptr : &it->second;
}

std::size_t OpSet::index_of(const OpId& id) const {
    auto it = ops_.find(id);
    if (it == ops_.end()) throw MissingDependency("op " + to_string(id) + " not in set");
    return static_cast<std::size_t>(std::distance(ops_.cbegin(), it));
}

std::uint64_t OpSet::max_counter() const {
    return ops_.empty() ? 0 : ops_.rbegin()->first.counter;
}

std::vector<Operation> OpSet::sorted_ops() const {
    std::vector<Operation> out;
    out.reserve(ops_.size());
    for (const auto& [id, op] : ops_) out.push_back(op);
    return out;
}

void OpSet::merge_from(const OpSet& other) {
    for (const auto& [id, op] : other.ops_) {
        auto it = ops_.find(id);
        if (it != ops_.end()) {
            if (it->second != op) {
                throw ConflictingDuplicate("conflicting payloads for op " + to_string(id));
            }
            continue;
        }
        ops_.emplace(id, op);
    }
}

OpSet OpSet::merged(const OpSet& a, const OpSet& b) {
    OpSet out = a;
    out.merge_from(b);
    return out;
}

}  // namespace movecrdt
