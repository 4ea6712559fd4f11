#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "movecrdt/errors.hpp"
#include "movecrdt/op.hpp"

namespace movecrdt {

/// Append-only, ID-sorted operation log. Merge is set union.
///
/// Backed by an ordered map so that mid-log insertion stays logarithmic;
/// positional indexes are computed on demand for callers that need them.
class OpSet {
public:
    using Storage = std::map<OpId, Operation>;
    using const_iterator = Storage::const_iterator;
    using const_reverse_iterator = Storage::const_reverse_iterator;

    /// Inserts op, keeping the set sorted and duplicate free.
    /// Identical duplicates are a no-op. Throws MissingDependency if a
    /// referenced OpId is unresolvable, ConflictingDuplicate if op.id is
    /// already present with a different payload.
    const_iterator insert(const Operation& op);

    /// As insert, but returns the sorted position of the operation.
    std::size_t insert_indexed(const Operation& op);

    /// True iff every OpId referenced by op (obj, pred, ElemRef key, move_id)
    /// is the root or resolvable in this set (or is op itself).
    bool causally_closed(const Operation& op) const;

    bool contains(const OpId& id) const { return ops_.count(id) != 0; }
    const Operation* find(const OpId& id) const;
    std::size_t index_of(const OpId& id) const;

    std::size_t size() const { return ops_.size(); }
    bool empty() const { return ops_.empty(); }

    const_iterator begin() const { return ops_.begin(); }
    const_iterator end() const { return ops_.end(); }
    const_reverse_iterator rbegin() const { return ops_.rbegin(); }
    const_reverse_iterator rend() const { return ops_.rend(); }
    const_iterator lower_bound(const OpId& id) const { return ops_.lower_bound(id); }
    const_iterator upper_bound(const OpId& id) const { return ops_.upper_bound(id); }

    /// Largest Lamport counter present, 0 when empty.
    std::uint64_t max_counter() const;

    /// Ascending copy of all operations.
    std::vector<Operation> sorted_ops() const;

    void merge_from(const OpSet& other);
    static OpSet merged(const OpSet& a, const OpSet& b);

    friend bool operator==(const OpSet&, const OpSet&) = default;

private:
    Storage ops_;
};

/// Pure form of the closure predicate from the insert contract.
inline bool causal_closure_check(const OpSet& s, const Operation& op) {
    return s.causally_closed(op);
}

}  // namespace movecrdt
