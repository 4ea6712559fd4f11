#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "movecrdt/ids.hpp"

namespace movecrdt {

enum class OpType : std::uint8_t { make, put, del, move };

std::string to_string(OpType type);

/// Key of a map entry.
struct MapKey {
    std::string name;
    friend auto operator<=>(const MapKey&, const MapKey&) = default;
};

/// Reference to the list element after which an insertion lands, or which an
/// overwrite targets. Names the operation that created the element.
struct ElemRef {
    OpId elem;
    friend auto operator<=>(const ElemRef&, const ElemRef&) = default;
};

/// The list head anchor: "insert at the front".
struct HeadRef {
    friend auto operator<=>(const HeadRef&, const HeadRef&) = default;
};

using KeyRef = std::variant<MapKey, ElemRef, HeadRef>;

/// Payload of make/put/move operations.
struct Value {
    enum class Kind : std::uint8_t { scalar, map, list };

    Kind kind = Kind::scalar;
    std::string scalar;  // meaningful only when kind == scalar

    static Value str(std::string s) { return Value{Kind::scalar, std::move(s)}; }
    static Value map() { return Value{Kind::map, {}}; }
    static Value list() { return Value{Kind::list, {}}; }

    bool is_scalar() const { return kind == Kind::scalar; }
    bool is_container() const { return kind != Kind::scalar; }

    friend bool operator==(const Value&, const Value&) = default;
};

/// One record of the operation log.
///
/// Deletes carry only id and pred; the affected location is recovered through
/// the predecessors. A move with a scalar value moves that value; a move with
/// no value moves the object named by move_id.
struct Operation {
    OpId id;
    OpType type = OpType::put;
    std::optional<OpId> obj;      // object being modified; absent for delete
    std::optional<KeyRef> key;    // absent for delete
    std::optional<Value> value;
    std::vector<OpId> pred;       // immediate predecessors, ascending
    std::optional<OpId> move_id;  // move only
    bool insert = false;          // list ops: true inserts a fresh element

    bool is_move() const { return type == OpType::move; }
    bool is_scalar_move() const { return type == OpType::move && value.has_value(); }
    bool is_object_move() const { return type == OpType::move && !value.has_value(); }

    friend bool operator==(const Operation&, const Operation&) = default;
};

/// The element a value-placing operation stands for. Moves keep referring to
/// the originally placed element, so move_id is already the root.
inline OpId element_root(const Operation& op) {
    return op.is_move() ? *op.move_id : op.id;
}

/// Throws MalformedRecord if the record breaks a structural invariant.
void validate_operation(const Operation& op);

// Construction helpers used by the replica layer and tests.
namespace ops {

Operation make_map(OpId id, OpId obj, KeyRef key, std::vector<OpId> pred = {});
Operation make_list(OpId id, OpId obj, KeyRef key, std::vector<OpId> pred = {});
Operation put(OpId id, OpId obj, KeyRef key, std::string value, std::vector<OpId> pred = {});
Operation insert_scalar(OpId id, OpId list, KeyRef anchor, std::string value);
Operation insert_map(OpId id, OpId list, KeyRef anchor);
Operation insert_list(OpId id, OpId list, KeyRef anchor);
Operation del(OpId id, std::vector<OpId> pred);
Operation move_object(OpId id, OpId obj, KeyRef key, OpId moved, std::vector<OpId> pred,
                      bool insert = false);
Operation move_scalar(OpId id, OpId obj, KeyRef key, OpId moved, std::string value,
                      std::vector<OpId> pred, bool insert = false);

}  // namespace ops

}  // namespace movecrdt
