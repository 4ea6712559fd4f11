#include "movecrdt/op.hpp"

#include <algorithm>

#include "movecrdt/errors.hpp"

namespace movecrdt {

std::string to_string(OpType type) {
    switch (type) {
        case OpType::make: return "make";
        case OpType::put:  return "put";
        case OpType::del:  return "del";
        case OpType::move: return "move";
    }
    return "unknown";
}

void validate_operation(const Operation& op) {
    auto fail = [&](const char* what) { throw MalformedRecord(std::string(what) + " in op " + to_string(op.id)); };

    if (!std::is_sorted(op.pred.begin(), op.pred.end()) ||
        std::adjacent_find(op.pred.begin(), op.pred.end()) != op.pred.end()) {
        fail("predecessors not strictly ascending");
    }

    switch (op.type) {
        case OpType::make:
            if (!op.value || !op.value->is_container()) fail("make requires a map/list value");
            if (!op.obj || !op.key) fail("make requires obj and key");
            if (op.move_id) fail("move_id on non-move");
            break;
        case OpType::put:
            if (!op.value || !op.value->is_scalar()) fail("put requires a scalar value");
            if (!op.obj || !op.key) fail("put requires obj and key");
            if (op.move_id) fail("move_id on non-move");
            break;
        case OpType::del:
            if (op.value || op.obj || op.key) fail("delete carries only id and pred");
            if (op.pred.empty()) fail("delete requires predecessors");
            if (op.move_id) fail("move_id on non-move");
            if (op.insert) fail("delete cannot insert");
            break;
        case OpType::move:
            if (!op.move_id) fail("move requires move_id");
            if (!op.obj || !op.key) fail("move requires obj and key");
            if (op.value && !op.value->is_scalar()) fail("move value must be scalar");
            break;
    }

    // Fresh list elements have no predecessors; moves are the exception, they
    // always supersede the operation that placed the moved value.
    if (op.insert && op.type != OpType::move && !op.pred.empty()) {
        fail("insert with predecessors");
    }
    if (op.insert && op.key && std::holds_alternative<MapKey>(*op.key)) {
        fail("insert with a map key");
    }
}

namespace ops {

Operation make_map(OpId id, OpId obj, KeyRef key, std::vector<OpId> pred) {
    Operation op;
    op.id = id;
    op.type = OpType::make;
    op.obj = obj;
    op.key = std::move(key);
    op.value = Value::map();
    op.pred = std::move(pred);
    return op;
}

Operation make_list(OpId id, OpId obj, KeyRef key, std::vector<OpId> pred) {
    Operation op = make_map(id, obj, std::move(key), std::move(pred));
    op.value = Value::list();
    return op;
}

Operation put(OpId id, OpId obj, KeyRef key, std::string value, std::vector<OpId> pred) {
    Operation op;
    op.id = id;
    op.type = OpType::put;
    op.obj = obj;
    op.key = std::move(key);
    op.value = Value::str(std::move(value));
    op.pred = std::move(pred);
    return op;
}

Operation insert_scalar(OpId id, OpId list, KeyRef anchor, std::string value) {
    Operation op = put(id, list, std::move(anchor), std::move(value));
    op.insert = true;
    return op;
}

Operation insert_map(OpId id, OpId list, KeyRef anchor) {
    Operation op = make_map(id, list, std::move(anchor));
    op.insert = true;
    return op;
}

Operation insert_list(OpId id, OpId list, KeyRef anchor) {
    Operation op = make_list(id, list, std::move(anchor));
    op.insert = true;
    return op;
}

Operation del(OpId id, std::vector<OpId> pred) {
    Operation op;
    op.id = id;
    op.type = OpType::del;
    op.pred = std::move(pred);
    return op;
}

Operation move_object(OpId id, OpId obj, KeyRef key, OpId moved, std::vector<OpId> pred,
                      bool insert) {
    Operation op;
    op.id = id;
    op.type = OpType::move;
    op.obj = obj;
    op.key = std::move(key);
    op.move_id = moved;
    op.pred = std::move(pred);
    op.insert = insert;
    return op;
}

Operation move_scalar(OpId id, OpId obj, KeyRef key, OpId moved, std::string value,
                      std::vector<OpId> pred, bool insert) {
    Operation op = move_object(id, obj, std::move(key), moved, std::move(pred), insert);
    op.value = Value::str(std::move(value));
    return op;
}

}  // namespace ops

}  // namespace movecrdt
