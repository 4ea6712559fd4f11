#include "movecrdt/replica.hpp"

#include <algorithm>
#include <map>

namespace movecrdt {

namespace {

/// Buckets every value-placing operation by location, mirroring the
/// materializer's indexing so that pred computation and rendering agree.
struct LocationIndex {
    std::unordered_map<OpId, std::map<std::string, std::vector<const Operation*>>, OpIdHash> maps;
    std::unordered_map<OpId, std::vector<const Operation*>, OpIdHash> elements;
    std::unordered_map<OpId, std::vector<const Operation*>, OpIdHash> elem_writes;

    explicit LocationIndex(const OpSet& s) {
        for (const auto& [id, op] : s) {
            if (op.type == OpType::del) continue;
            if (op.insert) {
                elements[*op.obj].push_back(&op);
            } else if (const auto* mk = std::get_if<MapKey>(&*op.key)) {
                maps[*op.obj][mk->name].push_back(&op);
            } else if (const auto* er = std::get_if<ElemRef>(&*op.key)) {
                elem_writes[er->elem].push_back(&op);
            } else {
                elem_writes[kRootId].push_back(&op);
            }
        }
    }
};

const Operation* last_visible(const DocView& view, const std::vector<const Operation*>& ops) {
    const Operation* best = nullptr;
    for (const Operation* op : ops) {
        if (view.visible(*op)) best = op;
    }
    return best;
}

/// Container id and kind a visible value op stands for, if it is a container.
std::optional<std::pair<OpId, Value::Kind>> container_of(const OpSet& s, const Operation& op) {
    if (op.value && op.value->is_scalar()) return std::nullopt;
    OpId root = element_root(op);
    const Operation* make = s.find(root);
    if (!make || make->type != OpType::make) return std::nullopt;
    return std::make_pair(root, make->value->kind);
}

}  // namespace

Replica::Replica(ActorId actor, Variant variant)
    : actor_(actor), engine_(make_engine(variant)) {}

const DocView& Replica::view() const {
    if (!view_) view_ = std::make_unique<DocView>(opset(), engine_->validity());
    return *view_;
}

OpId Replica::mint() const { return OpId{opset().max_counter() + 1, actor_}; }

void Replica::apply(const Operation& op) {
    engine_->insert(op);
    view_.reset();
}

void Replica::apply_batch(const std::vector<Operation>& ops) {
    engine_->insert_batch(ops);
    view_.reset();
}

Operation Replica::commit(Operation op) {
    validate_operation(op);
    engine_->insert(op);
    view_.reset();
    return op;
}

std::vector<OpId> Replica::visible_at_map(const OpId& obj, const std::string& key) const {
    std::vector<OpId> out;
    for (const auto& [id, op] : opset()) {
        if (op.type == OpType::del || op.insert || !op.obj || *op.obj != obj) continue;
        const auto* mk = std::get_if<MapKey>(&*op.key);
        if (!mk || mk->name != key) continue;
        if (view().visible(op)) out.push_back(id);
    }
    return out;
}

std::vector<OpId> Replica::visible_element_values(const OpId& list, const OpId& elem) const {
    std::vector<OpId> out;
    const Operation* e = opset().find(elem);
    if (!e || !e->insert || *e->obj != list) {
        throw InvalidTarget("not an element of " + to_string(list) + ": " + to_string(elem));
    }
    if (view().visible(*e)) out.push_back(elem);
    for (const auto& [id, op] : opset()) {
        if (op.type == OpType::del || op.insert || !op.key) continue;
        const auto* er = std::get_if<ElemRef>(&*op.key);
        if (!er || er->elem != elem || *op.obj != list) continue;
        if (view().visible(op)) out.push_back(id);
    }
    std::sort(out.begin(), out.end());
    return out;
}

Operation Replica::put_map(const OpId& obj, const std::string& key, const std::string& value) {
    return commit(ops::put(mint(), obj, MapKey{key}, value, visible_at_map(obj, key)));
}

Operation Replica::make_child(const OpId& obj, const std::string& key, Value::Kind kind) {
    auto pred = visible_at_map(obj, key);
    auto factory = kind == Value::Kind::map ? ops::make_map : ops::make_list;
    return commit(factory(mint(), obj, MapKey{key}, std::move(pred)));
}

Operation Replica::insert_scalar(const ListDest& at, const std::string& value) {
    KeyRef anchor = at.after ? KeyRef{ElemRef{*at.after}} : KeyRef{HeadRef{}};
    return commit(ops::insert_scalar(mint(), at.list, anchor, value));
}

Operation Replica::insert_child(const ListDest& at, Value::Kind kind) {
    KeyRef anchor = at.after ? KeyRef{ElemRef{*at.after}} : KeyRef{HeadRef{}};
    auto factory = kind == Value::Kind::map ? ops::insert_map : ops::insert_list;
    return commit(factory(mint(), at.list, anchor));
}

Operation Replica::overwrite_element(const OpId& list, const OpId& elem, const std::string& value) {
    auto pred = visible_element_values(list, elem);
    if (pred.empty()) throw InvalidTarget("element has no visible value: " + to_string(elem));
    return commit(ops::put(mint(), list, ElemRef{elem}, value, std::move(pred)));
}

Operation Replica::erase_map(const OpId& obj, const std::string& key) {
    auto pred = visible_at_map(obj, key);
    if (pred.empty()) throw InvalidTarget("nothing visible at key '" + key + "'");
    return commit(ops::del(mint(), std::move(pred)));
}

Operation Replica::erase_element(const OpId& list, const OpId& elem) {
    auto pred = visible_element_values(list, elem);
    if (pred.empty()) throw InvalidTarget("element has no visible value: " + to_string(elem));
    return commit(ops::del(mint(), std::move(pred)));
}

Operation Replica::move_value(const Dest& dest, const OpId& value_op) {
    const Operation* w = opset().find(value_op);
    if (!w || w->type == OpType::del || !view().visible(*w)) {
        throw InvalidTarget("moved value is not visible: " + to_string(value_op));
    }
    const OpId root = element_root(*w);
    std::vector<OpId> pred{value_op};

    OpId obj;
    KeyRef key;
    bool insert = false;
    if (const auto* md = std::get_if<MapDest>(&dest)) {
        obj = md->obj;
        key = MapKey{md->key};
        for (const OpId& p : visible_at_map(md->obj, md->key)) pred.push_back(p);
    } else {
        const auto& ld = std::get<ListDest>(dest);
        obj = ld.list;
        key = ld.after ? KeyRef{ElemRef{*ld.after}} : KeyRef{HeadRef{}};
        insert = true;
    }
    std::sort(pred.begin(), pred.end());
    pred.erase(std::unique(pred.begin(), pred.end()), pred.end());

    if (w->value && w->value->is_scalar()) {
        return commit(ops::move_scalar(mint(), obj, key, root, w->value->scalar, std::move(pred),
                                       insert));
    }
    return commit(ops::move_object(mint(), obj, key, root, std::move(pred), insert));
}

Replica::Snapshot Replica::snapshot() const {
    Snapshot snap;
    LocationIndex index(opset());
    const DocView& v = view();
    std::vector<OpId> seen;

    auto visit = [&](auto&& self, const OpId& id, Value::Kind kind, const OpId& parent) -> void {
        if (std::find(seen.begin(), seen.end(), id) != seen.end()) return;
        seen.push_back(id);
        if (!id.is_root()) snap.parent[id] = parent;

        if (kind == Value::Kind::map) {
            snap.maps.push_back(id);
            if (auto it = index.maps.find(id); it != index.maps.end()) {
                for (const auto& [key, ops] : it->second) {
                    const Operation* w = last_visible(v, ops);
                    if (!w) continue;
                    auto child = container_of(opset(), *w);
                    snap.map_entries.push_back(
                        {id, key, w->id, element_root(*w), child.has_value()});
                    if (child) self(self, child->first, child->second, id);
                }
            }
            return;
        }

        snap.lists.push_back(id);
        auto& anchors = snap.anchors[id];
        if (auto it = index.elements.find(id); it != index.elements.end()) {
            for (const Operation* e : it->second) {
                anchors.push_back(e->id);
                std::vector<const Operation*> values{e};
                if (auto wt = index.elem_writes.find(e->id); wt != index.elem_writes.end()) {
                    values.insert(values.end(), wt->second.begin(), wt->second.end());
                }
                const Operation* w = last_visible(v, values);
                if (!w) continue;
                auto child = container_of(opset(), *w);
                snap.list_entries.push_back(
                    {id, e->id, w->id, element_root(*w), child.has_value()});
                if (child) self(self, child->first, child->second, id);
            }
        }
    };
    visit(visit, kRootId, Value::Kind::map, kRootId);
    return snap;
}

void Replica::sync(Replica& a, Replica& b) {
    std::vector<Operation> to_b;
    std::vector<Operation> to_a;
    auto ia = a.opset().begin();
    auto ib = b.opset().begin();
    while (ia != a.opset().end() || ib != b.opset().end()) {
        if (ib == b.opset().end() || (ia != a.opset().end() && ia->first < ib->first)) {
            to_b.push_back(ia->second);
            ++ia;
        } else if (ia == a.opset().end() || ib->first < ia->first) {
            to_a.push_back(ib->second);
            ++ib;
        } else {
            ++ia;
            ++ib;
        }
    }
    if (!to_b.empty()) b.apply_batch(to_b);
    if (!to_a.empty()) a.apply_batch(to_a);
}

}  // namespace movecrdt
