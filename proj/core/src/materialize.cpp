#include "movecrdt/materialize.hpp"

#include <algorithm>
#include <map>

#include "movecrdt/errors.hpp"

namespace movecrdt {

bool move_valid(const ValidityMap& valid, const OpId& id) {
    auto it = valid.find(id);
    return it == valid.end() ? true : it->second;
}

const std::vector<OpId>* VisibilityIndex::successors_of(const OpId& id) const {
    auto it = successors.find(id);
    return it == successors.end() ? nullptr : &it->second;
}

VisibilityIndex build_visibility(const OpSet& s) {
    VisibilityIndex index;
    for (const auto& [id, op] : s) {
        for (const OpId& p : op.pred) index.successors[p].push_back(id);
    }
    return index;
}

DocView::DocView(const OpSet& s, const ValidityMap& valid)
    : set_(&s), valid_(&valid), vis_(build_visibility(s)) {
    for (const auto& [id, op] : s) {
        if (op.is_move() && move_valid(valid, id)) winners_.emplace(*op.move_id, id);
    }
}

const OpId* DocView::winner_of(const OpId& element) const {
    auto it = winners_.find(element);
    return it == winners_.end() ? nullptr : &it->second;
}

bool DocView::visible(const Operation& op) const {
    if (op.type == OpType::del) return false;
    if (op.is_move() && !move_valid(*valid_, op.id)) return false;
    if (const auto* succ = vis_.successors_of(op.id)) {
        for (const OpId& sid : *succ) {
            const Operation* s = set_->find(sid);
            // An invalid move is invisible and does not supersede anything.
            if (s && (s->type != OpType::move || move_valid(*valid_, sid))) return false;
        }
    }
    // A valid move relocates the element; every other placement of the same
    // element is superseded even when no pred edge records it (sequential
    // re-moves leave the original make pointing only at an invalidated move).
    if (op.type != OpType::del) {
        const OpId element = element_root(op);
        if (const OpId* w = winner_of(element); w && *w != op.id) return false;
    }
    return true;
}

bool is_visible(const Operation& op, const DocView& view) { return view.visible(op); }

namespace {

// Head and ElemRef(⟨0,0⟩) name the same anchor.
OpId anchor_of(const Operation& op) {
    if (const auto* er = std::get_if<ElemRef>(&*op.key)) return er->elem;
    return kRootId;
}

struct Index {
    // make id -> container kind
    std::unordered_map<OpId, Value::Kind, OpIdHash> kinds;
    // (map obj) -> key -> value ops ascending
    std::unordered_map<OpId, std::map<std::string, std::vector<const Operation*>>, OpIdHash> maps;
    // (list obj) -> element-creating ops ascending
    std::unordered_map<OpId, std::vector<const Operation*>, OpIdHash> elements;
    // element id -> overwriting value ops ascending
    std::unordered_map<OpId, std::vector<const Operation*>, OpIdHash> elem_writes;

    explicit Index(const OpSet& s) {
        kinds.emplace(kRootId, Value::Kind::map);
        for (const auto& [id, op] : s) {
            if (op.type == OpType::make && !op.value->is_scalar()) kinds.emplace(id, op.value->kind);
            if (op.type == OpType::del) continue;
            if (op.insert) {
                elements[*op.obj].push_back(&op);
            } else if (const auto* mk = std::get_if<MapKey>(&*op.key)) {
                maps[*op.obj][mk->name].push_back(&op);
            } else {
                elem_writes[anchor_of(op)].push_back(&op);
            }
        }
    }

    Value::Kind kind_of(const OpId& id) const {
        auto it = kinds.find(id);
        if (it == kinds.end()) throw NotAList(to_string(id) + " is not a container");
        return it->second;
    }
};

struct Renderer {
    const DocView& view;
    Index index;
    std::vector<OpId> rendering;  // cycle guard

    explicit Renderer(const DocView& v) : view(v), index(v.set()) {}

    const Operation* default_winner(const std::vector<const Operation*>& candidates) const {
        const Operation* best = nullptr;
        for (const Operation* op : candidates) {
            if (view.visible(*op)) best = op;  // ascending input: last visible wins
        }
        return best;
    }

    JsonDoc render_value(const Operation& op) {
        if (op.value && op.value->is_scalar()) return JsonDoc(op.value->scalar);
        if (op.type == OpType::make) return render_object(op.id);
        return render_object(*op.move_id);  // object move
    }

    JsonDoc render_object(const OpId& id) {
        if (std::find(rendering.begin(), rendering.end(), id) != rendering.end()) {
            throw Error("cycle while rendering object " + to_string(id));
        }
        rendering.push_back(id);
        JsonDoc out = index.kind_of(id) == Value::Kind::map ? render_map(id) : render_list(id);
        rendering.pop_back();
        return out;
    }

    JsonDoc render_map(const OpId& id) {
        JsonDoc out = JsonDoc::object();
        auto it = index.maps.find(id);
        if (it == index.maps.end()) return out;
        for (const auto& [key, ops] : it->second) {
            if (const Operation* w = default_winner(ops)) out[key] = render_value(*w);
        }
        return out;
    }

    // Value ops of a list element: the element-creating op plus overwrites.
    std::vector<const Operation*> element_values(const Operation& elem) const {
        std::vector<const Operation*> out{&elem};
        if (auto it = index.elem_writes.find(elem.id); it != index.elem_writes.end()) {
            out.insert(out.end(), it->second.begin(), it->second.end());
        }
        return out;
    }

    // Insertion-tree traversal; emits every element, visible or not.
    void walk_elements(const OpId& list, const OpId& anchor,
                       const std::unordered_map<OpId, std::vector<const Operation*>, OpIdHash>& children,
                       std::vector<const Operation*>& out) const {
        auto it = children.find(anchor);
        if (it == children.end()) return;
        for (const Operation* elem : it->second) {
            out.push_back(elem);
            walk_elements(list, elem->id, children, out);
        }
    }

    std::vector<const Operation*> ordered_elements(const OpId& list) const {
        std::unordered_map<OpId, std::vector<const Operation*>, OpIdHash> children;
        if (auto it = index.elements.find(list); it != index.elements.end()) {
            for (const Operation* elem : it->second) children[anchor_of(*elem)].push_back(elem);
        }
        for (auto& [anchor, sibs] : children) {
            std::sort(sibs.begin(), sibs.end(),
                      [](const Operation* a, const Operation* b) { return b->id < a->id; });
        }
        std::vector<const Operation*> out;
        walk_elements(list, kRootId, children, out);
        return out;
    }

    JsonDoc render_list(const OpId& id) {
        JsonDoc out = JsonDoc::array();
        for (const Operation* elem : ordered_elements(id)) {
            if (const Operation* w = default_winner(element_values(*elem))) {
                out.push_back(render_value(*w));
            }
        }
        return out;
    }
};

}  // namespace

std::vector<OpId> list_order(const DocView& view, const OpId& list_id) {
    Renderer r(view);
    if (r.index.kind_of(list_id) != Value::Kind::list) {
        throw NotAList(to_string(list_id) + " is not a list");
    }
    std::vector<OpId> out;
    for (const Operation* elem : r.ordered_elements(list_id)) {
        if (r.default_winner(r.element_values(*elem))) out.push_back(elem->id);
    }
    return out;
}

std::vector<std::pair<OpId, JsonDoc>> conflict_values(const DocView& view, const OpId& obj,
                                                      const KeyRef& key) {
    Renderer r(view);
    std::vector<const Operation*> candidates;
    if (const auto* mk = std::get_if<MapKey>(&key)) {
        if (auto it = r.index.maps.find(obj); it != r.index.maps.end()) {
            if (auto kt = it->second.find(mk->name); kt != it->second.end()) candidates = kt->second;
        }
    } else if (const auto* er = std::get_if<ElemRef>(&key)) {
        if (const Operation* elem = view.set().find(er->elem); elem && elem->insert) {
            candidates = r.element_values(*elem);
        }
    }
    std::vector<std::pair<OpId, JsonDoc>> out;
    for (const Operation* op : candidates) {
        if (view.visible(*op)) out.emplace_back(op->id, r.render_value(*op));
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    if (out.empty()) throw NoVisibleValue("no visible value at the requested location");
    return out;
}

JsonDoc materialize(const DocView& view) {
    Renderer r(view);
    return r.render_object(kRootId);
}

JsonDoc materialize(const OpSet& s, const ValidityMap& valid) {
    DocView view(s, valid);
    return materialize(view);
}

std::string canonical_json(const JsonDoc& doc) { return doc.dump(); }

}  // namespace movecrdt
