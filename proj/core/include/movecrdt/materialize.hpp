#pragma once

#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "movecrdt/opset.hpp"

namespace movecrdt {

/// The user-visible document. Map keys render in lexicographic order; a
/// compact dump() of this type is the canonical JSON form.
using JsonDoc = nlohmann::json;

/// Move validity, defined for move operations; non-moves are implicitly
/// valid. Computed by an engine, a pure function of the OpSet contents.
using ValidityMap = std::unordered_map<OpId, bool, OpIdHash>;

bool move_valid(const ValidityMap& valid, const OpId& id);

/// op -> operations naming it as predecessor.
struct VisibilityIndex {
    std::unordered_map<OpId, std::vector<OpId>, OpIdHash> successors;

    const std::vector<OpId>* successors_of(const OpId& id) const;
};

VisibilityIndex build_visibility(const OpSet& s);

/// Everything needed to answer visibility queries against one (OpSet,
/// ValidityMap) pair. winners maps element id -> its unique valid move.
class DocView {
public:
    DocView(const OpSet& s, const ValidityMap& valid);

    bool visible(const Operation& op) const;
    const OpSet& set() const { return *set_; }
    const ValidityMap& validity() const { return *valid_; }
    const VisibilityIndex& visibility() const { return vis_; }
    const OpId* winner_of(const OpId& element) const;

private:
    const OpSet* set_;
    const ValidityMap* valid_;
    VisibilityIndex vis_;
    std::unordered_map<OpId, OpId, OpIdHash> winners_;
};

/// Free-function visibility query. An operation is hidden when an invalid move
/// (never visible itself), a superseding successor, or a valid move of the
/// element it placed says so.
bool is_visible(const Operation& op, const DocView& view);

/// Visible element ids of a list in RGA order: depth-first over the
/// insertion tree anchored at head, siblings descending by OpId, tombstoned
/// elements skipped in the output but kept as anchors.
std::vector<OpId> list_order(const DocView& view, const OpId& list_id);

/// All visible values written at (obj, key), ascending by OpId. The last
/// entry (greatest OpId) is the rendered default. Throws NoVisibleValue when
/// empty.
std::vector<std::pair<OpId, JsonDoc>> conflict_values(const DocView& view, const OpId& obj,
                                                      const KeyRef& key);

/// Renders the document from root ⟨0,0⟩.
JsonDoc materialize(const OpSet& s, const ValidityMap& valid);
JsonDoc materialize(const DocView& view);

/// UTF-8, sorted map keys, no insignificant whitespace.
std::string canonical_json(const JsonDoc& doc);

}  // namespace movecrdt
