#include "movecrdt/engine.hpp"

#include <algorithm>

#include "movecrdt/lifecycle_engine.hpp"
#include "movecrdt/naive_engine.hpp"
#include "movecrdt/rar_engine.hpp"

namespace movecrdt {

std::string to_string(Variant v) {
    switch (v) {
        case Variant::naive:          return "naive";
        case Variant::rar:            return "rar";
        case Variant::rar_batch:      return "rar-batch";
        case Variant::rar_lifecycle:  return "rar-lifecycle";
        case Variant::moves_disabled: return "moves-disabled";
    }
    return "unknown";
}

Variant parse_variant(const std::string& name) {
    if (name == "naive") return Variant::naive;
    if (name == "rar") return Variant::rar;
    if (name == "rar-batch") return Variant::rar_batch;
    if (name == "rar-lifecycle") return Variant::rar_lifecycle;
    if (name == "moves-disabled") return Variant::moves_disabled;
    throw Error("unknown engine variant '" + name + "'");
}

void Engine::insert_batch(const std::vector<Operation>& ops) {
    std::vector<Operation> sorted = ops;
    std::sort(sorted.begin(), sorted.end(),
              [](const Operation& a, const Operation& b) { return a.id < b.id; });
    for (const Operation& op : sorted) insert(op);
}

namespace {

/// Baseline without move support: the opset alone, validity machinery
/// removed. Only meaningful for workloads that contain no moves.
class MovesDisabledEngine : public Engine {
public:
    void insert(const Operation& op) override { ops_.insert(op); }

    const OpSet& opset() const override { return ops_; }
    const ValidityMap& validity() const override { return valid_; }
    const Counters& counters() const override { return counters_; }
    Variant variant() const override { return Variant::moves_disabled; }

private:
    OpSet ops_;
    ValidityMap valid_;
    Counters counters_;
};

}  // namespace

std::unique_ptr<Engine> make_engine(Variant v) {
    switch (v) {
        case Variant::naive:          return std::make_unique<NaiveEngine>();
        case Variant::rar:            return std::make_unique<RarEngine>(false);
        case Variant::rar_batch:      return std::make_unique<RarEngine>(true);
        case Variant::rar_lifecycle:  return std::make_unique<LifecycleEngine>();
        case Variant::moves_disabled: return std::make_unique<MovesDisabledEngine>();
    }
    throw Error("unknown engine variant");
}

}  // namespace movecrdt
