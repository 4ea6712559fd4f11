#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "movecrdt/materialize.hpp"
#include "movecrdt/opset.hpp"

namespace movecrdt {

enum class Variant { naive, rar, rar_batch, rar_lifecycle, moves_disabled };

std::string to_string(Variant v);
Variant parse_variant(const std::string& name);

/// Work counters making the optimisation claims testable.
struct Counters {
    std::uint64_t restore_steps = 0;
    std::uint64_t reapply_steps = 0;
    std::uint64_t timeline_touches = 0;

    Counters& operator+=(const Counters& o) {
        restore_steps += o.restore_steps;
        reapply_steps += o.reapply_steps;
        timeline_touches += o.timeline_touches;
        return *this;
    }
};

/// One replica-side validity engine. Single-writer; deterministic.
class Engine {
public:
    virtual ~Engine() = default;

    virtual void insert(const Operation& op) = 0;

    /// Inserts a causally closed batch, ascending. Default folds insert.
    virtual void insert_batch(const std::vector<Operation>& ops);

    virtual const OpSet& opset() const = 0;
    virtual const ValidityMap& validity() const = 0;
    virtual const Counters& counters() const = 0;
    virtual Variant variant() const = 0;

    JsonDoc doc() const { return materialize(opset(), validity()); }
};

std::unique_ptr<Engine> make_engine(Variant v);

}  // namespace movecrdt
