#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "movecrdt/engine.hpp"

namespace movecrdt {

/// One benchmark configuration. Two actors start from an identical base of
/// initial_objects map objects, diverge by n operations each, then exchange.
struct Scenario {
    std::string name;  // "diverge-moves" or "diverge-adds"
    std::size_t n = 100;
    Variant variant = Variant::rar;
    std::uint64_t seed = 0;
    std::size_t repeats = 3;
    std::size_t initial_objects = 100;
};

struct BenchRow {
    std::string scenario;
    std::string variant;
    std::size_t n = 0;
    std::size_t repeat = 0;
    std::uint64_t ns = 0;  // merge-side wall time: receive -> materialized doc
    std::uint64_t restore_steps = 0;
    std::uint64_t reapply_steps = 0;
};

/// Two actors each mint n moves of random objects to random destinations
/// (self/descendant destinations permitted, producing cycle-invalid moves);
/// measures merging the remote batch on one side. Requires a move-capable
/// variant; rar-batch merges as one batch, all others per operation.
std::vector<BenchRow> run_diverge_moves(const Scenario& sc);

/// Two actors each add n fresh objects; merge applied strictly per operation
/// (no batching). Meaningful variants: moves-disabled, rar, rar-lifecycle.
std::vector<BenchRow> run_diverge_adds(const Scenario& sc);

/// Header `scenario,variant,n,repeat,ns,restore_steps,reapply_steps`, one
/// row per measurement, in the order given.
void emit_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Median of the ns column (0 for empty input).
std::uint64_t median_ns(std::vector<BenchRow> rows);

}  // namespace movecrdt
