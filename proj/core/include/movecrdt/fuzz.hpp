#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "movecrdt/replica.hpp"

namespace movecrdt {

/// Weights for random intent drawing. Non-negative; at least one positive.
struct OpMix {
    unsigned put = 4;
    unsigned make_map = 1;
    unsigned make_list = 1;
    unsigned insert = 2;
    unsigned del = 1;
    unsigned move_object = 2;
    unsigned move_scalar = 1;
    unsigned overwrite = 1;
};

struct FuzzConfig {
    std::size_t replicas = 3;
    std::size_t total_ops = 100;
    OpMix op_mix;
    std::size_t sync_rounds = 4;
    std::uint64_t seed = 0;
    Variant variant = Variant::rar;
};

struct FuzzReport {
    bool converged = false;
    JsonDoc final_doc;
    std::vector<std::string> digests;  // per replica, canonical JSON
    ValidityMap validity;              // replica 0's final validity map
    Counters counters;                 // summed over replicas
    std::uint64_t seed = 0;
    std::size_t ops_minted = 0;
    std::size_t invalid_moves = 0;
    std::vector<Operation> union_ops;  // final merged log, ascending
    // Filled only on divergence: each replica's full sorted op log.
    std::vector<std::vector<Operation>> logs;
};

/// Deterministic single-threaded scheduler: replicas take turns minting edit
/// bursts against their own visible state, partial pairwise syncs are
/// interleaved per round, and a final all-pairs sync closes the run. The
/// result is cross-checked against the full-replay oracle on the union set.
FuzzReport fuzz_run(const FuzzConfig& cfg);

}  // namespace movecrdt
