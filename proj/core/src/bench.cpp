#include "movecrdt/bench.hpp"

#include <algorithm>
#include <chrono>
#include <ostream>
#include <random>
#include <unordered_map>

#include "movecrdt/naive_engine.hpp"

namespace movecrdt {

namespace {

struct Workload {
    std::vector<Operation> base;    // shared prefix, actor 0
    std::vector<Operation> local;   // actor 1, ascending
    std::vector<Operation> remote;  // actor 2, ascending
};

std::vector<Operation> shared_base(std::size_t initial_objects) {
    std::vector<Operation> base;
    for (std::size_t i = 0; i < initial_objects; ++i) {
        base.push_back(ops::make_map(OpId{i + 1, 0}, kRootId, MapKey{"obj" + std::to_string(i)}));
    }
    return base;
}

Workload gen_moves(const Scenario& sc) {
    Workload w;
    w.base = shared_base(sc.initial_objects);
    std::vector<OpId> objects;
    for (const Operation& op : w.base) objects.push_back(op.id);

    std::mt19937_64 rng(sc.seed);
    for (ActorId actor : {ActorId{1}, ActorId{2}}) {
        // Latest op placing each object, as this actor has seen it locally.
        std::unordered_map<OpId, OpId, OpIdHash> placing;
        for (const OpId& id : objects) placing[id] = id;
        auto& out = actor == 1 ? w.local : w.remote;
        for (std::size_t i = 0; i < sc.n; ++i) {
            OpId moved = objects[rng() % objects.size()];
            OpId dest = objects[rng() % objects.size()];
            OpId id{sc.initial_objects + 1 + i, actor};
            out.push_back(ops::move_object(id, dest, MapKey{"m" + std::to_string(id.counter)},
                                           moved, {placing[moved]}));
            placing[moved] = id;
        }
    }
    return w;
}

Workload gen_adds(const Scenario& sc) {
    Workload w;
    w.base = shared_base(sc.initial_objects);
    for (ActorId actor : {ActorId{1}, ActorId{2}}) {
        auto& out = actor == 1 ? w.local : w.remote;
        for (std::size_t i = 0; i < sc.n; ++i) {
            std::string key = "a" + std::to_string(actor) + "_" + std::to_string(i);
            out.push_back(ops::make_map(OpId{sc.initial_objects + 1 + i, actor}, kRootId,
                                        MapKey{key}));
        }
    }
    return w;
}

std::string oracle_digest(const Workload& w) {
    std::vector<Operation> all;
    all.insert(all.end(), w.base.begin(), w.base.end());
    all.insert(all.end(), w.local.begin(), w.local.end());
    all.insert(all.end(), w.remote.begin(), w.remote.end());
    std::sort(all.begin(), all.end(),
              [](const Operation& a, const Operation& b) { return a.id < b.id; });
    NaiveResult oracle = update_validity_naive(all);
    OpSet set;
    for (const Operation& op : all) set.insert(op);
    return canonical_json(materialize(set, oracle.valid));
}

std::vector<BenchRow> run_scenario(const Scenario& sc, const Workload& w, bool batch_merge) {
    const std::string reference = oracle_digest(w);
    std::vector<Operation> setup;
    setup.insert(setup.end(), w.base.begin(), w.base.end());
    setup.insert(setup.end(), w.local.begin(), w.local.end());

    std::vector<BenchRow> rows;
    // Repeat -1 is an untimed warm-up.
    for (std::ptrdiff_t repeat = -1; repeat < static_cast<std::ptrdiff_t>(sc.repeats); ++repeat) {
        auto engine = make_engine(sc.variant);
        engine->insert_batch(setup);
        const Counters before = engine->counters();

        auto t0 = std::chrono::steady_clock::now();
        if (batch_merge) {
            engine->insert_batch(w.remote);
        } else {
            for (const Operation& op : w.remote) engine->insert(op);
        }
        JsonDoc doc = engine->doc();
        auto t1 = std::chrono::steady_clock::now();

        if (canonical_json(doc) != reference) {
            throw Error("benchmark run diverged from the replay oracle");
        }
        if (repeat < 0) continue;
        const Counters after = engine->counters();
        BenchRow row;
        row.scenario = sc.name;
        row.variant = to_string(sc.variant);
        row.n = sc.n;
        row.repeat = static_cast<std::size_t>(repeat);
        row.ns = static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
        row.restore_steps = after.restore_steps - before.restore_steps;
        row.reapply_steps = after.reapply_steps - before.reapply_steps;
        rows.push_back(std::move(row));
    }
    return rows;
}

}  // namespace

std::vector<BenchRow> run_diverge_moves(const Scenario& sc) {
    if (sc.variant == Variant::moves_disabled) {
        throw Error("diverge-moves requires a move-capable variant");
    }
    Scenario named = sc;
    named.name = "diverge-moves";
    return run_scenario(named, gen_moves(named), named.variant == Variant::rar_batch);
}

std::vector<BenchRow> run_diverge_adds(const Scenario& sc) {
    Scenario named = sc;
    named.name = "diverge-adds";
    return run_scenario(named, gen_adds(named), /*batch_merge=*/false);
}

void emit_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
    out << "scenario,variant,n,repeat,ns,restore_steps,reapply_steps\n";
    for (const BenchRow& r : rows) {
        out << r.scenario << ',' << r.variant << ',' << r.n << ',' << r.repeat << ',' << r.ns
            << ',' << r.restore_steps << ',' << r.reapply_steps << '\n';
    }
}

std::uint64_t median_ns(std::vector<BenchRow> rows) {
    if (rows.empty()) return 0;
    std::sort(rows.begin(), rows.end(),
              [](const BenchRow& a, const BenchRow& b) { return a.ns < b.ns; });
    return rows[rows.size() / 2].ns;
}

}  // namespace movecrdt
