#include "movecrdt/fuzz.hpp"

#include <algorithm>
#include <memory>
#include <random>

#include "movecrdt/naive_engine.hpp"

namespace movecrdt {

namespace {

struct Gen {
    std::mt19937_64 rng;
    std::size_t value_seq = 0;

    explicit Gen(std::uint64_t seed) : rng(seed) {}

    std::uint64_t below(std::uint64_t n) { return rng() % n; }
    bool chance(unsigned percent) { return below(100) < percent; }
    std::string value() { return "v" + std::to_string(value_seq++); }
    std::string key() { return "k" + std::to_string(below(20)); }

    template <typename T>
    const T* pick(const std::vector<T>& v) {
        return v.empty() ? nullptr : &v[below(v.size())];
    }
};

enum class Intent { put, make_map, make_list, insert, del, move_object, move_scalar, overwrite };

std::vector<Intent> expand_mix(const OpMix& mix) {
    std::vector<Intent> bag;
    auto add = [&](Intent i, unsigned w) { bag.insert(bag.end(), w, i); };
    add(Intent::put, mix.put);
    add(Intent::make_map, mix.make_map);
    add(Intent::make_list, mix.make_list);
    add(Intent::insert, mix.insert);
    add(Intent::del, mix.del);
    add(Intent::move_object, mix.move_object);
    add(Intent::move_scalar, mix.move_scalar);
    add(Intent::overwrite, mix.overwrite);
    if (bag.empty()) throw Error("op mix has no positive weight");
    return bag;
}

bool reaches(const Replica::Snapshot& snap, OpId from, const OpId& target) {
    for (int hops = 0; hops < 64; ++hops) {
        if (from == target) return true;
        auto it = snap.parent.find(from);
        if (it == snap.parent.end()) return false;
        from = it->second;
    }
    return false;
}

Dest draw_dest(Gen& g, const Replica::Snapshot& snap, const OpId& container) {
    bool is_list = std::find(snap.lists.begin(), snap.lists.end(), container) != snap.lists.end();
    if (is_list) {
        std::optional<OpId> after;
        auto it = snap.anchors.find(container);
        if (it != snap.anchors.end() && !it->second.empty() && g.chance(70)) {
            after = it->second[g.below(it->second.size())];
        }
        return ListDest{container, after};
    }
    return MapDest{container, g.key()};
}

Dest draw_any_dest(Gen& g, const Replica::Snapshot& snap) {
    if (!snap.lists.empty() && g.chance(40)) {
        return draw_dest(g, snap, snap.lists[g.below(snap.lists.size())]);
    }
    return draw_dest(g, snap, snap.maps[g.below(snap.maps.size())]);
}

/// One edit attempt; false asks the scheduler to redraw.
bool attempt(Replica& r, Intent intent, Gen& g) {
    const Replica::Snapshot snap = r.snapshot();
    switch (intent) {
        case Intent::put: {
            const OpId* m = g.pick(snap.maps);
            r.put_map(*m, g.key(), g.value());
            return true;
        }
        case Intent::make_map:
        case Intent::make_list: {
            const OpId* m = g.pick(snap.maps);
            r.make_child(*m, g.key(),
                         intent == Intent::make_map ? Value::Kind::map : Value::Kind::list);
            return true;
        }
        case Intent::insert: {
            const OpId* l = g.pick(snap.lists);
            if (!l) return false;
            ListDest at = std::get<ListDest>(draw_dest(g, snap, *l));
            if (g.chance(70)) {
                r.insert_scalar(at, g.value());
            } else {
                r.insert_child(at, g.chance(50) ? Value::Kind::map : Value::Kind::list);
            }
            return true;
        }
        case Intent::del: {
            std::size_t total = snap.map_entries.size() + snap.list_entries.size();
            if (total == 0) return false;
            std::size_t i = g.below(total);
            if (i < snap.map_entries.size()) {
                const auto& e = snap.map_entries[i];
                r.erase_map(e.obj, e.key);
            } else {
                const auto& e = snap.list_entries[i - snap.map_entries.size()];
                r.erase_element(e.list, e.elem);
            }
            return true;
        }
        case Intent::move_object:
        case Intent::move_scalar: {
            bool want_container = intent == Intent::move_object;
            std::vector<std::pair<OpId, OpId>> movable;  // (value_op, value_root)
            for (const auto& e : snap.map_entries) {
                if (e.is_container == want_container) movable.emplace_back(e.value_op, e.value_root);
            }
            for (const auto& e : snap.list_entries) {
                if (e.is_container == want_container) movable.emplace_back(e.value_op, e.value_root);
            }
            const auto* pickd = g.pick(movable);
            if (!pickd) return false;
            Dest dest = draw_any_dest(g, snap);
            if (want_container && g.chance(10)) {
                // Bias toward destinations inside the moved subtree to
                // exercise cycle rejection.
                std::vector<OpId> inside;
                for (const OpId& c : snap.maps) {
                    if (reaches(snap, c, pickd->second)) inside.push_back(c);
                }
                for (const OpId& c : snap.lists) {
                    if (reaches(snap, c, pickd->second)) inside.push_back(c);
                }
                if (const OpId* c = g.pick(inside)) dest = draw_dest(g, snap, *c);
            }
            r.move_value(dest, pickd->first);
            return true;
        }
        case Intent::overwrite: {
            if (const auto* e = g.pick(snap.list_entries)) {
                r.overwrite_element(e->list, e->elem, g.value());
                return true;
            }
            if (const auto* e = g.pick(snap.map_entries)) {
                r.put_map(e->obj, e->key, g.value());
                return true;
            }
            return false;
        }
    }
    return false;
}

}  // namespace

FuzzReport fuzz_run(const FuzzConfig& cfg) {
    if (cfg.replicas < 2) throw Error("fuzz needs at least 2 replicas");
    const std::vector<Intent> bag = expand_mix(cfg.op_mix);
    Gen g(cfg.seed);

    std::vector<std::unique_ptr<Replica>> reps;
    for (std::size_t i = 0; i < cfg.replicas; ++i) {
        reps.push_back(std::make_unique<Replica>(static_cast<ActorId>(i + 1), cfg.variant));
    }

    FuzzReport report;
    report.seed = cfg.seed;

    const std::size_t rounds = std::max<std::size_t>(cfg.sync_rounds, 1);
    std::size_t minted = 0;
    for (std::size_t round = 0; round < rounds; ++round) {
        const std::size_t target = cfg.total_ops * (round + 1) / rounds;
        while (minted < target) {
            Replica& r = *reps[g.below(reps.size())];
            std::size_t burst = std::min<std::size_t>(1 + g.below(3), target - minted);
            for (std::size_t k = 0; k < burst; ++k) {
                bool done = false;
                for (int tries = 0; tries < 8 && !done; ++tries) {
                    try {
                        done = attempt(r, bag[g.below(bag.size())], g);
                    } catch (const InvalidTarget&) {
                        done = false;  // stale pick; redraw
                    }
                }
                if (!done) r.put_map(kRootId, "f" + std::to_string(g.value_seq++), g.value());
                ++minted;
            }
        }
        // Partial, randomly scheduled pairwise syncs.
        std::size_t pairs = 1 + g.below(2);
        for (std::size_t p = 0; p < pairs; ++p) {
            std::size_t i = g.below(reps.size());
            std::size_t j = g.below(reps.size());
            if (i != j) Replica::sync(*reps[i], *reps[j]);
        }
    }
    report.ops_minted = minted;

    // Final full exchange: two star passes leave every replica with the union.
    for (int pass = 0; pass < 2; ++pass) {
        for (std::size_t j = 1; j < reps.size(); ++j) Replica::sync(*reps[0], *reps[j]);
    }

    for (const auto& r : reps) {
        report.digests.push_back(r->digest());
        report.counters += r->engine().counters();
    }
    report.final_doc = reps[0]->doc();
    report.validity = reps[0]->engine().validity();
    for (const auto& [id, valid] : report.validity) {
        if (!valid) ++report.invalid_moves;
    }

    bool all_equal = std::all_of(report.digests.begin(), report.digests.end(),
                                 [&](const std::string& d) { return d == report.digests[0]; });

    // Cross-check against the full-replay oracle on the union set.
    report.union_ops = reps[0]->opset().sorted_ops();
    NaiveResult oracle = update_validity_naive(report.union_ops);
    bool oracle_ok = report.validity == oracle.valid &&
                     canonical_json(materialize(reps[0]->opset(), oracle.valid)) ==
                         report.digests[0];

    report.converged = all_equal && oracle_ok;
    if (!report.converged) {
        for (const auto& r : reps) report.logs.push_back(r->opset().sorted_ops());
    }
    return report;
}

}  // namespace movecrdt
