#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace movecrdt;
using namespace movecrdt::testing;

namespace {

RarEngine engine_with(const std::vector<Operation>& ops, bool batched = false) {
    RarEngine e(batched);
    for (const Operation& op : ops) e.insert(op);
    return e;
}

}  // namespace

TEST_CASE("is_ancestor walks parent chains") {
    TreeState t;
    CHECK(is_ancestor(t, OpId{5, 0}, OpId{5, 0}));  // node == ancestor

    t.parent[OpId{1, 0}] = kRootId;
    CHECK_FALSE(is_ancestor(t, OpId{1, 0}, OpId{9, 0}));  // chain hits root

    t.parent[OpId{2, 0}] = OpId{1, 0};
    CHECK(is_ancestor(t, OpId{2, 0}, OpId{1, 0}));
    CHECK_FALSE(is_ancestor(t, OpId{1, 0}, OpId{2, 0}));

    t.parent[OpId{3, 0}] = std::nullopt;  // trashed
    CHECK_FALSE(is_ancestor(t, OpId{3, 0}, OpId{1, 0}));
}

TEST_CASE("full replay oracle") {
    SUBCASE("cross-move scenario: the lower-ID move wins") {
        auto ops = cross_move_base();
        ops.push_back(cross_move_m1());
        ops.push_back(cross_move_m2());
        NaiveResult r = update_validity_naive(ops);
        CHECK(r.valid.at(OpId{3, 1}) == true);
        CHECK(r.valid.at(OpId{3, 2}) == false);
        CHECK(digest(to_set(ops), r.valid) == R"({"a":{"b":{}}})");
        CHECK(acyclic(r.tree));
    }
    SUBCASE("no moves: validity map empty, tree mirrors creation") {
        auto ops = example_doc_ops();
        NaiveResult r = update_validity_naive(ops);
        CHECK(r.valid.empty());
        CHECK(r.tree.parent.at(OpId{2, 0}) == kRootId);
        CHECK(r.tree.parent.at(OpId{6, 0}) == kRootId);
    }
    SUBCASE("concurrent rivals: greatest id wins") {
        std::vector<Operation> ops = {
            ops::make_map(OpId{1, 0}, kRootId, MapKey{"e"}),
            ops::make_map(OpId{2, 0}, kRootId, MapKey{"d1"}),
            ops::make_map(OpId{3, 0}, kRootId, MapKey{"d2"}),
            ops::move_object(OpId{5, 1}, OpId{2, 0}, MapKey{"e"}, OpId{1, 0}, {OpId{1, 0}}),
            ops::move_object(OpId{5, 2}, OpId{3, 0}, MapKey{"e"}, OpId{1, 0}, {OpId{1, 0}}),
        };
        NaiveResult r = update_validity_naive(ops);
        CHECK(r.valid.at(OpId{5, 2}) == true);
        CHECK(r.valid.at(OpId{5, 1}) == false);
        CHECK(r.tree.parent.at(OpId{1, 0}) == OpId{3, 0});
    }
}

TEST_CASE("incremental insertion matches ascending application") {
    SUBCASE("late-arriving lower-ID move still wins") {
        auto base = cross_move_base();
        RarEngine e = engine_with(base);
        e.insert(cross_move_m2());  // higher-ID move first
        CHECK(e.validity().at(OpId{3, 2}) == true);
        e.insert(cross_move_m1());  // restore, apply, reapply
        CHECK(e.validity().at(OpId{3, 1}) == true);
        CHECK(e.validity().at(OpId{3, 2}) == false);
        CHECK(canonical_json(e.doc()) == R"({"a":{"b":{}}})");
    }
    SUBCASE("appending the greatest id runs no restore step") {
        RarEngine e = engine_with(example_doc_ops());
        std::uint64_t restores = e.counters().restore_steps;
        e.insert(ops::put(OpId{9, 0}, kRootId, MapKey{"Z"}, "z"));
        CHECK(e.counters().restore_steps == restores);
    }
    SUBCASE("rival arriving late: stack ascends, top wins") {
        std::vector<Operation> ops = {
            ops::make_map(OpId{1, 0}, kRootId, MapKey{"e"}),
            ops::make_map(OpId{2, 0}, kRootId, MapKey{"d1"}),
            ops::make_map(OpId{3, 0}, kRootId, MapKey{"d2"}),
        };
        RarEngine e = engine_with(ops);
        e.insert(ops::move_object(OpId{5, 2}, OpId{3, 0}, MapKey{"e"}, OpId{1, 0}, {OpId{1, 0}}));
        e.insert(ops::move_object(OpId{5, 1}, OpId{2, 0}, MapKey{"e"}, OpId{1, 0}, {OpId{1, 0}}));
        const auto& stack = e.move_stacks().at(OpId{1, 0});
        CHECK(stack == std::vector<OpId>{OpId{5, 1}, OpId{5, 2}});
        CHECK(e.validity().at(OpId{5, 2}) == true);
        CHECK(e.validity().at(OpId{5, 1}) == false);
    }
}

TEST_CASE("restore rewinds exactly") {
    SUBCASE("restore to the full length is the identity") {
        RarEngine e = engine_with(example_doc_ops());
        TreeState before = e.tree();
        e.restore_suffix(e.opset().size() - 1);
        e.apply_forward(e.opset().size());  // nothing left to reapply
        CHECK(e.tree() == before);
    }
    SUBCASE("restoring a valid move re-parents and re-validates the rival") {
        std::vector<Operation> ops = {
            ops::make_map(OpId{1, 0}, kRootId, MapKey{"e"}),
            ops::make_map(OpId{2, 0}, kRootId, MapKey{"d1"}),
            ops::make_map(OpId{3, 0}, kRootId, MapKey{"d2"}),
            ops::move_object(OpId{5, 1}, OpId{2, 0}, MapKey{"e"}, OpId{1, 0}, {OpId{1, 0}}),
            ops::move_object(OpId{5, 2}, OpId{3, 0}, MapKey{"e"}, OpId{1, 0}, {OpId{1, 0}}),
        };
        RarEngine e = engine_with(ops);
        e.restore_suffix(3);  // state reflects ops[0..3] = through move [5,1]
        CHECK(e.validity().at(OpId{5, 1}) == true);
        CHECK(e.tree().parent.at(OpId{1, 0}) == OpId{2, 0});
        NaiveResult prefix = update_validity_naive({ops.begin(), ops.begin() + 4});
        CHECK(e.tree() == prefix.tree);
        e.apply_forward(4);
        CHECK(e.validity().at(OpId{5, 2}) == true);
    }
    SUBCASE("restoring across a make removes the created object") {
        RarEngine e = engine_with(example_doc_ops());
        e.restore_suffix(4);  // rewind past make C at index 5
        CHECK(e.tree().parent.count(OpId{6, 0}) == 0);
        e.apply_forward(5);
        CHECK(e.tree().parent.at(OpId{6, 0}) == kRootId);
    }
}

TEST_CASE("apply_forward per-op effects") {
    SUBCASE("make writes a tree entry") {
        RarEngine e;
        e.insert(ops::make_map(OpId{1, 0}, kRootId, MapKey{"x"}));
        CHECK(e.tree().parent.at(OpId{1, 0}) == kRootId);
    }
    SUBCASE("cycle-invalid move leaves tree and stack untouched") {
        std::vector<Operation> ops = {
            ops::make_map(OpId{1, 0}, kRootId, MapKey{"x"}),
            ops::make_map(OpId{2, 0}, OpId{1, 0}, MapKey{"y"}),
        };
        RarEngine e = engine_with(ops);
        TreeState before = e.tree();
        e.insert(ops::move_object(OpId{3, 0}, OpId{2, 0}, MapKey{"x2"}, OpId{1, 0}, {OpId{1, 0}}));
        CHECK(e.validity().at(OpId{3, 0}) == false);
        CHECK(e.tree() == before);
        CHECK(e.move_stacks().count(OpId{1, 0}) == 0);
    }
    SUBCASE("scalar move: no cycle check, no tree write, stack push") {
        std::vector<Operation> ops = {
            ops::put(OpId{1, 0}, kRootId, MapKey{"s"}, "v"),
            ops::make_map(OpId{2, 0}, kRootId, MapKey{"m"}),
        };
        RarEngine e = engine_with(ops);
        TreeState before = e.tree();
        e.insert(ops::move_scalar(OpId{3, 0}, OpId{2, 0}, MapKey{"s2"}, OpId{1, 0}, "v",
                                  {OpId{1, 0}}));
        CHECK(e.validity().at(OpId{3, 0}) == true);
        CHECK(e.tree() == before);  // scalars never enter the parent tree
        CHECK(e.move_stacks().at(OpId{1, 0}) == std::vector<OpId>{OpId{3, 0}});
        CHECK(canonical_json(e.doc()) == R"({"m":{"s2":"v"}})");
    }
    SUBCASE("a move concurrent with a delete resurrects the element") {
        std::vector<Operation> ops = {
            ops::make_map(OpId{1, 0}, kRootId, MapKey{"x"}),
            ops::make_map(OpId{2, 0}, kRootId, MapKey{"d"}),
        };
        RarEngine e = engine_with(ops);
        e.insert(ops::del(OpId{3, 1}, {OpId{1, 0}}));
        e.insert(ops::move_object(OpId{3, 2}, OpId{2, 0}, MapKey{"x2"}, OpId{1, 0}, {OpId{1, 0}}));
        CHECK(e.validity().at(OpId{3, 2}) == true);
        CHECK(canonical_json(e.doc()) == R"({"d":{"x2":{}}})");
        // Oracle agrees.
        ops.push_back(ops::del(OpId{3, 1}, {OpId{1, 0}}));
        ops.push_back(ops::move_object(OpId{3, 2}, OpId{2, 0}, MapKey{"x2"}, OpId{1, 0},
                                       {OpId{1, 0}}));
        CHECK(oracle_digest(ops) == canonical_json(e.doc()));
    }
}

TEST_CASE("oracle equivalence over random insertion orders") {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        auto log = random_log(1000 + seed, 150);
        NaiveResult oracle = update_validity_naive(log);
        for (std::uint64_t perm = 0; perm < 3; ++perm) {
            auto order = admissible_permutation(log, seed * 31 + perm);
            RarEngine e;
            for (const Operation& op : order) e.insert(op);
            CHECK(e.validity() == oracle.valid);
            CHECK(e.tree() == oracle.tree);
        }
    }
}

TEST_CASE("acyclicity after every insertion") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto log = random_log(1100 + seed, 100);
        auto order = admissible_permutation(log, seed);
        RarEngine e;
        for (const Operation& op : order) {
            e.insert(op);
            REQUIRE(acyclic(e.tree()));
        }
    }
}

TEST_CASE("restore round-trip is the identity at every index") {
    for (std::uint64_t seed = 0; seed < 4; ++seed) {
        auto log = random_log(1200 + seed, 80);
        RarEngine e = engine_with(log);
        const TreeState tree = e.tree();
        const ValidityMap valid = e.validity();
        const auto stacks = e.move_stacks();
        for (std::size_t i = 0; i < log.size(); ++i) {
            e.restore_suffix(i);
            e.apply_forward(i + 1);
            REQUIRE(e.tree() == tree);
            REQUIRE(e.validity() == valid);
            REQUIRE(e.move_stacks() == stacks);
        }
    }
}

TEST_CASE("winner uniqueness among stack members") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto log = random_log(1300 + seed, 120);
        RarEngine e = engine_with(log);
        for (const auto& [element, stack] : e.move_stacks()) {
            if (stack.empty()) continue;
            REQUIRE(std::is_sorted(stack.begin(), stack.end()));
            std::size_t valid_count = 0;
            for (const OpId& m : stack) {
                if (e.validity().at(m)) {
                    ++valid_count;
                    CHECK(m == stack.back());
                }
            }
            CHECK(valid_count == 1);
        }
    }
}

TEST_CASE("confluence: different insertion orders, identical state") {
    for (std::uint64_t seed = 0; seed < 5; ++seed) {
        auto log = random_log(1400 + seed, 100);
        RarEngine a;
        for (const Operation& op : admissible_permutation(log, 1)) a.insert(op);
        RarEngine b;
        for (const Operation& op : admissible_permutation(log, 2)) b.insert(op);
        CHECK(a.validity() == b.validity());
        CHECK(a.tree() == b.tree());
        CHECK(canonical_json(a.doc()) == canonical_json(b.doc()));
    }
}
