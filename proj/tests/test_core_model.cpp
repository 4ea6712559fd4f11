#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"

using namespace movecrdt;
using namespace movecrdt::testing;

TEST_CASE("OpId total order: counter first, then actor") {
    CHECK(OpId{3, 0} < OpId{4, 0});
    CHECK(OpId{5, 1} == OpId{5, 1});
    CHECK(OpId{5, 1} < OpId{5, 2});
    CHECK_FALSE(OpId{5, 2} < OpId{5, 1});
    CHECK(to_string(OpId{3, 1}) == "[3,1]");
}

TEST_CASE("insert keeps the set sorted and returns the sorted index") {
    auto ops = example_doc_ops();
    OpSet s;
    for (std::size_t i = 0; i + 1 < ops.size(); ++i) s.insert(ops[i]);

    CHECK(s.insert_indexed(ops.back()) == 7);  // the trailing delete

    SUBCASE("identical duplicate is a no-op returning the existing index") {
        std::size_t size = s.size();
        CHECK(s.insert_indexed(ops[2]) == 2);
        CHECK(s.size() == size);
    }
    SUBCASE("mid-log insertion lands between neighbours") {
        Operation wedge = ops::put(OpId{4, 1}, kRootId, MapKey{"X"}, "x");
        CHECK(s.insert_indexed(wedge) == 4);  // between [4,0] and [5,0]
    }
    SUBCASE("conflicting payload for an existing id is rejected") {
        Operation forged = ops[0];
        forged.value = Value::str("forged");
        CHECK_THROWS_AS(s.insert(forged), ConflictingDuplicate);
    }
    SUBCASE("missing reference is rejected") {
        Operation dangling = ops::del(OpId{9, 0}, {OpId{100, 7}});
        CHECK_THROWS_AS(s.insert(dangling), MissingDependency);
    }
}

TEST_CASE("causal closure check") {
    auto ops = example_doc_ops();
    OpSet s = to_set(ops);
    CHECK(s.causally_closed(ops[6]));  // put D under [6,0]

    OpSet empty;
    CHECK(empty.causally_closed(ops::put(OpId{1, 1}, kRootId, MapKey{"k"}, "v")));

    OpSet missing;
    missing.insert(ops[0]);
    CHECK_FALSE(missing.causally_closed(ops::del(OpId{8, 0}, {OpId{3, 0}})));
}

TEST_CASE("merge is union: identity, idempotence, order") {
    OpSet x = to_set(example_doc_ops());
    CHECK(OpSet::merged(x, OpSet{}) == x);
    CHECK(OpSet::merged(x, x) == x);

    OpSet a;
    a.insert(ops::put(OpId{1, 0}, kRootId, MapKey{"p"}, "1"));
    a.insert(ops::put(OpId{3, 0}, kRootId, MapKey{"q"}, "3"));
    OpSet b;
    b.insert(ops::put(OpId{2, 1}, kRootId, MapKey{"r"}, "2"));
    OpSet u = OpSet::merged(a, b);
    std::vector<OpId> got;
    for (const auto& [id, op] : u) got.push_back(id);
    CHECK(got == std::vector<OpId>{OpId{1, 0}, OpId{2, 1}, OpId{3, 0}});
}

TEST_CASE("merge join laws on randomized sets") {
    for (std::uint64_t seed = 0; seed < 6; ++seed) {
        auto log = random_log(900 + seed, 45);
        // Split the log into three overlapping subsets, each individually
        // causally closed (prefixes are, since references point backwards).
        OpSet a = to_set({log.begin(), log.begin() + static_cast<std::ptrdiff_t>(log.size() / 2)});
        OpSet b = to_set({log.begin(), log.begin() + static_cast<std::ptrdiff_t>(2 * log.size() / 3)});
        OpSet c = to_set(log);
        CHECK(OpSet::merged(a, b) == OpSet::merged(b, a));
        CHECK(OpSet::merged(OpSet::merged(a, b), c) == OpSet::merged(a, OpSet::merged(b, c)));
        CHECK(OpSet::merged(a, a) == a);
    }
}

TEST_CASE("sortedness after random interleavings of insert and merge") {
    auto log = random_log(77, 60);
    auto order = admissible_permutation(log, 5);
    OpSet s;
    for (const Operation& op : order) s.insert(op);
    std::vector<OpId> ids;
    for (const auto& [id, op] : s) ids.push_back(id);
    CHECK(std::is_sorted(ids.begin(), ids.end()));
    CHECK(s == to_set(log));
}

TEST_CASE("wire format: canonical line JSON") {
    auto ops = example_doc_ops();
    SUBCASE("round-trip of every example row is the identity") {
        for (const Operation& op : ops) {
            CHECK(decode_op(encode_op(op)) == op);
        }
    }
    SUBCASE("encoding is deterministic") {
        for (const Operation& op : ops) CHECK(encode_op(op) == encode_op(op));
    }
    SUBCASE("known encodings") {
        CHECK(encode_op(ops[0]) ==
              R"({"id":[1,0],"type":"put","obj":[0,0],"key":{"map":"A"},"val":{"s":"a"},"pred":[]})");
        CHECK(encode_op(ops[2]) ==
              R"({"id":[3,0],"type":"put","obj":[2,0],"key":"head","val":{"s":"b1"},"pred":[],"ins":true})");
        CHECK(encode_op(ops[7]) == R"({"id":[8,0],"type":"del","pred":[[3,0]]})");
        Operation mv = cross_move_m1();
        CHECK(encode_op(mv) ==
              R"({"id":[3,1],"type":"move","obj":[1,0],"key":{"map":"b"},"pred":[[2,0]],"mov":[2,0]})");
    }
    SUBCASE("decode accepts shuffled field order") {
        Operation op = decode_op(R"({"pred":[[3,0]],"id":[8,0],"type":"del"})");
        CHECK(op == ops[7]);
    }
    SUBCASE("malformed records are rejected") {
        CHECK_THROWS_AS(decode_op(""), MalformedRecord);
        CHECK_THROWS_AS(decode_op("{}"), MalformedRecord);
        CHECK_THROWS_AS(decode_op(R"({"id":[1,0],"type":"put","pred":[],"bogus":1})"),
                        MalformedRecord);
        CHECK_THROWS_AS(decode_op(R"({"id":[1,0],"type":"nope","pred":[]})"), MalformedRecord);
        // Structurally invalid: delete without predecessors.
        CHECK_THROWS_AS(decode_op(R"({"id":[1,0],"type":"del","pred":[]})"), MalformedRecord);
        // Structurally invalid: non-move insert with predecessors.
        CHECK_THROWS_AS(
            decode_op(
                R"({"id":[4,0],"type":"put","obj":[2,0],"key":"head","val":{"s":"x"},"pred":[[3,0]],"ins":true})"),
            MalformedRecord);
    }
    SUBCASE("random logs round-trip through the file format") {
        auto log = random_log(123, 80);
        for (const Operation& op : log) CHECK(decode_op(encode_op(op)) == op);
    }
}

TEST_CASE("operation validation") {
    CHECK_THROWS_AS(validate_operation(ops::del(OpId{1, 0}, {})), MalformedRecord);
    Operation bad = ops::put(OpId{2, 0}, kRootId, MapKey{"k"}, "v", {OpId{3, 0}, OpId{1, 0}});
    CHECK_THROWS_AS(validate_operation(bad), MalformedRecord);  // preds not ascending
    Operation move_no_id = ops::put(OpId{2, 0}, kRootId, MapKey{"k"}, "v");
    move_no_id.type = OpType::move;
    CHECK_THROWS_AS(validate_operation(move_no_id), MalformedRecord);
}
