#include "movecrdt/codec.hpp"

#include <fstream>
#include <set>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

#include "movecrdt/errors.hpp"

namespace movecrdt {

namespace {

using json = nlohmann::ordered_json;

json id_to_json(const OpId& id) { return json::array({id.counter, id.actor}); }

OpId id_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number_unsigned() || !j[1].is_number_unsigned()) {
        throw MalformedRecord("bad op id");
    }
    return OpId{j[0].get<std::uint64_t>(), j[1].get<std::uint64_t>()};
}

json key_to_json(const KeyRef& key) {
    if (const auto* mk = std::get_if<MapKey>(&key)) return json{{"map", mk->name}};
    if (const auto* er = std::get_if<ElemRef>(&key)) return json{{"elem", id_to_json(er->elem)}};
    return json("head");
}

KeyRef key_from_json(const json& j) {
    if (j.is_string()) {
        if (j.get<std::string>() != "head") throw MalformedRecord("bad key");
        return HeadRef{};
    }
    if (j.is_object() && j.size() == 1) {
        if (j.contains("map") && j["map"].is_string()) return MapKey{j["map"].get<std::string>()};
        if (j.contains("elem")) return ElemRef{id_from_json(j["elem"])};
    }
    throw MalformedRecord("bad key");
}

json value_to_json(const Value& v) {
    switch (v.kind) {
        case Value::Kind::scalar: return json{{"s", v.scalar}};
        case Value::Kind::map:    return json("map");
        case Value::Kind::list:   return json("list");
    }
    throw MalformedRecord("bad value kind");
}

Value value_from_json(const json& j) {
    if (j.is_string()) {
        const auto s = j.get<std::string>();
        if (s == "map") return Value::map();
        if (s == "list") return Value::list();
        throw MalformedRecord("bad value");
    }
    if (j.is_object() && j.size() == 1 && j.contains("s") && j["s"].is_string()) {
        return Value::str(j["s"].get<std::string>());
    }
    throw MalformedRecord("bad value");
}

OpType type_from_string(const std::string& s) {
    if (s == "make") return OpType::make;
    if (s == "put") return OpType::put;
    if (s == "del") return OpType::del;
    if (s == "move") return OpType::move;
    throw MalformedRecord("bad op type '" + s + "'");
}

std::string type_to_string(OpType t) {
    return t == OpType::del ? "del" : to_string(t);
}

}  // namespace

std::string encode_op(const Operation& op) {
    json j;
    j["id"] = id_to_json(op.id);
    j["type"] = type_to_string(op.type);
    if (op.obj) j["obj"] = id_to_json(*op.obj);
    if (op.key) j["key"] = key_to_json(*op.key);
    if (op.value) j["val"] = value_to_json(*op.value);
    json preds = json::array();
    for (const OpId& p : op.pred) preds.push_back(id_to_json(p));
    j["pred"] = std::move(preds);
    if (op.move_id) j["mov"] = id_to_json(*op.move_id);
    if (op.insert) j["ins"] = true;
    return j.dump();
}

Operation decode_op(const std::string& line) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::parse_error&) {
        throw MalformedRecord("unparseable record");
    }
    if (!j.is_object()) throw MalformedRecord("record is not an object");

    static const std::set<std::string> allowed = {"id", "type", "obj", "key",
                                                  "val", "pred", "mov", "ins"};
    for (const auto& item : j.items()) {
        if (!allowed.count(item.key())) throw MalformedRecord("unknown field '" + item.key() + "'");
    }
    if (!j.contains("id") || !j.contains("type") || !j.contains("pred")) {
        throw MalformedRecord("missing required field");
    }

    Operation op;
    op.id = id_from_json(j["id"]);
    if (!j["type"].is_string()) throw MalformedRecord("bad op type");
    op.type = type_from_string(j["type"].get<std::string>());
    if (j.contains("obj")) op.obj = id_from_json(j["obj"]);
    if (j.contains("key")) op.key = key_from_json(j["key"]);
    if (j.contains("val")) op.value = value_from_json(j["val"]);
    if (!j["pred"].is_array()) throw MalformedRecord("bad predecessors");
    for (const auto& p : j["pred"]) op.pred.push_back(id_from_json(p));
    if (j.contains("mov")) op.move_id = id_from_json(j["mov"]);
    if (j.contains("ins")) {
        if (!j["ins"].is_boolean()) throw MalformedRecord("bad insert flag");
        op.insert = j["ins"].get<bool>();
    }

    validate_operation(op);
    return op;
}

std::vector<Operation> read_log(std::istream& in) {
    std::vector<Operation> out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(decode_op(line));
    }
    return out;
}

std::vector<Operation> read_log_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open op log '" + path + "'");
    return read_log(in);
}

void write_log(std::ostream& out, const std::vector<Operation>& ops) {
    for (const Operation& op : ops) out << encode_op(op) << '\n';
}

void write_log_file(const std::string& path, const OpSet& set) {
    std::ofstream out(path);
    if (!out) throw Error("cannot write op log '" + path + "'");
    write_log(out, set.sorted_ops());
}

}  // namespace movecrdt
