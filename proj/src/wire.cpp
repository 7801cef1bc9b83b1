#include "pcs/wire.hpp"

#include "pcs/error.hpp"
#include "pcs/numeric_text.hpp"

#include <json.hpp>

#include <fstream>

namespace pcs::wire {

using json = nlohmann::json;

namespace {

json value_to_json(const CapturedValue& v);

json values_to_json(const std::vector<CapturedValue>& vs) {
    json arr = json::array();
    for (const auto& v : vs)
        arr.push_back(value_to_json(v));
    return arr;
}

json value_to_json(const CapturedValue& v) {
    json j;
    if (auto* p = v.asPrimitive()) {
        j["kind"] = "primitive";
        j["typeName"] = prim_kind_name(p->type);
        switch (p->type) {
        case PrimKind::Bool: j["value"] = p->boolValue ? "true" : "false"; break;
        case PrimKind::I32:
        case PrimKind::I64: j["value"] = format_i64(p->intValue); break;
        case PrimKind::F64: j["value"] = format_f64(p->floatValue); break;
        }
    } else if (auto* t = v.asText()) {
        j["kind"] = "text";
        j["value"] = t->value;
    } else if (auto* e = v.asEnum()) {
        j["kind"] = "enum";
        j["typeName"] = e->typeName;
        j["constantName"] = e->constantName;
    } else if (auto* s = v.asSequence()) {
        j["kind"] = "sequence";
        j["elements"] = values_to_json(s->elements);
        j["truncated"] = s->truncated;
    } else if (auto* m = v.asMap()) {
        j["kind"] = "map";
        json entries = json::array();
        for (const auto& [k, val] : m->entries)
            entries.push_back(json::array({value_to_json(k), value_to_json(val)}));
        j["entries"] = std::move(entries);
        j["truncated"] = m->truncated;
    } else if (v.isNull()) {
        j["kind"] = "null";
    } else if (auto* r = v.asRef()) {
        j["kind"] = "ref";
        j["objectId"] = r->objectId;
        j["logicalTime"] = r->logicalTime;
    } else if (auto* o = v.asOpaque()) {
        j["kind"] = "opaque";
        j["typeName"] = o->typeName;
    }
    return j;
}

CapturedValue value_from_json(const json& j, std::uint64_t lineNo);

std::vector<CapturedValue> values_from_json(const json& arr, std::uint64_t lineNo) {
    std::vector<CapturedValue> out;
    for (const auto& e : arr)
        out.push_back(value_from_json(e, lineNo));
    return out;
}

CapturedValue value_from_json(const json& j, std::uint64_t lineNo) {
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "primitive") {
        const auto type = prim_kind_from_name(j.at("typeName").get<std::string>());
        const std::string text = j.at("value").get<std::string>();
        switch (type) {
        case PrimKind::Bool:
            if (text == "true") return CapturedValue::boolean(true);
            if (text == "false") return CapturedValue::boolean(false);
            throw DecodeError("bad bool literal: " + text, lineNo);
        case PrimKind::I32:
        case PrimKind::I64: {
            auto v = parse_i64(text);
            if (!v)
                throw DecodeError("bad integer literal: " + text, lineNo);
            return type == PrimKind::I32 ? CapturedValue::i32(static_cast<std::int32_t>(*v))
                                         : CapturedValue::i64(*v);
        }
        case PrimKind::F64: {
            auto v = parse_f64(text);
            if (!v)
                throw DecodeError("bad float literal: " + text, lineNo);
            return CapturedValue::f64(*v);
        }
        }
    }
    if (kind == "text")
        return CapturedValue::text(j.at("value").get<std::string>());
    if (kind == "enum")
        return CapturedValue::enumConstant(j.at("typeName").get<std::string>(),
                                           j.at("constantName").get<std::string>());
    if (kind == "sequence")
        return CapturedValue::sequence(values_from_json(j.at("elements"), lineNo),
                                       j.at("truncated").get<bool>());
    if (kind == "map") {
        std::vector<std::pair<CapturedValue, CapturedValue>> entries;
        for (const auto& e : j.at("entries"))
            entries.emplace_back(value_from_json(e.at(0), lineNo), value_from_json(e.at(1), lineNo));
        return CapturedValue::map(std::move(entries), j.at("truncated").get<bool>());
    }
    if (kind == "null")
        return CapturedValue::null();
    if (kind == "ref")
        return CapturedValue::ref(j.at("objectId").get<ObjectId>(), j.at("logicalTime").get<LogicalTime>());
    if (kind == "opaque")
        return CapturedValue::opaque(j.at("typeName").get<std::string>());
    throw DecodeError("unknown value kind: " + kind, lineNo);
}

json action_to_json(const InstantiatedAction& ia) {
    json j;
    j["kind"] = action_kind_name(ia.action.kind);
    j["typeName"] = ia.action.typeName;
    if (ia.action.callable)
        j["callable"] = ia.action.callable->signature();
    if (!ia.action.constantName.empty())
        j["constantName"] = ia.action.constantName;
    if (!ia.action.coveredFields.empty())
        j["coveredFields"] = ia.action.coveredFields;
    if (!ia.values.empty())
        j["values"] = values_to_json(ia.values);
    return j;
}

InstantiatedAction action_from_json(const json& j, std::uint64_t lineNo) {
    InstantiatedAction ia;
    ia.action.kind = action_kind_from_name(j.at("kind").get<std::string>());
    ia.action.constructing = ia.action.kind != ActionKind::CallMethod && ia.action.kind != ActionKind::AssignField;
    ia.action.typeName = j.at("typeName").get<std::string>();
    if (j.contains("callable")) {
        // Only the signature travels on the wire; the analyzer re-binds it to
        // the full CallableSpec through the type model when needed.
        const std::string sig = j["callable"].get<std::string>();
        CallableSpec c;
        const auto open = sig.find('(');
        if (open == std::string::npos || sig.back() != ')')
            throw DecodeError("bad callable signature: " + sig, lineNo);
        c.name = sig.substr(0, open);
        const std::string paramList = sig.substr(open + 1, sig.size() - open - 2);
        std::string cur;
        int depth = 0; // angle brackets nest commas (map<K,V>)
        for (char ch : paramList) {
            if (ch == '<') ++depth;
            if (ch == '>') --depth;
            if (ch == ',' && depth == 0) {
                c.parameters.push_back({"", cur});
                cur.clear();
            } else {
                cur += ch;
            }
        }
        if (!cur.empty())
            c.parameters.push_back({"", cur});
        c.constructing = ia.action.constructing;
        ia.action.callable = std::move(c);
    }
    if (j.contains("constantName"))
        ia.action.constantName = j["constantName"].get<std::string>();
    if (j.contains("coveredFields"))
        for (const auto& f : j["coveredFields"])
            ia.action.coveredFields.insert(f.get<std::string>());
    if (j.contains("values"))
        ia.values = values_from_json(j["values"], lineNo);
    return ia;
}

json plan_to_json(const InstantiatedPlan& p) {
    json j;
    j["targetType"] = p.targetType;
    j["totalCost"] = p.totalCost;
    json actions = json::array();
    for (const auto& a : p.actions)
        actions.push_back(action_to_json(a));
    j["actions"] = std::move(actions);
    return j;
}

InstantiatedPlan plan_from_json(const json& j, std::uint64_t lineNo) {
    InstantiatedPlan p;
    p.targetType = j.at("targetType").get<std::string>();
    p.totalCost = j.at("totalCost").get<std::uint64_t>();
    for (const auto& a : j.at("actions"))
        p.actions.push_back(action_from_json(a, lineNo));
    return p;
}

std::string dump_line(const json& j, const char* what) {
    try {
        return j.dump();
    } catch (const json::exception& e) {
        throw EncodeError(std::string("cannot encode ") + what + ": " + e.what());
    }
}

} // namespace

std::string trace_header() {
    json j;
    j["format"] = "pcs-trace";
    j["version"] = kTraceVersion;
    return j.dump();
}

void check_trace_header(const std::string& line, std::uint64_t lineNo) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw DecodeError(std::string("bad trace header: ") + e.what(), lineNo);
    }
    if (!j.contains("format") || j["format"] != "pcs-trace")
        throw DecodeError("not a pcs trace file", lineNo);
    if (!j.contains("version") || !j["version"].is_number_integer())
        throw DecodeError("trace header lacks a version integer", lineNo);
    if (j["version"].get<int>() != kTraceVersion)
        throw DecodeError("unsupported trace version " + j["version"].dump(), lineNo);
}

std::string encode_event(const Event& e) {
    json j;
    if (auto* c = std::get_if<ConstructEvent>(&e)) {
        j["kind"] = "construct";
        j["time"] = c->time;
        j["objectId"] = c->objectId;
        j["typeName"] = c->typeName;
        j["constructorName"] = c->constructorName;
        j["args"] = values_to_json(c->args);
        json fields = json::object();
        for (const auto& [name, value] : c->initialFields)
            fields[name] = value_to_json(value);
        j["initialFields"] = std::move(fields);
    } else if (auto* s = std::get_if<MethodStartEvent>(&e)) {
        j["kind"] = "methodStart";
        j["time"] = s->time;
        j["callId"] = s->callId;
        j["receiver"] = s->receiver;
        j["qualifiedMethodName"] = s->qualifiedMethodName;
        j["args"] = values_to_json(s->args);
    } else if (auto* m = std::get_if<MethodEndEvent>(&e)) {
        j["kind"] = "methodEnd";
        j["time"] = m->time;
        j["callId"] = m->callId;
        if (m->abnormal)
            j["abnormal"] = true;
    } else if (auto* f = std::get_if<FieldSetEvent>(&e)) {
        j["kind"] = "fieldSet";
        j["time"] = f->time;
        j["receiver"] = f->receiver;
        j["fieldName"] = f->fieldName;
        j["oldValue"] = value_to_json(f->oldValue);
        j["newValue"] = value_to_json(f->newValue);
    }
    return dump_line(j, "event");
}

Event decode_event(const std::string& line, std::uint64_t lineNo) {
    auto decoded = decode_line(line, lineNo);
    if (auto* e = std::get_if<Event>(&decoded))
        return std::move(*e);
    throw DecodeError("line is not an event", lineNo);
}

std::string encode_record(const SerializationRecord& r) {
    json j;
    j["kind"] = "record";
    j["pointId"] = r.pointId;
    j["time"] = r.time;
    j["captureTime"] = r.captureTime;
    j["receiver"] = value_to_json(r.receiver);
    j["args"] = values_to_json(r.args);
    j["returnValue"] = value_to_json(r.returnValue);
    json plans = json::array();
    for (const auto& [key, plan] : r.embeddedPlans) {
        json p = plan_to_json(plan);
        p["objectId"] = key.first;
        p["logicalTime"] = key.second;
        plans.push_back(std::move(p));
    }
    j["embeddedPlans"] = std::move(plans);
    return dump_line(j, "record");
}

std::string encode_sb_snapshot(const SbSnapshot& s) {
    json j;
    j["kind"] = "sbSnapshot";
    j["objectId"] = s.objectId;
    j["logicalTime"] = s.logicalTime;
    j["plan"] = plan_to_json(s.plan);
    return dump_line(j, "snapshot");
}

std::string encode_static_constant(const StaticConstantNote& n) {
    json j;
    j["kind"] = "staticConstant";
    j["time"] = n.time;
    j["typeName"] = n.typeName;
    j["fieldName"] = n.fieldName;
    j["objectId"] = n.objectId;
    return dump_line(j, "static constant");
}

TraceLine decode_line(const std::string& line, std::uint64_t lineNo) {
    json j;
    try {
        j = json::parse(line);
    } catch (const json::exception& e) {
        throw DecodeError(std::string("bad trace line: ") + e.what(), lineNo);
    }
    std::string kind;
    try {
        kind = j.at("kind").get<std::string>();
        if (kind == "construct") {
            ConstructEvent c;
            c.time = j.at("time").get<LogicalTime>();
            c.objectId = j.at("objectId").get<ObjectId>();
            c.typeName = j.at("typeName").get<std::string>();
            c.constructorName = j.at("constructorName").get<std::string>();
            c.args = values_from_json(j.at("args"), lineNo);
            for (const auto& [name, value] : j.at("initialFields").items())
                c.initialFields[name] = value_from_json(value, lineNo);
            return Event{std::move(c)};
        }
        if (kind == "methodStart") {
            MethodStartEvent s;
            s.time = j.at("time").get<LogicalTime>();
            s.callId = j.at("callId").get<CallId>();
            s.receiver = j.at("receiver").get<ObjectId>();
            s.qualifiedMethodName = j.at("qualifiedMethodName").get<std::string>();
            s.args = values_from_json(j.at("args"), lineNo);
            return Event{std::move(s)};
        }
        if (kind == "methodEnd") {
            MethodEndEvent m;
            m.time = j.at("time").get<LogicalTime>();
            m.callId = j.at("callId").get<CallId>();
            m.abnormal = j.value("abnormal", false);
            return Event{m};
        }
        if (kind == "fieldSet") {
            FieldSetEvent f;
            f.time = j.at("time").get<LogicalTime>();
            f.receiver = j.at("receiver").get<ObjectId>();
            f.fieldName = j.at("fieldName").get<std::string>();
            f.oldValue = value_from_json(j.at("oldValue"), lineNo);
            f.newValue = value_from_json(j.at("newValue"), lineNo);
            return Event{std::move(f)};
        }
        if (kind == "record") {
            SerializationRecord r;
            r.pointId = j.at("pointId").get<std::string>();
            r.time = j.at("time").get<LogicalTime>();
            r.captureTime = j.at("captureTime").get<LogicalTime>();
            r.receiver = value_from_json(j.at("receiver"), lineNo);
            r.args = values_from_json(j.at("args"), lineNo);
            r.returnValue = value_from_json(j.at("returnValue"), lineNo);
            for (const auto& p : j.at("embeddedPlans")) {
                auto key = std::make_pair(p.at("objectId").get<ObjectId>(), p.at("logicalTime").get<LogicalTime>());
                r.embeddedPlans.emplace(key, plan_from_json(p, lineNo));
            }
            return r;
        }
        if (kind == "sbSnapshot") {
            SbSnapshot s;
            s.objectId = j.at("objectId").get<ObjectId>();
            s.logicalTime = j.at("logicalTime").get<LogicalTime>();
            s.plan = plan_from_json(j.at("plan"), lineNo);
            return s;
        }
        if (kind == "staticConstant") {
            StaticConstantNote n;
            n.time = j.at("time").get<LogicalTime>();
            n.typeName = j.at("typeName").get<std::string>();
            n.fieldName = j.at("fieldName").get<std::string>();
            n.objectId = j.at("objectId").get<ObjectId>();
            return n;
        }
    } catch (const json::exception& e) {
        throw DecodeError(std::string("malformed ") + (kind.empty() ? "line" : kind.c_str()) + ": " + e.what(), lineNo);
    }
    throw DecodeError("unknown line kind: " + kind, lineNo);
}

TraceFile read_trace(std::istream& in) {
    TraceFile out;
    std::string line;
    std::uint64_t lineNo = 0;
    bool sawHeader = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty())
            continue;
        if (!sawHeader) {
            check_trace_header(line, lineNo);
            sawHeader = true;
            continue;
        }
        auto decoded = decode_line(line, lineNo);
        std::visit(
            [&](auto&& item) {
                using T = std::decay_t<decltype(item)>;
                if constexpr (std::is_same_v<T, Event>)
                    out.events.push_back(std::move(item));
                else if constexpr (std::is_same_v<T, SerializationRecord>)
                    out.records.push_back(std::move(item));
                else if constexpr (std::is_same_v<T, SbSnapshot>)
                    out.snapshots.push_back(std::move(item));
                else
                    out.staticConstants.push_back(std::move(item));
            },
            std::move(decoded));
    }
    if (!sawHeader)
        throw DecodeError("trace file has no header line");
    return out;
}

TraceFile read_trace_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DecodeError("cannot open trace file: " + path);
    return read_trace(in);
}

} // namespace pcs::wire

namespace pcs {

LogicalTime event_time(const Event& e) {
    return std::visit([](const auto& ev) { return ev.time; }, e);
}

} // namespace pcs
