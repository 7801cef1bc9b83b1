#include "pcs/values.hpp"

#include "pcs/error.hpp"
#include "pcs/numeric_text.hpp"

namespace pcs {

const char* prim_kind_name(PrimKind k) {
    switch (k) {
    case PrimKind::Bool: return "bool";
    case PrimKind::I32: return "i32";
    case PrimKind::I64: return "i64";
    case PrimKind::F64: return "f64";
    }
    return "?";
}

PrimKind prim_kind_from_name(const std::string& name) {
    if (name == "bool") return PrimKind::Bool;
    if (name == "i32") return PrimKind::I32;
    if (name == "i64") return PrimKind::I64;
    if (name == "f64") return PrimKind::F64;
    throw DecodeError("unknown primitive kind: " + name);
}

CapturedValue CapturedValue::boolean(bool v) {
    PrimitiveLiteral p;
    p.type = PrimKind::Bool;
    p.boolValue = v;
    return CapturedValue(p);
}

CapturedValue CapturedValue::i32(std::int32_t v) {
    PrimitiveLiteral p;
    p.type = PrimKind::I32;
    p.intValue = v;
    return CapturedValue(p);
}

CapturedValue CapturedValue::i64(std::int64_t v) {
    PrimitiveLiteral p;
    p.type = PrimKind::I64;
    p.intValue = v;
    return CapturedValue(p);
}

CapturedValue CapturedValue::f64(double v) {
    PrimitiveLiteral p;
    p.type = PrimKind::F64;
    p.floatValue = v;
    return CapturedValue(p);
}

CapturedValue CapturedValue::text(std::string v) {
    return CapturedValue(Text{std::move(v)});
}

CapturedValue CapturedValue::enumConstant(std::string type, std::string constant) {
    return CapturedValue(EnumConstant{std::move(type), std::move(constant)});
}

CapturedValue CapturedValue::sequence(std::vector<CapturedValue> elems, bool truncated) {
    return CapturedValue(Sequence{std::move(elems), truncated});
}

CapturedValue CapturedValue::map(std::vector<std::pair<CapturedValue, CapturedValue>> entries, bool truncated) {
    return CapturedValue(MapValue{std::move(entries), truncated});
}

CapturedValue CapturedValue::null() {
    return CapturedValue(Null{});
}

CapturedValue CapturedValue::ref(ObjectId id, LogicalTime time) {
    return CapturedValue(ObjectRef{id, time});
}

CapturedValue CapturedValue::opaque(std::string typeName) {
    return CapturedValue(Opaque{std::move(typeName)});
}

bool operator==(const CapturedValue& a, const CapturedValue& b) {
    if (a.node.index() != b.node.index())
        return false;
    using CV = CapturedValue;
    if (auto* pa = std::get_if<CV::PrimitiveLiteral>(&a.node)) {
        auto* pb = std::get_if<CV::PrimitiveLiteral>(&b.node);
        if (pa->type != pb->type)
            return false;
        switch (pa->type) {
        case PrimKind::Bool: return pa->boolValue == pb->boolValue;
        case PrimKind::I32:
        case PrimKind::I64: return pa->intValue == pb->intValue;
        case PrimKind::F64: return bitwise_equal(pa->floatValue, pb->floatValue);
        }
    }
    if (auto* ta = std::get_if<CV::Text>(&a.node))
        return ta->value == std::get<CV::Text>(b.node).value;
    if (auto* ea = std::get_if<CV::EnumConstant>(&a.node)) {
        const auto& eb = std::get<CV::EnumConstant>(b.node);
        return ea->typeName == eb.typeName && ea->constantName == eb.constantName;
    }
    if (auto* sa = std::get_if<CV::Sequence>(&a.node)) {
        const auto& sb = std::get<CV::Sequence>(b.node);
        return sa->truncated == sb.truncated && sa->elements == sb.elements;
    }
    if (auto* ma = std::get_if<CV::MapValue>(&a.node)) {
        const auto& mb = std::get<CV::MapValue>(b.node);
        if (ma->truncated != mb.truncated || ma->entries.size() != mb.entries.size())
            return false;
        for (std::size_t i = 0; i < ma->entries.size(); ++i)
            if (ma->entries[i].first != mb.entries[i].first || ma->entries[i].second != mb.entries[i].second)
                return false;
        return true;
    }
    if (std::holds_alternative<CV::Null>(a.node))
        return true;
    if (auto* ra = std::get_if<CV::ObjectRef>(&a.node)) {
        const auto& rb = std::get<CV::ObjectRef>(b.node);
        return ra->objectId == rb.objectId && ra->logicalTime == rb.logicalTime;
    }
    if (auto* oa = std::get_if<CV::Opaque>(&a.node))
        return oa->typeName == std::get<CV::Opaque>(b.node).typeName;
    return false;
}

void visit_values(const CapturedValue& v, const std::function<void(const CapturedValue&)>& fn) {
    fn(v);
    if (auto* s = v.asSequence()) {
        for (const auto& e : s->elements)
            visit_values(e, fn);
    } else if (auto* m = v.asMap()) {
        for (const auto& [k, val] : m->entries) {
            visit_values(k, fn);
            visit_values(val, fn);
        }
    }
}

} // namespace pcs
