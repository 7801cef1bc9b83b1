#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace pcs {

using ObjectId = std::uint64_t;
using LogicalTime = std::uint64_t;
using CallId = std::uint64_t;

enum class PrimKind { Bool, I32, I64, F64 };

const char* prim_kind_name(PrimKind k);
PrimKind prim_kind_from_name(const std::string& name);

// A value snapshot taken at capture time. Object references carry the id and
// the logical time of the state they point at (id@logical-time).
struct CapturedValue {
    struct PrimitiveLiteral {
        PrimKind type = PrimKind::I32;
        bool boolValue = false;
        std::int64_t intValue = 0; // I32 / I64
        double floatValue = 0.0;   // F64
    };
    struct Text {
        std::string value;
    };
    struct EnumConstant {
        std::string typeName;
        std::string constantName;
    };
    struct Sequence {
        std::vector<CapturedValue> elements;
        bool truncated = false;
    };
    struct MapValue {
        std::vector<std::pair<CapturedValue, CapturedValue>> entries;
        bool truncated = false;
    };
    struct Null {};
    struct ObjectRef {
        ObjectId objectId = 0;
        LogicalTime logicalTime = 0;
    };
    // Placeholder for a value that could not be captured (unregistered object
    // past the depth bound, or an opaque type). Carries the type name when known.
    struct Opaque {
        std::string typeName;
    };

    using Node = std::variant<PrimitiveLiteral, Text, EnumConstant, Sequence, MapValue, Null, ObjectRef, Opaque>;
    Node node;

    CapturedValue() : node(Null{}) {}
    explicit CapturedValue(Node n) : node(std::move(n)) {}

    static CapturedValue boolean(bool v);
    static CapturedValue i32(std::int32_t v);
    static CapturedValue i64(std::int64_t v);
    static CapturedValue f64(double v);
    static CapturedValue text(std::string v);
    static CapturedValue enumConstant(std::string type, std::string constant);
    static CapturedValue sequence(std::vector<CapturedValue> elems, bool truncated = false);
    static CapturedValue map(std::vector<std::pair<CapturedValue, CapturedValue>> entries, bool truncated = false);
    static CapturedValue null();
    static CapturedValue ref(ObjectId id, LogicalTime time);
    static CapturedValue opaque(std::string typeName);

    bool isNull() const { return std::holds_alternative<Null>(node); }
    const ObjectRef* asRef() const { return std::get_if<ObjectRef>(&node); }
    const PrimitiveLiteral* asPrimitive() const { return std::get_if<PrimitiveLiteral>(&node); }
    const Text* asText() const { return std::get_if<Text>(&node); }
    const Sequence* asSequence() const { return std::get_if<Sequence>(&node); }
    const MapValue* asMap() const { return std::get_if<MapValue>(&node); }
    const EnumConstant* asEnum() const { return std::get_if<EnumConstant>(&node); }
    const Opaque* asOpaque() const { return std::get_if<Opaque>(&node); }
};

// Structural equality. Floats compare bitwise so that NaN == NaN and 0.0 != -0.0.
bool operator==(const CapturedValue& a, const CapturedValue& b);
inline bool operator!=(const CapturedValue& a, const CapturedValue& b) { return !(a == b); }

/// Calls fn on every node of the value tree (pre-order).
void visit_values(const CapturedValue& v, const std::function<void(const CapturedValue&)>& fn);

} // namespace pcs
