#pragma once

#include <string>
#include <vector>

namespace pcs {

// Parsed form of a type name: builtins (bool, i32, i64, f64, text),
// containers (seq<T>, map<K,V>), or a named user type.
struct TypeRef {
    enum class Kind { Bool, I32, I64, F64, Text, Seq, Map, Named };
    Kind kind = Kind::Named;
    std::string name;           // Named only
    std::vector<TypeRef> args;  // Seq: 1, Map: 2

    bool isPrimitive() const {
        return kind == Kind::Bool || kind == Kind::I32 || kind == Kind::I64 || kind == Kind::F64;
    }
    bool isBuiltin() const { return kind != Kind::Named; }
};

TypeRef parse_type_ref(const std::string& text);
std::string type_ref_to_string(const TypeRef& ref);

} // namespace pcs
