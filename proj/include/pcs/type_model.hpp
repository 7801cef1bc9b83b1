#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

namespace pcs {

enum class TypeKind { Composite, Enumeration, Primitive, Sequence, Map, Opaque };

const char* type_kind_name(TypeKind k);
TypeKind type_kind_from_name(const std::string& name);

struct FieldSpec {
    std::string name;
    std::string typeName;
    bool accessible = true; // visible at the reconstruction site
    bool assignable = true; // direct assignment legal outside the type
};

struct Parameter {
    std::string name;
    std::string typeName;
};

// A constructor, factory method or setter. `paramBindsField[i]` names the field
// that parameter i sets, when the assignment is the identity (field := param);
// only such bindings count towards setsFields, because a plan must be able to
// drive the field to an arbitrary captured value.
struct CallableSpec {
    std::string name; // simple name; equals the type name for constructors
    std::vector<Parameter> parameters;
    std::set<std::string> setsFields;
    std::vector<std::optional<std::string>> paramBindsField;
    bool constructing = false; // constructor or factory method
    bool factory = false;
    bool accessible = true;

    std::string signature() const; // name(paramType,paramType,...)
};

struct StaticConstantField {
    std::string fieldName;
    std::string typeName;
};

// Static description of one user-defined type, as consumed by plan synthesis.
struct TypeModel {
    std::string typeName;
    TypeKind kind = TypeKind::Composite;
    std::vector<FieldSpec> fields;
    std::vector<CallableSpec> constructors;
    std::vector<CallableSpec> factoryMethods;
    std::vector<CallableSpec> setters;
    std::vector<std::string> enumConstants;
    std::vector<StaticConstantField> staticConstantFields;

    const FieldSpec* findField(const std::string& name) const;
    /// Index of a field in declaration order; npos when absent.
    std::size_t fieldIndex(const std::string& name) const;
};

struct ModelViolation {
    std::string typeName;
    std::string message;
};

/// Returns every invariant violation; an empty list means the model is valid.
std::vector<ModelViolation> validate_type_model(const TypeModel& model);

} // namespace pcs
