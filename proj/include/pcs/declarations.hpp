#pragma once

// Host-type metadata: the declaration format the analyzer consumes. A host
// language adapter would populate these from real type declarations; the
// bundled adapter loads them from a versioned JSONL file and can execute the
// declared bodies, which keeps the core portable.

#include "pcs/type_model.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace pcs {

// Body statements use a tiny expression language:
//   expr   := term (('+'|'-') term)*
//   term   := factor (('*'|'/') factor)*
//   factor := int | float | "text" | true | false | null
//           | self.field | param | Enum.CONSTANT | '(' expr ')'
struct BodyExpr {
    enum class Kind { LitBool, LitInt, LitFloat, LitText, LitNull, LitEnum, FieldRef, ParamRef, Binary };
    Kind kind = Kind::LitNull;
    bool boolValue = false;
    std::int64_t intValue = 0;
    bool intIsWide = false; // i64 literal (suffix L)
    double floatValue = 0.0;
    std::string text; // text literal, field name, or param name
    std::string enumType, enumConstant;
    char op = 0;
    std::shared_ptr<const BodyExpr> lhs, rhs;
};

using BodyExprPtr = std::shared_ptr<const BodyExpr>;

BodyExprPtr parse_body_expr(const std::string& text);
std::string body_expr_to_string(const BodyExpr& e);

struct BodyStmt {
    enum class Kind { Assign, Fail };
    Kind kind = Kind::Assign;
    std::string field;  // Assign
    BodyExprPtr expr;   // Assign
    std::string message; // Fail
};

struct ParamDecl {
    std::string name;
    std::string typeName;
};

struct CallableDecl {
    std::string name;
    std::vector<ParamDecl> params;
    std::vector<BodyStmt> body;
    std::optional<std::string> returnType;
    BodyExprPtr returnExpr;

    std::string visibility = "public";
    bool isStatic = false;
    bool isAbstract = false;
    bool deprecated = false;
    std::optional<int> statements;                            // metadata override
    std::optional<bool> setterMeta;                           // explicit "is a setter"
    std::optional<std::map<std::string, std::string>> setsMeta; // field -> param, authoritative

    std::string signature() const;
    int statementCount() const;
};

struct FieldDecl {
    std::string name;
    std::string typeName;
    std::string visibility = "public";
    std::optional<bool> assignable;
};

struct StaticConstantDecl {
    std::string fieldName;
    std::string typeName;               // the constant's type
    std::string constructorSignature;   // resolved against typeName's constructors
    std::vector<std::string> ctorArgExprs; // literal expressions only
};

struct TypeDecl {
    std::string name;
    TypeKind kind = TypeKind::Composite;
    std::string visibility = "public";
    bool deprecated = false;
    bool anonymous = false;
    bool local = false;

    std::vector<FieldDecl> fields;
    std::vector<CallableDecl> constructors;
    std::vector<CallableDecl> factories;
    std::vector<CallableDecl> methods;
    std::vector<std::string> enumConstants;
    std::vector<StaticConstantDecl> staticConstants;

    const CallableDecl* findConstructor(const std::string& signature) const;
    const CallableDecl* findFactory(const std::string& signature) const;
    const CallableDecl* findMethod(const std::string& nameOrSignature) const;
    const FieldDecl* findField(const std::string& name) const;
};

struct DeclarationSet {
    std::vector<std::string> order; // declaration order
    std::map<std::string, TypeDecl> types;

    const TypeDecl* find(const std::string& name) const;
    void add(TypeDecl decl);
};

DeclarationSet load_declarations(std::istream& in);
DeclarationSet load_declarations_file(const std::string& path);
void save_declarations(const DeclarationSet& decls, std::ostream& out);

} // namespace pcs
