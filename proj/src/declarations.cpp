#include "pcs/declarations.hpp"

#include "pcs/error.hpp"
#include "pcs/numeric_text.hpp"

#include <json.hpp>

#include <cctype>
#include <fstream>
#include <sstream>

namespace pcs {

using json = nlohmann::json;

namespace {

struct ExprParser {
    const std::string& src;
    std::size_t pos = 0;

    void skipWs() {
        while (pos < src.size() && std::isspace(static_cast<unsigned char>(src[pos])))
            ++pos;
    }

    bool eat(char c) {
        skipWs();
        if (pos < src.size() && src[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& msg) const {
        throw AnalysisError("expression error at offset " + std::to_string(pos) + " in \"" + src + "\": " + msg);
    }

    BodyExprPtr parse() {
        auto e = parseExpr();
        skipWs();
        if (pos != src.size())
            fail("trailing input");
        return e;
    }

    BodyExprPtr parseExpr() {
        auto lhs = parseTerm();
        for (;;) {
            skipWs();
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) {
                char op = src[pos++];
                auto rhs = parseTerm();
                auto node = std::make_shared<BodyExpr>();
                node->kind = BodyExpr::Kind::Binary;
                node->op = op;
                node->lhs = lhs;
                node->rhs = rhs;
                lhs = node;
            } else {
                return lhs;
            }
        }
    }

    BodyExprPtr parseTerm() {
        auto lhs = parseFactor();
        for (;;) {
            skipWs();
            if (pos < src.size() && (src[pos] == '*' || src[pos] == '/')) {
                char op = src[pos++];
                auto rhs = parseFactor();
                auto node = std::make_shared<BodyExpr>();
                node->kind = BodyExpr::Kind::Binary;
                node->op = op;
                node->lhs = lhs;
                node->rhs = rhs;
                lhs = node;
            } else {
                return lhs;
            }
        }
    }

    BodyExprPtr parseFactor() {
        skipWs();
        if (pos >= src.size())
            fail("expected a factor");
        auto node = std::make_shared<BodyExpr>();
        const char c = src[pos];

        if (c == '(') {
            ++pos;
            auto inner = parseExpr();
            if (!eat(')'))
                fail("expected ')'");
            return inner;
        }
        if (c == '"') {
            ++pos;
            std::string out;
            while (pos < src.size() && src[pos] != '"') {
                if (src[pos] == '\\' && pos + 1 < src.size()) {
                    ++pos;
                    switch (src[pos]) {
                    case 'n': out += '\n'; break;
                    case 't': out += '\t'; break;
                    case '"': out += '"'; break;
                    case '\\': out += '\\'; break;
                    default: fail("bad escape");
                    }
                    ++pos;
                } else {
                    out += src[pos++];
                }
            }
            if (pos >= src.size())
                fail("unterminated text literal");
            ++pos;
            node->kind = BodyExpr::Kind::LitText;
            node->text = std::move(out);
            return node;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) ||
            (c == '-' && pos + 1 < src.size() && std::isdigit(static_cast<unsigned char>(src[pos + 1])))) {
            std::size_t start = pos;
            if (c == '-')
                ++pos;
            bool isFloat = false;
            while (pos < src.size() &&
                   (std::isdigit(static_cast<unsigned char>(src[pos])) || src[pos] == '.' || src[pos] == 'e' ||
                    src[pos] == 'E' || ((src[pos] == '+' || src[pos] == '-') && (src[pos - 1] == 'e' || src[pos - 1] == 'E')))) {
                if (src[pos] == '.' || src[pos] == 'e' || src[pos] == 'E')
                    isFloat = true;
                ++pos;
            }
            std::string lit = src.substr(start, pos - start);
            if (isFloat) {
                auto v = parse_f64(lit);
                if (!v)
                    fail("bad float literal " + lit);
                node->kind = BodyExpr::Kind::LitFloat;
                node->floatValue = *v;
            } else {
                auto v = parse_i64(lit);
                if (!v)
                    fail("bad integer literal " + lit);
                node->kind = BodyExpr::Kind::LitInt;
                node->intValue = *v;
                if (pos < src.size() && src[pos] == 'L') {
                    ++pos;
                    node->intIsWide = true;
                }
            }
            return node;
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            std::size_t start = pos;
            while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                ++pos;
            std::string word = src.substr(start, pos - start);
            if (word == "true" || word == "false") {
                node->kind = BodyExpr::Kind::LitBool;
                node->boolValue = word == "true";
                return node;
            }
            if (word == "null") {
                node->kind = BodyExpr::Kind::LitNull;
                return node;
            }
            if (word == "self") {
                if (!eat('.'))
                    fail("expected '.' after self");
                std::size_t fs = pos;
                while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                    ++pos;
                node->kind = BodyExpr::Kind::FieldRef;
                node->text = src.substr(fs, pos - fs);
                if (node->text.empty())
                    fail("expected field name after self.");
                return node;
            }
            if (pos < src.size() && src[pos] == '.') {
                // Enum.CONSTANT
                ++pos;
                std::size_t cs = pos;
                while (pos < src.size() && (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
                    ++pos;
                node->kind = BodyExpr::Kind::LitEnum;
                node->enumType = word;
                node->enumConstant = src.substr(cs, pos - cs);
                if (node->enumConstant.empty())
                    fail("expected constant name after enum type");
                return node;
            }
            node->kind = BodyExpr::Kind::ParamRef;
            node->text = word;
            return node;
        }
        fail("unexpected character");
    }
};

} // namespace

BodyExprPtr parse_body_expr(const std::string& text) {
    ExprParser p{text};
    return p.parse();
}

std::string body_expr_to_string(const BodyExpr& e) {
    switch (e.kind) {
    case BodyExpr::Kind::LitBool: return e.boolValue ? "true" : "false";
    case BodyExpr::Kind::LitInt: return format_i64(e.intValue) + (e.intIsWide ? "L" : "");
    case BodyExpr::Kind::LitFloat: return format_f64(e.floatValue);
    case BodyExpr::Kind::LitText: {
        std::string out = "\"";
        for (char c : e.text) {
            switch (c) {
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            default: out += c;
            }
        }
        return out + "\"";
    }
    case BodyExpr::Kind::LitNull: return "null";
    case BodyExpr::Kind::LitEnum: return e.enumType + "." + e.enumConstant;
    case BodyExpr::Kind::FieldRef: return "self." + e.text;
    case BodyExpr::Kind::ParamRef: return e.text;
    case BodyExpr::Kind::Binary:
        return "(" + body_expr_to_string(*e.lhs) + " " + e.op + " " + body_expr_to_string(*e.rhs) + ")";
    }
    return "?";
}

std::string CallableDecl::signature() const {
    std::string sig = name + "(";
    for (std::size_t i = 0; i < params.size(); ++i) {
        if (i)
            sig += ",";
        sig += params[i].typeName;
    }
    return sig + ")";
}

int CallableDecl::statementCount() const {
    if (statements)
        return *statements;
    return static_cast<int>(body.size()) + (returnExpr ? 1 : 0);
}

const CallableDecl* TypeDecl::findConstructor(const std::string& signature) const {
    for (const auto& c : constructors)
        if (c.signature() == signature)
            return &c;
    return nullptr;
}

const CallableDecl* TypeDecl::findFactory(const std::string& signature) const {
    for (const auto& c : factories)
        if (c.signature() == signature)
            return &c;
    return nullptr;
}

const CallableDecl* TypeDecl::findMethod(const std::string& nameOrSignature) const {
    const bool isSig = nameOrSignature.find('(') != std::string::npos;
    for (const auto& m : methods)
        if (isSig ? m.signature() == nameOrSignature : m.name == nameOrSignature)
            return &m;
    return nullptr;
}

const FieldDecl* TypeDecl::findField(const std::string& name) const {
    for (const auto& f : fields)
        if (f.name == name)
            return &f;
    return nullptr;
}

const TypeDecl* DeclarationSet::find(const std::string& name) const {
    auto it = types.find(name);
    return it == types.end() ? nullptr : &it->second;
}

void DeclarationSet::add(TypeDecl decl) {
    if (!types.count(decl.name))
        order.push_back(decl.name);
    types[decl.name] = std::move(decl);
}

namespace {

CallableDecl callable_from_json(const json& j, const std::string& defaultName) {
    CallableDecl c;
    c.name = j.value("name", defaultName);
    for (const auto& p : j.value("params", json::array()))
        c.params.push_back({p.at("name").get<std::string>(), p.at("type").get<std::string>()});
    for (const auto& s : j.value("body", json::array())) {
        BodyStmt stmt;
        if (s.contains("fail")) {
            stmt.kind = BodyStmt::Kind::Fail;
            stmt.message = s["fail"].get<std::string>();
        } else {
            stmt.kind = BodyStmt::Kind::Assign;
            stmt.field = s.at("assign").get<std::string>();
            stmt.expr = parse_body_expr(s.at("expr").get<std::string>());
        }
        c.body.push_back(std::move(stmt));
    }
    if (j.contains("return"))
        c.returnType = j["return"].get<std::string>();
    if (j.contains("returnExpr"))
        c.returnExpr = parse_body_expr(j["returnExpr"].get<std::string>());
    c.visibility = j.value("visibility", std::string("public"));
    c.isStatic = j.value("static", false);
    c.isAbstract = j.value("abstract", false);
    c.deprecated = j.value("deprecated", false);
    if (j.contains("statements"))
        c.statements = j["statements"].get<int>();
    if (j.contains("setter"))
        c.setterMeta = j["setter"].get<bool>();
    if (j.contains("sets")) {
        std::map<std::string, std::string> sets;
        for (const auto& [field, param] : j["sets"].items())
            sets[field] = param.get<std::string>();
        c.setsMeta = std::move(sets);
    }
    return c;
}

json callable_to_json(const CallableDecl& c, bool includeName) {
    json j;
    if (includeName)
        j["name"] = c.name;
    json params = json::array();
    for (const auto& p : c.params)
        params.push_back({{"name", p.name}, {"type", p.typeName}});
    j["params"] = std::move(params);
    json body = json::array();
    for (const auto& s : c.body) {
        if (s.kind == BodyStmt::Kind::Fail)
            body.push_back({{"fail", s.message}});
        else
            body.push_back({{"assign", s.field}, {"expr", body_expr_to_string(*s.expr)}});
    }
    j["body"] = std::move(body);
    if (c.returnType)
        j["return"] = *c.returnType;
    if (c.returnExpr)
        j["returnExpr"] = body_expr_to_string(*c.returnExpr);
    if (c.visibility != "public")
        j["visibility"] = c.visibility;
    if (c.isStatic)
        j["static"] = true;
    if (c.isAbstract)
        j["abstract"] = true;
    if (c.deprecated)
        j["deprecated"] = true;
    if (c.statements)
        j["statements"] = *c.statements;
    if (c.setterMeta)
        j["setter"] = *c.setterMeta;
    if (c.setsMeta) {
        json sets = json::object();
        for (const auto& [field, param] : *c.setsMeta)
            sets[field] = param;
        j["sets"] = std::move(sets);
    }
    return j;
}

TypeDecl type_from_json(const json& j, std::uint64_t lineNo) {
    TypeDecl t;
    t.name = j.at("name").get<std::string>();
    t.kind = type_kind_from_name(j.value("typeKind", std::string("composite")));
    t.visibility = j.value("visibility", std::string("public"));
    t.deprecated = j.value("deprecated", false);
    t.anonymous = j.value("anonymous", false);
    t.local = j.value("local", false);

    for (const auto& f : j.value("fields", json::array())) {
        FieldDecl fd;
        fd.name = f.at("name").get<std::string>();
        fd.typeName = f.at("type").get<std::string>();
        fd.visibility = f.value("visibility", std::string("public"));
        if (f.contains("assignable"))
            fd.assignable = f["assignable"].get<bool>();
        t.fields.push_back(std::move(fd));
    }
    for (const auto& c : j.value("constructors", json::array()))
        t.constructors.push_back(callable_from_json(c, t.name));
    for (const auto& c : j.value("factories", json::array()))
        t.factories.push_back(callable_from_json(c, ""));
    for (const auto& m : j.value("methods", json::array()))
        t.methods.push_back(callable_from_json(m, ""));
    for (const auto& e : j.value("constants", json::array()))
        t.enumConstants.push_back(e.get<std::string>());
    for (const auto& s : j.value("staticConstants", json::array())) {
        StaticConstantDecl sc;
        sc.fieldName = s.at("field").get<std::string>();
        sc.typeName = s.at("type").get<std::string>();
        sc.constructorSignature = s.at("constructor").get<std::string>();
        for (const auto& a : s.value("args", json::array()))
            sc.ctorArgExprs.push_back(a.get<std::string>());
        t.staticConstants.push_back(std::move(sc));
    }
    if (t.kind == TypeKind::Enumeration && t.enumConstants.empty())
        throw DecodeError("enumeration " + t.name + " has no constants", lineNo);
    return t;
}

json type_to_json(const TypeDecl& t) {
    json j;
    j["kind"] = t.kind == TypeKind::Enumeration ? "enum" : "type";
    j["name"] = t.name;
    if (t.kind != TypeKind::Composite && t.kind != TypeKind::Enumeration)
        j["typeKind"] = type_kind_name(t.kind);
    if (t.kind == TypeKind::Enumeration) {
        j["constants"] = t.enumConstants;
        return j;
    }
    if (t.visibility != "public")
        j["visibility"] = t.visibility;
    if (t.deprecated)
        j["deprecated"] = true;
    if (t.anonymous)
        j["anonymous"] = true;
    if (t.local)
        j["local"] = true;
    json fields = json::array();
    for (const auto& f : t.fields) {
        json fj{{"name", f.name}, {"type", f.typeName}};
        if (f.visibility != "public")
            fj["visibility"] = f.visibility;
        if (f.assignable)
            fj["assignable"] = *f.assignable;
        fields.push_back(std::move(fj));
    }
    j["fields"] = std::move(fields);
    json ctors = json::array();
    for (const auto& c : t.constructors)
        ctors.push_back(callable_to_json(c, false));
    j["constructors"] = std::move(ctors);
    if (!t.factories.empty()) {
        json fs = json::array();
        for (const auto& c : t.factories)
            fs.push_back(callable_to_json(c, true));
        j["factories"] = std::move(fs);
    }
    if (!t.methods.empty()) {
        json ms = json::array();
        for (const auto& m : t.methods)
            ms.push_back(callable_to_json(m, true));
        j["methods"] = std::move(ms);
    }
    if (!t.staticConstants.empty()) {
        json scs = json::array();
        for (const auto& s : t.staticConstants) {
            json sj{{"field", s.fieldName}, {"type", s.typeName}, {"constructor", s.constructorSignature}};
            sj["args"] = s.ctorArgExprs;
            scs.push_back(std::move(sj));
        }
        j["staticConstants"] = std::move(scs);
    }
    return j;
}

} // namespace

DeclarationSet load_declarations(std::istream& in) {
    DeclarationSet out;
    std::string line;
    std::uint64_t lineNo = 0;
    bool sawHeader = false;
    while (std::getline(in, line)) {
        ++lineNo;
        if (line.empty() || line[0] == '#')
            continue;
        json j;
        try {
            j = json::parse(line);
        } catch (const json::exception& e) {
            throw DecodeError(std::string("bad declaration line: ") + e.what(), lineNo);
        }
        if (!sawHeader) {
            if (!j.contains("format") || j["format"] != "pcs-types" || j.value("version", 0) != 1)
                throw DecodeError("missing or unsupported pcs-types header", lineNo);
            sawHeader = true;
            continue;
        }
        try {
            const std::string kind = j.at("kind").get<std::string>();
            if (kind == "type") {
                out.add(type_from_json(j, lineNo));
            } else if (kind == "enum") {
                TypeDecl t;
                t.name = j.at("name").get<std::string>();
                t.kind = TypeKind::Enumeration;
                for (const auto& e : j.at("constants"))
                    t.enumConstants.push_back(e.get<std::string>());
                if (t.enumConstants.empty())
                    throw DecodeError("enumeration " + t.name + " has no constants", lineNo);
                out.add(std::move(t));
            } else {
                throw DecodeError("unknown declaration kind: " + kind, lineNo);
            }
        } catch (const json::exception& e) {
            throw DecodeError(std::string("malformed declaration: ") + e.what(), lineNo);
        }
    }
    if (!sawHeader)
        throw DecodeError("declarations file has no header line");
    return out;
}

DeclarationSet load_declarations_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw DecodeError("cannot open declarations file: " + path);
    return load_declarations(in);
}

void save_declarations(const DeclarationSet& decls, std::ostream& out) {
    out << "{\"format\":\"pcs-types\",\"version\":1}\n";
    for (const auto& name : decls.order)
        out << type_to_json(decls.types.at(name)).dump() << "\n";
}

} // namespace pcs
