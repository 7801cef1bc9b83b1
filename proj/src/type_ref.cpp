#include "pcs/type_ref.hpp"

#include "pcs/error.hpp"

namespace pcs {

namespace {

struct Parser {
    const std::string& text;
    std::size_t pos = 0;

    TypeRef parse() {
        auto ref = parseOne();
        if (pos != text.size())
            throw AnalysisError("trailing characters in type name: " + text);
        return ref;
    }

    TypeRef parseOne() {
        std::size_t start = pos;
        while (pos < text.size() && text[pos] != '<' && text[pos] != '>' && text[pos] != ',')
            ++pos;
        std::string head = text.substr(start, pos - start);
        if (head.empty())
            throw AnalysisError("empty type name in: " + text);

        TypeRef ref;
        if (head == "bool") ref.kind = TypeRef::Kind::Bool;
        else if (head == "i32") ref.kind = TypeRef::Kind::I32;
        else if (head == "i64") ref.kind = TypeRef::Kind::I64;
        else if (head == "f64") ref.kind = TypeRef::Kind::F64;
        else if (head == "text") ref.kind = TypeRef::Kind::Text;
        else if (head == "seq") ref.kind = TypeRef::Kind::Seq;
        else if (head == "map") ref.kind = TypeRef::Kind::Map;
        else {
            ref.kind = TypeRef::Kind::Named;
            ref.name = head;
        }

        const bool wantsArgs = ref.kind == TypeRef::Kind::Seq || ref.kind == TypeRef::Kind::Map;
        if (wantsArgs) {
            expect('<');
            ref.args.push_back(parseOne());
            if (ref.kind == TypeRef::Kind::Map) {
                expect(',');
                ref.args.push_back(parseOne());
            }
            expect('>');
        }
        return ref;
    }

    void expect(char c) {
        if (pos >= text.size() || text[pos] != c)
            throw AnalysisError(std::string("expected '") + c + "' in type name: " + text);
        ++pos;
    }
};

} // namespace

TypeRef parse_type_ref(const std::string& text) {
    Parser p{text};
    return p.parse();
}

std::string type_ref_to_string(const TypeRef& ref) {
    switch (ref.kind) {
    case TypeRef::Kind::Bool: return "bool";
    case TypeRef::Kind::I32: return "i32";
    case TypeRef::Kind::I64: return "i64";
    case TypeRef::Kind::F64: return "f64";
    case TypeRef::Kind::Text: return "text";
    case TypeRef::Kind::Seq: return "seq<" + type_ref_to_string(ref.args[0]) + ">";
    case TypeRef::Kind::Map:
        return "map<" + type_ref_to_string(ref.args[0]) + "," + type_ref_to_string(ref.args[1]) + ">";
    case TypeRef::Kind::Named: return ref.name;
    }
    return "?";
}

} // namespace pcs
