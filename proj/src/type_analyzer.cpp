#include "pcs/type_analyzer.hpp"

#include "pcs/error.hpp"

#include <algorithm>

namespace pcs {

SelectionCriteria SelectionCriteria::none() {
    SelectionCriteria c;
    c.requirePublic = c.requireNonAbstract = c.requireNonStatic = c.requireNonDeprecated = false;
    c.ownerPublic = c.ownerNonAnonymous = c.ownerNonLocal = c.ownerNonDeprecated = false;
    c.minStatements = 0;
    return c;
}

namespace {

void require_resolvable(const TypeRef& ref, const DeclarationSet& decls, const std::string& context) {
    switch (ref.kind) {
    case TypeRef::Kind::Seq:
    case TypeRef::Kind::Map:
        for (const auto& a : ref.args)
            require_resolvable(a, decls, context);
        return;
    case TypeRef::Kind::Named:
        if (!decls.find(ref.name))
            throw AnalysisError(context + " references unknown type \"" + ref.name + "\"");
        return;
    default:
        return; // builtins are always resolvable
    }
}

// Identity bindings param -> field. Metadata ("sets") wins over the body scan;
// the body scan accepts only direct `field := param` assignments because a
// plan has to drive the field to an arbitrary captured value.
std::vector<std::optional<std::string>> param_bindings(const CallableDecl& c) {
    std::vector<std::optional<std::string>> bindings(c.params.size());
    auto paramIndex = [&](const std::string& name) -> std::size_t {
        for (std::size_t i = 0; i < c.params.size(); ++i)
            if (c.params[i].name == name)
                return i;
        return static_cast<std::size_t>(-1);
    };
    if (c.setsMeta) {
        for (const auto& [field, param] : *c.setsMeta) {
            auto idx = paramIndex(param);
            if (idx == static_cast<std::size_t>(-1))
                throw AnalysisError("callable " + c.signature() + " binds field \"" + field +
                                    "\" to unknown parameter \"" + param + "\"");
            bindings[idx] = field;
        }
        return bindings;
    }
    for (const auto& stmt : c.body) {
        if (stmt.kind != BodyStmt::Kind::Assign || !stmt.expr)
            continue;
        if (stmt.expr->kind != BodyExpr::Kind::ParamRef)
            continue;
        auto idx = paramIndex(stmt.expr->text);
        if (idx != static_cast<std::size_t>(-1))
            bindings[idx] = stmt.field;
    }
    return bindings;
}

CallableSpec to_callable_spec(const std::string& /*ownerName*/, const CallableDecl& decl, bool constructing,
                              bool factory) {
    CallableSpec spec;
    spec.name = decl.name;
    for (const auto& p : decl.params)
        spec.parameters.push_back({p.name, p.typeName});
    spec.paramBindsField = param_bindings(decl);
    for (const auto& b : spec.paramBindsField)
        if (b)
            spec.setsFields.insert(*b);
    spec.constructing = constructing;
    spec.factory = factory;
    spec.accessible = decl.visibility == "public";
    return spec;
}

bool is_setter(const CallableDecl& m) {
    if (m.setterMeta)
        return *m.setterMeta;
    if (m.setsMeta)
        return !m.setsMeta->empty();
    // Single-assignment body pattern: exactly one statement, `field := param`.
    return m.body.size() == 1 && !m.returnExpr && m.body[0].kind == BodyStmt::Kind::Assign &&
           m.body[0].expr && m.body[0].expr->kind == BodyExpr::Kind::ParamRef;
}

} // namespace

TypeModel extract_type_model(const TypeDecl& decl, const DeclarationSet& decls) {
    TypeModel model;
    model.typeName = decl.name;
    model.kind = decl.kind;

    if (decl.kind == TypeKind::Enumeration) {
        model.enumConstants = decl.enumConstants;
        return model;
    }
    if (decl.kind == TypeKind::Opaque)
        return model;

    for (const auto& f : decl.fields) {
        require_resolvable(parse_type_ref(f.typeName), decls, decl.name + "." + f.name);
        FieldSpec spec;
        spec.name = f.name;
        spec.typeName = f.typeName;
        spec.accessible = f.visibility == "public";
        spec.assignable = f.assignable.value_or(spec.accessible);
        if (spec.assignable && !spec.accessible)
            spec.assignable = false;
        model.fields.push_back(std::move(spec));
    }

    auto checkParams = [&](const CallableDecl& c) {
        for (const auto& p : c.params)
            require_resolvable(parse_type_ref(p.typeName), decls, decl.name + "::" + c.signature());
    };

    for (const auto& c : decl.constructors) {
        checkParams(c);
        model.constructors.push_back(to_callable_spec(decl.name, c, true, false));
    }
    for (const auto& c : decl.factories) {
        checkParams(c);
        model.factoryMethods.push_back(to_callable_spec(decl.name, c, true, true));
    }
    for (const auto& m : decl.methods) {
        checkParams(m);
        if (m.returnType)
            require_resolvable(parse_type_ref(*m.returnType), decls, decl.name + "::" + m.signature());
        if (is_setter(m))
            model.setters.push_back(to_callable_spec(decl.name, m, false, false));
    }
    for (const auto& s : decl.staticConstants) {
        require_resolvable(parse_type_ref(s.typeName), decls, decl.name + "." + s.fieldName);
        model.staticConstantFields.push_back({s.fieldName, s.typeName});
    }
    return model;
}

std::vector<Action> enumerate_actions(const TypeModel& model) {
    std::vector<Action> actions;
    if (model.kind == TypeKind::Enumeration) {
        actions.push_back(Action::useEnumConstant(model.typeName));
        return actions;
    }

    auto fullyBound = [](const CallableSpec& c) {
        for (std::size_t i = 0; i < c.parameters.size(); ++i)
            if (i >= c.paramBindsField.size() || !c.paramBindsField[i])
                return false;
        return true;
    };

    // A callable with parameters that do not bind fields cannot be instantiated
    // from captured field values alone, so it yields no action.
    for (const auto& c : model.constructors)
        if (c.accessible && fullyBound(c))
            actions.push_back(Action::callConstructor(model.typeName, c));
    for (const auto& c : model.factoryMethods)
        if (c.accessible && fullyBound(c))
            actions.push_back(Action::callFactoryMethod(model.typeName, c));
    for (const auto& s : model.setters)
        if (s.accessible && fullyBound(s) && !s.setsFields.empty())
            actions.push_back(Action::callMethod(model.typeName, s));
    for (const auto& f : model.fields)
        if (f.assignable)
            actions.push_back(Action::assignField(model.typeName, f.name));
    return actions;
}

std::string qualified_method_id(const std::string& typeName, const CallableDecl& method) {
    return typeName + "::" + method.signature();
}

std::vector<std::string> select_serialization_points(const DeclarationSet& decls, const SelectionCriteria& criteria) {
    std::vector<std::string> out;
    for (const auto& typeName : decls.order) {
        const auto& t = decls.types.at(typeName);
        if (t.kind != TypeKind::Composite)
            continue;
        if (criteria.ownerPublic && t.visibility != "public")
            continue;
        if (criteria.ownerNonAnonymous && t.anonymous)
            continue;
        if (criteria.ownerNonLocal && t.local)
            continue;
        if (criteria.ownerNonDeprecated && t.deprecated)
            continue;
        for (const auto& m : t.methods) {
            if (criteria.requirePublic && m.visibility != "public")
                continue;
            if (criteria.requireNonAbstract && m.isAbstract)
                continue;
            if (criteria.requireNonStatic && m.isStatic)
                continue;
            if (criteria.requireNonDeprecated && m.deprecated)
                continue;
            if (m.statementCount() < criteria.minStatements)
                continue;
            out.push_back(qualified_method_id(typeName, m));
        }
    }
    return out;
}

MethodLookup resolve_method_id(const DeclarationSet& decls, const std::string& methodId) {
    MethodLookup lookup;
    auto sep = methodId.find("::");
    if (sep == std::string::npos)
        return lookup;
    lookup.owner = decls.find(methodId.substr(0, sep));
    if (lookup.owner)
        lookup.method = lookup.owner->findMethod(methodId.substr(sep + 2));
    return lookup;
}

std::map<std::string, TypeModel> closure_of_associated_types(const DeclarationSet& decls,
                                                             const std::vector<std::string>& entryPoints) {
    std::set<std::string> visited;
    std::vector<std::string> work;

    auto push = [&](const TypeRef& ref, auto&& pushRef) -> void {
        switch (ref.kind) {
        case TypeRef::Kind::Seq:
        case TypeRef::Kind::Map:
            for (const auto& a : ref.args)
                pushRef(a, pushRef);
            return;
        case TypeRef::Kind::Named:
            if (visited.insert(ref.name).second)
                work.push_back(ref.name);
            return;
        default:
            return; // primitives and text are leaves
        }
    };
    auto pushName = [&](const std::string& name) { push(parse_type_ref(name), push); };

    for (const auto& pointId : entryPoints) {
        auto lookup = resolve_method_id(decls, pointId);
        if (!lookup.owner || !lookup.method)
            throw AnalysisError("unresolvable serialization point: " + pointId);
        pushName(lookup.owner->name);
        for (const auto& p : lookup.method->params)
            pushName(p.typeName);
        if (lookup.method->returnType)
            pushName(*lookup.method->returnType);
    }

    std::map<std::string, TypeModel> out;
    while (!work.empty()) {
        const std::string name = work.back();
        work.pop_back();
        const TypeDecl* decl = decls.find(name);
        if (!decl)
            throw AnalysisError("closure references unknown type \"" + name + "\"");
        TypeModel model = extract_type_model(*decl, decls);
        if (decl->kind == TypeKind::Composite) {
            for (const auto& f : decl->fields)
                pushName(f.typeName);
            for (const auto& c : decl->constructors)
                for (const auto& p : c.params)
                    pushName(p.typeName);
            for (const auto& c : decl->factories)
                for (const auto& p : c.params)
                    pushName(p.typeName);
            for (const auto& m : decl->methods) {
                for (const auto& p : m.params)
                    pushName(p.typeName);
                if (m.returnType)
                    pushName(*m.returnType);
            }
            for (const auto& s : decl->staticConstants)
                pushName(s.typeName);
        }
        out.emplace(name, std::move(model));
    }
    return out;
}

TypeCatalog::TypeCatalog(DeclarationSet decls) : decls_(std::move(decls)) {
    for (const auto& name : decls_.order)
        models_.emplace(name, extract_type_model(decls_.types.at(name), decls_));
}

const TypeModel* TypeCatalog::model(const std::string& name) const {
    auto it = models_.find(name);
    return it == models_.end() ? nullptr : &it->second;
}

bool TypeCatalog::isEnum(const std::string& name) const {
    const auto* d = decl(name);
    return d && d->kind == TypeKind::Enumeration;
}

const CallableDecl* TypeCatalog::findConstructing(const std::string& typeName, const std::string& signature,
                                                  bool* isFactory) const {
    const auto* d = decl(typeName);
    if (!d)
        return nullptr;
    if (const auto* c = d->findConstructor(signature)) {
        if (isFactory)
            *isFactory = false;
        return c;
    }
    if (const auto* f = d->findFactory(signature)) {
        if (isFactory)
            *isFactory = true;
        return f;
    }
    return nullptr;
}

} // namespace pcs
