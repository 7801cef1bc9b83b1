#pragma once

// Pre-execution phase: builds TypeModels from declarations, selects
// serialization points, and computes the closure of associated types.

#include "pcs/actions.hpp"
#include "pcs/declarations.hpp"
#include "pcs/type_model.hpp"
#include "pcs/type_ref.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace pcs {

struct SelectionCriteria {
    bool requirePublic = true;
    bool requireNonAbstract = true;
    bool requireNonStatic = true;
    bool requireNonDeprecated = true;
    int minStatements = 2; // method body must contain at least this many statements

    bool ownerPublic = true;
    bool ownerNonAnonymous = true;
    bool ownerNonLocal = true;
    bool ownerNonDeprecated = true;

    static SelectionCriteria none(); // every criterion disabled
};

/// Throws AnalysisError when the declaration references an unknown type.
TypeModel extract_type_model(const TypeDecl& decl, const DeclarationSet& decls);

std::vector<Action> enumerate_actions(const TypeModel& model);

/// Method identifiers have the form Type::name(paramTypes).
std::vector<std::string> select_serialization_points(const DeclarationSet& decls, const SelectionCriteria& criteria);

std::map<std::string, TypeModel> closure_of_associated_types(const DeclarationSet& decls,
                                                             const std::vector<std::string>& entryPoints);

std::string qualified_method_id(const std::string& typeName, const CallableDecl& method);

struct MethodLookup {
    const TypeDecl* owner = nullptr;
    const CallableDecl* method = nullptr;
};

/// Resolves "Type::name(sig)"; returns nulls when nothing matches.
MethodLookup resolve_method_id(const DeclarationSet& decls, const std::string& methodId);

// Declarations plus their extracted models; the shared read-only view every
// later phase works against.
class TypeCatalog {
  public:
    explicit TypeCatalog(DeclarationSet decls);

    const DeclarationSet& declarations() const { return decls_; }
    const TypeDecl* decl(const std::string& name) const { return decls_.find(name); }
    const TypeModel* model(const std::string& name) const;
    const std::map<std::string, TypeModel>& models() const { return models_; }

    bool isEnum(const std::string& name) const;

    /// Constructor or factory matching a ConstructEvent's constructorName.
    const CallableDecl* findConstructing(const std::string& typeName, const std::string& signature,
                                         bool* isFactory = nullptr) const;

  private:
    DeclarationSet decls_;
    std::map<std::string, TypeModel> models_;
};

} // namespace pcs
