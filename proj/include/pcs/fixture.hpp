#pragma once

// Executable fixture world. Plays the role of the instrumented host
// application: it runs declared constructors and method bodies and calls
// the recorder hooks exactly where a rewriting adapter would.

#include "pcs/declarations.hpp"
#include "pcs/error.hpp"
#include "pcs/plan_synthesizer.hpp"
#include "pcs/recorder.hpp"
#include "pcs/type_analyzer.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace pcs::fixture {

struct FixtureError : Error {
    explicit FixtureError(const std::string& msg) : Error(msg) {}
};

class Value;
struct Object;
using ObjPtr = std::shared_ptr<Object>;

class Value {
  public:
    struct Text {
        std::string value;
    };
    struct Enum {
        std::string typeName;
        std::string constantName;
    };
    struct Seq {
        std::vector<Value> elements;
    };
    struct MapV {
        std::vector<std::pair<Value, Value>> entries; // kept sorted by key
    };
    using Node = std::variant<std::monostate, bool, std::int32_t, std::int64_t, double, Text, Enum, Seq, MapV, ObjPtr>;
    Node node;

    Value() = default;
    explicit Value(Node n) : node(std::move(n)) {}

    static Value null() { return Value(); }
    static Value boolean(bool v) { return Value(Node{v}); }
    static Value i32(std::int32_t v) { return Value(Node{v}); }
    static Value i64(std::int64_t v) { return Value(Node{v}); }
    static Value f64(double v) { return Value(Node{v}); }
    static Value text(std::string v) { return Value(Node{Text{std::move(v)}}); }
    static Value enumConstant(std::string type, std::string constant) {
        return Value(Node{Enum{std::move(type), std::move(constant)}});
    }
    static Value seq(std::vector<Value> elems) { return Value(Node{Seq{std::move(elems)}}); }
    static Value map(std::vector<std::pair<Value, Value>> entries);
    static Value object(ObjPtr obj) { return Value(Node{std::move(obj)}); }

    bool isNull() const { return std::holds_alternative<std::monostate>(node); }
    const ObjPtr* asObject() const { return std::get_if<ObjPtr>(&node); }
};

bool value_equal(const Value& a, const Value& b);
bool value_less(const Value& a, const Value& b); // map-key ordering

struct Object {
    std::string typeName;
    std::map<std::string, Value> fields;
};

/// Default value for a declared field type (zeroes, empty containers, the
/// first enum constant, null references).
Value default_value(const TypeRef& ref, const TypeCatalog& catalog);

// Executes workloads against the catalog's declarations, firing recorder
// hooks for every type the registry marks as traced.
class Session {
  public:
    Session(const TypeCatalog& catalog, Recorder* recorder, const PlanRegistry* registry);

    /// Constructs declared static constants and notes them in the trace.
    void setup_static_constants();

    ObjPtr construct(const std::string& typeName, const std::string& ctorSignature, std::vector<Value> args);
    ObjPtr factory(const std::string& typeName, const std::string& factorySignature, std::vector<Value> args);

    struct CallResult {
        Value returnValue;
        bool threw = false;
        std::string message;
    };
    CallResult call(const ObjPtr& receiver, const std::string& methodNameOrSignature, std::vector<Value> args);

    void assign(const ObjPtr& receiver, const std::string& fieldName, Value v);

    /// Runs the point's method and persists a SerializationRecord; returns
    /// nothing when the method completed abnormally.
    std::optional<SerializationRecord> serialize(const std::string& pointId, const ObjPtr& receiver,
                                                 std::vector<Value> args);

    ObjPtr static_constant(const std::string& ownerType, const std::string& fieldName) const;

    RuntimeView view(const Value& v) const;

    const TypeCatalog& catalog() const { return catalog_; }

  private:
    bool traced(const std::string& typeName) const;
    ObjPtr constructImpl(const std::string& typeName, const CallableDecl& ctor, std::vector<Value> args,
                         bool isFactory);
    Value evalBody(const CallableDecl& callable, Object& self, const std::map<std::string, Value>& params,
                   bool hooks);

    const TypeCatalog& catalog_;
    Recorder* recorder_ = nullptr;
    const PlanRegistry* registry_ = nullptr;
    std::map<std::pair<std::string, std::string>, ObjPtr> staticConstants_;
};

/// Evaluates a body expression with C++-style numeric promotion.
Value eval_expr(const BodyExpr& expr, const Object* self, const std::map<std::string, Value>& params);

// Workload scripts: line-delimited directives executed by a Session.
struct WorkloadOp {
    enum class Kind { Construct, Factory, Call, Assign, Serialize, UseStatic };
    Kind kind = Kind::Construct;
    std::string var;       // bound variable (Construct/Factory/UseStatic)
    std::string typeName;  // Construct/Factory/UseStatic owner
    std::string callable;  // ctor/factory signature, method name, or static field
    std::string target;    // Call/Assign/Serialize receiver variable
    std::string field;     // Assign
    std::string pointId;   // Serialize
    std::vector<std::string> argLiterals; // value literals or $var references
    std::string valueLiteral;             // Assign
};

std::vector<WorkloadOp> load_workload(std::istream& in);
std::vector<WorkloadOp> load_workload_file(const std::string& path);

struct WorkloadResult {
    std::vector<SerializationRecord> records;
    std::size_t opsRun = 0;
};

WorkloadResult run_workload(Session& session, const std::vector<WorkloadOp>& ops);

} // namespace pcs::fixture
