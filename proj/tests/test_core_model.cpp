#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "pcs/actions.hpp"
#include "pcs/error.hpp"
#include "pcs/numeric_text.hpp"
#include "pcs/type_model.hpp"
#include "pcs/values.hpp"
#include "pcs/wire.hpp"

#include "support/generators.hpp"

#include <sstream>

using namespace pcs;

namespace {

TypeModel monkeyModel() {
    TypeModel m;
    m.typeName = "Monkey";
    m.kind = TypeKind::Composite;
    m.fields = {{"age", "i32", false, false},
                {"eyeColor", "EyeColor", true, true},
                {"habitat", "Habitat", true, true}};

    CallableSpec full;
    full.name = "Monkey";
    full.parameters = {{"age", "i32"}, {"color", "EyeColor"}, {"habitat", "Habitat"}};
    full.setsFields = {"age", "eyeColor", "habitat"};
    full.paramBindsField = {"age", "eyeColor", "habitat"};
    full.constructing = true;

    CallableSpec ageOnly;
    ageOnly.name = "Monkey";
    ageOnly.parameters = {{"age", "i32"}};
    ageOnly.setsFields = {"age"};
    ageOnly.paramBindsField = {"age"};
    ageOnly.constructing = true;

    CallableSpec setter;
    setter.name = "setEyeColor";
    setter.parameters = {{"eyeColor", "EyeColor"}};
    setter.setsFields = {"eyeColor"};
    setter.paramBindsField = {"eyeColor"};

    m.constructors = {full, ageOnly};
    m.setters = {setter};
    return m;
}

} // namespace

TEST_CASE("valid Monkey model has no violations") {
    CHECK(validate_type_model(monkeyModel()).empty());
}

TEST_CASE("duplicate field name is reported") {
    TypeModel m;
    m.typeName = "T";
    m.fields = {{"x", "i32", true, true}, {"x", "i32", true, true}};
    auto violations = validate_type_model(m);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].message.find("\"x\"") != std::string::npos);
}

TEST_CASE("setter declaring a ghost field is reported") {
    TypeModel m;
    m.typeName = "T";
    m.fields = {{"real", "i32", true, true}};
    CallableSpec s;
    s.name = "setGhost";
    s.parameters = {{"v", "i32"}};
    s.setsFields = {"ghost"};
    s.paramBindsField = {"ghost"};
    m.setters = {s};
    auto violations = validate_type_model(m);
    REQUIRE(violations.size() == 1);
    CHECK(violations[0].message.find("ghost") != std::string::npos);
}

TEST_CASE("enumConstants non-empty iff enumeration") {
    TypeModel e;
    e.typeName = "EyeColor";
    e.kind = TypeKind::Enumeration;
    CHECK_FALSE(validate_type_model(e).empty());
    e.enumConstants = {"BROWN", "GREEN"};
    CHECK(validate_type_model(e).empty());

    TypeModel c;
    c.typeName = "T";
    c.kind = TypeKind::Composite;
    c.enumConstants = {"STRAY"};
    CHECK_FALSE(validate_type_model(c).empty());
}

TEST_CASE("assignable-but-inaccessible field is reported") {
    TypeModel m;
    m.typeName = "T";
    m.fields = {{"hidden", "i32", false, true}};
    CHECK(validate_type_model(m).size() == 1);
}

TEST_CASE("plan validation restates the selection constraints") {
    auto model = monkeyModel();
    ReconstructionPlan plan;
    plan.targetType = "Monkey";
    plan.actions = {Action::callConstructor("Monkey", model.constructors[0])};
    plan.totalCost = 1;
    CHECK(validate_plan(plan, model));

    // Missing coverage of eyeColor and habitat.
    ReconstructionPlan partial;
    partial.targetType = "Monkey";
    partial.actions = {Action::callConstructor("Monkey", model.constructors[1])};
    std::string why;
    CHECK_FALSE(validate_plan(partial, model, &why));
    CHECK(why.find("not covered") != std::string::npos);

    // Two constructing actions.
    ReconstructionPlan twice;
    twice.targetType = "Monkey";
    twice.actions = {Action::callConstructor("Monkey", model.constructors[0]),
                     Action::callConstructor("Monkey", model.constructors[0])};
    CHECK_FALSE(validate_plan(twice, model));
}

TEST_CASE("construct event round-trips through the wire format") {
    ConstructEvent c;
    c.time = 1;
    c.objectId = 1;
    c.typeName = "Habitat";
    c.constructorName = "Habitat(text)";
    c.args = {CapturedValue::text("42, 42")};
    c.initialFields["area"] = CapturedValue::f64(1.0);
    c.initialFields["coordinates"] = CapturedValue::text("42, 42");

    const auto line = wire::encode_event(c);
    CHECK(line.find("\"kind\":\"construct\"") != std::string::npos);
    CHECK(line.find("42, 42") != std::string::npos);

    auto decoded = wire::decode_event(line);
    auto* back = std::get_if<ConstructEvent>(&decoded);
    REQUIRE(back);
    CHECK(back->time == 1);
    CHECK(back->objectId == 1);
    CHECK(back->constructorName == "Habitat(text)");
    CHECK(back->args == c.args);
    CHECK(back->initialFields.at("area") == CapturedValue::f64(1.0));
}

TEST_CASE("method end event encodes minimally") {
    MethodEndEvent m;
    m.time = 5;
    m.callId = 3;
    const auto line = wire::encode_event(m);
    auto decoded = wire::decode_event(line);
    auto* back = std::get_if<MethodEndEvent>(&decoded);
    REQUIRE(back);
    CHECK(back->time == 5);
    CHECK(back->callId == 3);
    CHECK_FALSE(back->abnormal);
}

TEST_CASE("wire round-trip identity over random events") {
    testgen::Rng rng(20240917);
    for (int i = 0; i < 1000; ++i) {
        const Event e = testgen::random_event(rng, static_cast<LogicalTime>(i + 1));
        const auto line = wire::encode_event(e);
        const Event back = wire::decode_event(line, static_cast<std::uint64_t>(i + 2));
        REQUIRE(e.index() == back.index());
        std::visit(
            [&](const auto& a) {
                using T = std::decay_t<decltype(a)>;
                const auto& b = std::get<T>(back);
                CHECK(a.time == b.time);
                if constexpr (std::is_same_v<T, ConstructEvent>) {
                    CHECK(a.objectId == b.objectId);
                    CHECK(a.constructorName == b.constructorName);
                    CHECK(a.args == b.args);
                    CHECK(a.initialFields == b.initialFields);
                } else if constexpr (std::is_same_v<T, MethodStartEvent>) {
                    CHECK(a.callId == b.callId);
                    CHECK(a.receiver == b.receiver);
                    CHECK(a.qualifiedMethodName == b.qualifiedMethodName);
                    CHECK(a.args == b.args);
                } else if constexpr (std::is_same_v<T, MethodEndEvent>) {
                    CHECK(a.callId == b.callId);
                    CHECK(a.abnormal == b.abnormal);
                } else {
                    CHECK(a.receiver == b.receiver);
                    CHECK(a.fieldName == b.fieldName);
                    CHECK(a.oldValue == b.oldValue);
                    CHECK(a.newValue == b.newValue);
                }
            },
            e);
    }
}

TEST_CASE("floats keep their exact bits through the wire") {
    for (double v : {0.1, -0.0, 1.0 / 3.0, 5.497787143782138, 1e-308}) {
        FieldSetEvent f;
        f.time = 1;
        f.receiver = 1;
        f.fieldName = "x";
        f.oldValue = CapturedValue::f64(v);
        f.newValue = CapturedValue::f64(-v);
        auto back = wire::decode_event(wire::encode_event(f));
        CHECK(std::get<FieldSetEvent>(back).oldValue == f.oldValue);
    }
    CHECK(format_f64(std::numeric_limits<double>::quiet_NaN()) == "NaN");
    CHECK(format_f64(std::numeric_limits<double>::infinity()) == "Infinity");
    CHECK(format_f64(-std::numeric_limits<double>::infinity()) == "-Infinity");
}

TEST_CASE("invalid UTF-8 text raises an encoding error") {
    FieldSetEvent f;
    f.time = 1;
    f.receiver = 1;
    f.fieldName = "x";
    f.oldValue = CapturedValue::null();
    f.newValue = CapturedValue::text(std::string("\xFF\xFE broken"));
    CHECK_THROWS_AS((void)wire::encode_event(f), EncodeError);
}

TEST_CASE("trace header is checked") {
    CHECK_NOTHROW(wire::check_trace_header(wire::trace_header()));
    CHECK_THROWS_AS(wire::check_trace_header("{\"format\":\"other\",\"version\":1}"), DecodeError);
    CHECK_THROWS_AS(wire::check_trace_header("{\"format\":\"pcs-trace\",\"version\":99}"), DecodeError);
    CHECK_THROWS_AS(wire::check_trace_header("not json"), DecodeError);
}

TEST_CASE("malformed lines carry their line number") {
    try {
        (void)wire::decode_event("{\"kind\":\"construct\"}", 17);
        FAIL("expected DecodeError");
    } catch (const DecodeError& e) {
        CHECK(e.line == 17);
        CHECK(std::string(e.what()).find("line 17") != std::string::npos);
    }
}

TEST_CASE("serialization record round-trips with embedded plans") {
    SerializationRecord r;
    r.pointId = "Monkey::describe()";
    r.time = 9;
    r.captureTime = 8;
    r.receiver = CapturedValue::ref(3, 8);
    r.args = {CapturedValue::i32(7)};
    r.returnValue = CapturedValue::text("ok");

    InstantiatedPlan plan;
    plan.targetType = "Monkey";
    plan.totalCost = 1;
    auto model = monkeyModel();
    InstantiatedAction ia;
    ia.action = Action::callConstructor("Monkey", model.constructors[0]);
    ia.values = {CapturedValue::i32(1), CapturedValue::enumConstant("EyeColor", "BROWN"), CapturedValue::ref(7, 8)};
    plan.actions = {ia};
    r.embeddedPlans[{3, 8}] = plan;

    const auto line = wire::encode_record(r);
    auto decoded = wire::decode_line(line);
    auto* back = std::get_if<SerializationRecord>(&decoded);
    REQUIRE(back);
    CHECK(back->pointId == r.pointId);
    CHECK(back->time == 9);
    CHECK(back->captureTime == 8);
    CHECK(back->receiver == r.receiver);
    REQUIRE(back->embeddedPlans.size() == 1);
    const auto& p = back->embeddedPlans.at({3, 8});
    CHECK(p.targetType == "Monkey");
    CHECK(p.totalCost == 1);
    REQUIRE(p.actions.size() == 1);
    CHECK(p.actions[0].action.kind == ActionKind::CallConstructor);
    CHECK(p.actions[0].action.callable->signature() == "Monkey(i32,EyeColor,Habitat)");
    CHECK(p.actions[0].values == ia.values);
}

TEST_CASE("read_trace splits line kinds") {
    std::ostringstream file;
    file << wire::trace_header() << "\n";
    ConstructEvent c;
    c.time = 1;
    c.objectId = 1;
    c.typeName = "T";
    c.constructorName = "T()";
    file << wire::encode_event(c) << "\n";
    StaticConstantNote n;
    n.time = 2;
    n.typeName = "Charsets";
    n.fieldName = "UTF_8";
    n.objectId = 1;
    file << wire::encode_static_constant(n) << "\n";

    std::istringstream in(file.str());
    auto trace = wire::read_trace(in);
    CHECK(trace.events.size() == 1);
    CHECK(trace.staticConstants.size() == 1);
    CHECK(trace.records.empty());
}
