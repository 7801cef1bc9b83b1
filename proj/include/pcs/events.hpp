#pragma once

#include "pcs/actions.hpp"
#include "pcs/values.hpp"

#include <map>
#include <string>
#include <variant>
#include <vector>

namespace pcs {

struct ConstructEvent {
    LogicalTime time = 0;
    ObjectId objectId = 0;
    std::string typeName;
    std::string constructorName; // signature; a factory method signature when one was invoked
    std::vector<CapturedValue> args;
    std::map<std::string, CapturedValue> initialFields;
};

struct MethodStartEvent {
    LogicalTime time = 0;
    CallId callId = 0;
    ObjectId receiver = 0;
    std::string qualifiedMethodName;
    std::vector<CapturedValue> args;
};

struct MethodEndEvent {
    LogicalTime time = 0;
    CallId callId = 0;
    bool abnormal = false; // the method exited by throwing
};

struct FieldSetEvent {
    LogicalTime time = 0;
    ObjectId receiver = 0;
    std::string fieldName;
    CapturedValue oldValue;
    CapturedValue newValue;
};

using Event = std::variant<ConstructEvent, MethodStartEvent, MethodEndEvent, FieldSetEvent>;

LogicalTime event_time(const Event& e);

// Everything captured at one serialization point. Embedded plans are keyed by
// id@logical-time because the receiver may appear both pre-invocation (in
// `receiver`) and post-invocation (in `returnValue`) in two different states.
struct SerializationRecord {
    std::string pointId;
    LogicalTime time = 0;        // persisted at method exit
    LogicalTime captureTime = 0; // receiver and args snapshot at method entry
    CapturedValue receiver;
    std::vector<CapturedValue> args;
    CapturedValue returnValue;
    std::map<std::pair<ObjectId, LogicalTime>, InstantiatedPlan> embeddedPlans;
};

// Structure-based snapshot embedded in the log when an event references an
// object that is reconstructed by plan instead of by trace replay.
struct SbSnapshot {
    ObjectId objectId = 0;
    LogicalTime logicalTime = 0;
    InstantiatedPlan plan;
};

// One public static constant field observed at startup: the object it holds
// is reference-equal to `objectId`.
struct StaticConstantNote {
    LogicalTime time = 0;
    std::string typeName;
    std::string fieldName;
    ObjectId objectId = 0;
};

} // namespace pcs
