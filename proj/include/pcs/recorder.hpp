#pragma once

// Execution phase: assigns object identities and logical time, captures
// values with bounded depth, records the four event kinds from instrumented
// hooks, and persists them through a bounded queue drained by a dedicated
// writer thread.

#include "pcs/events.hpp"
#include "pcs/plan_synthesizer.hpp"
#include "pcs/values.hpp"
#include "pcs/wire.hpp"

#include <atomic>
#include <condition_variable>
#include <cstdint>
#include <deque>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <thread>
#include <unordered_map>
#include <variant>
#include <vector>

namespace pcs {

struct RuntimeView;

// Adapter-supplied view of a live object. `fields` enumerates the current
// field values lazily, so the walk only touches what the capture bounds allow.
struct ObjectNode {
    const void* identity = nullptr;
    std::string typeName;
    std::function<std::vector<std::pair<std::string, RuntimeView>>()> fields;
};

struct RuntimeView {
    struct Text {
        std::string value;
    };
    struct Enum {
        std::string typeName;
        std::string constantName;
    };
    struct Seq {
        std::vector<RuntimeView> elements;
    };
    struct MapV {
        std::vector<std::pair<RuntimeView, RuntimeView>> entries;
    };
    using Node = std::variant<std::monostate, bool, std::int32_t, std::int64_t, double, Text, Enum, Seq, MapV,
                              std::shared_ptr<ObjectNode>>;
    Node node;

    RuntimeView() = default;
    explicit RuntimeView(Node n) : node(std::move(n)) {}
};

struct RecorderConfig {
    std::string tracePath;
    std::size_t maxSequenceLength = 25;
    std::size_t maxDepth = 8;
    std::size_t queueCapacity = 65536;
    std::size_t batchSize = 1024;
};

// Receiver/args snapshot taken at method entry, before the invocation runs.
struct EntrySnapshot {
    LogicalTime captureTime = 0;
    CapturedValue receiver;
    std::vector<CapturedValue> args;
    std::map<std::pair<ObjectId, LogicalTime>, InstantiatedPlan> plans;
};

class Recorder {
  public:
    // `registry` drives structure-based plan embedding; null gives a pure
    // trace-based recorder.
    Recorder(RecorderConfig config, const PlanRegistry* registry = nullptr);
    ~Recorder();

    Recorder(const Recorder&) = delete;
    Recorder& operator=(const Recorder&) = delete;

    ObjectId record_construct(const void* identity, const std::string& typeName, const std::string& constructorName,
                              const std::vector<RuntimeView>& args,
                              const std::vector<std::pair<std::string, RuntimeView>>& initialFields);

    CallId record_method_start(const void* receiverIdentity, const std::string& qualifiedMethodName,
                               const std::vector<RuntimeView>& args);
    void record_method_end(CallId callId, bool abnormal = false);

    void record_field_set(const void* receiverIdentity, const std::string& fieldName, const RuntimeView& oldValue,
                          const RuntimeView& newValue);

    /// Captures one value against the current clock. Degrades instead of
    /// failing: unregistered objects past the depth limit become placeholders.
    CapturedValue capture_value(const RuntimeView& value, std::size_t depthRemaining);

    EntrySnapshot capture_entry(const RuntimeView& receiver, const std::vector<RuntimeView>& args);

    SerializationRecord request_serialization(const std::string& pointId, const RuntimeView& receiver,
                                              const std::vector<RuntimeView>& args, const RuntimeView& returnValue);
    SerializationRecord request_serialization(const std::string& pointId, EntrySnapshot entry,
                                              const RuntimeView& returnValue);

    void note_static_constant(const std::string& ownerTypeName, const std::string& fieldName, const void* identity,
                              const std::string& objectTypeName);

    /// Drains the queue and stops the writer. Idempotent.
    void close();

    bool registered(const void* identity) const;
    std::optional<ObjectId> idOf(const void* identity) const;
    LogicalTime now() const { return clock_.load(); }
    bool failed() const { return failed_.load(); }
    std::uint64_t eventsEnqueued() const { return enqueued_.load(); }
    std::uint64_t eventsPersisted() const { return persisted_.load(); }
    const RecorderConfig& config() const { return config_; }

  private:
    struct CaptureCtx {
        LogicalTime refTime = 0;
        std::map<std::pair<ObjectId, LogicalTime>, InstantiatedPlan> plans;
        std::set<const void*> walkSeen;
    };

    CapturedValue capture(const RuntimeView& value, std::size_t depthRemaining, CaptureCtx& ctx);
    void snapshotStructured(const ObjectNode& node, ObjectId id, std::size_t depthRemaining, CaptureCtx& ctx);

    ObjectId registerFresh(const void* identity, bool traced);
    ObjectId ensureStructuredId(const void* identity);

    LogicalTime enqueue(wire::TraceLine line, bool stamp);
    void enqueueSnapshots(CaptureCtx& ctx);
    void writerLoop();
    void throwIfUnusable() const;

    RecorderConfig config_;
    const PlanRegistry* registry_ = nullptr;

    std::atomic<LogicalTime> clock_{0};
    std::atomic<CallId> nextCallId_{0};
    std::atomic<ObjectId> nextObjectId_{0};
    std::atomic<bool> failed_{false};
    std::atomic<std::uint64_t> enqueued_{0};
    std::atomic<std::uint64_t> persisted_{0};

    mutable std::mutex registryMutex_;
    std::unordered_map<const void*, ObjectId> identities_;
    std::set<CallId> openCalls_;

    std::mutex queueMutex_;
    std::condition_variable notFull_;
    std::condition_variable notEmpty_;
    std::deque<wire::TraceLine> queue_;
    bool closing_ = false;
    std::string failureMessage_;

    std::thread writer_;
};

} // namespace pcs
