#include "pcs/recorder.hpp"

#include "pcs/error.hpp"
#include "pcs/wire.hpp"

#include <fstream>

namespace pcs {

Recorder::Recorder(RecorderConfig config, const PlanRegistry* registry)
    : config_(std::move(config)), registry_(registry) {
    if (config_.queueCapacity == 0)
        throw ContractViolation("queue capacity must be positive");
    writer_ = std::thread([this] { writerLoop(); });
}

Recorder::~Recorder() {
    try {
        close();
    } catch (...) {
        // Destruction must not throw; close() again surfaces the failure.
    }
}

void Recorder::close() {
    {
        std::lock_guard lk(queueMutex_);
        if (closing_) {
            if (writer_.joinable())
                writer_.join();
            if (failed_.load())
                throw PersistError("recorder failed: " + failureMessage_);
            return;
        }
        closing_ = true;
    }
    notEmpty_.notify_all();
    notFull_.notify_all();
    if (writer_.joinable())
        writer_.join();
    if (failed_.load())
        throw PersistError("recorder failed: " + failureMessage_);
}

void Recorder::throwIfUnusable() const {
    if (failed_.load())
        throw PersistError("recorder is in the failed state: " + failureMessage_);
}

void Recorder::writerLoop() {
    std::ofstream out(config_.tracePath, std::ios::binary | std::ios::trunc);
    bool headerOk = false;
    if (out) {
        out << wire::trace_header() << "\n";
        headerOk = out.good();
    }
    if (!headerOk) {
        std::lock_guard lk(queueMutex_);
        failed_.store(true);
        failureMessage_ = "cannot open trace file: " + config_.tracePath;
        queue_.clear();
        notFull_.notify_all();
        return;
    }

    std::vector<wire::TraceLine> batch;
    for (;;) {
        batch.clear();
        {
            std::unique_lock lk(queueMutex_);
            notEmpty_.wait(lk, [&] { return closing_ || !queue_.empty(); });
            while (!queue_.empty() && batch.size() < config_.batchSize) {
                batch.push_back(std::move(queue_.front()));
                queue_.pop_front();
            }
            if (batch.empty() && closing_)
                break;
        }
        notFull_.notify_all();

        std::string failure;
        for (const auto& item : batch) {
            try {
                const std::string line = std::visit(
                    [](const auto& v) -> std::string {
                        using T = std::decay_t<decltype(v)>;
                        if constexpr (std::is_same_v<T, Event>)
                            return wire::encode_event(v);
                        else if constexpr (std::is_same_v<T, SerializationRecord>)
                            return wire::encode_record(v);
                        else if constexpr (std::is_same_v<T, SbSnapshot>)
                            return wire::encode_sb_snapshot(v);
                        else
                            return wire::encode_static_constant(v);
                    },
                    item);
                out << line << "\n";
                if (!out) {
                    failure = "write failed on " + config_.tracePath;
                    break;
                }
                persisted_.fetch_add(1);
            } catch (const std::exception& e) {
                failure = e.what();
                break;
            }
        }
        if (failure.empty()) {
            out.flush();
            if (!out)
                failure = "flush failed on " + config_.tracePath;
        }
        if (!failure.empty()) {
            std::lock_guard lk(queueMutex_);
            failed_.store(true);
            failureMessage_ = failure;
            queue_.clear();
            notFull_.notify_all();
            return;
        }
    }
    out.flush();
}

LogicalTime Recorder::enqueue(wire::TraceLine line, bool stamp) {
    std::unique_lock lk(queueMutex_);
    notFull_.wait(lk, [&] { return failed_.load() || closing_ || queue_.size() < config_.queueCapacity; });
    if (failed_.load())
        throw PersistError("recorder is in the failed state: " + failureMessage_);
    if (closing_)
        throw PersistError("recorder already closed");
    LogicalTime t = 0;
    if (stamp) {
        // Allocating the time inside the queue lock keeps queue order equal to
        // logical-time order, so the writer persists events already sorted.
        t = clock_.fetch_add(1) + 1;
        std::visit(
            [t](auto& v) {
                using T = std::decay_t<decltype(v)>;
                if constexpr (std::is_same_v<T, Event>)
                    std::visit([t](auto& ev) { ev.time = t; }, v);
                else if constexpr (std::is_same_v<T, SerializationRecord>)
                    v.time = t;
                else if constexpr (std::is_same_v<T, StaticConstantNote>)
                    v.time = t;
            },
            line);
    }
    queue_.push_back(std::move(line));
    enqueued_.fetch_add(1);
    lk.unlock();
    notEmpty_.notify_one();
    return t;
}

void Recorder::enqueueSnapshots(CaptureCtx& ctx) {
    for (auto& [key, plan] : ctx.plans) {
        SbSnapshot snap;
        snap.objectId = key.first;
        snap.logicalTime = key.second;
        snap.plan = plan;
        enqueue(std::move(snap), false);
    }
}

ObjectId Recorder::registerFresh(const void* identity, bool /*traced*/) {
    std::lock_guard lk(registryMutex_);
    auto [it, inserted] = identities_.emplace(identity, 0);
    if (!inserted)
        throw ContractViolation("object identity registered twice");
    it->second = nextObjectId_.fetch_add(1) + 1;
    return it->second;
}

ObjectId Recorder::ensureStructuredId(const void* identity) {
    std::lock_guard lk(registryMutex_);
    auto [it, inserted] = identities_.emplace(identity, 0);
    if (inserted)
        it->second = nextObjectId_.fetch_add(1) + 1;
    return it->second;
}

bool Recorder::registered(const void* identity) const {
    std::lock_guard lk(registryMutex_);
    return identities_.count(identity) != 0;
}

std::optional<ObjectId> Recorder::idOf(const void* identity) const {
    std::lock_guard lk(registryMutex_);
    auto it = identities_.find(identity);
    if (it == identities_.end())
        return std::nullopt;
    return it->second;
}

CapturedValue Recorder::capture(const RuntimeView& value, std::size_t depthRemaining, CaptureCtx& ctx) {
    using V = RuntimeView;
    if (std::holds_alternative<std::monostate>(value.node))
        return CapturedValue::null();
    if (auto* b = std::get_if<bool>(&value.node))
        return CapturedValue::boolean(*b);
    if (auto* i = std::get_if<std::int32_t>(&value.node))
        return CapturedValue::i32(*i);
    if (auto* l = std::get_if<std::int64_t>(&value.node))
        return CapturedValue::i64(*l);
    if (auto* d = std::get_if<double>(&value.node))
        return CapturedValue::f64(*d);
    if (auto* t = std::get_if<V::Text>(&value.node))
        return CapturedValue::text(t->value);
    if (auto* e = std::get_if<V::Enum>(&value.node))
        return CapturedValue::enumConstant(e->typeName, e->constantName);
    if (auto* s = std::get_if<V::Seq>(&value.node)) {
        std::vector<CapturedValue> elems;
        const bool truncated = s->elements.size() > config_.maxSequenceLength;
        const std::size_t n = truncated ? config_.maxSequenceLength : s->elements.size();
        elems.reserve(n);
        for (std::size_t i = 0; i < n; ++i)
            elems.push_back(capture(s->elements[i], depthRemaining > 0 ? depthRemaining - 1 : 0, ctx));
        return CapturedValue::sequence(std::move(elems), truncated);
    }
    if (auto* m = std::get_if<V::MapV>(&value.node)) {
        std::vector<std::pair<CapturedValue, CapturedValue>> entries;
        const bool truncated = m->entries.size() > config_.maxSequenceLength;
        const std::size_t n = truncated ? config_.maxSequenceLength : m->entries.size();
        for (std::size_t i = 0; i < n; ++i) {
            const auto childDepth = depthRemaining > 0 ? depthRemaining - 1 : 0;
            entries.emplace_back(capture(m->entries[i].first, childDepth, ctx),
                                 capture(m->entries[i].second, childDepth, ctx));
        }
        return CapturedValue::map(std::move(entries), truncated);
    }

    const auto& node = std::get<std::shared_ptr<ObjectNode>>(value.node);
    if (!node)
        return CapturedValue::null();

    const auto known = idOf(node->identity);
    if (depthRemaining == 0)
        return known ? CapturedValue::ref(*known, ctx.refTime) : CapturedValue::opaque(node->typeName);

    if (known) {
        if (registry_ && registry_->sbEligible(node->typeName) && !ctx.walkSeen.count(node->identity))
            snapshotStructured(*node, *known, depthRemaining, ctx);
        return CapturedValue::ref(*known, ctx.refTime);
    }
    if (registry_ && registry_->sbEligible(node->typeName)) {
        const ObjectId id = ensureStructuredId(node->identity);
        snapshotStructured(*node, id, depthRemaining, ctx);
        return CapturedValue::ref(id, ctx.refTime);
    }
    // Unregistered and not structure-based reconstructible: degrade.
    return CapturedValue::opaque(node->typeName);
}

void Recorder::snapshotStructured(const ObjectNode& node, ObjectId id, std::size_t depthRemaining, CaptureCtx& ctx) {
    if (!ctx.walkSeen.insert(node.identity).second)
        return;
    const ReconstructionPlan* plan = registry_->plan(node.typeName);
    if (!plan)
        return;
    std::map<std::string, CapturedValue> values;
    for (const auto& [name, view] : node.fields())
        values[name] = capture(view, depthRemaining > 0 ? depthRemaining - 1 : 0, ctx);
    ctx.plans.emplace(std::make_pair(id, ctx.refTime), instantiate_plan(*plan, values));
}

CapturedValue Recorder::capture_value(const RuntimeView& value, std::size_t depthRemaining) {
    throwIfUnusable();
    CaptureCtx ctx;
    ctx.refTime = clock_.fetch_add(1) + 1;
    auto captured = capture(value, depthRemaining, ctx);
    enqueueSnapshots(ctx);
    return captured;
}

ObjectId Recorder::record_construct(const void* identity, const std::string& typeName,
                                    const std::string& constructorName, const std::vector<RuntimeView>& args,
                                    const std::vector<std::pair<std::string, RuntimeView>>& initialFields) {
    throwIfUnusable();
    const ObjectId id = registerFresh(identity, true);

    CaptureCtx ctx;
    ctx.refTime = clock_.fetch_add(1) + 1;
    ctx.walkSeen.insert(identity); // the object under construction is not snapshotted

    ConstructEvent event;
    event.objectId = id;
    event.typeName = typeName;
    event.constructorName = constructorName;
    for (const auto& a : args)
        event.args.push_back(capture(a, config_.maxDepth, ctx));
    for (const auto& [name, view] : initialFields)
        event.initialFields[name] = capture(view, config_.maxDepth, ctx);

    enqueueSnapshots(ctx);
    enqueue(Event{std::move(event)}, true);
    return id;
}

CallId Recorder::record_method_start(const void* receiverIdentity, const std::string& qualifiedMethodName,
                                     const std::vector<RuntimeView>& args) {
    throwIfUnusable();
    const auto receiver = idOf(receiverIdentity);
    if (!receiver)
        throw ContractViolation("record_method_start: receiver is not registered");

    const CallId callId = nextCallId_.fetch_add(1) + 1;
    {
        std::lock_guard lk(registryMutex_);
        openCalls_.insert(callId);
    }

    CaptureCtx ctx;
    ctx.refTime = clock_.fetch_add(1) + 1;

    MethodStartEvent event;
    event.callId = callId;
    event.receiver = *receiver;
    event.qualifiedMethodName = qualifiedMethodName;
    for (const auto& a : args)
        event.args.push_back(capture(a, config_.maxDepth, ctx));

    enqueueSnapshots(ctx);
    enqueue(Event{std::move(event)}, true);
    return callId;
}

void Recorder::record_method_end(CallId callId, bool abnormal) {
    throwIfUnusable();
    {
        std::lock_guard lk(registryMutex_);
        if (!openCalls_.erase(callId))
            throw ContractViolation("record_method_end: unknown call id " + std::to_string(callId));
    }
    MethodEndEvent event;
    event.callId = callId;
    event.abnormal = abnormal;
    enqueue(Event{event}, true);
}

void Recorder::record_field_set(const void* receiverIdentity, const std::string& fieldName,
                                const RuntimeView& oldValue, const RuntimeView& newValue) {
    throwIfUnusable();
    const auto receiver = idOf(receiverIdentity);
    if (!receiver)
        throw ContractViolation("record_field_set: receiver is not registered");

    CaptureCtx ctx;
    ctx.refTime = clock_.fetch_add(1) + 1;

    FieldSetEvent event;
    event.receiver = *receiver;
    event.fieldName = fieldName;
    event.oldValue = capture(oldValue, config_.maxDepth, ctx);
    event.newValue = capture(newValue, config_.maxDepth, ctx);

    enqueueSnapshots(ctx);
    enqueue(Event{std::move(event)}, true);
}

EntrySnapshot Recorder::capture_entry(const RuntimeView& receiver, const std::vector<RuntimeView>& args) {
    throwIfUnusable();
    CaptureCtx ctx;
    ctx.refTime = clock_.fetch_add(1) + 1;

    EntrySnapshot entry;
    entry.captureTime = ctx.refTime;
    entry.receiver = capture(receiver, config_.maxDepth, ctx);
    for (const auto& a : args)
        entry.args.push_back(capture(a, config_.maxDepth, ctx));
    entry.plans = std::move(ctx.plans);
    return entry;
}

SerializationRecord Recorder::request_serialization(const std::string& pointId, const RuntimeView& receiver,
                                                    const std::vector<RuntimeView>& args,
                                                    const RuntimeView& returnValue) {
    return request_serialization(pointId, capture_entry(receiver, args), returnValue);
}

SerializationRecord Recorder::request_serialization(const std::string& pointId, EntrySnapshot entry,
                                                    const RuntimeView& returnValue) {
    throwIfUnusable();
    CaptureCtx ctx;
    ctx.refTime = clock_.fetch_add(1) + 1;

    SerializationRecord record;
    record.pointId = pointId;
    record.captureTime = entry.captureTime;
    record.receiver = std::move(entry.receiver);
    record.args = std::move(entry.args);
    record.returnValue = capture(returnValue, config_.maxDepth, ctx);
    record.embeddedPlans = std::move(entry.plans);
    for (auto& [key, plan] : ctx.plans)
        record.embeddedPlans.emplace(key, std::move(plan));

    record.time = enqueue(record, true);
    return record;
}

void Recorder::note_static_constant(const std::string& ownerTypeName, const std::string& fieldName,
                                    const void* identity, const std::string& objectTypeName) {
    throwIfUnusable();
    ObjectId id;
    if (auto known = idOf(identity)) {
        id = *known;
    } else if (registry_ && registry_->sbEligible(objectTypeName)) {
        id = ensureStructuredId(identity);
    } else {
        throw ContractViolation("static constant holds an unregistered object of type " + objectTypeName);
    }
    StaticConstantNote note;
    note.typeName = ownerTypeName;
    note.fieldName = fieldName;
    note.objectId = id;
    enqueue(note, true);
}

} // namespace pcs
