#pragma once

// Deterministic random generators shared by the property-style tests.
// Sampling avoids std::uniform_int_distribution so that sequences are
// reproducible across standard library implementations.

#include "pcs/events.hpp"
#include "pcs/values.hpp"

#include <random>
#include <string>
#include <vector>

namespace pcs::testgen {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    std::uint64_t below(std::uint64_t n) { return n ? engine_() % n : 0; }
    std::int64_t intIn(std::int64_t lo, std::int64_t hi) {
        return lo + static_cast<std::int64_t>(below(static_cast<std::uint64_t>(hi - lo + 1)));
    }
    bool chance(double p) { return static_cast<double>(engine_()) / static_cast<double>(UINT64_MAX) < p; }
    double f64() {
        // Mix of plain values and awkward ones (negative zero, subnormal-ish, NaN).
        switch (below(8)) {
        case 0: return 0.0;
        case 1: return -0.0;
        case 2: return 1.0 / 3.0;
        case 3: return -12345.6789e-3;
        case 4: return static_cast<double>(intIn(-1000000, 1000000));
        case 5: return std::numeric_limits<double>::infinity();
        case 6: return std::numeric_limits<double>::quiet_NaN();
        default: return static_cast<double>(next()) / 977.0;
        }
    }
    std::string identifier() {
        static const char* names[] = {"age", "area", "habitat", "eyeColor", "points", "weight",
                                      "coordinates", "parent", "entries", "label", "size", "node"};
        return names[below(std::size(names))];
    }
    std::string textValue() {
        switch (below(5)) {
        case 0: return "";
        case 1: return "42, 42";
        case 2: return "line\nbreak\t\"quoted\"";
        case 3: return "unicode: \xC3\xA5\xC3\xA4\xC3\xB6";
        default: return "s" + std::to_string(below(100000));
        }
    }

    std::mt19937_64& engine() { return engine_; }

  private:
    std::mt19937_64 engine_;
};

inline CapturedValue random_value(Rng& rng, int depth) {
    const auto pick = rng.below(depth > 0 ? 8 : 5);
    switch (pick) {
    case 0: return CapturedValue::boolean(rng.chance(0.5));
    case 1: return CapturedValue::i32(static_cast<std::int32_t>(rng.intIn(-100000, 100000)));
    case 2: return CapturedValue::f64(rng.f64());
    case 3: return CapturedValue::text(rng.textValue());
    case 4:
        if (rng.chance(0.3))
            return CapturedValue::null();
        return CapturedValue::ref(rng.below(500) + 1, rng.below(10000) + 1);
    case 5: {
        std::vector<CapturedValue> elems;
        const auto n = rng.below(4);
        for (std::uint64_t i = 0; i < n; ++i)
            elems.push_back(random_value(rng, depth - 1));
        return CapturedValue::sequence(std::move(elems), rng.chance(0.1));
    }
    case 6: {
        std::vector<std::pair<CapturedValue, CapturedValue>> entries;
        const auto n = rng.below(3);
        for (std::uint64_t i = 0; i < n; ++i)
            entries.emplace_back(CapturedValue::text("k" + std::to_string(i)), random_value(rng, depth - 1));
        return CapturedValue::map(std::move(entries), false);
    }
    default: return CapturedValue::enumConstant("EyeColor", rng.chance(0.5) ? "BROWN" : "GREEN");
    }
}

inline Event random_event(Rng& rng, LogicalTime time) {
    switch (rng.below(4)) {
    case 0: {
        ConstructEvent c;
        c.time = time;
        c.objectId = rng.below(1000) + 1;
        c.typeName = "T" + std::to_string(rng.below(20));
        c.constructorName = c.typeName + "(text)";
        const auto n = rng.below(3);
        for (std::uint64_t i = 0; i < n; ++i)
            c.args.push_back(random_value(rng, 2));
        const auto f = rng.below(3);
        for (std::uint64_t i = 0; i < f; ++i)
            c.initialFields[rng.identifier() + std::to_string(i)] = random_value(rng, 2);
        return c;
    }
    case 1: {
        MethodStartEvent s;
        s.time = time;
        s.callId = rng.below(500) + 1;
        s.receiver = rng.below(1000) + 1;
        s.qualifiedMethodName = "T" + std::to_string(rng.below(20)) + "::m" + std::to_string(rng.below(5)) + "(i32)";
        const auto n = rng.below(3);
        for (std::uint64_t i = 0; i < n; ++i)
            s.args.push_back(random_value(rng, 2));
        return s;
    }
    case 2: {
        MethodEndEvent m;
        m.time = time;
        m.callId = rng.below(500) + 1;
        m.abnormal = rng.chance(0.1);
        return m;
    }
    default: {
        FieldSetEvent f;
        f.time = time;
        f.receiver = rng.below(1000) + 1;
        f.fieldName = rng.identifier();
        f.oldValue = random_value(rng, 1);
        f.newValue = random_value(rng, 1);
        return f;
    }
    }
}

} // namespace pcs::testgen
