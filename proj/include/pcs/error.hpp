#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace pcs {

/// Base class for all toolkit errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// A caller broke an operation's precondition.
struct ContractViolation : Error {
    explicit ContractViolation(const std::string& msg) : Error(msg) {}
};

/// A value has no wire representation.
struct EncodeError : Error {
    explicit EncodeError(const std::string& msg) : Error(msg) {}
};

/// A wire line could not be parsed. `line` is 1-based, 0 when unknown.
struct DecodeError : Error {
    DecodeError(const std::string& msg, std::uint64_t lineNo = 0)
        : Error(lineNo ? msg + " (line " + std::to_string(lineNo) + ")" : msg), line(lineNo) {}
    std::uint64_t line = 0;
};

/// Pre-execution analysis failed (unresolvable declaration etc.).
struct AnalysisError : Error {
    explicit AnalysisError(const std::string& msg) : Error(msg) {}
};

/// The recorder could not persist events and entered the failed state.
struct PersistError : Error {
    explicit PersistError(const std::string& msg) : Error(msg) {}
};

/// Plan instantiation was handed incomplete values.
struct InstantiationError : Error {
    explicit InstantiationError(const std::string& msg) : Error(msg) {}
};

/// A reference could not be resolved during emission.
struct EmitError : Error {
    explicit EmitError(const std::string& msg) : Error(msg) {}
};

} // namespace pcs
