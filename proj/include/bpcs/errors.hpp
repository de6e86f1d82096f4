#pragma once

#include <stdexcept>
#include <string>

namespace bpcs {

/// Base class for operational errors. `category()` is the stable
/// machine-parsable tag the CLI prints as "error: <category>: <detail>".
class Error : public std::runtime_error {
public:
    Error(std::string category, const std::string& message)
        : std::runtime_error(message), category_(std::move(category)) {}

    const std::string& category() const noexcept { return category_; }

private:
    std::string category_;
};

/// Malformed or inconsistent frame/container data (bad magic, bad header
/// field, truncated raster, mixed sequence dimensions).
class FormatError : public Error {
public:
    explicit FormatError(const std::string& message) : Error("format", message) {}
};

/// File system failures, always carrying the offending path.
class IoError : public Error {
public:
    explicit IoError(const std::string& message) : Error("io", message) {}
};

/// Invalid embedding configuration (threshold, frame range, stride, planes).
class ConfigError : public Error {
public:
    explicit ConfigError(const std::string& message) : Error("config", message) {}
};

/// Payload does not fit the cover at the configured threshold.
class CapacityError : public Error {
public:
    explicit CapacityError(const std::string& message) : Error("capacity", message) {}
};

/// No embedded container present (magic mismatch on extraction).
class NotFoundError : public Error {
public:
    explicit NotFoundError(const std::string& message) : Error("not-found", message) {}
};

/// Container present but damaged: bad version, reserved bits, CRC mismatch,
/// or fewer complex patches than the header demands.
class CorruptionError : public Error {
public:
    explicit CorruptionError(const std::string& message) : Error("corrupt", message) {}
};

/// Inputs to a comparison disagree in shape, length, or totals.
class MismatchError : public Error {
public:
    explicit MismatchError(const std::string& message) : Error("mismatch", message) {}
};

}  // namespace bpcs
