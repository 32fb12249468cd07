#pragma once

#include <stdexcept>
#include <string>

namespace torman {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct VariableMismatch : Error {
    explicit VariableMismatch(const std::string& msg) : Error(msg) {}
};

struct NonInvertibleImage : Error {
    explicit NonInvertibleImage(const std::string& msg) : Error(msg) {}
};

struct NonUnimodularVertex : Error {
    explicit NonUnimodularVertex(const std::string& msg) : Error(msg) {}
};

struct NonSmoothCone : Error {
    explicit NonSmoothCone(const std::string& msg) : Error(msg) {}
};

struct RidgePairingFailure : Error {
    explicit RidgePairingFailure(const std::string& msg) : Error(msg) {}
};

struct TorsionDetected : Error {
    explicit TorsionDetected(const std::string& msg) : Error(msg) {}
};

struct RankMismatch : Error {
    explicit RankMismatch(const std::string& msg) : Error(msg) {}
};

struct DecompositionFailed : Error {
    explicit DecompositionFailed(const std::string& msg) : Error(msg) {}
};

struct BasisNotFree : Error {
    explicit BasisNotFree(const std::string& msg) : Error(msg) {}
};

struct IncompatibleTuple : Error {
    explicit IncompatibleTuple(const std::string& msg) : Error(msg) {}
};

struct ParseError : Error {
    ParseError(const std::string& msg, std::size_t pos)
        : Error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
    std::size_t position;
};

struct FuelExhausted : Error {
    explicit FuelExhausted(const std::string& msg) : Error(msg) {}
};

} // namespace torman
