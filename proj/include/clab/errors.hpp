#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace clab {

enum class Errc {
    DomainMismatch,
    InvalidArgument,
    DuplicateConcept,
    OutOfRange,
    CapExceeded,
    DishonestOracle,
    EmptyVersionSpace,
    RoundLimit,
    InconsistentOracle,
    NotVcdOne,
    OrderingNotFound,
    NotInjective,
    ConfigError,
    ParseError,
    PropertyViolation,
};

std::string_view errc_name(Errc c) noexcept;

class Error : public std::runtime_error {
public:
    Error(Errc code, const std::string& what) : std::runtime_error(what), code_(code) {}
    Errc code() const noexcept { return code_; }

private:
    Errc code_;
};

[[noreturn]] inline void fail(Errc code, const std::string& msg) { throw Error(code, msg); }

}  // namespace clab
