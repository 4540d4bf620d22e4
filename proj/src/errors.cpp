#include "clab/errors.hpp"

namespace clab {

std::string_view errc_name(Errc c) noexcept {
    switch (c) {
        case Errc::DomainMismatch: return "DomainMismatch";
        case Errc::InvalidArgument: return "InvalidArgument";
        case Errc::DuplicateConcept: return "DuplicateConcept";
        case Errc::OutOfRange: return "OutOfRange";
        case Errc::CapExceeded: return "CapExceeded";
        case Errc::DishonestOracle: return "DishonestOracle";
        case Errc::EmptyVersionSpace: return "EmptyVersionSpace";
        case Errc::RoundLimit: return "RoundLimit";
        case Errc::InconsistentOracle: return "InconsistentOracle";
        case Errc::NotVcdOne: return "NotVcdOne";
        case Errc::OrderingNotFound: return "OrderingNotFound";
        case Errc::NotInjective: return "NotInjective";
        case Errc::ConfigError: return "ConfigError";
        case Errc::ParseError: return "ParseError";
        case Errc::PropertyViolation: return "PropertyViolation";
    }
    return "Unknown";
}

}  // namespace clab
