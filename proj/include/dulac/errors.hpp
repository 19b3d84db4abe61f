#ifndef DULAC_ERRORS_HPP
#define DULAC_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dulac {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// ring
struct PoleAtPoint : Error {
    explicit PoleAtPoint(const std::string& msg) : Error("PoleAtPoint: " + msg) {}
};

// jets
struct DimensionMismatch : Error {
    explicit DimensionMismatch(const std::string& msg) : Error("DimensionMismatch: " + msg) {}
};
struct NotAUnit : Error {
    explicit NotAUnit(const std::string& msg) : Error("NotAUnit: " + msg) {}
};
struct ZeroJet : Error {
    explicit ZeroJet(const std::string& msg) : Error("ZeroJet: " + msg) {}
};
struct NeedsLinearChange : Error {
    explicit NeedsLinearChange(const std::string& msg) : Error("NeedsLinearChange: " + msg) {}
};

// resonance
struct InvalidOrdering : Error {
    explicit InvalidOrdering(const std::string& msg) : Error("InvalidOrdering: " + msg) {}
};
struct WrongCase : Error {
    explicit WrongCase(const std::string& msg) : Error("WrongCase: " + msg) {}
};

// normal form
struct NonUnitTimeFactor : Error {
    explicit NonUnitTimeFactor(const std::string& msg) : Error("NonUnitTimeFactor: " + msg) {}
};

// dulac
struct MissingLowerOrder : Error {
    explicit MissingLowerOrder(const std::string& msg) : Error("MissingLowerOrder: " + msg) {}
};
struct NotInNormalForm : Error {
    explicit NotInNormalForm(const std::string& msg) : Error("NotInNormalForm: " + msg) {}
};

// oracle
struct StepUnderflow : Error {
    explicit StepUnderflow(const std::string& msg) : Error("StepUnderflow: " + msg) {}
};

// cli / io
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error("ParseError: " + msg) {}
};
struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("ValidationError: " + msg) {}
};

} // namespace dulac

#endif
