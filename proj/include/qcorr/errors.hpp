#pragma once

#include <stdexcept>
#include <string>

namespace qcorr {

// Every failure thrown by the library derives from Error, so callers can map
// the whole family to one exit code.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define QCORR_ERROR(Name)                      \
    class Name : public Error {                \
    public:                                    \
        using Error::Error;                    \
    }

QCORR_ERROR(NonHermitian);
QCORR_ERROR(NotPSD);
QCORR_ERROR(DimMismatch);
QCORR_ERROR(DomainError);
QCORR_ERROR(NotUnitary);
QCORR_ERROR(InvalidChannel);
QCORR_ERROR(DegenerateSpectrum);
QCORR_ERROR(DegenerateMarginal);
QCORR_ERROR(NotPure);
QCORR_ERROR(Unsupported);

#undef QCORR_ERROR

// Raised by state validation; `invariant` names the check that failed.
class InvalidState : public Error {
public:
    InvalidState(std::string invariant, const std::string& what)
        : Error(what), invariant_(std::move(invariant)) {}
    const std::string& invariant() const { return invariant_; }

private:
    std::string invariant_;
};

} // namespace qcorr
