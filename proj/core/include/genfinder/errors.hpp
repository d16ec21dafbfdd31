#pragma once

#include <stdexcept>
#include <string>

namespace genfinder {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// matrix kernel
struct DegenerateSpectrum : Error { using Error::Error; };
struct NonDiagonalizable : Error { using Error::Error; };
struct LogUndefined : Error { using Error::Error; };
struct NotSquareOfSquare : Error { using Error::Error; };
struct NotHermitian : Error { using Error::Error; };
struct Overflow : Error { using Error::Error; };
struct NumericalFailure : Error { using Error::Error; };

// domain model
struct DimensionMismatch : Error { using Error::Error; };
struct InvalidSnapshot : Error { using Error::Error; };
struct InconsistentSeries : Error { using Error::Error; };
struct NotLindblad : Error { using Error::Error; };

// sat / reduction
struct ParseError : Error {
    ParseError(const std::string& what, int line_no) : Error(what), line(line_no) {}
    int line;
};
struct InvalidClause : Error { using Error::Error; };
struct TooLarge : Error { using Error::Error; };
struct BalancingFailed : Error { using Error::Error; };

}  // namespace genfinder
