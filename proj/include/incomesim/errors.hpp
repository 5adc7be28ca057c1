#pragma once

#include <stdexcept>
#include <string>

namespace incomesim {

/// Base class for all validation and computation errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

struct MissingColumn : Error { using Error::Error; };
struct NonContiguousYears : Error {
    int year;
    NonContiguousYears(const std::string& msg, int y) : Error(msg), year(y) {}
};
struct NonPositiveValue : Error { using Error::Error; };
struct YearOutOfRange : Error { using Error::Error; };
struct OverlappingBins : Error { using Error::Error; };
struct InvalidData : Error { using Error::Error; };

struct DegenerateWindow : Error { using Error::Error; };
struct EconomyTooShort : Error { using Error::Error; };
struct MissingAgeCounts : Error { using Error::Error; };

struct EmptyTail : Error { using Error::Error; };
struct NonFiniteMean : Error { using Error::Error; };
struct DegenerateMean : Error { using Error::Error; };
struct InsufficientTailBins : Error { using Error::Error; };
struct InsufficientBins : Error { using Error::Error; };
struct PopulationUnderflow : Error { using Error::Error; };
struct OpenBinUnresolved : Error { using Error::Error; };
struct DisjointSupport : Error { using Error::Error; };
struct NoOverlap : Error { using Error::Error; };

} // namespace incomesim
