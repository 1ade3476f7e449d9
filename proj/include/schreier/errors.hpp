#ifndef SCHREIER_ERRORS_HPP
#define SCHREIER_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace schreier {

// Every failure mode that callers are expected to handle gets its own type,
// so the CLI can map them to stable result codes instead of pattern matching
// on message text.

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// An operation needed elements of a prefix beyond the ones that are explicitly
// listed or derivable from its tail policy.
struct InsufficientPrefix : Error {
    explicit InsufficientPrefix(const std::string& what) : Error(what) {}
};

// A configured work limit was hit before the computation finished.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& what) : Error(what) {}
};

// A set does not split into successive maximal blocks of the requested family.
struct NotDecomposable : Error {
    explicit NotDecomposable(const std::string& what) : Error(what) {}
};

// The greedy search for an auxiliary transfer prefix ran out of candidates.
struct AuxiliaryNotFound : Error {
    explicit AuxiliaryNotFound(const std::string& what) : Error(what) {}
};

// A sequence sample does not provide vectors for all indices an operation
// needs (indices are 1-based positions into the sample).
struct SampleCoverage : Error {
    explicit SampleCoverage(const std::string& what) : Error(what) {}
};

// Malformed textual input (ordinal notation, family or space expressions,
// vectors, prefixes).
struct ParseError : Error {
    explicit ParseError(const std::string& what) : Error(what) {}
};

// Ill-formed argument combinations that violate a documented precondition.
struct InvalidArgument : Error {
    explicit InvalidArgument(const std::string& what) : Error(what) {}
};

} // namespace schreier

#endif
