#pragma once

#include <string>
#include <vector>

#include "gridslp/grammar.hpp"

namespace gridslp {

enum class ViolationKind {
    Cycle,
    UndefinedReference,
    SortMismatch,        // ground where a context is required or vice versa
    DimensionMismatch,
    HoleGeometry,        // empty hole or hole outside the frame
    StartNotGround,
    MissingStart,
    Overflow,
    HoleMarkerInAlphabet,
};

const char* to_string(ViolationKind k) noexcept;

struct Violation {
    ViolationKind kind;
    SymbolId symbol = kNoSymbol;
    std::string message;
};

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const noexcept { return violations.empty(); }
    bool has(ViolationKind k) const noexcept;
};

struct ValidateOptions {
    char32_t hole_marker = U'#';
};

/// Lists every structural violation of g. Never throws on bad input.
ValidationReport validate(const Grammar& g, const ValidateOptions& opts = {});

/// Throws InvalidGrammar with the first violation if g is not well formed.
void require_valid(const Grammar& g, const ValidateOptions& opts = {});

}  // namespace gridslp
