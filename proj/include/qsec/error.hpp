// Error taxonomy shared by all modules; each code maps to a distinct CLI exit status.
#pragma once

#include <stdexcept>
#include <string>

namespace qsec {

enum class ErrorCode {
    Disagreement = 1,          // independent methods produced different values
    ParseError = 2,            // malformed input file or unknown format
    InvalidKnot = 3,           // structurally invalid knot (too few vertices, self-contact, ...)
    GenericityFailure = 4,     // degeneracy survived the perturb/retry budget
    NonGenericProjection = 5,  // no usable projection direction found
    DegenerateConfiguration = 6,  // lines/points in special position beyond tolerance
    InfiniteFamily = 7,        // a line lies inside a transversal variety
    TangencyAmbiguity = 8,     // tangential intersection or hit too close to a segment endpoint
    NonIntegralSum = 9,        // closed-knot weighted sum not divisible by the extremal count
    ContinuationStall = 10,    // curve tracing step size collapsed
    SeedResolutionFailure = 11,  // a traced curve ended at a boundary point with no matching seed
    UnconsumedSeed = 12,       // boundary seed left over after tracing (missed curve)
    ZeroCurvature = 13,        // second derivative too small to orient a strand
    NonTransverse = 14,        // sign determinant vanishes (non-transverse crossing)
    DegenerateHull = 15,       // coplanar vertex set without a usable planar fallback
    ClosedComponentCrossing = 16,  // closed collinearity component participates in crossings
    UsageError = 17,           // bad CLI flags or unsupported flag combination
};

const char* error_code_name(ErrorCode c);

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(std::string(error_code_name(code)) + ": " + message), code_(code) {}

    ErrorCode code() const { return code_; }
    int exit_status() const { return static_cast<int>(code_); }

private:
    ErrorCode code_;
};

}  // namespace qsec
