#ifndef BT_ERRORS_HPP
#define BT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace bt {

// Base class for all library errors.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// A comparison or normalization could not be certified within the
// configured coefficient window.
struct PrecisionExhausted : Error {
    explicit PrecisionExhausted(const std::string& msg) : Error("precision exhausted: " + msg) {}
};

struct DivisionByZero : Error {
    explicit DivisionByZero(const std::string& msg) : Error("division by zero: " + msg) {}
};

struct RankDeficient : Error {
    explicit RankDeficient(const std::string& msg) : Error("rank deficient: " + msg) {}
};

struct BadWittData : Error {
    explicit BadWittData(const std::string& msg) : Error("bad Witt data: " + msg) {}
};

struct NotSkew : Error {
    explicit NotSkew(const std::string& msg) : Error("not skew: " + msg) {}
};

struct TwoZeroComponents : Error {
    explicit TwoZeroComponents(const std::string& msg) : Error("two zero components: " + msg) {}
};

struct ZeroComponentInJ : Error {
    explicit ZeroComponentInJ(const std::string& msg) : Error("zero component with swapped index: " + msg) {}
};

struct FactorizationMismatch : Error {
    explicit FactorizationMismatch(const std::string& msg) : Error("factorization mismatch: " + msg) {}
};

struct IndexOutOfRange : Error {
    explicit IndexOutOfRange(const std::string& msg) : Error("index out of range: " + msg) {}
};

struct NotSelfDual : Error {
    explicit NotSelfDual(const std::string& msg) : Error("not self-dual: " + msg) {}
};

struct NotRepresentable : Error {
    explicit NotRepresentable(const std::string& msg) : Error("not representable: " + msg) {}
};

struct BadComponentPoint : Error {
    explicit BadComponentPoint(const std::string& msg) : Error("bad component point: " + msg) {}
};

struct DoesNotSplit : Error {
    explicit DoesNotSplit(const std::string& msg) : Error("does not split: " + msg) {}
};

struct NotInImage : Error {
    explicit NotInImage(const std::string& msg) : Error("not in image: " + msg) {}
};

struct OutputNotSelfDual : Error {
    explicit OutputNotSelfDual(const std::string& msg) : Error("output not self-dual: " + msg) {}
};

struct NotPositiveIndex : Error {
    explicit NotPositiveIndex(const std::string& msg) : Error("not a positive index: " + msg) {}
};

struct InvalidTranslation : Error {
    explicit InvalidTranslation(const std::string& msg) : Error("invalid translation: " + msg) {}
};

struct GridMissesJBeta : Error {
    explicit GridMissesJBeta(const std::string& msg) : Error("grid misses j_beta: " + msg) {}
};

struct NotCompatibleSample : Error {
    explicit NotCompatibleSample(const std::string& msg) : Error("sample not compatible: " + msg) {}
};

struct NotProductDecomposable : Error {
    explicit NotProductDecomposable(const std::string& msg) : Error("not product decomposable: " + msg) {}
};

struct NotATranslation : Error {
    explicit NotATranslation(const std::string& msg) : Error("not a translation: " + msg) {}
};

struct NotAffine : Error {
    explicit NotAffine(const std::string& msg) : Error("not affine: " + msg) {}
};

struct SchemaError : Error {
    explicit SchemaError(const std::string& msg) : Error("schema error: " + msg) {}
};

struct ValidationError : Error {
    explicit ValidationError(const std::string& msg) : Error("validation error: " + msg) {}
};

} // namespace bt

#endif
