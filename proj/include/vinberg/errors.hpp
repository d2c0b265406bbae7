#ifndef VINBERG_ERRORS_HPP
#define VINBERG_ERRORS_HPP

#include <stdexcept>
#include <string>
#include <vector>

namespace vinberg {

/** Base class for all library errors. */
struct Error : std::runtime_error {
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

struct DivisionByZeroError : Error {
  DivisionByZeroError() : Error("division by zero") {}
};

/** Raised when an exact cosine entry is requested for the label oo. */
struct InfiniteLabelError : Error {
  InfiniteLabelError() : Error("cosine entry undefined for label oo") {}
};

/** Integrality queried on an approximate scalar: the answer would be a guess. */
struct ApproxIntegralityError : Error {
  ApproxIntegralityError() : Error("integrality is undecidable on approximate data") {}
};

/** Exact pipeline fed approximate data. */
struct ApproxDataError : Error {
  explicit ApproxDataError(const std::string& where)
      : Error("approximate data reached an exact-only path: " + where) {}
};

struct InvalidLabelError : Error {
  explicit InvalidLabelError(const std::string& what) : Error(what) {}
};

/** Structural validation failure; `violations` lists every offending item. */
struct ValidationError : Error {
  std::vector<std::string> violations;
  explicit ValidationError(std::vector<std::string> v)
      : Error(v.empty() ? std::string("validation failed")
                        : "validation failed: " + v.front() +
                              (v.size() > 1 ? " (+" + std::to_string(v.size() - 1) + " more)" : "")),
        violations(std::move(v)) {}
};

struct ReducibleError : Error {
  ReducibleError() : Error("diagram is reducible but an irreducible one is required") {}
};

/** oo-labelled diagram whose pinned cosine matrix is PSD: affine vs large undecided. */
struct AmbiguousClassError : Error {
  AmbiguousClassError() : Error("classification ambiguous (affine-or-large) with oo labels") {}
};

/** Interval refinement hit the precision cap without certifying a sign. */
struct InconclusiveError : Error {
  InconclusiveError() : Error("sign not certified at maximal working precision") {}
};

struct RankError : Error {
  explicit RankError(const std::string& what) : Error(what) {}
};

struct TooManyCircuitsError : Error {
  TooManyCircuitsError() : Error("circuit enumeration exceeded the guard bound") {}
};

struct NotTruncationPolytopeError : Error {
  NotTruncationPolytopeError() : Error("operation requires a construction-tree polytope") {}
};

struct MissingLabelError : Error {
  explicit MissingLabelError(const std::string& what) : Error("missing ridge label: " + what) {}
};

struct BadDimensionError : Error {
  explicit BadDimensionError(const std::string& what) : Error(what) {}
};

struct UnknownVertexError : Error {
  explicit UnknownVertexError(const std::string& what) : Error("unknown vertex: " + what) {}
};

struct NotPrismaticError : Error {
  explicit NotPrismaticError(const std::string& what) : Error("not a prismatic circuit: " + what) {}
};

struct LinkMismatchError : Error {
  explicit LinkMismatchError(const std::string& what) : Error(what) {}
};

/** A truncation or cut degenerates (polar span not a hyperplane, R = 0, ...). */
struct TruncationDegenerateError : Error {
  explicit TruncationDegenerateError(const std::string& what) : Error(what) {}
};

struct UnsupportedShapeError : Error {
  explicit UnsupportedShapeError(const std::string& what) : Error(what) {}
};

struct NoProbeCircuitError : Error {
  NoProbeCircuitError() : Error("no relevant circuit crosses the cut") {}
};

struct DuplicateNameError : Error {
  explicit DuplicateNameError(const std::string& name)
      : Error("duplicate facet name: " + name) {}
};

/** Supplied coordinates violate a chart constraint (product relation, positivity, gluing match). */
struct ConstraintViolatedError : Error {
  explicit ConstraintViolatedError(const std::string& what) : Error("constraint violated: " + what) {}
};

/** Point leaves the cell: a leaf matrix is not negative type of full rank. */
struct NotLoxodromicError : Error {
  explicit NotLoxodromicError(const std::string& what) : Error("not loxodromic: " + what) {}
};

/** Deformation space is empty (dimension bound exceeded or unrealizable stabilizer). */
struct EmptyCellError : Error {
  explicit EmptyCellError(const std::string& what) : Error("empty deformation space: " + what) {}
};

struct NonPositiveBendError : Error {
  NonPositiveBendError() : Error("bending factor must be positive") {}
};

struct NotEssentialError : Error {
  explicit NotEssentialError(const std::string& what) : Error("circuit is not essential: " + what) {}
};

struct BadEdgeProductError : Error {
  explicit BadEdgeProductError(const std::string& what) : Error("bad edge product: " + what) {}
};

/** Integrality queried for a piece that is not irreducible and large. */
struct NotLargeIrreducibleError : Error {
  explicit NotLargeIrreducibleError(const std::string& what)
      : Error("integrality requires an irreducible large piece: " + what) {}
};

struct UnknownNameError : Error {
  explicit UnknownNameError(const std::string& name) : Error("unknown name: " + name) {}
};

struct ToleranceExceededError : Error {
  explicit ToleranceExceededError(const std::string& what) : Error("tolerance exceeded: " + what) {}
};

/** Polar span of a vertex or circuit fails to be a hyperplane. */
struct NotAHyperplaneError : Error {
  explicit NotAHyperplaneError(const std::string& what) : Error(what) {}
};

/** A cut hyperplane misses the relative interior of an incident edge. */
struct EdgeIntersectionOutsideError : Error {
  explicit EdgeIntersectionOutsideError(const std::string& what) : Error(what) {}
};

struct RankDeficientError : Error {
  explicit RankDeficientError(const std::string& what) : Error(what) {}
};

struct ParseError : Error {
  explicit ParseError(const std::string& what) : Error("parse error: " + what) {}
};

}  // namespace vinberg

#endif
