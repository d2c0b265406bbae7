#ifndef VINBERG_JSON_IO_HPP
#define VINBERG_JSON_IO_HPP

#include <string>

#include "json.hpp"
#include "vinberg/cartan.hpp"
#include "vinberg/coxeter.hpp"
#include "vinberg/deform.hpp"
#include "vinberg/integral.hpp"
#include "vinberg/polytope.hpp"
#include "vinberg/realize.hpp"

namespace vinberg {

using Json = nlohmann::ordered_json;

/**
 * Scalar wire format: exact integers are JSON numbers, other rationals "p/q"
 * strings, field elements with radical parts arrays [a, b, c, d] of rational
 * components, and approximate values {"approx": x}.
 */
Json scalar_to_json(const Scalar& s);
Scalar scalar_from_json(const Json& j);

/** Ridge labels: integers >= 2, with "inf" encoding oo. */
Json label_to_json(int label);
int label_from_json(const Json& j);

Json coxeter_to_json(const CoxeterMatrix& m);
CoxeterMatrix coxeter_from_json(const Json& j);

Json cartan_to_json(const CartanMatrix& a);
CartanMatrix cartan_from_json(const Json& j);

/**
 * Polytopes travel as build recipes, so parsing re-runs the construction and
 * keeps the certified lattice: op is one of "simplex", "truncate", "glue",
 * "glue-at", "lattice". The parsed document keeps the normalized source for
 * byte-identical re-emission.
 */
struct PolytopeDoc {
  LabeledPolytope polytope;
  Json source;
};

PolytopeDoc polytope_from_json(const Json& j);
/** The recipe serializer for catalog entries; parse(emit(x)) re-emits x. */
Json polytope_recipe_json(const Json& source);

/**
 * Point wire format: the polytope recipe, one block per leaf holding the core
 * and cut facet names plus the materialized core Cartan matrix, and one block
 * per gluing edge holding the leaf pair, circuit names, and bending value.
 * Parsing re-derives the chart, reads the gauge class off the matrices, and
 * revalidates through the chart solver.
 */
Json point_to_json(const DeformationPoint& pt, const Json& polytope_source);
DeformationPoint point_from_json(const Json& j);

Json values_to_json(const ChartValues& v);
ChartValues values_from_json(const Json& j);

Json certificate_to_json(const IntegralCertificate& c);
Json chart_to_json(const CellChart& chart);

/** Matrices as float64 rows; hexfloat renders bit-exact reproducible strings. */
Json realization_to_json(const VinbergRealization& r, bool hexfloat = false);

/** Wrapper attaching ParseError file/position context to json exceptions. */
Json parse_text(const std::string& text);

}  // namespace vinberg

#endif  // VINBERG_JSON_IO_HPP
