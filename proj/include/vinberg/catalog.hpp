#ifndef VINBERG_CATALOG_HPP
#define VINBERG_CATALOG_HPP

#include <string>
#include <vector>

#include "vinberg/json_io.hpp"

namespace vinberg {

/**
 * Embedded example polytopes. Every entry is a build recipe in the polytope
 * wire format, so emitting one and parsing it back is byte-identical and the
 * parsed polytope keeps its construction certificate.
 */
struct CatalogEntry {
  std::string name;
  std::string summary;
  const char* recipe;
};

const std::vector<CatalogEntry>& catalog_entries();

/** Lookup by name; throws UnknownNameError listing the valid names. */
const CatalogEntry& catalog_entry(const std::string& name);

/** The entry's recipe parsed to JSON. */
Json catalog_recipe(const std::string& name);

/** The entry built into a polytope, with its normalized source. */
PolytopeDoc catalog_build(const std::string& name);

}  // namespace vinberg

#endif  // VINBERG_CATALOG_HPP
