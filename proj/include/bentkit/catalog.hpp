#pragma once

// The 26 representatives of EA-classes of (6,m)-bent functions, m = 1, 2, 3,
// with their published invariants.

#include <string>
#include <vector>

#include "bentkit/boolean_function.hpp"
#include "bentkit/snf.hpp"

namespace bentkit {

struct CatalogEntry {
  int m = 0;
  int index = 0;
  std::vector<std::string> anf_digits;  // coordinates in digit shorthand
  VectorialFunction representative;
  SnfMultiset expected_snf;             // of M(dev(G_F))
  BigInt expected_code_aut_order;       // |Aut(C(F))|
  BigInt expected_design_aut_order;     // |Aut(dev(G_F))|

  std::string id() const { return std::to_string(m) + "," + std::to_string(index); }
};

// Published index set: m = 1 i <= 4, m = 2 i <= 9, m = 3 i <= 13.
int catalog_size(int m);
// Throws NotFound for an unknown id.
const CatalogEntry& catalog(int m, int index);
const std::vector<CatalogEntry>& catalog_entries();

}  // namespace bentkit
