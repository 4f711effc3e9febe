#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <variant>
#include <vector>

#include "bisep/group.hpp"
#include "bisep/serialize.hpp"

namespace bisep {

// A claimed property value: a verdict or an exact count.
using Expected = std::variant<bool, std::uint64_t>;
std::string to_string(const Expected& e);

struct CatalogInfo {
  std::string name;
  std::string anchor;       // where the claim comes from, in words
  std::string params;       // accepted key=value parameters with defaults
  std::string description;
};

struct CatalogObject {
  std::string name;
  std::string anchor;
  Subject subject;
  // Only claimed properties; anything else is computed and recorded.
  std::map<std::string, Expected> expected;
};

using CatalogParams = std::map<std::string, std::string>;

const std::vector<CatalogInfo>& catalog_entries();
// UnknownEntry for a bad name, BadParams for bad or unused parameters.
CatalogObject build_catalog(const std::string& name, const CatalogParams& params = {});

// Pieces reused by tests and the search.
Extension matrix_over_triangular(const Field& f, std::size_t n);
Extension triangular_over_diagonal(const Field& f, std::size_t n);
Extension z2z2_over_z2();
// k[H] -> k[G] for the listed elements of G.
Extension group_pair(const Field& f, const Group& g, const std::vector<std::size_t>& h);
// k^n as an (M_n(k), k)-bimodule.
Bimodule morita_bimodule(const Field& f, std::size_t n);
// S (+) I -> R (+) I for an R-bimodule I with product; S acts on I through iota.
Extension trivial_extension_pair(const Extension& base, const MultiplicativeBimodule& i);
// F_p -> F_{p^k} as an algebra over F_p.
Extension field_extension(std::uint64_t p, unsigned k);

}  // namespace bisep
