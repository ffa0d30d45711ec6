#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vsp/divisible.hpp"
#include "vsp/error.hpp"
#include "vsp/typecalc.hpp"

namespace vsp {

// Binary point sets printed as generator matrices (columns are points),
// with the facts they are expected to satisfy. The same matrices ship as
// text files in the data directory.
struct PaperDataset {
  std::string id;
  std::string file;  // file name inside the data directory
  const char* matrix_text = nullptr;
  int q = 2;
  int rows = 0;
  std::uint64_t cardinality = 0;
  std::uint64_t delta = 0;  // largest power of two dividing all weights
  int span_dim = 0;
  std::map<std::uint64_t, std::uint64_t> spectrum;
  int pack_dim = 0;  // dimension of the disjoint subspaces counted below
  std::uint64_t max_disjoint = 0;

  Matrix matrix() const { return parse_matrix(matrix_text, make_field(q)); }
  PointMultiset multiset() const { return multiset_from_columns(matrix(), make_field(q)); }
};

namespace detail {
inline constexpr const char* m75a_text = R"(1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0
0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0
0 0 1 0 0 1 1 0 0 1 1 0 0 0 1 0 0 0 1 0 0 1 1 0 0 0 0 0 1 1 1 0 1 1 0 0 0 1 0 0 0 1 0 0 1 1 0 0 1 0 0 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 1 0 0 0
0 1 0 0 1 0 1 0 0 0 1 0 0 0 0 0 0 1 0 0 1 0 1 0 1 1 1 1 0 0 1 1 0 1 1 1 1 0 0 0 1 1 0 1 0 0 0 1 1 0 1 0 0 0 0 1 0 0 0 1 1 1 1 1 1 1 0 0 0 0 0 0 1 0 0
1 1 0 1 1 1 1 0 1 0 1 0 1 1 0 1 1 0 0 1 1 1 1 0 0 1 1 1 0 0 1 0 0 0 0 1 1 0 0 1 1 0 0 1 0 1 1 0 1 0 0 1 1 0 1 1 0 1 1 0 0 1 1 0 1 1 1 0 0 0 0 0 0 1 0
0 0 0 1 0 0 1 0 0 0 1 0 0 1 0 0 1 0 1 1 0 0 1 0 0 0 1 1 0 1 1 1 1 0 1 0 1 0 1 0 0 0 1 1 1 0 0 0 1 0 0 0 1 0 1 1 1 0 1 0 1 0 1 1 0 1 1 0 0 0 0 0 0 0 1
)";
inline constexpr const char* m75b_text = R"(1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0
0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0
0 1 1 0 0 0 0 0 0 1 1 0 0 1 1 0 0 1 1 0 0 1 1 0 0 1 1 0 0 0 0 0 1 1 0 0 1 1 0 0 0 0 0 0 1 1 0 1 1 0 0 1 1 0 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 1 0 0 0
1 0 1 0 0 0 0 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 0 0 0 1 0 1 0 1 0 1 0 0 0 0 0 1 0 1 1 0 1 0 1 0 1 1 0 1 0 0 0 1 1 1 1 1 1 1 0 0 0 0 0 0 1 0 0
0 1 1 0 0 1 1 0 0 1 1 1 0 1 0 1 0 0 1 1 0 0 1 0 1 0 1 0 0 1 1 0 0 0 1 0 1 0 0 0 1 1 0 0 0 0 0 1 1 0 0 0 0 1 1 0 0 1 1 0 0 1 1 0 1 1 1 0 0 0 0 0 0 1 0
1 0 1 0 1 0 1 0 0 0 0 0 1 0 1 0 1 1 0 0 0 0 0 0 1 1 0 0 1 0 1 0 1 1 0 0 1 1 0 1 0 1 0 0 0 0 1 1 0 0 1 0 1 0 1 1 1 0 1 0 1 0 1 1 0 1 1 0 0 0 0 0 0 0 1
)";
inline constexpr const char* m75c_text = R"(1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0 0
0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0 0
0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 1 1 1 1 1 1 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0 0
0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 1 1 1 1 0 0 0 0 1 1 1 1 0 0 0 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 0 0 0 0 0 0 1 0 0 0 0
0 1 1 0 0 0 0 0 0 1 1 0 0 1 1 0 0 1 1 0 0 1 1 0 0 1 1 0 0 0 0 0 1 1 0 0 1 1 0 0 0 0 0 0 1 1 0 1 1 0 0 1 1 0 1 1 1 1 1 1 1 1 1 0 0 0 0 0 0 0 0 1 0 0 0
1 0 1 0 0 0 0 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 1 0 0 0 0 1 0 1 0 1 0 1 0 0 0 0 0 1 0 1 1 0 1 0 1 0 1 1 0 1 0 0 0 1 1 1 1 1 1 1 0 0 0 0 0 0 1 0 0
0 1 1 0 0 1 1 0 0 1 1 1 0 1 0 1 0 0 1 1 0 0 1 0 1 0 1 0 0 1 1 0 0 0 1 0 1 0 0 0 1 1 0 0 0 0 0 1 1 0 0 0 0 1 1 0 0 1 1 0 0 1 1 0 1 1 1 0 0 0 0 0 0 1 0
1 1 0 0 1 0 1 0 1 1 0 1 1 0 0 1 0 1 0 1 0 1 0 1 1 0 0 0 1 0 1 0 0 0 0 0 1 1 0 1 0 1 1 1 1 1 1 1 0 1 1 1 1 1 0 1 1 0 1 0 1 0 1 1 0 1 1 0 0 0 0 0 0 0 1
)";
inline constexpr const char* m20_text = R"(1 0 0 0 0 0 1 1 1 0 1 0 0 0 0 1 0 1 1 0
0 1 0 0 0 0 0 0 0 1 1 1 0 1 1 0 1 1 0 0
0 0 1 0 0 0 1 1 1 1 0 1 1 0 0 0 0 0 1 0
0 0 0 1 0 0 1 0 0 1 1 0 1 0 0 0 1 1 1 0
0 0 0 0 1 0 0 1 1 0 0 0 0 1 1 1 1 1 0 0
0 0 0 0 0 1 0 1 1 1 1 0 0 1 0 0 1 0 1 0
0 0 0 0 0 0 0 0 1 1 0 0 0 0 0 0 0 1 0 1
)";
}  // namespace detail

inline const std::vector<PaperDataset>& paper_datasets() {
  static const std::vector<PaperDataset> sets = {
      {"M75a", "m75a.txt", detail::m75a_text, 2, 8, 75, 8, 8, {{35, 180}, {43, 75}}, 3, 8},
      {"M75b", "m75b.txt", detail::m75b_text, 2, 8, 75, 8, 8, {{35, 180}, {43, 75}}, 3, 8},
      {"M75c", "m75c.txt", detail::m75c_text, 2, 8, 75, 8, 8, {{35, 180}, {43, 75}}, 3, 8},
      {"M20", "m20.txt", detail::m20_text, 2, 7, 20, 4, 7, {{8, 67}, {12, 59}, {16, 1}}, 2, 5},
  };
  return sets;
}

inline const PaperDataset& paper_pointset(const std::string& id) {
  for (const auto& d : paper_datasets()) {
    std::string a = d.id, b = id;
    for (auto& c : a) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    for (auto& c : b) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    if (a == b) return d;
  }
  throw invalid_parameter("unknown dataset '" + id + "'");
}

}  // namespace vsp
