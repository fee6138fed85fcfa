#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "json.hpp"

#include "frost/dimension.hpp"

namespace frost {

using Json = nlohmann::ordered_json;

// A set file: either a Cantor scheme (with the scheme retained for verbs
// that need it), an explicit staged name, the full interval, or a point.
struct LoadedSet {
    std::optional<CantorScheme> scheme;
    ClosedOvertName name;
};

LoadedSet parse_set(const Json& j);

Json explicit_name_to_json(const ExplicitName& n);
Json cantor_set_to_json(const std::vector<Rat>& ratios);

CapacityTree parse_capacity(const Json& j);
Json capacity_to_json(const CapacityTree& t);

TreeFlow parse_flow(const Json& j);
Json flow_to_json(const TreeFlow& f);

// Omitted ancestors are derived by additivity; the "total" field must match
// the root mass. With enforce_additive (the CLI default) a non-additive
// mass map is rejected.
DyadicMeasure parse_measure(const Json& j, bool enforce_additive = true);
Json measure_to_json(const DyadicMeasure& mu);

CellMeasure parse_cell_measure(const Json& j);
Json cell_measure_to_json(const CellMeasure& cm, const std::vector<Rat>& ratios,
                          const std::vector<int>& p_bits);

Json read_json_file(const std::filesystem::path& p);
void write_json_file(const std::filesystem::path& p, const Json& j);

} // namespace frost
