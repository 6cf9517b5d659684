#ifndef BT_SCENARIO_HPP
#define BT_SCENARIO_HPP

#include <random>
#include <string>

#include "bt/filtrations.hpp"

namespace bt {

struct GridSpec {
    int denom = 4;
    int radius = 4;
};

// A fully validated problem instance: field parameters, hermitian space,
// beta with its verified decomposition, and search defaults.
struct Scenario {
    std::string id;
    int q = 3;
    int window = 24;
    HermitianSpace space;
    Matrix beta;
    BetaDatum datum;
    GridSpec grid;
    std::vector<std::vector<Rat>> default_point; // params per component
};

// Parse and validate a scenario; both set the global field parameters.
// Throws SchemaError for malformed input and ValidationError when the
// declared data fails verification.
Scenario load_scenario(const std::string& path);
Scenario parse_scenario_text(const std::string& text);

// admissible random parameters on the grid, one vector per component
std::vector<std::vector<Rat>> random_grid_params(const BetaDatum& datum,
                                                 const GridSpec& grid,
                                                 std::mt19937_64& rng);

ComponentTuple tuple_from_params(const BetaDatum& datum,
                                 const std::vector<std::vector<Rat>>& params);

} // namespace bt

#endif
