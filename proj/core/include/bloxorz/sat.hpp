#pragma once

#include <vector>

namespace blox {

struct CnfFormula {
    int variables = 0;
    std::vector<std::vector<int>> clauses;  // DIMACS literals, 1..3 per clause
    bool operator==(const CnfFormula&) const = default;
};

}  // namespace blox
