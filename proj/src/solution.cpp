#include "mslcp/solution.hpp"

#include <algorithm>

#include "mslcp/error.hpp"

namespace mslcp {

CutConstraint canonical(CutConstraint cut) {
    if (cut.members.empty()) throw ContractError("a cut needs at least one member");
    for (auto& m : cut.members) {
        if (m.types.empty()) throw ContractError("a cut member needs at least one type");
        std::sort(m.types.begin(), m.types.end());
        m.types.erase(std::unique(m.types.begin(), m.types.end()), m.types.end());
    }
    std::sort(cut.members.begin(), cut.members.end());
    cut.members.erase(std::unique(cut.members.begin(), cut.members.end()), cut.members.end());
    return cut;
}

bool is_satisfied(const CutConstraint& cut, const MasterSolution& sol) {
    for (const auto& m : cut.members)
        for (int k : m.types)
            if (!std::binary_search(sol.x.begin(), sol.x.end(), Assignment{m.unit, m.mo_index, k})) return true;
    return false;
}

std::string to_string(const CutConstraint& cut) {
    std::string s = "{";
    for (std::size_t i = 0; i < cut.members.size(); ++i) {
        const auto& m = cut.members[i];
        if (i) s += ", ";
        s += "(" + std::to_string(m.unit) + "," + std::to_string(m.mo_index) + ",{";
        for (std::size_t k = 0; k < m.types.size(); ++k) {
            if (k) s += ",";
            s += std::to_string(m.types[k]);
        }
        s += "})";
    }
    return s + "}";
}

}  // namespace mslcp
