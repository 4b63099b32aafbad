// SPDX-License-Identifier: Apache-2.0
#include "pqobs/engine/contradictions.hpp"

#include <map>

namespace pqobs::engine {

std::vector<ContradictionRecord> detect_contradictions(const std::vector<FieldAssertion>& assertions)
{
    std::map<std::string, std::vector<const FieldAssertion*>> by_field;
    for (const auto& a : assertions) {
        if (a.value.is_known()) {
            by_field[a.field].push_back(&a);
        }
    }
    std::vector<ContradictionRecord> out;
    for (const auto& [field, known] : by_field) {
        bool found = false;
        for (std::size_t i = 0; i < known.size() && !found; ++i) {
            for (std::size_t k = i + 1; k < known.size() && !found; ++k) {
                if (known[i]->value.value != known[k]->value.value) {
                    out.push_back({field,
                                   {known[i]->value.value, known[i]->source, known[i]->timestamp},
                                   {known[k]->value.value, known[k]->source, known[k]->timestamp}});
                    found = true;
                }
            }
        }
    }
    return out;
}

}  // namespace pqobs::engine
