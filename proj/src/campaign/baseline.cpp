// SPDX-License-Identifier: Apache-2.0
#include "pqobs/campaign/baseline.hpp"

#include <algorithm>

#include "pqobs/common/error.hpp"

namespace pqobs::campaign {

json to_json(const BaselineFinding& f)
{
    return {{"adapter", f.adapter},
            {"target_id", f.target_id},
            {"completed", f.completed},
            {"negotiated_group", f.negotiated_group ? json(*f.negotiated_group) : json(nullptr)},
            {"hybrid_detected", f.hybrid_detected},
            {"leaf_signature_algorithm", f.leaf_signature_algorithm ? json(*f.leaf_signature_algorithm) : json(nullptr)},
            {"raw", f.raw}};
}

BaselineFinding ExternalToolStub::run(const TargetRecord& target)
{
    throw Error("not_reproducible", name_ + " adapter is an interface stub; no run against " + target.target_id);
}

std::vector<std::string> baseline_adapter_names()
{
    return {"B0", "sslyze", "testssl"};
}

std::unique_ptr<BaselineAdapter> make_baseline_adapter(const std::string& name)
{
    auto names = baseline_adapter_names();
    if (std::find(names.begin(), names.end(), name) == names.end()) {
        throw Error("invalid_config", "unknown baseline adapter '" + name + "'");
    }
    return std::make_unique<ExternalToolStub>(name);
}

}  // namespace pqobs::campaign
