// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "pqobs/campaign/inventory.hpp"

namespace pqobs::campaign {

// What an external scanner reported for one target, mapped onto the fields
// the comparison slice needs.
struct BaselineFinding {
    std::string adapter;
    std::string target_id;
    bool completed = false;
    std::optional<std::string> negotiated_group;
    bool hybrid_detected = false;
    std::optional<std::string> leaf_signature_algorithm;
    std::string raw;  // scanner output, verbatim
};

json to_json(const BaselineFinding& f);

// Interface for external baseline scanners (inherited packet analyzer,
// SSLyze, testssl.sh). None is executed by this project.
class BaselineAdapter {
public:
    virtual ~BaselineAdapter() = default;
    virtual std::string name() const = 0;
    virtual bool available() const = 0;
    // Throws pqobs::Error(not_reproducible) when the tool is not available.
    virtual BaselineFinding run(const TargetRecord& target) = 0;
};

// Placeholder that documents an adapter without running anything.
class ExternalToolStub : public BaselineAdapter {
public:
    explicit ExternalToolStub(std::string name) : name_(std::move(name)) {}
    std::string name() const override { return name_; }
    bool available() const override { return false; }
    BaselineFinding run(const TargetRecord& target) override;

private:
    std::string name_;
};

// "B0", "sslyze", "testssl"; throws invalid_config for other names.
std::unique_ptr<BaselineAdapter> make_baseline_adapter(const std::string& name);
std::vector<std::string> baseline_adapter_names();

}  // namespace pqobs::campaign
