// SPDX-License-Identifier: Apache-2.0
#include "pqobs/common/schema.hpp"

#include <map>
#include <mutex>
#include <regex>

#include "pqobs/common/error.hpp"
#include "pqobs/schemas_embedded.hpp"

namespace pqobs {

namespace {

bool type_matches(const std::string& type, const json& v)
{
    if (type == "object") {
        return v.is_object();
    }
    if (type == "array") {
        return v.is_array();
    }
    if (type == "string") {
        return v.is_string();
    }
    if (type == "integer") {
        return v.is_number_integer() || (v.is_number_float() && v.get<double>() == static_cast<double>(
                                                                  static_cast<long long>(v.get<double>())));
    }
    if (type == "number") {
        return v.is_number();
    }
    if (type == "boolean") {
        return v.is_boolean();
    }
    if (type == "null") {
        return v.is_null();
    }
    return false;
}

class Validator {
public:
    explicit Validator(const json& root) : root_(root) {}

    void run(const json& schema, const json& v, const std::string& path)
    {
        if (schema.is_boolean()) {
            if (!schema.get<bool>()) {
                fail(path, "no value allowed here");
            }
            return;
        }
        if (schema.contains("$ref")) {
            run(resolve(schema["$ref"].get<std::string>()), v, path);
            return;
        }
        if (schema.contains("type")) {
            const auto& t = schema["type"];
            bool ok = false;
            if (t.is_array()) {
                for (const auto& one : t) {
                    ok = ok || type_matches(one.get<std::string>(), v);
                }
            } else {
                ok = type_matches(t.get<std::string>(), v);
            }
            if (!ok) {
                fail(path, "expected type " + t.dump());
                return;
            }
        }
        if (schema.contains("const") && schema["const"] != v) {
            fail(path, "expected constant " + schema["const"].dump());
        }
        if (schema.contains("enum")) {
            bool found = false;
            for (const auto& e : schema["enum"]) {
                found = found || e == v;
            }
            if (!found) {
                fail(path, "value " + v.dump() + " not in enum " + schema["enum"].dump());
            }
        }
        if (schema.contains("anyOf")) {
            bool any = false;
            for (const auto& alt : schema["anyOf"]) {
                Validator sub(root_);
                sub.run(alt, v, path);
                any = any || sub.errors_.empty();
            }
            if (!any) {
                fail(path, "matches none of the allowed alternatives");
            }
        }
        if (v.is_object()) {
            check_object(schema, v, path);
        }
        if (v.is_array()) {
            check_array(schema, v, path);
        }
        if (v.is_string()) {
            check_string(schema, v.get<std::string>(), path);
        }
        if (v.is_number()) {
            double d = v.get<double>();
            if (schema.contains("minimum") && d < schema["minimum"].get<double>()) {
                fail(path, "below minimum " + schema["minimum"].dump());
            }
            if (schema.contains("maximum") && d > schema["maximum"].get<double>()) {
                fail(path, "above maximum " + schema["maximum"].dump());
            }
        }
    }

    std::vector<std::string> take() { return std::move(errors_); }

private:
    void fail(const std::string& path, const std::string& msg)
    {
        errors_.push_back((path.empty() ? std::string("/") : path) + ": " + msg);
    }

    const json& resolve(const std::string& ref)
    {
        if (ref.rfind("#/", 0) != 0) {
            throw Error("schema_error", "only local references are supported: " + ref);
        }
        return root_.at(json::json_pointer(ref.substr(1)));
    }

    void check_object(const json& schema, const json& v, const std::string& path)
    {
        if (schema.contains("required")) {
            for (const auto& key : schema["required"]) {
                if (!v.contains(key.get<std::string>())) {
                    fail(path, "missing required field '" + key.get<std::string>() + "'");
                }
            }
        }
        const json* props = schema.contains("properties") ? &schema["properties"] : nullptr;
        for (auto it = v.begin(); it != v.end(); ++it) {
            std::string child = path + "/" + it.key();
            if (props != nullptr && props->contains(it.key())) {
                run((*props)[it.key()], it.value(), child);
            } else if (schema.contains("additionalProperties")) {
                const auto& extra = schema["additionalProperties"];
                if (extra.is_boolean() && !extra.get<bool>()) {
                    fail(child, "unexpected field");
                } else if (extra.is_object()) {
                    run(extra, it.value(), child);
                }
            }
        }
    }

    void check_array(const json& schema, const json& v, const std::string& path)
    {
        if (schema.contains("minItems") && v.size() < schema["minItems"].get<std::size_t>()) {
            fail(path, "fewer than " + schema["minItems"].dump() + " items");
        }
        if (schema.contains("maxItems") && v.size() > schema["maxItems"].get<std::size_t>()) {
            fail(path, "more than " + schema["maxItems"].dump() + " items");
        }
        if (schema.value("uniqueItems", false)) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                for (std::size_t k = i + 1; k < v.size(); ++k) {
                    if (v[i] == v[k]) {
                        fail(path, "duplicate items at " + std::to_string(i) + " and " + std::to_string(k));
                    }
                }
            }
        }
        if (schema.contains("items")) {
            for (std::size_t i = 0; i < v.size(); ++i) {
                run(schema["items"], v[i], path + "/" + std::to_string(i));
            }
        }
    }

    void check_string(const json& schema, const std::string& s, const std::string& path)
    {
        if (schema.contains("minLength") && s.size() < schema["minLength"].get<std::size_t>()) {
            fail(path, "shorter than " + schema["minLength"].dump());
        }
        if (schema.contains("pattern")) {
            const auto& pat = schema["pattern"].get_ref<const std::string&>();
            if (!std::regex_search(s, std::regex(pat))) {
                fail(path, "does not match pattern " + pat);
            }
        }
    }

    const json& root_;
    std::vector<std::string> errors_;
};

const std::map<std::string, json, std::less<>>& schema_table()
{
    static std::once_flag once;
    static std::map<std::string, json, std::less<>> table;
    std::call_once(once, [] {
        for (const auto& [name, text] : embedded::schemas) {
            table.emplace(std::string(name), json::parse(text));
        }
    });
    return table;
}

}  // namespace

std::vector<std::string> schema_violations(const json& schema, const json& instance)
{
    Validator v(schema);
    v.run(schema, instance, "");
    return v.take();
}

const json& bundled_schema(std::string_view name)
{
    const auto& table = schema_table();
    auto it = table.find(name);
    if (it == table.end()) {
        throw Error("schema_error", "no bundled schema named '" + std::string(name) + "'");
    }
    return it->second;
}

std::vector<std::string> bundled_schema_names()
{
    std::vector<std::string> names;
    for (const auto& [name, _] : schema_table()) {
        names.push_back(name);
    }
    return names;
}

void validate_or_throw(std::string_view schema_name, const json& instance, std::string_view what)
{
    auto errors = schema_violations(bundled_schema(schema_name), instance);
    if (errors.empty()) {
        return;
    }
    std::string msg = std::string(what) + " fails " + std::string(schema_name) + " schema: ";
    for (std::size_t i = 0; i < errors.size() && i < 5; ++i) {
        msg += (i == 0 ? "" : "; ") + errors[i];
    }
    if (errors.size() > 5) {
        msg += "; (" + std::to_string(errors.size() - 5) + " more)";
    }
    throw Error("schema_violation", msg);
}

}  // namespace pqobs
