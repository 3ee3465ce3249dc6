#pragma once

#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "bpmnpc/calculus/parse.hpp"
#include "bpmnpc/convert/config.hpp"
#include "bpmnpc/emit/module.hpp"

namespace bpmnpc::emit {

class ConfigError : public std::runtime_error {
public:
    enum class Kind { ConfigSyntax, MissingKey, DuplicateKey };

    ConfigError(Kind kind, std::string path, const std::string& what)
        : std::runtime_error(what), kind_(kind), path_(std::move(path)) {}

    Kind kind() const { return kind_; }
    /// Dotted key path the error is about.
    const std::string& path() const { return path_; }

private:
    Kind kind_;
    std::string path_;
};

struct ToolConfig {
    conv::ConversionConfig conversion;
    EmitTemplate emit;
};

namespace detail {

using nlohmann::json;

[[noreturn]] inline void syntax(const std::string& path, const std::string& what) {
    throw ConfigError(ConfigError::Kind::ConfigSyntax, path, path.empty() ? what : path + ": " + what);
}

inline std::string join(const std::string& path, const std::string& key) { return path.empty() ? key : path + "." + key; }

inline const json& required(const json& obj, const std::string& path, const std::string& key) {
    auto it = obj.find(key);
    if (it == obj.end())
        throw ConfigError(ConfigError::Kind::MissingKey, join(path, key), "missing key '" + join(path, key) + "'");
    return *it;
}

inline const json& object_at(const json& v, const std::string& path) {
    if (!v.is_object()) syntax(path, "expected an object");
    return v;
}

inline std::string string_at(const json& v, const std::string& path) {
    if (!v.is_string()) syntax(path, "expected a string");
    return v.get<std::string>();
}

inline std::string identifier_at(const json& v, const std::string& path) {
    std::string s = string_at(v, path);
    if (!calc::is_identifier(s)) syntax(path, "'" + s + "' is not an identifier");
    return s;
}

inline calc::PrivType type_at(const json& v, const std::string& path) {
    std::string s = string_at(v, path);
    try {
        return calc::parse_type(s);
    } catch (const calc::SyntaxError& e) {
        syntax(path, std::string("bad type '") + s + "': " + e.what());
    }
}

inline calc::Group group_at(const json& v, const std::string& path, const std::map<std::string, calc::GroupKind>& kinds) {
    std::string s = string_at(v, path);
    calc::Group parsed;
    try {
        parsed = calc::parse_group(s);
    } catch (const calc::SyntaxError& e) {
        syntax(path, std::string("bad group '") + s + "': " + e.what());
    }
    calc::Group out;
    bool first = true;
    for (const auto& id : parsed.atom_ids()) {
        auto k = kinds.find(id);
        calc::Group a = calc::Group::atom(id, k == kinds.end() ? calc::GroupKind::Role : k->second);
        out = first ? a : calc::Group::unite(out, a);
        first = false;
    }
    return out;
}

/// Parses while rejecting repeated keys within one object.
inline json parse_strict(std::string_view text) {
    std::vector<std::set<std::string>> seen;
    std::vector<std::string> path;
    std::string pending_key;
    auto cb = [&](int, json::parse_event_t ev, json& parsed) {
        switch (ev) {
        case json::parse_event_t::object_start:
            seen.emplace_back();
            path.push_back(pending_key);
            pending_key.clear();
            break;
        case json::parse_event_t::key: {
            std::string k = parsed.get<std::string>();
            if (!seen.back().insert(k).second) {
                std::string p;
                for (std::size_t i = 1; i < path.size(); ++i) p = join(p, path[i]);
                p = join(p, k);
                throw ConfigError(ConfigError::Kind::DuplicateKey, p, "duplicate key '" + p + "'");
            }
            pending_key = k;
            break;
        }
        case json::parse_event_t::object_end:
            seen.pop_back();
            path.pop_back();
            break;
        case json::parse_event_t::array_start: path.push_back(pending_key); break;
        case json::parse_event_t::array_end: path.pop_back(); break;
        case json::parse_event_t::value: break;
        }
        return true;
    };
    try {
        return json::parse(text.begin(), text.end(), cb);
    } catch (const json::parse_error& e) {
        syntax("", std::string("malformed configuration: ") + e.what());
    }
}

}  // namespace detail

/// Reads the configuration document (object/array/string notation).
inline ToolConfig load_tool_config(std::string_view text) {
    using namespace detail;
    json root = parse_strict(text);
    object_at(root, "");
    ToolConfig out;
    auto& cfg = out.conversion;
    cfg.token_type_name = identifier_at(required(root, "", "token_type_name"), "token_type_name");
    cfg.token_value_name = identifier_at(required(root, "", "token_value_name"), "token_value_name");
    cfg.fresh_prefix = identifier_at(required(root, "", "fresh_prefix"), "fresh_prefix");

    std::map<std::string, calc::GroupKind> kinds;
    if (auto it = root.find("groups"); it != root.end()) {
        for (const auto& [id, kind] : object_at(*it, "groups").items()) {
            std::string p = join("groups", id);
            if (!calc::is_identifier(id)) syntax(p, "'" + id + "' is not an identifier");
            std::string k = string_at(kind, p);
            if (k == "user")
                kinds[id] = calc::GroupKind::User;
            else if (k == "role")
                kinds[id] = calc::GroupKind::Role;
            else
                syntax(p, "expected \"user\" or \"role\", got \"" + k + "\"");
        }
    }

    for (const auto& [id, meta] : object_at(required(root, "", "processes"), "processes").items()) {
        std::string p = join("processes", id);
        object_at(meta, p);
        conv::ProcessMeta pm;
        pm.group = group_at(required(meta, p, "group"), join(p, "group"), kinds);
        pm.purpose = identifier_at(required(meta, p, "purpose"), join(p, "purpose"));
        cfg.processes.emplace(id, std::move(pm));
    }
    if (auto it = root.find("messages"); it != root.end()) {
        for (const auto& [id, meta] : object_at(*it, "messages").items()) {
            std::string p = join("messages", id);
            object_at(meta, p);
            conv::MessageMeta mm;
            mm.name = identifier_at(required(meta, p, "name"), join(p, "name"));
            mm.type = type_at(required(meta, p, "type"), join(p, "type"));
            cfg.messages.emplace(id, std::move(mm));
        }
    }
    if (auto it = root.find("phantoms"); it != root.end()) {
        for (const auto& [id, meta] : object_at(*it, "phantoms").items()) {
            std::string p = join("phantoms", id);
            object_at(meta, p);
            conv::PhantomMeta ph;
            ph.channel = identifier_at(required(meta, p, "channel"), join(p, "channel"));
            ph.name = identifier_at(required(meta, p, "name"), join(p, "name"));
            ph.type = type_at(required(meta, p, "type"), join(p, "type"));
            if (auto ct = meta.find("channel_type"); ct != meta.end())
                ph.channel_type = type_at(*ct, join(p, "channel_type"));
            cfg.phantoms.emplace(id, std::move(ph));
        }
    }
    if (auto it = root.find("emit"); it != root.end()) {
        const json& e = object_at(*it, "emit");
        if (auto v = e.find("module_name"); v != e.end()) out.emit.module_name = string_at(*v, "emit.module_name");
        if (auto v = e.find("header"); v != e.end()) out.emit.header = string_at(*v, "emit.header");
        if (auto v = e.find("footer"); v != e.end()) out.emit.footer = string_at(*v, "emit.footer");
        if (auto v = e.find("sorts"); v != e.end()) {
            for (const auto& [role, sort] : object_at(*v, "emit.sorts").items()) {
                std::string p = join("emit.sorts", role);
                if (!out.emit.sorts.contains(role)) syntax(p, "unknown sort role '" + role + "'");
                out.emit.sorts[role] = string_at(sort, p);
            }
        }
    }
    return out;
}

inline conv::ConversionConfig load_config(std::string_view text) { return load_tool_config(text).conversion; }

}  // namespace bpmnpc::emit
