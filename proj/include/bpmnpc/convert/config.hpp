#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

#include "bpmnpc/calculus/name.hpp"

namespace bpmnpc::conv {

struct ProcessMeta {
    calc::Group group;
    std::string purpose;
};

struct MessageMeta {
    /// Name of the message variable (m in E(m:T)).
    std::string name;
    calc::PrivType type;
};

/// A message flow assumed for a node that needs one but has none drawn.
struct PhantomMeta {
    std::string channel;
    std::string name;
    calc::PrivType type;
    /// Type of the free channel in the context; defaults to G[type], G the owning group.
    std::optional<calc::PrivType> channel_type;
};

struct ConversionConfig {
    std::string token_type_name = "Token";
    std::string token_value_name = "t";
    std::string fresh_prefix = "h";
    /// Keyed by participant id or process id.
    std::map<std::string, ProcessMeta> processes;
    /// Keyed by message-flow id.
    std::map<std::string, MessageMeta> messages;
    /// Keyed by flow-node id.
    std::map<std::string, PhantomMeta> phantoms;

    calc::PrivType token_type() const { return calc::PrivType::basic(token_type_name); }
};

/// Issues prefix1, prefix2, ... skipping anything in `avoid` or already issued.
class FreshNames {
public:
    FreshNames(std::string prefix, std::set<std::string> avoid = {})
        : prefix_(std::move(prefix)), avoid_(std::move(avoid)) {}

    std::string next() {
        for (;;) {
            std::string candidate = prefix_ + std::to_string(++counter_);
            if (avoid_.insert(candidate).second) return candidate;
        }
    }

    void avoid(const std::string& id) { avoid_.insert(id); }

private:
    std::string prefix_;
    std::set<std::string> avoid_;
    std::size_t counter_ = 0;
};

inline calc::Name fresh_name(FreshNames& source) { return calc::Name{source.next()}; }

}  // namespace bpmnpc::conv
