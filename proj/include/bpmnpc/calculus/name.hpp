#pragma once

#include <compare>
#include <cstddef>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bpmnpc::calc {

/// CINNI-indexed name. Index n refers past n enclosing binders of the same base;
/// values of context variables are names with index 0.
struct Name {
    std::string base;
    std::size_t index = 0;

    Name() = default;
    Name(std::string b, std::size_t i = 0) : base(std::move(b)), index(i) {}
    Name(const char* b) : base(b) {}

    friend bool operator==(const Name&, const Name&) = default;
    friend auto operator<=>(const Name&, const Name&) = default;
};

inline std::string to_string(const Name& n) {
    if (n.index == 0) return n.base;
    return n.base + "~" + std::to_string(n.index);
}

enum class GroupKind { Role, User };

/// A group: an atom (user or role) or the union of two groups.
/// Kind is declaration metadata only; equality compares the flattened atom ids.
class Group {
public:
    Group() = default;

    static Group atom(std::string id, GroupKind kind = GroupKind::Role) {
        if (id.empty()) throw std::invalid_argument("group id must be non-empty");
        Group g;
        g.id_ = std::move(id);
        g.kind_ = kind;
        return g;
    }

    /// G ∪ G collapses to G.
    static Group unite(Group left, Group right) {
        if (left == right) return left;
        Group g;
        g.children_ = std::make_shared<const std::pair<Group, Group>>(std::move(left), std::move(right));
        return g;
    }

    bool is_atom() const { return children_ == nullptr; }
    bool empty() const { return is_atom() && id_.empty(); }
    const std::string& id() const { return id_; }
    GroupKind kind() const { return kind_; }
    const Group& left() const { return children_->first; }
    const Group& right() const { return children_->second; }

    std::vector<const Group*> atoms() const {
        std::vector<const Group*> out;
        collect(out);
        return out;
    }

    std::vector<std::string> atom_ids() const {
        std::vector<std::string> out;
        for (const Group* g : atoms()) out.push_back(g->id());
        return out;
    }

    friend bool operator==(const Group& a, const Group& b) { return a.atom_ids() == b.atom_ids(); }

private:
    void collect(std::vector<const Group*>& out) const {
        if (is_atom()) {
            out.push_back(this);
            return;
        }
        children_->first.collect(out);
        children_->second.collect(out);
    }

    std::string id_;
    GroupKind kind_ = GroupKind::Role;
    std::shared_ptr<const std::pair<Group, Group>> children_;
};

inline std::string to_string(const Group& g) {
    std::string out;
    for (const auto& id : g.atom_ids()) {
        if (!out.empty()) out += '+';
        out += id;
    }
    return out;
}

/// Types: basic types, context variables with finite domains, and G[T].
class PrivType {
public:
    enum class Kind { Basic, ContextVar, GroupType };

    PrivType() = default;

    static PrivType basic(std::string id) {
        PrivType t;
        t.kind_ = Kind::Basic;
        t.id_ = std::move(id);
        return t;
    }

    static PrivType context_var(std::string id, std::vector<std::string> domain) {
        if (domain.empty()) throw std::invalid_argument("context variable '" + id + "' needs a non-empty domain");
        for (std::size_t i = 0; i < domain.size(); ++i)
            for (std::size_t j = i + 1; j < domain.size(); ++j)
                if (domain[i] == domain[j])
                    throw std::invalid_argument("duplicate value '" + domain[i] + "' in domain of '" + id + "'");
        PrivType t;
        t.kind_ = Kind::ContextVar;
        t.id_ = std::move(id);
        t.domain_ = std::move(domain);
        return t;
    }

    static PrivType group_type(Group g, PrivType inner) {
        PrivType t;
        t.kind_ = Kind::GroupType;
        t.group_ = std::move(g);
        t.inner_ = std::make_shared<const PrivType>(std::move(inner));
        return t;
    }

    Kind kind() const { return kind_; }
    bool is_basic() const { return kind_ == Kind::Basic; }
    bool is_context_var() const { return kind_ == Kind::ContextVar; }
    bool is_group_type() const { return kind_ == Kind::GroupType; }
    const std::string& id() const { return id_; }
    const std::vector<std::string>& domain() const { return domain_; }
    const Group& group() const { return group_; }
    const PrivType& inner() const { return *inner_; }

    friend bool operator==(const PrivType& a, const PrivType& b) {
        if (a.kind_ != b.kind_) return false;
        switch (a.kind_) {
        case Kind::Basic: return a.id_ == b.id_;
        case Kind::ContextVar: return a.id_ == b.id_ && a.domain_ == b.domain_;
        case Kind::GroupType: return a.group_ == b.group_ && *a.inner_ == *b.inner_;
        }
        return false;
    }

private:
    Kind kind_ = Kind::Basic;
    std::string id_;
    std::vector<std::string> domain_;
    Group group_;
    std::shared_ptr<const PrivType> inner_;
};

/// `inline_domains` prints context variables as `X{v1,v2}` so the text parses back
/// to the same type; otherwise only the identifier is printed.
inline std::string to_string(const PrivType& t, bool inline_domains = true) {
    switch (t.kind()) {
    case PrivType::Kind::Basic: return t.id();
    case PrivType::Kind::ContextVar: {
        if (!inline_domains) return t.id();
        std::string out = t.id() + "{";
        for (std::size_t i = 0; i < t.domain().size(); ++i) {
            if (i) out += ',';
            out += t.domain()[i];
        }
        return out + "}";
    }
    case PrivType::Kind::GroupType: {
        std::string g = to_string(t.group());
        if (!t.group().is_atom()) g = "(" + g + ")";
        return g + "[" + to_string(t.inner(), inline_domains) + "]";
    }
    }
    return {};
}

}  // namespace bpmnpc::calc
