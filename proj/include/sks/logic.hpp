#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "sks/bdd.hpp"

namespace sks::logic {

using PropId = std::uint32_t;

enum class PropKind { LearnedSymbol, UserEnv, Skill, ExtraSkill };
enum class Owner { Environment, System };

inline Owner owner_of(PropKind k) {
    return (k == PropKind::LearnedSymbol || k == PropKind::UserEnv) ? Owner::Environment
                                                                    : Owner::System;
}

struct Proposition {
    std::string name;
    PropKind kind;
};

class PropRegistry {
public:
    PropId add(std::string name, PropKind kind);
    std::optional<PropId> find(const std::string& name) const;
    const Proposition& operator[](PropId id) const { return props_.at(id); }
    const std::string& name(PropId id) const { return props_.at(id).name; }
    PropKind kind(PropId id) const { return props_.at(id).kind; }
    Owner owner(PropId id) const { return owner_of(props_.at(id).kind); }
    std::size_t size() const { return props_.size(); }

private:
    std::vector<Proposition> props_;

    struct Hash {
        std::size_t operator()(const std::string& s) const { return std::hash<std::string>()(s); }
    };
    std::unordered_map<std::string, PropId> lookup_;
};

enum class FormulaKind { Constant, Atom, Not, And, Or, Implies, Iff };

class Formula;

struct FormulaNode {
    FormulaKind kind;
    bool value = false;    // Constant
    PropId prop = 0;       // Atom
    bool primed = false;   // Atom
    std::vector<Formula> kids;
};

/// Immutable boolean formula over registered propositions, with optional
/// primed (next-step) atoms. And/Or are n-ary, Implies/Iff binary.
class Formula {
public:
    Formula() = default;

    static Formula constant(bool v);
    static Formula atom(PropId p, bool primed = false);
    static Formula negate(Formula f);
    static Formula conj(std::vector<Formula> kids);
    static Formula disj(std::vector<Formula> kids);
    static Formula implies(Formula a, Formula b);
    static Formula iff(Formula a, Formula b);

    const FormulaNode& node() const { return *n_; }
    FormulaKind kind() const { return n_->kind; }
    bool valid() const { return n_ != nullptr; }

    bool structurally_equal(const Formula& o) const;

    /// Recursive evaluation under an assignment of (prop, primed) -> bool.
    bool eval(const std::function<bool(PropId, bool)>& assignment) const;

    void collect_atoms(std::vector<std::pair<PropId, bool>>& out) const;
    bool has_primed_atom() const;

private:
    explicit Formula(std::shared_ptr<const FormulaNode> n) : n_(std::move(n)) {}
    std::shared_ptr<const FormulaNode> n_;
};

enum class Section {
    Input,
    Output,
    EnvInit,
    SysInit,
    EnvTrans,
    SysTrans,
    SysTransHard,
    SysLiveness,
    EnvLiveness,
};

constexpr std::array<Section, 9> kSectionOrder = {
    Section::Input,    Section::Output,       Section::EnvInit,
    Section::SysInit,  Section::EnvTrans,     Section::SysTrans,
    Section::SysTransHard, Section::SysLiveness, Section::EnvLiveness,
};

const char* section_name(Section s);

/// Nine-section GR(1) specification. Formula lists hold one conjunct per
/// entry; the temporal prefix (none, always, always-eventually) is implied
/// by the section. Comments are kept for serialization, anchored before the
/// entry at `before` in their section (or at the end when past the last).
struct GR1Spec {
    PropRegistry props;
    std::vector<PropId> inputs;
    std::vector<PropId> outputs;

    std::vector<Formula> env_init;
    std::vector<Formula> sys_init;
    std::vector<Formula> env_trans;
    std::vector<Formula> sys_trans;
    std::vector<Formula> sys_trans_hard;
    std::vector<Formula> sys_liveness;
    std::vector<Formula> env_liveness;

    struct Comment {
        Section section;
        std::size_t before;
        std::string text;  // without leading '#'
    };
    std::vector<Comment> comments;

    std::vector<Formula>& section(Section s);
    const std::vector<Formula>& section(Section s) const;
};

struct Diagnostic {
    Section section;
    std::size_t index;
    std::string message;
};

/// Checks the GR(1) well-formedness rules: primed-atom placement per
/// section, ownership of initial-condition atoms, and declaration hygiene.
/// Returns diagnostics instead of throwing; empty means well formed.
std::vector<Diagnostic> validate(const GR1Spec& spec);

/// Maps each proposition to its current-step BDD variable; the primed
/// variable is current + 1 (interleaved order).
struct VarMap {
    std::vector<std::uint32_t> current;  // indexed by PropId
    std::uint32_t var_of(PropId p, bool primed) const { return current.at(p) + (primed ? 1 : 0); }
    std::uint32_t var_total() const { return static_cast<std::uint32_t>(current.size()) * 2; }
};

/// Declaration-order variable map: inputs first, then outputs, each prop
/// claiming an adjacent (current, primed) pair.
VarMap make_varmap(const GR1Spec& spec);

bdd::Bdd compile(const Formula& f, const VarMap& m, bdd::Manager& mgr);

}  // namespace sks::logic
