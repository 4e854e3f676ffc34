#include "sks/logic.hpp"

#include <stdexcept>
#include <unordered_map>

namespace sks::logic {

PropId PropRegistry::add(std::string name, PropKind kind) {
    if (name.empty()) throw std::invalid_argument("proposition name must not be empty");
    if (lookup_.count(name)) {
        throw std::invalid_argument("duplicate proposition name: " + name);
    }
    PropId id = static_cast<PropId>(props_.size());
    lookup_.emplace(name, id);
    props_.push_back({std::move(name), kind});
    return id;
}

std::optional<PropId> PropRegistry::find(const std::string& name) const {
    auto it = lookup_.find(name);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

Formula Formula::constant(bool v) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Constant;
    n->value = v;
    return Formula(std::move(n));
}

Formula Formula::atom(PropId p, bool primed) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Atom;
    n->prop = p;
    n->primed = primed;
    return Formula(std::move(n));
}

Formula Formula::negate(Formula f) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Not;
    n->kids.push_back(std::move(f));
    return Formula(std::move(n));
}

Formula Formula::conj(std::vector<Formula> kids) {
    if (kids.empty()) return constant(true);
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::And;
    n->kids = std::move(kids);
    return Formula(std::move(n));
}

Formula Formula::disj(std::vector<Formula> kids) {
    if (kids.empty()) return constant(false);
    if (kids.size() == 1) return kids[0];
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Or;
    n->kids = std::move(kids);
    return Formula(std::move(n));
}

Formula Formula::implies(Formula a, Formula b) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Implies;
    n->kids.push_back(std::move(a));
    n->kids.push_back(std::move(b));
    return Formula(std::move(n));
}

Formula Formula::iff(Formula a, Formula b) {
    auto n = std::make_shared<FormulaNode>();
    n->kind = FormulaKind::Iff;
    n->kids.push_back(std::move(a));
    n->kids.push_back(std::move(b));
    return Formula(std::move(n));
}

bool Formula::structurally_equal(const Formula& o) const {
    if (n_ == o.n_) return true;
    if (!n_ || !o.n_) return false;
    if (n_->kind != o.n_->kind) return false;
    switch (n_->kind) {
        case FormulaKind::Constant: return n_->value == o.n_->value;
        case FormulaKind::Atom: return n_->prop == o.n_->prop && n_->primed == o.n_->primed;
        default: break;
    }
    if (n_->kids.size() != o.n_->kids.size()) return false;
    for (std::size_t i = 0; i < n_->kids.size(); ++i) {
        if (!n_->kids[i].structurally_equal(o.n_->kids[i])) return false;
    }
    return true;
}

bool Formula::eval(const std::function<bool(PropId, bool)>& assignment) const {
    switch (n_->kind) {
        case FormulaKind::Constant: return n_->value;
        case FormulaKind::Atom: return assignment(n_->prop, n_->primed);
        case FormulaKind::Not: return !n_->kids[0].eval(assignment);
        case FormulaKind::And:
            for (const auto& k : n_->kids) {
                if (!k.eval(assignment)) return false;
            }
            return true;
        case FormulaKind::Or:
            for (const auto& k : n_->kids) {
                if (k.eval(assignment)) return true;
            }
            return false;
        case FormulaKind::Implies:
            return !n_->kids[0].eval(assignment) || n_->kids[1].eval(assignment);
        case FormulaKind::Iff:
            return n_->kids[0].eval(assignment) == n_->kids[1].eval(assignment);
    }
    throw std::logic_error("corrupt formula");
}

void Formula::collect_atoms(std::vector<std::pair<PropId, bool>>& out) const {
    if (n_->kind == FormulaKind::Atom) {
        out.emplace_back(n_->prop, n_->primed);
        return;
    }
    for (const auto& k : n_->kids) k.collect_atoms(out);
}

bool Formula::has_primed_atom() const {
    if (n_->kind == FormulaKind::Atom) return n_->primed;
    for (const auto& k : n_->kids) {
        if (k.has_primed_atom()) return true;
    }
    return false;
}

const char* section_name(Section s) {
    switch (s) {
        case Section::Input: return "INPUT";
        case Section::Output: return "OUTPUT";
        case Section::EnvInit: return "ENV_INIT";
        case Section::SysInit: return "SYS_INIT";
        case Section::EnvTrans: return "ENV_TRANS";
        case Section::SysTrans: return "SYS_TRANS";
        case Section::SysTransHard: return "SYS_TRANS_HARD";
        case Section::SysLiveness: return "SYS_LIVENESS";
        case Section::EnvLiveness: return "ENV_LIVENESS";
    }
    return "?";
}

std::vector<Formula>& GR1Spec::section(Section s) {
    switch (s) {
        case Section::EnvInit: return env_init;
        case Section::SysInit: return sys_init;
        case Section::EnvTrans: return env_trans;
        case Section::SysTrans: return sys_trans;
        case Section::SysTransHard: return sys_trans_hard;
        case Section::SysLiveness: return sys_liveness;
        case Section::EnvLiveness: return env_liveness;
        default: throw std::invalid_argument("section holds declarations, not formulas");
    }
}

const std::vector<Formula>& GR1Spec::section(Section s) const {
    return const_cast<GR1Spec*>(this)->section(s);
}

namespace {

void check_formula(const GR1Spec& spec, Section sec, std::size_t idx, const Formula& f,
                   std::vector<Diagnostic>& out) {
    std::vector<std::pair<PropId, bool>> atoms;
    f.collect_atoms(atoms);
    for (auto [p, primed] : atoms) {
        if (p >= spec.props.size()) {
            out.push_back({sec, idx, "atom references unregistered proposition"});
            continue;
        }
        Owner owner = spec.props.owner(p);
        switch (sec) {
            case Section::EnvInit:
                if (primed) out.push_back({sec, idx, "primed atom in ENV_INIT"});
                if (owner == Owner::System) {
                    out.push_back({sec, idx, "system atom '" + spec.props.name(p) + "' in ENV_INIT"});
                }
                break;
            case Section::SysInit:
                if (primed) out.push_back({sec, idx, "primed atom in SYS_INIT"});
                break;
            case Section::EnvTrans:
                if (primed && owner == Owner::System) {
                    out.push_back({sec, idx,
                                   "primed system atom '" + spec.props.name(p) + "' in ENV_TRANS"});
                }
                break;
            case Section::SysTrans:
            case Section::SysTransHard:
                break;  // primed atoms over any prop are fine
            case Section::SysLiveness:
                if (primed) out.push_back({sec, idx, "primed atom in SYS_LIVENESS"});
                break;
            case Section::EnvLiveness:
                if (primed) out.push_back({sec, idx, "primed atom in ENV_LIVENESS"});
                break;
            default:
                break;
        }
    }
}

}  // namespace

std::vector<Diagnostic> validate(const GR1Spec& spec) {
    std::vector<Diagnostic> out;
    for (std::size_t i = 0; i < spec.inputs.size(); ++i) {
        if (spec.props.owner(spec.inputs[i]) != Owner::Environment) {
            out.push_back({Section::Input, i, "input proposition not environment-owned"});
        }
    }
    for (std::size_t i = 0; i < spec.outputs.size(); ++i) {
        if (spec.props.owner(spec.outputs[i]) != Owner::System) {
            out.push_back({Section::Output, i, "output proposition not system-owned"});
        }
    }
    for (Section sec : {Section::EnvInit, Section::SysInit, Section::EnvTrans, Section::SysTrans,
                        Section::SysTransHard, Section::SysLiveness, Section::EnvLiveness}) {
        const auto& formulas = spec.section(sec);
        for (std::size_t i = 0; i < formulas.size(); ++i) {
            check_formula(spec, sec, i, formulas[i], out);
        }
    }
    return out;
}

VarMap make_varmap(const GR1Spec& spec) {
    VarMap m;
    m.current.assign(spec.props.size(), 0);
    std::uint32_t next = 0;
    for (PropId p : spec.inputs) {
        m.current.at(p) = next;
        next += 2;
    }
    for (PropId p : spec.outputs) {
        m.current.at(p) = next;
        next += 2;
    }
    if (next != spec.props.size() * 2) {
        throw std::logic_error("varmap: props not partitioned into inputs and outputs");
    }
    return m;
}

bdd::Bdd compile(const Formula& f, const VarMap& m, bdd::Manager& mgr) {
    const FormulaNode& n = f.node();
    switch (n.kind) {
        case FormulaKind::Constant: return mgr.constant(n.value);
        case FormulaKind::Atom: {
            std::uint32_t v = m.var_of(n.prop, n.primed);
            if (v >= mgr.var_count()) throw std::out_of_range("compile: unmapped atom");
            return mgr.mk_var(v);
        }
        case FormulaKind::Not: return !compile(n.kids[0], m, mgr);
        case FormulaKind::And: {
            bdd::Bdd acc = mgr.constant(true);
            for (const auto& k : n.kids) acc &= compile(k, m, mgr);
            return acc;
        }
        case FormulaKind::Or: {
            bdd::Bdd acc = mgr.constant(false);
            for (const auto& k : n.kids) acc |= compile(k, m, mgr);
            return acc;
        }
        case FormulaKind::Implies:
            return compile(n.kids[0], m, mgr).implies(compile(n.kids[1], m, mgr));
        case FormulaKind::Iff:
            return compile(n.kids[0], m, mgr).iff(compile(n.kids[1], m, mgr));
    }
    throw std::logic_error("corrupt formula");
}

}  // namespace sks::logic
