#include "sks/bdd.hpp"

#include <algorithm>
#include <limits>
#include <set>
#include <sstream>
#include <stdexcept>

namespace sks::bdd {

namespace {
constexpr std::uint32_t kTermVar = std::numeric_limits<std::uint32_t>::max();
}

bool Bdd::is_false() const { return id_ == 0; }
bool Bdd::is_true() const { return id_ == 1; }

Bdd Bdd::operator&(const Bdd& o) const { return mgr_->apply(BoolOp::And, *this, o); }
Bdd Bdd::operator|(const Bdd& o) const { return mgr_->apply(BoolOp::Or, *this, o); }
Bdd Bdd::operator^(const Bdd& o) const { return mgr_->apply(BoolOp::Xor, *this, o); }
Bdd Bdd::operator!() const { return mgr_->ite(*this, mgr_->constant(false), mgr_->constant(true)); }
Bdd Bdd::implies(const Bdd& o) const { return mgr_->apply(BoolOp::Implies, *this, o); }
Bdd Bdd::iff(const Bdd& o) const { return mgr_->apply(BoolOp::Iff, *this, o); }

Manager::Manager(std::uint32_t var_count, std::size_t max_nodes)
    : var_count_(var_count), max_nodes_(max_nodes) {
    nodes_.push_back({kTermVar, 0, 0});  // false
    nodes_.push_back({kTermVar, 1, 1});  // true
    var_nodes_.resize(var_count_, 0);
    for (std::uint32_t v = 0; v < var_count_; ++v) {
        var_nodes_[v] = mk(v, 0, 1);
    }
}

std::uint32_t Manager::top_var(NodeId n) const { return nodes_[n].var; }

NodeId Manager::mk(std::uint32_t var, NodeId lo, NodeId hi) {
    if (lo == hi) return lo;
    Triple key{var, lo, hi};
    auto it = unique_.find(key);
    if (it != unique_.end()) return it->second;
    if (nodes_.size() >= max_nodes_) {
        throw std::runtime_error("bdd: node table limit exceeded");
    }
    NodeId id = static_cast<NodeId>(nodes_.size());
    nodes_.push_back({var, lo, hi});
    unique_.emplace(key, id);
    return id;
}

Bdd Manager::mk_var(Var v) {
    if (v >= var_count_) throw std::out_of_range("bdd: variable index out of range");
    return Bdd(this, var_nodes_[v]);
}

Bdd Manager::mk_nvar(Var v) {
    if (v >= var_count_) throw std::out_of_range("bdd: variable index out of range");
    return Bdd(this, mk(v, 1, 0));
}

void Manager::check_same_manager(const Bdd& a, const Bdd& b) const {
    if (a.manager() != this || b.manager() != this) {
        throw std::invalid_argument("bdd: operands belong to different managers");
    }
}

Bdd Manager::apply(BoolOp op, const Bdd& a, const Bdd& b) {
    check_same_manager(a, b);
    switch (op) {
        case BoolOp::And: return ite(a, b, constant(false));
        case BoolOp::Or: return ite(a, constant(true), b);
        case BoolOp::Xor: return ite(a, !b, b);
        case BoolOp::Implies: return ite(a, b, constant(true));
        case BoolOp::Iff: return ite(a, b, !b);
    }
    throw std::logic_error("bdd: unknown operator");
}

Bdd Manager::ite(const Bdd& c, const Bdd& t, const Bdd& e) {
    check_same_manager(c, t);
    check_same_manager(c, e);
    return Bdd(this, ite_rec(c.id(), t.id(), e.id()));
}

NodeId Manager::ite_rec(NodeId c, NodeId t, NodeId e) {
    if (c == 1) return t;
    if (c == 0) return e;
    if (t == e) return t;
    if (t == 1 && e == 0) return c;

    Triple key{c, t, e};
    auto it = ite_cache_.find(key);
    if (it != ite_cache_.end()) return it->second;

    std::uint32_t v = std::min({top_var(c), top_var(t), top_var(e)});
    NodeId c_lo = top_var(c) == v ? nodes_[c].lo : c;
    NodeId c_hi = top_var(c) == v ? nodes_[c].hi : c;
    NodeId t_lo = top_var(t) == v ? nodes_[t].lo : t;
    NodeId t_hi = top_var(t) == v ? nodes_[t].hi : t;
    NodeId e_lo = top_var(e) == v ? nodes_[e].lo : e;
    NodeId e_hi = top_var(e) == v ? nodes_[e].hi : e;

    NodeId lo = ite_rec(c_lo, t_lo, e_lo);
    NodeId hi = ite_rec(c_hi, t_hi, e_hi);
    NodeId res = mk(v, lo, hi);
    ite_cache_.emplace(key, res);
    return res;
}

VarSet Manager::varset(std::vector<Var> vars) {
    std::sort(vars.begin(), vars.end());
    vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
    for (Var v : vars) {
        if (v >= var_count_) throw std::out_of_range("bdd: varset variable out of range");
    }
    std::string key;
    key.reserve(vars.size() * 4);
    for (Var v : vars) {
        key.append(reinterpret_cast<const char*>(&v), sizeof(v));
    }
    auto it = varset_lookup_.find(key);
    if (it != varset_lookup_.end()) return VarSet{it->second};
    std::uint32_t id = static_cast<std::uint32_t>(varsets_.size());
    varsets_.push_back(std::move(vars));
    varset_lookup_.emplace(std::move(key), id);
    return VarSet{id};
}

Bdd Manager::exists(VarSet vars, const Bdd& a) {
    check_same_manager(a, a);
    const auto& vs = varsets_[vars.id];
    if (vs.empty()) return a;
    NodeId res = exists_rec(a.id(), vs, vars.id);
    return Bdd(this, res);
}

NodeId Manager::exists_rec(NodeId a, const std::vector<Var>& vars, std::uint32_t set_id) {
    if (a <= 1) return a;
    std::uint32_t v = top_var(a);
    // Nothing below this level can be quantified.
    if (v > vars.back()) return a;

    std::uint64_t key = (static_cast<std::uint64_t>(set_id) << 32) | a;
    auto git = quant_cache_.find(key);
    if (git != quant_cache_.end()) return git->second;

    NodeId lo = exists_rec(nodes_[a].lo, vars, set_id);
    NodeId hi = exists_rec(nodes_[a].hi, vars, set_id);
    NodeId res;
    if (std::binary_search(vars.begin(), vars.end(), v)) {
        res = ite_rec(lo, 1, hi);  // or
    } else {
        res = mk(v, lo, hi);
    }
    quant_cache_.emplace(key, res);
    return res;
}

Bdd Manager::forall(VarSet vars, const Bdd& a) { return !exists(vars, !a); }

Bdd Manager::swap_prime(const Bdd& a) {
    if (var_count_ % 2 != 0) {
        throw std::logic_error("bdd: swap_prime requires an even number of variables");
    }
    return Bdd(this, swap_rec(a.id()));
}

NodeId Manager::swap_rec(NodeId a) {
    if (a <= 1) return a;
    auto it = swap_cache_.find(a);
    if (it != swap_cache_.end()) return it->second;
    std::uint32_t v = top_var(a);
    std::uint32_t partner = v ^ 1u;
    NodeId lo = swap_rec(nodes_[a].lo);
    NodeId hi = swap_rec(nodes_[a].hi);
    // Rebuild bottom-up: (partner ? hi : lo), letting ite restore ordering.
    NodeId res = ite_rec(var_nodes_[partner], hi, lo);
    swap_cache_.emplace(a, res);
    return res;
}

Bdd Manager::cofactor(const Bdd& a, Var v, bool value) {
    if (v >= var_count_) throw std::out_of_range("bdd: variable index out of range");
    std::unordered_map<NodeId, NodeId> memo;
    return Bdd(this, cofactor_rec(a.id(), v, value, memo));
}

NodeId Manager::cofactor_rec(NodeId a, Var v, bool value,
                             std::unordered_map<NodeId, NodeId>& memo) {
    if (a <= 1) return a;
    std::uint32_t tv = top_var(a);
    if (tv > v) return a;
    if (tv == v) return value ? nodes_[a].hi : nodes_[a].lo;
    auto it = memo.find(a);
    if (it != memo.end()) return it->second;
    NodeId lo = cofactor_rec(nodes_[a].lo, v, value, memo);
    NodeId hi = cofactor_rec(nodes_[a].hi, v, value, memo);
    NodeId res = mk(tv, lo, hi);
    memo.emplace(a, res);
    return res;
}

std::optional<std::vector<std::pair<Var, bool>>> Manager::pick_assignment(const Bdd& a) const {
    if (a.id() == 0) return std::nullopt;
    std::vector<std::pair<Var, bool>> path;
    NodeId n = a.id();
    while (n > 1) {
        const Node& node = nodes_[n];
        if (node.lo != 0) {
            path.emplace_back(node.var, false);
            n = node.lo;
        } else {
            path.emplace_back(node.var, true);
            n = node.hi;
        }
    }
    return path;
}

std::optional<std::vector<bool>> Manager::pick_least(const Bdd& a, VarSet over) {
    if (a.id() == 0) return std::nullopt;
    const auto& vs = varsets_[over.id];
    for (Var v : support(a)) {
        if (!std::binary_search(vs.begin(), vs.end(), v)) {
            throw std::invalid_argument("bdd: pick_least variable set misses support variable");
        }
    }
    std::vector<bool> out(vs.size(), false);
    Bdd cur = a;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        Bdd lo = cofactor(cur, vs[i], false);
        if (!lo.is_false()) {
            out[i] = false;
            cur = lo;
        } else {
            out[i] = true;
            cur = cofactor(cur, vs[i], true);
        }
    }
    return out;
}

std::uint64_t Manager::sat_count(const Bdd& a, VarSet over) const {
    const auto& vs = varsets_[over.id];
    if (vs.size() > 63) throw std::invalid_argument("bdd: sat_count limited to 63 variables");
    for (Var v : support(a)) {
        if (!std::binary_search(vs.begin(), vs.end(), v)) {
            throw std::invalid_argument("bdd: sat_count variable set misses support variable");
        }
    }
    // Count over positions in vs; free variables between node levels double
    // the count per skipped position.
    std::unordered_map<NodeId, std::uint64_t> memo;
    auto pos_of = [&](NodeId n) -> std::size_t {
        if (n <= 1) return vs.size();
        auto it = std::lower_bound(vs.begin(), vs.end(), nodes_[n].var);
        return static_cast<std::size_t>(it - vs.begin());
    };
    // memo counts assignments over variables strictly below node's position.
    std::vector<NodeId> stack{a.id()};
    while (!stack.empty()) {
        NodeId n = stack.back();
        if (n <= 1 || memo.count(n)) {
            stack.pop_back();
            continue;
        }
        NodeId lo = nodes_[n].lo, hi = nodes_[n].hi;
        bool ready = true;
        for (NodeId kid : {lo, hi}) {
            if (kid > 1 && !memo.count(kid)) {
                stack.push_back(kid);
                ready = false;
            }
        }
        if (!ready) continue;
        stack.pop_back();
        std::size_t p = pos_of(n);
        auto kid_count = [&](NodeId kid) -> std::uint64_t {
            std::uint64_t c = kid <= 1 ? (kid == 1 ? 1 : 0) : memo[kid];
            std::size_t kp = pos_of(kid);
            return c << (kp - p - 1);
        };
        memo[n] = kid_count(lo) + kid_count(hi);
    }
    NodeId root = a.id();
    std::uint64_t base = root <= 1 ? (root == 1 ? 1 : 0) : memo[root];
    return base << pos_of(root);
}

std::vector<Var> Manager::support(const Bdd& a) const {
    std::set<Var> seen;
    std::vector<NodeId> stack{a.id()};
    std::set<NodeId> visited;
    while (!stack.empty()) {
        NodeId n = stack.back();
        stack.pop_back();
        if (n <= 1 || !visited.insert(n).second) continue;
        seen.insert(nodes_[n].var);
        stack.push_back(nodes_[n].lo);
        stack.push_back(nodes_[n].hi);
    }
    return std::vector<Var>(seen.begin(), seen.end());
}

bool Manager::eval(const Bdd& a, const std::vector<bool>& assignment) const {
    NodeId n = a.id();
    while (n > 1) {
        const Node& node = nodes_[n];
        n = assignment.at(node.var) ? node.hi : node.lo;
    }
    return n == 1;
}

}  // namespace sks::bdd
