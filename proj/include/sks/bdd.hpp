#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

namespace sks::bdd {

using Var = std::uint32_t;
using NodeId = std::uint32_t;

class Manager;

/// Handle to a node in a Manager's shared node table. Canonical: two handles
/// from the same manager denote the same function iff their ids are equal.
class Bdd {
public:
    Bdd() = default;

    bool is_false() const;
    bool is_true() const;
    bool is_constant() const { return is_false() || is_true(); }

    Bdd operator&(const Bdd& o) const;
    Bdd operator|(const Bdd& o) const;
    Bdd operator^(const Bdd& o) const;
    Bdd operator!() const;
    Bdd implies(const Bdd& o) const;
    Bdd iff(const Bdd& o) const;

    Bdd& operator&=(const Bdd& o) { return *this = *this & o; }
    Bdd& operator|=(const Bdd& o) { return *this = *this | o; }

    bool operator==(const Bdd& o) const { return mgr_ == o.mgr_ && id_ == o.id_; }
    bool operator!=(const Bdd& o) const { return !(*this == o); }

    Manager* manager() const { return mgr_; }
    NodeId id() const { return id_; }
    bool valid() const { return mgr_ != nullptr; }

private:
    friend class Manager;
    Bdd(Manager* m, NodeId id) : mgr_(m), id_(id) {}
    Manager* mgr_ = nullptr;
    NodeId id_ = 0;
};

/// Interned, sorted set of variables used for quantification and counting.
struct VarSet {
    std::uint32_t id = 0;
    bool operator==(const VarSet& o) const { return id == o.id; }
};

enum class BoolOp { And, Or, Xor, Implies, Iff };

/// Plain ROBDD node table with hash consing; no complement edges, no dynamic
/// reordering, no garbage collection. Variable order is the index order given
/// at construction. Callers that hold current/primed pairs interleave them
/// (var 2i current, 2i+1 primed) so swap_prime can exchange partners.
class Manager {
public:
    explicit Manager(std::uint32_t var_count, std::size_t max_nodes = 64u << 20);

    std::uint32_t var_count() const { return var_count_; }

    Bdd constant(bool value) { return Bdd(this, value ? 1 : 0); }
    Bdd mk_var(Var v);
    Bdd mk_nvar(Var v);

    Bdd apply(BoolOp op, const Bdd& a, const Bdd& b);
    Bdd ite(const Bdd& c, const Bdd& t, const Bdd& e);

    VarSet varset(std::vector<Var> vars);
    const std::vector<Var>& varset_vars(VarSet s) const { return varsets_[s.id]; }

    Bdd exists(VarSet vars, const Bdd& a);
    Bdd forall(VarSet vars, const Bdd& a);

    /// Exchanges every even variable 2i with its odd partner 2i+1.
    Bdd swap_prime(const Bdd& a);

    Bdd cofactor(const Bdd& a, Var v, bool value);

    /// Some satisfying partial assignment (variables along one true-path),
    /// or nullopt iff `a` is constant-false.
    std::optional<std::vector<std::pair<Var, bool>>> pick_assignment(const Bdd& a) const;

    /// The lexicographically least total assignment over `over` satisfying
    /// `a` (false preferred at each position, in ascending variable order).
    /// Requires support(a) to be contained in `over`; nullopt iff unsat.
    std::optional<std::vector<bool>> pick_least(const Bdd& a, VarSet over);

    /// Number of satisfying assignments over exactly the variables in
    /// `over`; support(a) must be contained in `over` and |over| <= 63.
    std::uint64_t sat_count(const Bdd& a, VarSet over) const;

    std::vector<Var> support(const Bdd& a) const;

    bool eval(const Bdd& a, const std::vector<bool>& assignment) const;

    std::size_t node_count() const { return nodes_.size(); }

    Bdd from_id(NodeId id) { return Bdd(this, id); }
    std::uint32_t node_var(NodeId n) const { return nodes_[n].var; }
    NodeId node_lo(NodeId n) const { return nodes_[n].lo; }
    NodeId node_hi(NodeId n) const { return nodes_[n].hi; }

private:
    struct Node {
        std::uint32_t var;
        NodeId lo;
        NodeId hi;
    };
    using Triple = std::array<std::uint32_t, 3>;
    struct TripleHash {
        std::size_t operator()(const Triple& k) const {
            std::uint64_t x = k[0];
            x = x * 0x9e3779b97f4a7c15ull + k[1];
            x = x * 0x9e3779b97f4a7c15ull + k[2];
            return static_cast<std::size_t>(x ^ (x >> 31));
        }
    };
    struct U64Hash {
        std::size_t operator()(const std::uint64_t& k) const {
            std::uint64_t x = k * 0x9e3779b97f4a7c15ull;
            return static_cast<std::size_t>(x ^ (x >> 29));
        }
    };

    NodeId mk(std::uint32_t var, NodeId lo, NodeId hi);
    NodeId ite_rec(NodeId c, NodeId t, NodeId e);
    NodeId exists_rec(NodeId a, const std::vector<Var>& vars, std::uint32_t set_id);
    NodeId swap_rec(NodeId a);
    NodeId cofactor_rec(NodeId a, Var v, bool value,
                        std::unordered_map<NodeId, NodeId>& memo);
    void check_same_manager(const Bdd& a, const Bdd& b) const;
    std::uint32_t top_var(NodeId n) const;

    std::uint32_t var_count_;
    std::size_t max_nodes_;
    std::vector<Node> nodes_;
    std::vector<NodeId> var_nodes_;

    std::unordered_map<Triple, NodeId, TripleHash> unique_;
    std::unordered_map<Triple, NodeId, TripleHash> ite_cache_;
    std::unordered_map<std::uint64_t, NodeId, U64Hash> quant_cache_;
    std::unordered_map<NodeId, NodeId> swap_cache_;

    std::vector<std::vector<Var>> varsets_;
    std::unordered_map<std::string, std::uint32_t> varset_lookup_;
};

}  // namespace sks::bdd
