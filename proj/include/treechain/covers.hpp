#pragma once

#include "treechain/diagram.hpp"
#include "treechain/kernels.hpp"

#include <boost/dynamic_bitset.hpp>

#include <memory>
#include <string>
#include <vector>

namespace treechain {

using kernels::Exec;

/// Star radii ε_0 > ε_1 > ... > ε_l with 1 > ε_0 and ε_l > 1/2.
struct EpsilonSchedule {
    std::vector<Rational> values;

    /// ε_n = 1/2 + 1/(2(n+2)) for n = 0..l.
    static EpsilonSchedule standard(int l);

    int length() const { return static_cast<int>(values.size()) - 1; }
    const Rational& operator[](int n) const { return values.at(n); }
    CheckResult validate() const;
};

/// U_n^v, held as its fiber g_{nl}^{-1}(v) in the top tree T_l.
struct CoverSet {
    int level = 0;
    int vertex = 0;
    std::vector<int> fiber;
    Rational epsilon;
    boost::dynamic_bitset<> members; // fiber as a bitset over V(T_l)
    boost::dynamic_bitset<> reach;   // fiber together with its neighbours
};

/// φ_n : 𝒰_{n+1} -> 𝒰_n as a vertex table T_{n+1} -> T_n.
struct PatternFunction {
    int level = 0;
    std::vector<int> table;
};

/// Covers 𝒰_0..𝒰_l of |T_l| together with their pattern functions.
/// Immutable once assembled.
class CoverSystem {
public:
    /// Builds fibers from the diagram's g-row. Only shapes are checked here:
    /// the schedule length and the φ table sizes and ranges.
    static CoverSystem assemble(TreeDiagram d, EpsilonSchedule eps, std::vector<PatternFunction> phi);

    int length() const { return diagram_.length(); }
    const TreeDiagram& diagram() const { return diagram_; }
    const EpsilonSchedule& schedule() const { return eps_; }
    const SimplicialGraph& top() const { return diagram_.level(length()); }
    const GraphPtr& top_ptr() const { return diagram_.levels().back(); }

    /// g_{nl} : T_l -> T_n.
    const SimplicialMapping& to_top(int n) const { return to_top_.at(n); }
    const std::vector<CoverSet>& cover(int n) const { return covers_->at(n); }
    const CoverSet& set(int n, int v) const { return covers_->at(n).at(v); }
    const PatternFunction& phi(int n) const { return phi_.at(n); }
    const std::vector<PatternFunction>& phis() const { return phi_; }
    const CoverSet& phi_image(int n, int v) const { return set(n, phi_.at(n).table.at(v)); }

    /// Sets of all levels in level-major order.
    const std::vector<const CoverSet*>& all_sets() const { return all_; }

    /// Output label, with covers numbered from 1.
    std::string label(const CoverSet& a) const;

private:
    TreeDiagram diagram_;
    EpsilonSchedule eps_;
    std::vector<SimplicialMapping> to_top_;
    // Shared so that the pointers in all_ survive copies.
    std::shared_ptr<const std::vector<std::vector<CoverSet>>> covers_;
    std::vector<PatternFunction> phi_;
    std::vector<const CoverSet*> all_;
};

/// Validates the preconditions, then assembles the system with φ_n read off f_n.
CoverSystem build_cover_system(const TreeDiagram& d, const EpsilonSchedule& eps);

/// Some member of one fiber is 1-close in T_l to some member of the other.
bool sets_intersect(const CoverSet& a, const CoverSet& b);
bool contains_member(int w, const CoverSet& a);

/// Combinatorial inclusion U ⊆ V: the fiber of U lies in that of V and U is
/// at least as deep.
bool cover_contains(const CoverSet& outer, const CoverSet& inner);

struct RefinementResult {
    CheckResult result;
    std::vector<int> witness; // U_j^w -> U_n^{witness[w]}
};

/// Fibers are disjoint, cover V(T_l) and are nonempty at every level.
CheckResult check_fibers(const CoverSystem& s);

/// Every set of 𝒰_{n+1} lies in a set of 𝒰_n.
CheckResult check_refinement(const CoverSystem& s);

/// cl(U_j^w) ⊆ U_n^{g_nj(w)} for j > n: fiber inclusion plus ε_j < ε_n.
RefinementResult strongly_refines(const CoverSystem& s, int j, int n);
CheckResult check_strong_refinement(const CoverSystem& s);

CheckResult check_D1(const CoverSystem& s, Exec exec = Exec::Parallel);
CheckResult check_D2(const CoverSystem& s, Exec exec = Exec::Parallel);
CheckResult check_D2prime(const CoverSystem& s, Exec exec = Exec::Parallel);
CheckResult check_D3(const CoverSystem& s, Exec exec = Exec::Parallel);

/// Intersection is symmetric over all pairs and no level has three pairwise
/// meeting sets.
CheckResult check_taut_and_triples(const CoverSystem& s, Exec exec = Exec::Parallel);

/// Nerve of 𝒰_n, with each set labelled by its vertex of T_n.
SimplicialGraph nerve(const CoverSystem& s, int n);
CheckResult nerve_isomorphic_to(const CoverSystem& s, int n);

/// The φ_1 table of the worked example: entry i-1 is j for V_i -> U_j.
std::vector<int> example1_table();

struct Example1Report {
    bool total = false;
    bool image_in_range = false;
    std::vector<int> segments;
    std::vector<int> usage; // usage[j-1] = number of V_i sent to U_j
    bool segments_match = false;

    bool ok() const { return total && image_in_range && segments_match; }
};

/// Constant runs of the table, with adjacent singleton runs grouped together.
std::vector<int> example1_segments(const std::vector<int>& table);
Example1Report check_example1(const std::vector<int>& table);

} // namespace treechain
