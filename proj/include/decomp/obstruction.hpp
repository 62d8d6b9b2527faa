#ifndef DECOMP_OBSTRUCTION_HPP
#define DECOMP_OBSTRUCTION_HPP

#include <algorithm>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "complex.hpp"
#include "delta_family.hpp"
#include "error.hpp"

namespace decomp {

// ---------------------------------------------------------------------------
// Corank functions phi_i on the one-sided domain of Δ(a,b)
// ---------------------------------------------------------------------------

/// S ⊆ U with |S| <= b+1, or S ⊆ V with |S| <= a+1.
inline bool in_phi_domain(const DeltaLabeling& lab, Face s)
{
    if (s.subset_of(lab.u_side())) return s.size() <= lab.b + 1;
    if (s.subset_of(lab.v_side())) return s.size() <= lab.a + 1;
    return false;
}

/// phi(S) = |S| - rank(S) in the given shedding state of Δ(a,b).
inline int phi(const SimplicialComplex& state, const DeltaLabeling& lab, Face s)
{
    require_input(in_phi_domain(lab, s), "phi: " + to_string(s) + " is outside the one-sided domain");
    return rank_of(state, s).corank;
}

/// Every nonempty domain set: U-subsets of size <= b+1, then V-subsets of size
/// <= a+1, each by size then lexicographically.
inline std::vector<Face> phi_domain(const DeltaLabeling& lab)
{
    std::vector<Face> out;
    for (int r = 1; r <= lab.b + 1; ++r) for_each_subset_of_size(lab.u_side(), r, [&](Face f) { out.push_back(f); });
    for (int r = 1; r <= lab.a + 1; ++r) for_each_subset_of_size(lab.v_side(), r, [&](Face f) { out.push_back(f); });
    return out;
}

enum class FaceSide { u, v, mixed };

inline FaceSide side_of(const DeltaLabeling& lab, Face f)
{
    if (f.subset_of(lab.u_side())) return FaceSide::u;
    if (f.subset_of(lab.v_side())) return FaceSide::v;
    return FaceSide::mixed;
}

/// Some S in the domain with phi(S) >= 2, if the state has one.
inline std::optional<Face> high_corank_set(const SimplicialComplex& state, const DeltaLabeling& lab)
{
    for (Face s : phi_domain(lab))
        if (phi(state, lab, s) >= 2) return s;
    return std::nullopt;
}

struct LegalityCheck {
    bool legal = true;
    std::string reason;
};

inline LegalityCheck shed_legality(const SimplicialComplex& before, const SimplicialComplex& after)
{
    if (after.is_void() || !after.is_pure() || after.dim() != before.dim())
        return {false, "deletion is not pure of dimension " + std::to_string(before.dim())};
    return {};
}

struct PhiViolation {
    int property = 0; // 1..5
    int step = 0;     // i, the number of sheds applied
    Face subject;
    std::string detail;
};

struct PhiAuditReport {
    int steps_audited = 0;
    std::size_t sets_checked = 0;
    std::optional<int> illegal_step; // 1-based shed index that broke purity or was absent
    std::string illegal_reason;
    bool terminal_simplex = false;
    std::optional<Face> property2_witness; // checked only when the final state is a simplex
    std::vector<PhiViolation> violations;

    [[nodiscard]] bool ok() const
    {
        return violations.empty() && !illegal_step && (!terminal_simplex || property2_witness.has_value());
    }
};

/// Audits the corank functions phi_t(S) along a legal shedding prefix on
/// Δ(a,b). Violations are tagged by property:
///   1. phi_0(S) <= 1 for every S in the domain.
///   2. at a terminal simplex some S has phi_t(S) >= 2.
///   3. a mixed shed leaves every phi unchanged.
///   4. a one-sided shed leaves the other side's phi unchanged.
///   5. phi_t(S) <= 1 iff S minus some vertex is a face of the state.
/// An illegal step stops the audit there.
inline PhiAuditReport audit_phi_properties(const DeltaComplex& delta, const std::vector<Face>& sequence,
                                           const std::vector<Face>* domain_override = nullptr)
{
    const DeltaLabeling& lab = delta.labeling;
    const std::vector<Face> domain = domain_override ? *domain_override : phi_domain(lab);
    for (Face s : domain) require_input(in_phi_domain(lab, s) && !s.empty(), "audit domain set outside the domain");

    PhiAuditReport rep;
    auto phis = [&](const SimplicialComplex& st) {
        std::vector<int> vals;
        vals.reserve(domain.size());
        for (Face s : domain) vals.push_back(rank_of(st, s).corank);
        return vals;
    };
    auto check_five = [&](const SimplicialComplex& st, const std::vector<int>& vals, int step) {
        for (std::size_t j = 0; j < domain.size(); ++j) {
            Face s = domain[j];
            bool drop_one = false;
            s.for_each([&](VertexId v) { drop_one = drop_one || st.is_face(s.without(v)); });
            if ((vals[j] <= 1) != drop_one)
                rep.violations.push_back({5, step, s, "phi=" + std::to_string(vals[j]) + " but S minus a vertex " +
                                                           (drop_one ? "is" : "is not") + " a face"});
        }
        rep.sets_checked += domain.size();
    };

    SimplicialComplex cur = delta.complex;
    std::vector<int> prev = phis(cur);
    for (std::size_t j = 0; j < domain.size(); ++j)
        if (prev[j] > 1) rep.violations.push_back({1, 0, domain[j], "phi_0=" + std::to_string(prev[j])});
    check_five(cur, prev, 0);

    for (std::size_t i = 0; i < sequence.size(); ++i) {
        const int step = static_cast<int>(i) + 1;
        const Face tau = sequence[i];
        if (tau.empty() || !cur.is_face(tau)) {
            rep.illegal_step = step;
            rep.illegal_reason = "face absent: " + to_string(tau);
            return rep;
        }
        SimplicialComplex next = deletion(cur, tau);
        if (auto lc = shed_legality(cur, next); !lc.legal) {
            rep.illegal_step = step;
            rep.illegal_reason = lc.reason;
            return rep;
        }
        std::vector<int> vals = phis(next);
        const FaceSide side = side_of(lab, tau);
        for (std::size_t j = 0; j < domain.size(); ++j) {
            if (vals[j] == prev[j]) continue;
            const FaceSide sset = side_of(lab, domain[j]);
            std::string what = "phi changed " + std::to_string(prev[j]) + " -> " + std::to_string(vals[j]);
            if (side == FaceSide::mixed) rep.violations.push_back({3, step, domain[j], what});
            else if (side != sset) rep.violations.push_back({4, step, domain[j], what});
        }
        check_five(next, vals, step);
        cur = std::move(next);
        prev = std::move(vals);
        rep.steps_audited = step;
    }

    rep.terminal_simplex = cur.is_simplex();
    if (rep.terminal_simplex) {
        for (std::size_t j = 0; j < domain.size(); ++j) {
            if (prev[j] >= 2) {
                rep.property2_witness = domain[j];
                break;
            }
        }
        if (!rep.property2_witness) rep.violations.push_back({2, rep.steps_audited, Face{}, "no S with phi_t >= 2"});
    }
    return rep;
}

// ---------------------------------------------------------------------------
// Hitting sets: minimal empty-intersection sub-collections
// ---------------------------------------------------------------------------

using Element = std::int64_t;
using ElementSet = std::vector<Element>; // sorted, no duplicates

struct SetCollection {
    std::vector<ElementSet> sets;
    int k = 0;
};

inline ElementSet normalized(ElementSet s)
{
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline ElementSet intersection_of(const std::vector<ElementSet>& sets, std::optional<std::size_t> skip = std::nullopt)
{
    std::optional<ElementSet> acc;
    for (std::size_t i = 0; i < sets.size(); ++i) {
        if (skip && *skip == i) continue;
        if (!acc) {
            acc = sets[i];
            continue;
        }
        ElementSet out;
        std::set_intersection(acc->begin(), acc->end(), sets[i].begin(), sets[i].end(), std::back_inserter(out));
        acc = std::move(out);
    }
    require_input(acc.has_value(), "intersection of an empty collection");
    return *acc;
}

inline ElementSet union_of(const std::vector<ElementSet>& sets)
{
    ElementSet out;
    for (const auto& s : sets) out.insert(out.end(), s.begin(), s.end());
    return normalized(std::move(out));
}

struct Extraction {
    std::vector<std::size_t> indices;   // positions in the input collection
    std::vector<ElementSet> subcollection;
    std::vector<Element> witnesses;     // f(X), aligned with subcollection
    std::size_t union_size = 0;
    std::int64_t chain_bound = 0;       // |Y| (k + 3 - |Y|)
};

/// ((k+3)/2)^2 compared without rounding: 4|U| <= (k+3)^2.
inline bool within_square_bound(std::size_t union_size, int k)
{
    return 4 * static_cast<std::int64_t>(union_size) <= static_cast<std::int64_t>(k + 3) * (k + 3);
}

/// Finds an inclusion-minimal sub-collection with empty intersection: take the
/// shortest prefix of the input whose intersection is empty, then drop sets in
/// input order while the intersection stays empty. For each kept X, records
/// f(X) = min of the intersection of the others; these are distinct and lie
/// outside X, which bounds the union by |Y| (k + 3 - |Y|) <= ((k+3)/2)^2.
inline Extraction minimal_empty_intersection(const SetCollection& coll)
{
    require_input(coll.k >= 0, "hitting set: k must be nonnegative");
    require_input(!coll.sets.empty(), "hitting set: empty collection");
    std::vector<ElementSet> sets;
    for (const auto& s : coll.sets) {
        sets.push_back(normalized(s));
        require_input(static_cast<int>(sets.back().size()) <= coll.k + 1,
                      "hitting set: a set has more than k+1 elements");
    }
    require_input(intersection_of(sets).empty(), "hitting set: the collection has a common element");

    std::vector<std::size_t> keep;
    {
        std::vector<ElementSet> prefix;
        for (std::size_t i = 0; i < sets.size(); ++i) {
            prefix.push_back(sets[i]);
            keep.push_back(i);
            if (intersection_of(prefix).empty()) break;
        }
    }
    for (std::size_t pos = 0; pos < keep.size() && keep.size() > 1;) {
        std::vector<ElementSet> rest;
        for (std::size_t q = 0; q < keep.size(); ++q)
            if (q != pos) rest.push_back(sets[keep[q]]);
        if (intersection_of(rest).empty()) keep.erase(keep.begin() + static_cast<std::ptrdiff_t>(pos));
        else ++pos;
    }

    Extraction ex;
    ex.indices = keep;
    for (std::size_t i : keep) ex.subcollection.push_back(sets[i]);
    const std::size_t y = ex.subcollection.size();
    if (y >= 2) {
        for (std::size_t j = 0; j < y; ++j) {
            ElementSet others = intersection_of(ex.subcollection, j);
            require_invariant(!others.empty(), "extraction is not inclusion-minimal");
            Element f = others.front();
            require_invariant(!std::binary_search(ex.subcollection[j].begin(), ex.subcollection[j].end(), f),
                              "witness f(X) lies in X");
            ex.witnesses.push_back(f);
        }
        ElementSet fs = normalized(ex.witnesses);
        require_invariant(fs.size() == ex.witnesses.size(), "witnesses f(X) are not distinct");
    }
    ex.union_size = union_of(ex.subcollection).size();
    ex.chain_bound = static_cast<std::int64_t>(y) * (coll.k + 3 - static_cast<std::int64_t>(y));
    // A single empty set has no witnesses; the chain bound does not apply to it.
    if (y >= 2) require_invariant(static_cast<std::int64_t>(ex.union_size) <= ex.chain_bound, "union exceeds |Y|(k+3-|Y|)");
    require_invariant(within_square_bound(ex.union_size, coll.k), "union exceeds ((k+3)/2)^2");
    return ex;
}

/// Family meeting the hitting-set bound: all p-subsets of {1..p+1}, each
/// padded with q fresh elements, p = floor((k+1)/2), q = ceil((k+1)/2).
/// At k = 0 that recipe yields one set, so the roles of p and q swap there
/// (two singletons). Union size is (p+1)(q+1) either way.
inline SetCollection tight_family(int k)
{
    require_input(k >= 0, "tight_family: k must be nonnegative");
    int p = (k + 1) / 2, q = (k + 2) / 2;
    if (p == 0) std::swap(p, q);
    SetCollection out;
    out.k = k;
    Element fresh = p + 2;
    Face core;
    for (int i = 1; i <= p + 1; ++i) core.insert(i);
    for_each_subset_of_size(core, p, [&](Face sub) {
        ElementSet s;
        sub.for_each([&](VertexId v) { s.push_back(v); });
        for (int j = 0; j < q; ++j) s.push_back(fresh++);
        out.sets.push_back(normalized(std::move(s)));
    });
    return out;
}

inline std::int64_t tight_family_union_size(int k)
{
    const std::int64_t p = (k + 1) / 2, q = (k + 2) / 2;
    return (p + 1) * (q + 1);
}

// ---------------------------------------------------------------------------
// Replay of the non-decomposability argument on a candidate shedding sequence
// ---------------------------------------------------------------------------

struct TheoremWitness {
    int fail_step = 0;            // i: phi_i(S) >= 2 first happens after i sheds
    FaceSide side = FaceSide::u;  // side of S (and of tau_i)
    Face original_S;              // first domain set found with phi_i >= 2
    int original_phi = 0;
    std::vector<Face> collection_X;    // shed faces among tau_1..tau_i inside S
    std::vector<Face> subcollection_Y; // minimal empty-intersection sub-collection
    std::vector<VertexId> f_witnesses; // f(X) for X in Y
    Face subject_S;                    // union of Y
    int subject_phi = 0;
    Face complement_T;                 // opposite-side set, index-disjoint from S
    int complement_T_phi = 0;
    Face face_A;                       // |A| = opposite size, A in Δ_i
    bool a_in_complex = false;
    bool a_extends = true;             // A inside some full-size facet of Δ_i?

    /// Every runtime check of the argument.
    [[nodiscard]] bool replay_checks_pass(int k, int cap) const
    {
        return original_phi >= 2 && subject_phi >= 2 && within_square_bound(static_cast<std::size_t>(subject_S.size()), k) &&
               subject_S.size() <= cap && complement_T_phi <= 1 && a_in_complex && !a_extends;
    }
};

struct TheoremAudit {
    std::optional<TheoremWitness> witness;
    std::optional<int> first_illegal_step; // 1-based
    std::string illegal_reason;
    int steps_replayed = 0;
    bool terminal_simplex = false;
    std::vector<std::pair<Face, int>> frontier; // tracked sets with their final phi, when no witness

    [[nodiscard]] bool valid_so_far() const { return !witness.has_value(); }
};

enum class PhiTracking { lazy, full };

namespace detail {

// Unions of same-side shed faces, capped in size; the only sets where phi can
// first reach 2 (if phi_i(S) >= 2, the union of a minimal sub-collection of
// shed faces inside S already does).
struct UnionTracker {
    std::vector<Face> sets;

    void add(Face tau, int cap)
    {
        std::vector<Face> fresh;
        if (tau.size() <= cap) fresh.push_back(tau);
        for (Face x : sets) {
            Face u = x | tau;
            if (u.size() <= cap) fresh.push_back(u);
        }
        sets.insert(sets.end(), fresh.begin(), fresh.end());
        std::sort(sets.begin(), sets.end(), size_lex_less);
        sets.erase(std::unique(sets.begin(), sets.end()), sets.end());
    }
};

inline TheoremWitness build_witness(const SimplicialComplex& state, const DeltaLabeling& lab, int k, int step,
                                    Face s, const std::vector<Face>& shed_so_far)
{
    TheoremWitness w;
    w.fail_step = step;
    w.side = side_of(lab, s);
    w.original_S = s;
    w.original_phi = phi(state, lab, s);

    for (Face tau : shed_so_far)
        if (tau.subset_of(s)) w.collection_X.push_back(tau);
    require_invariant(!w.collection_X.empty(), "phi >= 2 with no shed face inside S");

    SetCollection coll;
    coll.k = k;
    for (Face tau : w.collection_X) {
        ElementSet e;
        tau.for_each([&](VertexId v) { e.push_back(v); });
        coll.sets.push_back(std::move(e));
    }
    {
        ElementSet common = intersection_of(coll.sets);
        require_invariant(common.empty(), "shed faces inside S share a vertex although phi_i(S) >= 2");
    }
    Extraction ex = minimal_empty_intersection(coll);
    for (std::size_t i : ex.indices) {
        w.subcollection_Y.push_back(w.collection_X[i]);
        w.subject_S = w.subject_S | w.collection_X[i];
    }
    for (Element f : ex.witnesses) w.f_witnesses.push_back(static_cast<VertexId>(f));
    w.subject_phi = phi(state, lab, w.subject_S);

    // Opposite side: T gets opp_size + 1 vertices at the smallest indices not used by S.
    const bool s_in_u = w.side == FaceSide::u;
    const int opp_size = s_in_u ? lab.a : lab.b;
    const std::uint64_t used = lab.index_mask(w.subject_S);
    for (int nu = 1; nu <= lab.n() && w.complement_T.size() < opp_size + 1; ++nu) {
        if ((used >> (nu - 1)) & 1U) continue;
        w.complement_T.insert(s_in_u ? lab.v(nu) : lab.u(nu));
    }
    require_invariant(w.complement_T.size() == opp_size + 1, "not enough free indices for T");
    RankResult rt = rank_of(state, w.complement_T);
    w.complement_T_phi = rt.corank;

    Face a_face;
    for (VertexId v : rt.witness.vertices()) {
        if (a_face.size() == opp_size) break;
        a_face.insert(v);
    }
    w.face_A = a_face;
    w.a_in_complex = a_face.size() == opp_size && state.is_face(a_face);

    const int full = lab.a + lab.b;
    w.a_extends = std::any_of(state.facets().begin(), state.facets().end(),
                              [&](Face f) { return f.size() == full && a_face.subset_of(f); });
    return w;
}

} // namespace detail

/// Replays `sequence` on Δ(a,b) and, at the first shed after which some
/// one-sided set S has phi >= 2, rebuilds the contradiction: the shed faces
/// inside S have empty common intersection; a minimal sub-collection has a
/// small union S'; an opposite-side set T index-disjoint from S' still has
/// phi <= 1, so it holds a face A of full opposite size; and A lies in no
/// facet of full dimension, so that state is not pure.
inline TheoremAudit audit_sequence_against_theorem(int a, int b, int k, const std::vector<Face>& sequence,
                                                   PhiTracking tracking = PhiTracking::lazy)
{
    check_delta_params(a, b);
    require_input(k >= 0, "k must be nonnegative");
    require_input(static_cast<std::int64_t>(k + 3) * (k + 3) <= 4LL * std::min(a, b),
                  "precondition ((k+3)/2)^2 <= min(a,b) fails");
    for (Face tau : sequence) require_input(!tau.empty() && tau.dim() <= k, "sequence face " + to_string(tau) + " has dimension > k");

    DeltaComplex delta = delta_complex(a, b);
    const DeltaLabeling& lab = delta.labeling;
    const std::vector<Face> domain = tracking == PhiTracking::full ? phi_domain(lab) : std::vector<Face>{};

    TheoremAudit out;
    SimplicialComplex cur = delta.complex;
    detail::UnionTracker track_u, track_v;
    std::vector<Face> shed;

    for (std::size_t i = 0; i < sequence.size(); ++i) {
        const int step = static_cast<int>(i) + 1;
        const Face tau = sequence[i];
        require_input(cur.is_face(tau), "sequence face " + to_string(tau) + " not present at shed " + std::to_string(step));
        SimplicialComplex next = deletion(cur, tau);
        if (!out.first_illegal_step) {
            if (auto lc = shed_legality(cur, next); !lc.legal) {
                out.first_illegal_step = step;
                out.illegal_reason = lc.reason;
            }
        }
        cur = std::move(next);
        shed.push_back(tau);
        out.steps_replayed = step;

        const FaceSide side = side_of(lab, tau);
        if (side == FaceSide::u) track_u.add(tau, lab.b + 1);
        if (side == FaceSide::v) track_v.add(tau, lab.a + 1);

        std::optional<Face> high;
        const std::vector<Face>* scan = &domain;
        std::vector<Face> tracked;
        if (tracking == PhiTracking::lazy) {
            tracked = track_u.sets;
            tracked.insert(tracked.end(), track_v.sets.begin(), track_v.sets.end());
            scan = &tracked;
        }
        for (Face s : *scan) {
            if (phi(cur, lab, s) >= 2) {
                high = s;
                break;
            }
        }
        if (!high) continue;

        require_invariant(side != FaceSide::mixed, "a mixed shed raised phi to 2");
        require_invariant(side_of(lab, *high) == side, "a one-sided shed raised phi on the opposite side");
        out.witness = detail::build_witness(cur, lab, k, step, *high, shed);
        return out;
    }

    out.terminal_simplex = cur.is_simplex();
    auto record = [&](const std::vector<Face>& sets) {
        for (Face s : sets) out.frontier.emplace_back(s, phi(cur, lab, s));
    };
    if (tracking == PhiTracking::lazy) {
        record(track_u.sets);
        record(track_v.sets);
    } else {
        record(domain);
    }
    return out;
}

/// Extends a shedding prefix on Δ(a,b) to a complete sequence ending at one
/// simplex: after the prefix, shed every remaining vertex outside the
/// lexicographically first facet, in increasing order. Single vertices stay
/// faces under deletions of other faces, so each step is present.
inline std::vector<Face> complete_to_simplex(const DeltaComplex& delta, const std::vector<Face>& prefix)
{
    SimplicialComplex cur = delta.complex;
    for (Face tau : prefix) cur = deletion(cur, tau);
    require_input(!cur.is_void(), "prefix deletes every face");
    std::vector<Face> out = prefix;
    const Face keep = cur.facets().front();
    cur.support().without(keep).for_each([&](VertexId v) { out.push_back(Face::single(v)); });
    return out;
}

} // namespace decomp

#endif // DECOMP_OBSTRUCTION_HPP
