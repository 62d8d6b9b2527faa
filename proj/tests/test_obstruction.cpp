#include <random>

#include <catch2/catch_amalgamated.hpp>

#include <decomp/obstruction.hpp>

using namespace decomp;

namespace {

// Random legal shedding prefix of faces with at most k+1 vertices.
std::vector<Face> random_legal_prefix(const DeltaComplex& d, int k, int length, std::mt19937_64& rng)
{
    std::vector<Face> seq;
    SimplicialComplex cur = d.complex;
    for (int step = 0; step < length && !cur.is_simplex(); ++step) {
        std::vector<Face> legal;
        std::set<std::uint64_t> seen;
        for (Face f : cur.facets())
            for (int r = 1; r <= k + 1; ++r)
                for_each_subset_of_size(f, r, [&](Face s) {
                    if (!seen.insert(s.bits()).second) return;
                    if (shed_legality(cur, deletion(cur, s)).legal) legal.push_back(s);
                });
        if (legal.empty()) break;
        std::uniform_int_distribution<std::size_t> pick(0, legal.size() - 1);
        Face tau = legal[pick(rng)];
        seq.push_back(tau);
        cur = deletion(cur, tau);
    }
    return seq;
}

bool shares_element(const std::vector<ElementSet>& sets)
{
    return !intersection_of(sets).empty();
}

} // namespace

TEST_CASE("phi examples on Δ(2,2)")
{
    auto d = delta_complex(2, 2);
    const auto& lab = d.labeling;
    REQUIRE(phi(d.complex, lab, Face{lab.u(1), lab.u(2), lab.u(3)}) == 1);
    REQUIRE(phi(d.complex, lab, Face{lab.u(1), lab.u(2)}) == 0);
    auto after = deletion(d.complex, Face{lab.u(1)});
    REQUIRE(phi(after, lab, Face{lab.u(1), lab.u(2)}) == 1);
    REQUIRE_THROWS_AS(phi(d.complex, lab, Face{lab.u(1), lab.v(2)}), InputError);
    REQUIRE_THROWS_AS(phi(d.complex, lab, Face{lab.u(1), lab.u(2), lab.u(3), lab.u(4)}), InputError);
    REQUIRE(phi_domain(lab).size() == 50);
}

TEST_CASE("phi audit examples on Δ(2,2)")
{
    auto d = delta_complex(2, 2);
    const auto& lab = d.labeling;

    auto empty = audit_phi_properties(d, {});
    REQUIRE(empty.ok());
    REQUIRE(empty.sets_checked == 50);

    auto mixed = audit_phi_properties(d, {Face{lab.u(1), lab.v(2)}});
    REQUIRE_FALSE(mixed.illegal_step.has_value());
    REQUIRE(mixed.ok());
    const auto dom = phi_domain(lab);
    auto after_mixed = deletion(d.complex, Face{lab.u(1), lab.v(2)});
    for (Face s : dom) REQUIRE(phi(after_mixed, lab, s) == phi(d.complex, lab, s));

    auto u_shed = audit_phi_properties(d, {Face{lab.u(1)}});
    REQUIRE(u_shed.ok());
    auto after_u = deletion(d.complex, Face{lab.u(1)});
    for (Face s : dom)
        if (side_of(lab, s) == FaceSide::v) REQUIRE(phi(after_u, lab, s) == phi(d.complex, lab, s));
    REQUIRE(phi(after_u, lab, Face{lab.u(1), lab.u(2)}) == 1);

    auto absent = audit_phi_properties(d, {Face{lab.u(1)}, Face{lab.u(1)}});
    REQUIRE(absent.illegal_step == 2);
    REQUIRE_FALSE(absent.ok());
}

TEST_CASE("phi audit stops at an illegal step")
{
    auto d = delta_complex(2, 2);
    const auto& lab = d.labeling;
    // Shedding four of the five U-vertices leaves no facet with two of them.
    std::vector<Face> seq{Face{lab.u(1)}, Face{lab.u(2)}, Face{lab.u(3)}, Face{lab.u(4)}};
    auto rep = audit_phi_properties(d, seq);
    REQUIRE(rep.illegal_step.has_value());
    REQUIRE(rep.steps_audited == *rep.illegal_step - 1);
}

TEST_CASE("phi properties hold on random legal prefixes")
{
    std::mt19937_64 rng(11);
    for (auto [a, b] : {std::pair{2, 2}, std::pair{3, 2}, std::pair{2, 3}}) {
        auto d = delta_complex(a, b);
        for (int trial = 0; trial < 25; ++trial) {
            auto seq = random_legal_prefix(d, trial % 2, 4, rng);
            auto rep = audit_phi_properties(d, seq);
            INFO("a=" << a << " b=" << b << " trial " << trial);
            REQUIRE_FALSE(rep.illegal_step.has_value());
            REQUIRE(rep.violations.empty());
        }
    }
}

TEST_CASE("terminal simplex has a set of corank at least 2")
{
    std::mt19937_64 rng(3);
    auto d = delta_complex(2, 2);
    int terminals = 0;
    for (int trial = 0; trial < 40; ++trial) {
        auto seq = random_legal_prefix(d, 1, 40, rng);
        auto rep = audit_phi_properties(d, seq);
        REQUIRE(rep.violations.empty());
        if (rep.terminal_simplex) {
            ++terminals;
            REQUIRE(rep.property2_witness.has_value());
        }
    }
    // Δ(2,2) is weakly 1-decomposable, but random walks need not reach the end.
    SUCCEED("terminal states reached: " << terminals);
}

TEST_CASE("extraction examples")
{
    auto tri = minimal_empty_intersection({{{1, 2}, {2, 3}, {3, 1}}, 1});
    REQUIRE(tri.subcollection.size() == 3);
    REQUIRE(tri.union_size == 3);
    REQUIRE(tri.witnesses == std::vector<Element>{3, 1, 2});

    auto singles = minimal_empty_intersection({{{1}, {2}, {3}}, 0});
    REQUIRE(singles.subcollection == std::vector<ElementSet>{{1}, {2}});
    REQUIRE(singles.union_size == 2);
    REQUIRE(within_square_bound(singles.union_size, 0));

    auto tight = minimal_empty_intersection({{{1, 3}, {2, 4}}, 1});
    REQUIRE(tight.subcollection.size() == 2);
    REQUIRE(tight.union_size == 4);

    REQUIRE_THROWS_AS(minimal_empty_intersection({{{1, 2}, {2, 3}}, 1}), InputError);
    REQUIRE_THROWS_AS(minimal_empty_intersection({{{1, 2, 3}, {4}}, 1}), InputError);
    REQUIRE_THROWS_AS(minimal_empty_intersection({{}, 1}), InputError);
}

TEST_CASE("extraction properties on random collections")
{
    std::mt19937_64 rng(123);
    for (int k = 0; k <= 5; ++k) {
        int done = 0;
        while (done < 200) {
            std::uniform_int_distribution<int> count(1, 8), elem(1, 3 * (k + 2)), size(0, k + 1);
            std::vector<ElementSet> sets;
            const int c = count(rng);
            for (int i = 0; i < c; ++i) {
                ElementSet s;
                const int sz = size(rng);
                for (int j = 0; j < sz; ++j) s.push_back(elem(rng));
                sets.push_back(normalized(std::move(s)));
            }
            if (shares_element(sets)) continue;
            auto ex = minimal_empty_intersection({sets, k});
            REQUIRE(intersection_of(ex.subcollection).empty());
            for (std::size_t j = 0; ex.subcollection.size() > 1 && j < ex.subcollection.size(); ++j)
                REQUIRE_FALSE(intersection_of(ex.subcollection, j).empty());
            for (std::size_t j = 0; j < ex.witnesses.size(); ++j)
                REQUIRE_FALSE(std::binary_search(ex.subcollection[j].begin(), ex.subcollection[j].end(), ex.witnesses[j]));
            REQUIRE(normalized(ex.witnesses).size() == ex.witnesses.size());
            REQUIRE(within_square_bound(ex.union_size, k));
            for (std::size_t j = 0; j < ex.indices.size(); ++j) REQUIRE(sets[ex.indices[j]] == ex.subcollection[j]);
            ++done;
        }
    }
}

TEST_CASE("tight families")
{
    REQUIRE(tight_family(1).sets == std::vector<ElementSet>{{1, 3}, {2, 4}});
    REQUIRE(tight_family(0).sets.size() == 2);
    REQUIRE(tight_family(3).sets.size() == 3);
    for (int k = 0; k <= 8; ++k) {
        auto fam = tight_family(k);
        INFO("k=" << k);
        for (const auto& s : fam.sets) REQUIRE(static_cast<int>(s.size()) == k + 1);
        REQUIRE(intersection_of(fam.sets).empty());
        for (std::size_t j = 0; j < fam.sets.size(); ++j) REQUIRE_FALSE(intersection_of(fam.sets, j).empty());
        const auto u = static_cast<std::int64_t>(union_of(fam.sets).size());
        REQUIRE(u == tight_family_union_size(k));
        const std::int64_t p = (k + 1) / 2, q = (k + 2) / 2;
        REQUIRE(u == (p + 1) * (q + 1));
        REQUIRE(within_square_bound(static_cast<std::size_t>(u), k));
        auto ex = minimal_empty_intersection(fam);
        REQUIRE(ex.subcollection.size() == fam.sets.size());
    }
}

TEST_CASE("theorem audit preconditions")
{
    REQUIRE_THROWS_AS(audit_sequence_against_theorem(2, 2, 0, {}), InputError);
    REQUIRE_THROWS_AS(audit_sequence_against_theorem(3, 3, 1, {}), InputError);
    REQUIRE_THROWS_AS(audit_sequence_against_theorem(3, 3, 0, {Face{0, 1}}), InputError);
    REQUIRE_THROWS_AS(audit_sequence_against_theorem(3, 3, 0, {Face{0}, Face{0}}), InputError);
}

TEST_CASE("theorem audit on short prefixes of Δ(3,3)")
{
    auto empty = audit_sequence_against_theorem(3, 3, 0, {}, PhiTracking::full);
    REQUIRE(empty.valid_so_far());
    for (const auto& [s, v] : empty.frontier) REQUIRE(v <= 1);

    DeltaLabeling lab{3, 3};
    auto one = audit_sequence_against_theorem(3, 3, 0, {Face{lab.u(1)}}, PhiTracking::full);
    REQUIRE(one.valid_so_far());
    REQUIRE_FALSE(one.first_illegal_step.has_value());
    bool found = false;
    for (const auto& [s, v] : one.frontier)
        if (s == Face{lab.u(1), lab.u(2)}) {
            found = true;
            REQUIRE(v == 1);
        }
    REQUIRE(found);

    // A second U-vertex already breaks purity, and the replay says so.
    auto two = audit_sequence_against_theorem(3, 3, 0, {Face{lab.u(1)}, Face{lab.u(2)}});
    REQUIRE(two.first_illegal_step == 2);
    REQUIRE(two.witness);
    REQUIRE(two.witness->fail_step == 2);
}

TEST_CASE("complete sequences on Δ(3,3) always yield a witness")
{
    std::mt19937_64 rng(77);
    auto d = delta_complex(3, 3);
    for (int trial = 0; trial < 30; ++trial) {
        auto prefix = random_legal_prefix(d, 0, 1 + trial % 5, rng);
        auto seq = complete_to_simplex(d, prefix);
        SimplicialComplex cur = d.complex;
        for (Face f : seq) cur = deletion(cur, f);
        REQUIRE(cur.is_simplex());

        for (PhiTracking mode : {PhiTracking::lazy, PhiTracking::full}) {
            auto audit = audit_sequence_against_theorem(3, 3, 0, seq, mode);
            INFO("trial " << trial);
            REQUIRE(audit.witness.has_value());
            const auto& w = *audit.witness;
            const int cap = w.side == FaceSide::u ? d.labeling.b : d.labeling.a;
            REQUIRE(w.replay_checks_pass(0, cap));
            if (audit.first_illegal_step) REQUIRE(w.fail_step <= *audit.first_illegal_step);
            REQUIRE((w.subject_S & w.complement_T).empty());
            REQUIRE((d.labeling.index_mask(w.subject_S) & d.labeling.index_mask(w.complement_T)) == 0);
        }
    }
}

TEST_CASE("lazy and full tracking agree on the failing step")
{
    std::mt19937_64 rng(8);
    auto d = delta_complex(3, 3);
    for (int trial = 0; trial < 15; ++trial) {
        auto seq = complete_to_simplex(d, random_legal_prefix(d, 0, 3, rng));
        auto lazy = audit_sequence_against_theorem(3, 3, 0, seq, PhiTracking::lazy);
        auto full = audit_sequence_against_theorem(3, 3, 0, seq, PhiTracking::full);
        REQUIRE(lazy.witness.has_value());
        REQUIRE(full.witness.has_value());
        REQUIRE(lazy.witness->fail_step == full.witness->fail_step);
    }
}
