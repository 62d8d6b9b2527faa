#ifndef DECOMP_DECOMPOSABILITY_HPP
#define DECOMP_DECOMPOSABILITY_HPP

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "complex.hpp"
#include "diameter.hpp"
#include "error.hpp"

namespace decomp {

enum class Mode { weak, strong };

inline std::string to_string(Mode m) { return m == Mode::weak ? "weak" : "strong"; }

struct ShedStep {
    Face face;
    std::optional<std::size_t> facets_after;
};

/// An ordered shedding sequence. In strong mode, links[i] certifies the link
/// of steps[i].face in the complex at the time of that shed.
struct SheddingCertificate {
    Mode mode = Mode::weak;
    int k = 0;
    std::vector<ShedStep> steps;
    std::vector<SheddingCertificate> links;
    Face terminal;
};

enum class Outcome { decomposable, not_decomposable, budget_exhausted };

inline std::string to_string(Outcome o)
{
    switch (o) {
    case Outcome::decomposable: return "decomposable";
    case Outcome::not_decomposable: return "not decomposable";
    case Outcome::budget_exhausted: return "budget exhausted";
    }
    return "?";
}

struct SearchVerdict {
    Outcome outcome = Outcome::not_decomposable;
    std::optional<SheddingCertificate> certificate;
    std::int64_t states_explored = 0;
    std::int64_t memo_hits = 0;

    [[nodiscard]] bool decomposable() const { return outcome == Outcome::decomposable; }
};

using VertexPermutation = std::vector<VertexId>;

struct SearchOptions {
    bool memoize = true;
    /// Expanded-state cap (nested link searches included); unset means unlimited.
    std::optional<std::int64_t> max_states;
    /// Automorphisms of the root complex. Failed states are memoized under the
    /// lexicographically least image. Empty disables the reduction.
    std::vector<VertexPermutation> symmetry;
    /// Called with the shed path whenever a non-simplex state admits no legal shed.
    std::function<void(const std::vector<Face>&)> on_dead_end;
};

namespace detail {

using Bits = std::vector<std::uint64_t>;
using Key = std::vector<std::uint64_t>;

struct KeyHash {
    std::size_t operator()(const Key& key) const noexcept
    {
        std::uint64_t h = 0xcbf29ce484222325ULL;
        for (std::uint64_t w : key) {
            h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        }
        return static_cast<std::size_t>(h);
    }
};

struct SharedSearchState {
    std::int64_t states = 0;
    std::int64_t memo_hits = 0;
    std::optional<std::int64_t> max_states;
    bool exhausted = false;
    // Strong mode: link complexes seen before, keyed by their facet masks.
    std::unordered_map<Key, std::optional<SheddingCertificate>, KeyHash> link_cache;
};

inline Face apply_permutation(Face f, const VertexPermutation& p)
{
    Face out;
    f.for_each([&](VertexId v) { out.insert(p[static_cast<std::size_t>(v)]); });
    return out;
}

inline Key facet_key(std::vector<Face> facets)
{
    Key key;
    key.reserve(facets.size());
    for (Face f : facets) key.push_back(f.bits());
    std::sort(key.begin(), key.end());
    return key;
}

// Depth-first search over shed faces of a fixed root complex.
//
// Every legal shed of a pure complex only removes facets: the deletion keeps
// the facets not containing tau and is pure of the same dimension exactly when
// each ridge F \ v (tau ⊆ F, v ∈ tau) lies in a second facet. States are
// therefore subsets of the root's facets, held as bitsets.
class ShedSearch {
public:
    ShedSearch(const SimplicialComplex& root, Mode mode, int k, const SearchOptions& opts,
               SharedSearchState& shared, bool top_level)
        : root_(root), facets_(root.facets()), mode_(mode), k_(k), opts_(opts), shared_(shared),
          top_level_(top_level)
    {
    }

    std::optional<SheddingCertificate> run()
    {
        SheddingCertificate cert;
        cert.mode = mode_;
        cert.k = k_;
        if (facets_.empty()) return std::nullopt;
        Bits all((facets_.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < facets_.size(); ++i) all[i / 64] |= std::uint64_t{1} << (i % 64);
        if (dfs(all, cert)) return cert;
        return std::nullopt;
    }

private:
    Key state_key(const Bits& state, const std::vector<std::size_t>& active) const
    {
        if (!top_level_ || opts_.symmetry.empty()) return state;
        std::optional<Key> best;
        for (const auto& perm : opts_.symmetry) {
            std::vector<Face> image;
            image.reserve(active.size());
            for (std::size_t i : active) image.push_back(apply_permutation(facets_[i], perm));
            Key key = facet_key(std::move(image));
            if (!best || key < *best) best = std::move(key);
        }
        return *best;
    }

    std::vector<Face> candidates(const std::vector<std::size_t>& active) const
    {
        std::unordered_set<Face, FaceHash> seen;
        for (std::size_t i : active)
            for (int r = 1; r <= k_ + 1; ++r) for_each_subset_of_size(facets_[i], r, [&](Face s) { seen.insert(s); });
        std::vector<Face> out(seen.begin(), seen.end());
        std::sort(out.begin(), out.end(), size_lex_less);
        return out;
    }

    std::optional<SheddingCertificate> certify_link(const std::vector<std::size_t>& containing, Face tau)
    {
        std::vector<Face> lk;
        lk.reserve(containing.size());
        for (std::size_t i : containing) lk.push_back(facets_[i].without(tau));
        Key key = facet_key(lk);
        if (auto hit = shared_.link_cache.find(key); hit != shared_.link_cache.end()) {
            ++shared_.memo_hits;
            return hit->second;
        }
        SimplicialComplex link_cx = make_complex(std::move(lk), root_.vertex_count());
        ShedSearch nested(link_cx, mode_, k_, opts_, shared_, false);
        auto cert = nested.run();
        if (!shared_.exhausted) shared_.link_cache.emplace(std::move(key), cert);
        return cert;
    }

    bool dfs(const Bits& state, SheddingCertificate& cert)
    {
        std::vector<std::size_t> active;
        for (std::size_t i = 0; i < facets_.size(); ++i)
            if ((state[i / 64] >> (i % 64)) & 1U) active.push_back(i);

        if (active.size() == 1) {
            cert.terminal = facets_[active.front()];
            return true;
        }

        Key key;
        if (opts_.memoize) {
            key = state_key(state, active);
            if (failed_.contains(key)) {
                ++shared_.memo_hits;
                return false;
            }
        }
        if (shared_.max_states && shared_.states >= *shared_.max_states) {
            shared_.exhausted = true;
            return false;
        }
        ++shared_.states;

        std::unordered_map<std::uint64_t, int> ridge_count;
        for (std::size_t i : active) facets_[i].for_each([&](VertexId v) { ++ridge_count[facets_[i].without(v).bits()]; });

        bool any_legal = false;
        for (Face tau : candidates(active)) {
            std::vector<std::size_t> containing;
            for (std::size_t i : active)
                if (tau.subset_of(facets_[i])) containing.push_back(i);
            if (containing.size() == active.size()) continue;

            bool legal = true;
            for (std::size_t i : containing) {
                tau.for_each([&](VertexId v) {
                    if (ridge_count[facets_[i].without(v).bits()] < 2) legal = false;
                });
                if (!legal) break;
            }
            if (!legal) continue;
            any_legal = true;

            std::optional<SheddingCertificate> link_cert;
            if (mode_ == Mode::strong) {
                link_cert = certify_link(containing, tau);
                if (shared_.exhausted) return false;
                if (!link_cert) continue;
            }

            Bits next = state;
            for (std::size_t i : containing) next[i / 64] &= ~(std::uint64_t{1} << (i % 64));
            cert.steps.push_back({tau, active.size() - containing.size()});
            if (link_cert) cert.links.push_back(std::move(*link_cert));
            path_.push_back(tau);
            if (dfs(next, cert)) return true;
            path_.pop_back();
            cert.steps.pop_back();
            if (mode_ == Mode::strong) cert.links.pop_back();
            if (shared_.exhausted) return false;
        }

        if (!any_legal && top_level_ && opts_.on_dead_end) opts_.on_dead_end(path_);
        if (opts_.memoize) failed_.insert(std::move(key));
        return false;
    }

    const SimplicialComplex& root_;
    const std::vector<Face>& facets_;
    Mode mode_;
    int k_;
    const SearchOptions& opts_;
    SharedSearchState& shared_;
    bool top_level_;
    std::unordered_set<Key, KeyHash> failed_;
    std::vector<Face> path_;
};

inline void check_symmetry(const SimplicialComplex& cx, const std::vector<VertexPermutation>& perms)
{
    for (const auto& p : perms) {
        require_input(static_cast<int>(p.size()) == cx.vertex_count(), "symmetry: permutation has wrong length");
        std::vector<Face> image;
        for (Face f : cx.facets()) image.push_back(apply_permutation(f, p));
        require_input(facet_key(image) == facet_key(cx.facets()), "symmetry: permutation is not an automorphism");
    }
}

inline SearchVerdict find_decomposition(const SimplicialComplex& cx, Mode mode, int k, const SearchOptions& opts)
{
    require_input(!cx.is_void(), "decomposability search: complex has no facets");
    require_input(cx.is_pure(), "decomposability search: complex is not pure");
    require_input(k >= 0, "decomposability search: k must be nonnegative");
    check_symmetry(cx, opts.symmetry);

    SharedSearchState shared;
    shared.max_states = opts.max_states;
    ShedSearch search(cx, mode, k, opts, shared, true);
    auto cert = search.run();

    SearchVerdict v;
    v.states_explored = shared.states;
    v.memo_hits = shared.memo_hits;
    if (cert) {
        v.outcome = Outcome::decomposable;
        v.certificate = std::move(cert);
    } else {
        v.outcome = shared.exhausted ? Outcome::budget_exhausted : Outcome::not_decomposable;
    }
    return v;
}

} // namespace detail

/// Weak k-decomposability: shed faces of dimension <= k while every deletion
/// stays pure of the original dimension, until a single simplex remains.
inline SearchVerdict find_weak_decomposition(const SimplicialComplex& cx, int k, const SearchOptions& opts = {})
{
    return detail::find_decomposition(cx, Mode::weak, k, opts);
}

/// Strong k-decomposability: as the weak search, and the link of every shed
/// face must itself be k-decomposable (certified recursively).
inline SearchVerdict find_strong_decomposition(const SimplicialComplex& cx, int k, const SearchOptions& opts = {})
{
    return detail::find_decomposition(cx, Mode::strong, k, opts);
}

struct VerifyResult {
    bool ok = true;
    int step = -1; // -1: root complex; steps.size(): terminal check
    std::string reason;

    explicit operator bool() const { return ok; }
};

/// Replays a certificate from scratch with the generic deletion/link operations.
inline VerifyResult verify_certificate(const SimplicialComplex& cx, const SheddingCertificate& cert)
{
    auto fail = [](int step, std::string why) { return VerifyResult{false, step, std::move(why)}; };

    if (cx.is_void()) return fail(-1, "complex has no facets");
    if (!cx.is_pure()) return fail(-1, "complex is not pure");
    if (cert.mode == Mode::strong && cert.links.size() != cert.steps.size())
        return fail(-1, "strong certificate needs one link certificate per step");

    const int d = cx.dim();
    SimplicialComplex cur = cx;
    for (std::size_t i = 0; i < cert.steps.size(); ++i) {
        const int at = static_cast<int>(i);
        const Face tau = cert.steps[i].face;
        if (tau.empty() || !cur.is_face(tau)) return fail(at, "face absent: " + to_string(tau));
        if (tau.dim() > cert.k) return fail(at, "face dimension exceeds k");

        SimplicialComplex next = deletion(cur, tau);
        if (next.is_void() || !next.is_pure() || next.dim() != d)
            return fail(at, "deletion of " + to_string(tau) + " is not pure of dimension " + std::to_string(d));
        if (cert.steps[i].facets_after && *cert.steps[i].facets_after != next.facet_count())
            return fail(at, "recorded facet count does not match replay");

        if (cert.mode == Mode::strong) {
            SimplicialComplex lk = link(cur, tau);
            if (!lk.is_pure() || lk.dim() != d - tau.size())
                return fail(at, "link of " + to_string(tau) + " has the wrong dimension");
            if (cert.links[i].mode != Mode::strong || cert.links[i].k != cert.k)
                return fail(at, "link certificate has mismatched mode or k");
            if (auto sub = verify_certificate(lk, cert.links[i]); !sub)
                return fail(at, "link certificate step " + std::to_string(sub.step) + ": " + sub.reason);
        }
        cur = std::move(next);
    }
    const int end = static_cast<int>(cert.steps.size());
    if (!cur.is_simplex()) return fail(end, "terminal complex is not a simplex");
    if (cur.facets().front() != cert.terminal) return fail(end, "terminal facet does not match");
    return {};
}

/// The diameter inequality a certificate implies: diam <= f_k - C(d, k+1)
/// (strong) or diam <= 2 f_k (weak).
inline BoundReport certificate_bound(const SimplicialComplex& cx, const SheddingCertificate& cert)
{
    return bound_report(cx, cert.k,
                        cert.mode == Mode::strong ? BoundKind::provan_billera_strong : BoundKind::provan_billera_weak);
}

} // namespace decomp

#endif // DECOMP_DECOMPOSABILITY_HPP
