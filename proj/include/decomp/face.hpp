#ifndef DECOMP_FACE_HPP
#define DECOMP_FACE_HPP

#include <bit>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "error.hpp"

namespace decomp {

using VertexId = int;

inline constexpr int max_vertices = 64;

/// A finite vertex set stored as a 64-bit mask. The empty face has dimension -1.
class Face {
public:
    constexpr Face() = default;
    constexpr explicit Face(std::uint64_t bits) : bits_(bits) {}

    Face(std::initializer_list<VertexId> ids)
    {
        for (VertexId v : ids) insert(v);
    }

    static Face from_ids(const std::vector<VertexId>& ids)
    {
        Face f;
        for (VertexId v : ids) f.insert(v);
        return f;
    }

    static Face single(VertexId v)
    {
        Face f;
        f.insert(v);
        return f;
    }

    void insert(VertexId v)
    {
        require_input(v >= 0 && v < max_vertices,
                      "vertex id " + std::to_string(v) + " outside [0, 64)");
        bits_ |= std::uint64_t{1} << v;
    }

    void erase(VertexId v) { bits_ &= ~(std::uint64_t{1} << v); }

    [[nodiscard]] constexpr std::uint64_t bits() const { return bits_; }
    [[nodiscard]] constexpr int size() const { return std::popcount(bits_); }
    [[nodiscard]] constexpr int dim() const { return size() - 1; }
    [[nodiscard]] constexpr bool empty() const { return bits_ == 0; }
    [[nodiscard]] constexpr bool contains(VertexId v) const { return (bits_ >> v) & 1U; }
    [[nodiscard]] constexpr bool subset_of(Face other) const { return (bits_ & ~other.bits_) == 0; }
    [[nodiscard]] constexpr bool intersects(Face other) const { return (bits_ & other.bits_) != 0; }
    [[nodiscard]] constexpr VertexId max_vertex() const { return 63 - std::countl_zero(bits_); }

    [[nodiscard]] constexpr Face operator|(Face o) const { return Face(bits_ | o.bits_); }
    [[nodiscard]] constexpr Face operator&(Face o) const { return Face(bits_ & o.bits_); }
    [[nodiscard]] constexpr Face without(Face o) const { return Face(bits_ & ~o.bits_); }
    [[nodiscard]] constexpr Face without(VertexId v) const { return Face(bits_ & ~(std::uint64_t{1} << v)); }

    [[nodiscard]] std::vector<VertexId> vertices() const
    {
        std::vector<VertexId> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) out.push_back(std::countr_zero(b));
        return out;
    }

    template <typename F>
    void for_each(F&& f) const
    {
        for (std::uint64_t b = bits_; b != 0; b &= b - 1) f(static_cast<VertexId>(std::countr_zero(b)));
    }

    constexpr bool operator==(const Face&) const = default;

private:
    std::uint64_t bits_ = 0;
};

/// Lexicographic order on the ascending vertex lists ({0} < {0,1} < {0,2} < {1}).
inline bool lex_less(Face a, Face b)
{
    std::uint64_t diff = a.bits() ^ b.bits();
    if (diff == 0) return false;
    int x = std::countr_zero(diff);
    std::uint64_t above = (x == 63) ? 0 : (~std::uint64_t{0} << (x + 1));
    if (a.contains(x)) return (b.bits() & above) != 0;
    return (a.bits() & above) == 0;
}

/// Candidate order for shedding: smaller faces first, then lexicographic.
inline bool size_lex_less(Face a, Face b)
{
    if (a.size() != b.size()) return a.size() < b.size();
    return lex_less(a, b);
}

struct FaceHash {
    std::size_t operator()(Face f) const noexcept { return std::hash<std::uint64_t>{}(f.bits()); }
};

/// Calls f(sub) for every subset of `face` with exactly `r` elements, in lexicographic order.
template <typename F>
void for_each_subset_of_size(Face face, int r, F&& f)
{
    std::vector<VertexId> verts = face.vertices();
    const int n = static_cast<int>(verts.size());
    if (r < 0 || r > n) return;
    std::vector<int> idx(static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        Face sub;
        for (int i : idx) sub.insert(verts[static_cast<std::size_t>(i)]);
        f(sub);
        int i = r - 1;
        while (i >= 0 && idx[static_cast<std::size_t>(i)] == n - r + i) --i;
        if (i < 0) return;
        ++idx[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < r; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
    }
}

inline std::string to_string(Face f)
{
    std::string s = "{";
    bool first = true;
    f.for_each([&](VertexId v) {
        if (!first) s += ",";
        s += std::to_string(v);
        first = false;
    });
    return s + "}";
}

} // namespace decomp

#endif // DECOMP_FACE_HPP
