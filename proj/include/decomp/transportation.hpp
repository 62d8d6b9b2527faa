#ifndef DECOMP_TRANSPORTATION_HPP
#define DECOMP_TRANSPORTATION_HPP

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

#include "complex.hpp"
#include "error.hpp"

namespace decomp {

using Rational = boost::rational<std::int64_t>;

/// Parses "p/q" or an integer.
inline Rational parse_rational(const std::string& text)
{
    try {
        auto slash = text.find('/');
        if (slash == std::string::npos) {
            std::size_t used = 0;
            std::int64_t v = std::stoll(text, &used);
            require_input(used == text.size(), "trailing characters");
            return Rational(v);
        }
        std::size_t used_p = 0, used_q = 0;
        std::string ps = text.substr(0, slash), qs = text.substr(slash + 1);
        std::int64_t p = std::stoll(ps, &used_p);
        std::int64_t q = std::stoll(qs, &used_q);
        require_input(used_p == ps.size() && used_q == qs.size(), "trailing characters");
        require_input(q != 0, "zero denominator");
        return Rational(p, q);
    } catch (const InputError& e) {
        throw InputError("bad rational '" + text + "': " + e.what());
    } catch (const std::exception&) {
        throw InputError("bad rational '" + text + "'");
    }
}

inline std::string format_rational(const Rational& r)
{
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

/// Row sums (m entries) and column sums (n entries) of an m x n table.
struct Margins {
    std::vector<Rational> row;
    std::vector<Rational> col;

    [[nodiscard]] int m() const { return static_cast<int>(row.size()); }
    [[nodiscard]] int n() const { return static_cast<int>(col.size()); }

    static Margins from_ints(const std::vector<std::int64_t>& r, const std::vector<std::int64_t>& c)
    {
        Margins mg;
        for (auto v : r) mg.row.emplace_back(v);
        for (auto v : c) mg.col.emplace_back(v);
        return mg;
    }
};

inline void check_margins(const Margins& mg)
{
    require_input(mg.m() >= 1 && mg.n() >= 1, "margins need at least one row and one column");
    require_input(mg.m() * mg.n() <= max_vertices, "table larger than 64 cells");
    auto positive = [](const Rational& r) { return r > Rational(0); };
    require_input(std::all_of(mg.row.begin(), mg.row.end(), positive) &&
                      std::all_of(mg.col.begin(), mg.col.end(), positive),
                  "margins must be strictly positive");
}

inline Rational total(const std::vector<Rational>& v) { return std::accumulate(v.begin(), v.end(), Rational(0)); }

inline bool is_feasible(const Margins& mg) { return total(mg.row) == total(mg.col); }

struct DegeneracyWitness {
    std::vector<int> rows; // M, 0-based
    std::vector<int> cols; // N, 0-based
};

/// Nondegenerate iff no proper nonempty row subset and column subset have equal sums.
/// Returns the first violating pair (M, N) in subset-mask order, if any.
inline std::optional<DegeneracyWitness> degeneracy_witness(const Margins& mg)
{
    check_margins(mg);
    require_input(is_feasible(mg), "non-degeneracy test on infeasible margins");
    require_input(mg.m() <= 20 && mg.n() <= 20, "non-degeneracy test limited to 20 rows/columns");
    const std::uint32_t full_r = (1U << mg.m()) - 1, full_c = (1U << mg.n()) - 1;
    auto subset_sum = [](const std::vector<Rational>& v, std::uint32_t mask) {
        Rational s(0);
        for (std::size_t i = 0; i < v.size(); ++i)
            if ((mask >> i) & 1U) s += v[i];
        return s;
    };
    std::vector<Rational> col_sums(full_c + 1);
    for (std::uint32_t c = 1; c < full_c; ++c) col_sums[c] = subset_sum(mg.col, c);
    for (std::uint32_t r = 1; r < full_r; ++r) {
        Rational rs = subset_sum(mg.row, r);
        for (std::uint32_t c = 1; c < full_c; ++c) {
            if (rs == col_sums[c]) {
                DegeneracyWitness w;
                for (int i = 0; i < mg.m(); ++i)
                    if ((r >> i) & 1U) w.rows.push_back(i);
                for (int j = 0; j < mg.n(); ++j)
                    if ((c >> j) & 1U) w.cols.push_back(j);
                return w;
            }
        }
    }
    return std::nullopt;
}

inline bool is_nondegenerate(const Margins& mg) { return !degeneracy_witness(mg).has_value(); }

/// Edge (row mu, column nu) of K(m, n), 0-based.
struct Cell {
    int row = 0;
    int col = 0;
    auto operator<=>(const Cell&) const = default;
};

using Tree = std::vector<Cell>;

/// A point of P(row, col) with its support graph.
struct TransportVertex {
    std::vector<std::vector<Rational>> matrix;
    Tree support; // cells with positive entries, row-major order

    bool operator==(const TransportVertex& o) const { return matrix == o.matrix; }
};

struct TreeSolve {
    std::optional<TransportVertex> vertex;
    std::optional<Cell> negative_cell; // set when the tree solution has a negative entry
};

namespace detail {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
    int find(int x)
    {
        while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
        return x;
    }
    bool unite(int a, int b)
    {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        parent[static_cast<std::size_t>(a)] = b;
        return true;
    }
};

// Nodes 0..m-1 are rows, m..m+n-1 columns.
inline bool is_spanning_tree(const Tree& tree, int m, int n)
{
    if (static_cast<int>(tree.size()) != m + n - 1) return false;
    UnionFind uf(m + n);
    for (Cell c : tree) {
        if (c.row < 0 || c.row >= m || c.col < 0 || c.col >= n) return false;
        if (!uf.unite(c.row, m + c.col)) return false;
    }
    return true;
}

inline void sort_support(Tree& t) { std::sort(t.begin(), t.end()); }

} // namespace detail

/// Spanning trees of K(m, n) by include/exclude recursion over the cells in
/// row-major order. Including a cell contracts its endpoints (union-find);
/// excluding one is only allowed while the remaining cells still connect
/// every node. Each tree is visited exactly once, in row-major cell order.
template <typename Visit>
void for_each_spanning_tree(int m, int n, Visit&& visit)
{
    std::vector<Cell> cells;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) cells.push_back({i, j});
    const int nodes = m + n;
    Tree chosen;
    std::vector<bool> excluded(cells.size(), false);

    auto still_connected = [&](std::size_t from) {
        detail::UnionFind uf(nodes);
        int comps = nodes;
        for (Cell c : chosen)
            if (uf.unite(c.row, m + c.col)) --comps;
        for (std::size_t i = from; i < cells.size(); ++i)
            if (!excluded[i] && uf.unite(cells[i].row, m + cells[i].col)) --comps;
        return comps == 1;
    };

    auto rec = [&](auto&& self, std::size_t at, detail::UnionFind uf) -> void {
        if (static_cast<int>(chosen.size()) == nodes - 1) {
            visit(static_cast<const Tree&>(chosen));
            return;
        }
        if (at == cells.size()) return;
        Cell c = cells[at];
        detail::UnionFind with = uf;
        if (with.unite(c.row, m + c.col)) {
            chosen.push_back(c);
            self(self, at + 1, with);
            chosen.pop_back();
        }
        excluded[at] = true;
        if (still_connected(at + 1)) self(self, at + 1, uf);
        excluded[at] = false;
    };
    rec(rec, 0, detail::UnionFind(nodes));
}

/// Solves the tree system exactly by repeatedly peeling a leaf: a leaf's only
/// cell must carry the leaf's remaining margin.
inline TreeSolve vertex_from_tree(const Margins& mg, const Tree& tree)
{
    check_margins(mg);
    require_input(is_feasible(mg), "vertex_from_tree: infeasible margins");
    const int m = mg.m(), n = mg.n();
    require_input(detail::is_spanning_tree(tree, m, n), "vertex_from_tree: input is not a spanning tree of K(m,n)");

    std::vector<Rational> residual(mg.row);
    residual.insert(residual.end(), mg.col.begin(), mg.col.end());
    std::vector<int> degree(static_cast<std::size_t>(m + n), 0);
    for (Cell c : tree) {
        ++degree[static_cast<std::size_t>(c.row)];
        ++degree[static_cast<std::size_t>(m + c.col)];
    }
    std::vector<bool> used(tree.size(), false);
    std::vector<std::vector<Rational>> x(static_cast<std::size_t>(m), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));

    for (std::size_t round = 0; round < tree.size(); ++round) {
        std::size_t pick = tree.size();
        int leaf = -1;
        for (std::size_t e = 0; e < tree.size() && pick == tree.size(); ++e) {
            if (used[e]) continue;
            int r = tree[e].row, c = m + tree[e].col;
            if (degree[static_cast<std::size_t>(r)] == 1) { pick = e; leaf = r; }
            else if (degree[static_cast<std::size_t>(c)] == 1) { pick = e; leaf = c; }
        }
        require_invariant(pick != tree.size(), "tree solve: no leaf found");
        Cell cell = tree[pick];
        int other = (leaf == cell.row) ? m + cell.col : cell.row;
        Rational value = residual[static_cast<std::size_t>(leaf)];
        x[static_cast<std::size_t>(cell.row)][static_cast<std::size_t>(cell.col)] = value;
        residual[static_cast<std::size_t>(leaf)] = Rational(0);
        residual[static_cast<std::size_t>(other)] -= value;
        used[pick] = true;
        --degree[static_cast<std::size_t>(cell.row)];
        --degree[static_cast<std::size_t>(m + cell.col)];
    }
    for (const Rational& r : residual) require_invariant(r == Rational(0), "tree solve: margins not exhausted");

    TreeSolve out;
    for (Cell c : tree) {
        if (x[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)] < Rational(0)) {
            out.negative_cell = c;
            return out;
        }
    }
    TransportVertex v;
    v.matrix = std::move(x);
    for (Cell c : tree)
        if (v.matrix[static_cast<std::size_t>(c.row)][static_cast<std::size_t>(c.col)] > Rational(0)) v.support.push_back(c);
    detail::sort_support(v.support);
    out.vertex = std::move(v);
    return out;
}

inline void require_nondegenerate(const Margins& mg)
{
    if (auto w = degeneracy_witness(mg)) {
        std::string msg = "degenerate margins: rows {";
        for (int r : w->rows) msg += " " + std::to_string(r + 1);
        msg += " } and columns {";
        for (int c : w->cols) msg += " " + std::to_string(c + 1);
        throw InputError(msg + " } have equal sums");
    }
}

/// All vertices of a nondegenerate P(row, col): every spanning tree of K(m, n)
/// whose solution is nonnegative. Sorted by matrix.
inline std::vector<TransportVertex> enumerate_vertices(const Margins& mg)
{
    check_margins(mg);
    require_input(is_feasible(mg), "enumerate_vertices: infeasible margins");
    require_nondegenerate(mg);
    std::vector<TransportVertex> out;
    for_each_spanning_tree(mg.m(), mg.n(), [&](const Tree& t) {
        auto s = vertex_from_tree(mg, t);
        if (s.vertex) {
            require_invariant(static_cast<int>(s.vertex->support.size()) == mg.m() + mg.n() - 1,
                              "nondegenerate vertex with a zero on its tree");
            out.push_back(std::move(*s.vertex));
        }
    });
    std::sort(out.begin(), out.end(), [](const TransportVertex& a, const TransportVertex& b) { return a.matrix < b.matrix; });
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

inline int polytope_dimension(const Margins& mg) { return (mg.m() - 1) * (mg.n() - 1); }

namespace detail {

// Rank of a rational matrix by Gaussian elimination.
inline int rational_rank(std::vector<std::vector<Rational>> a)
{
    int rank = 0;
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a.front().size() : 0;
    for (std::size_t c = 0; c < cols && static_cast<std::size_t>(rank) < rows; ++c) {
        std::size_t piv = static_cast<std::size_t>(rank);
        while (piv < rows && a[piv][c] == Rational(0)) ++piv;
        if (piv == rows) continue;
        std::swap(a[piv], a[static_cast<std::size_t>(rank)]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == static_cast<std::size_t>(rank) || a[r][c] == Rational(0)) continue;
            Rational f = a[r][c] / a[static_cast<std::size_t>(rank)][c];
            for (std::size_t k = c; k < cols; ++k) a[r][k] -= f * a[static_cast<std::size_t>(rank)][k];
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

/// Cells (mu, nu) whose zero set {x_{mu,nu} = 0} is a facet of P(row, col).
/// For mn > 4: exactly those with row[mu] + col[nu] < total. Smaller tables
/// fall back to checking that the vertices on the hyperplane span a face of
/// dimension dim - 1.
inline std::vector<Cell> enumerate_facets(const Margins& mg)
{
    check_margins(mg);
    require_input(is_feasible(mg), "enumerate_facets: infeasible margins");
    require_nondegenerate(mg);
    const int m = mg.m(), n = mg.n();
    std::vector<Cell> out;
    if (m * n > 4) {
        const Rational sum = total(mg.row);
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (mg.row[static_cast<std::size_t>(i)] + mg.col[static_cast<std::size_t>(j)] < sum) out.push_back({i, j});
        return out;
    }
    const int dim = polytope_dimension(mg);
    const auto verts = enumerate_vertices(mg);
    for (int i = 0; i < m; ++i) {
        for (int j = 0; j < n; ++j) {
            std::vector<const TransportVertex*> on;
            for (const auto& v : verts)
                if (v.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == Rational(0)) on.push_back(&v);
            if (on.empty() || on.size() == verts.size()) continue;
            std::vector<std::vector<Rational>> diffs;
            for (std::size_t t = 1; t < on.size(); ++t) {
                std::vector<Rational> row;
                for (int a = 0; a < m; ++a)
                    for (int b = 0; b < n; ++b)
                        row.push_back(on[t]->matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] -
                                      on[0]->matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]);
                diffs.push_back(std::move(row));
            }
            if (detail::rational_rank(diffs) == dim - 1) out.push_back({i, j});
        }
    }
    return out;
}

inline VertexId cell_vertex_id(Cell c, int n) { return c.row * n + c.col; }

/// Boundary complex of the polar of a simple P(row, col). Vertex ids are
/// cells in row-major order (mu * n + nu); each polytope vertex X becomes the
/// facet {F_{mu,nu} : x_{mu,nu} = 0}.
inline SimplicialComplex polar_boundary_complex(const Margins& mg)
{
    const auto verts = enumerate_vertices(mg);
    const auto facet_cells = enumerate_facets(mg);
    const int m = mg.m(), n = mg.n(), dim = polytope_dimension(mg);
    Face is_facet;
    for (Cell c : facet_cells) is_facet.insert(cell_vertex_id(c, n));

    std::vector<Face> faces;
    for (const auto& v : verts) {
        Face f;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < n; ++j)
                if (v.matrix[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == Rational(0)) f.insert(i * n + j);
        require_invariant(f.size() == dim, "polar facet size differs from polytope dimension (polytope not simple)");
        require_invariant(f.subset_of(is_facet), "vertex lies on a non-facet coordinate hyperplane");
        faces.push_back(f);
    }
    SimplicialComplex cx = make_complex(std::move(faces), m * n);
    require_invariant(cx.facet_count() == verts.size(), "distinct vertices produced coinciding polar facets");
    std::vector<std::string> labels;
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < n; ++j) labels.push_back("F" + std::to_string(i + 1) + "_" + std::to_string(j + 1));
    cx.set_labels(std::move(labels));
    return cx;
}

/// Row degrees of a spanning tree; must sum to m + n - 1.
struct DegreeVector {
    std::vector<int> degrees;
};

struct TreeOutcome {
    Tree tree;
    bool feasible = false;
    std::optional<Cell> negative_cell;
};

struct SignatureCheck {
    bool is_signature = true;
    std::optional<TreeOutcome> first_failure;
    std::vector<TreeOutcome> trees; // every tree in T(d), in enumeration order
};

/// Is every spanning tree with the given row degrees the support of a vertex?
inline SignatureCheck is_signature_polytope(const Margins& mg, const DegreeVector& bd)
{
    check_margins(mg);
    require_input(is_feasible(mg), "is_signature_polytope: infeasible margins");
    require_input(static_cast<int>(bd.degrees.size()) == mg.m(), "degree vector length must equal row count");
    require_input(std::all_of(bd.degrees.begin(), bd.degrees.end(), [](int d) { return d >= 1; }),
                  "row degrees must be positive");
    require_input(std::accumulate(bd.degrees.begin(), bd.degrees.end(), 0) == mg.m() + mg.n() - 1,
                  "row degrees must sum to m + n - 1");
    SignatureCheck out;
    for_each_spanning_tree(mg.m(), mg.n(), [&](const Tree& t) {
        std::vector<int> deg(static_cast<std::size_t>(mg.m()), 0);
        for (Cell c : t) ++deg[static_cast<std::size_t>(c.row)];
        if (deg != bd.degrees) return;
        auto s = vertex_from_tree(mg, t);
        TreeOutcome o{t, s.vertex.has_value(), s.negative_cell};
        if (!o.feasible && !out.first_failure) {
            out.is_signature = false;
            out.first_failure = o;
        }
        out.trees.push_back(std::move(o));
    });
    return out;
}

struct GeneratedMargins {
    Margins margins;
    bool feasible = false;
};

/// Margins row = m*d - (m+1)*1, col = m*1 exactly as written for the Balinski
/// signature examples. Row and column totals differ by 2m, so the result is
/// always reported infeasible; callers must not use it as a polytope.
inline GeneratedMargins balinski_margins(const DegreeVector& bd, int n)
{
    const int m = static_cast<int>(bd.degrees.size());
    require_input(m >= 1 && n >= 1, "balinski_margins: need m, n >= 1");
    require_input(std::accumulate(bd.degrees.begin(), bd.degrees.end(), 0) == m + n - 1,
                  "balinski_margins: degrees must sum to m + n - 1");
    GeneratedMargins g;
    for (int d : bd.degrees) g.margins.row.emplace_back(static_cast<std::int64_t>(m) * d - (m + 1));
    for (int j = 0; j < n; ++j) g.margins.col.emplace_back(m);
    g.feasible = is_feasible(g.margins);
    return g;
}

} // namespace decomp

#endif // DECOMP_TRANSPORTATION_HPP
