#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

// Static symbolic catalogs of the tight-homomorphism diagrams for the
// targets without a matrix model in this library: so(2,p) for general p,
// e6(-14) and e7(-25).  Every tight homomorphism into these targets is,
// up to conjugation, a composition of arrows of the corresponding diagram
// (for e7(-25) only the holomorphic ones are listed, see the caveat flag).
//
// Nodes are algebra names in the same notation AlgebraDescriptor::str()
// uses, with the symbolic placeholders so(2,k) and so(2,p) in the first
// catalog standing for nested lower-block inclusions of arbitrary rank.
// Edges are directed inclusions; an edge with commutes = false takes part
// in a subdiagram whose two compositions differ (so paths through it are
// not interchangeable with parallel ones), while everything else commutes.

namespace tighthom {

enum class DiagramId { SO2P, E6, E7 };

struct DiagramEdge {
    std::size_t from = 0;
    std::size_t to = 0;
    std::string label;
    bool commutes = true;
};

struct DiagramCatalog {
    DiagramId id = DiagramId::SO2P;
    std::string title;
    std::vector<std::string> nodes;
    std::vector<DiagramEdge> edges;
    bool completeness_caveat = false;
    std::string note;
};

namespace diagram_detail {

inline DiagramCatalog make_so2p() {
    DiagramCatalog c;
    c.id = DiagramId::SO2P;
    c.title = "so(2,p)";
    c.nodes = {"su(1,1)",          // 0
               "su(1,1)+su(1,1)",  // 1
               "sp(4,R)",          // 2
               "so(2,3)",          // 3
               "so(2,4)",          // 4
               "su(2,2)",          // 5
               "so(2,k)",          // 6
               "so(2,p)"};         // 7
    c.edges = {{0, 2, "rho_3", false},  // irreducible 4-dimensional block
               {0, 1, "diagonal", false},
               {1, 2, "", false},
               {2, 3, "~", true},  // canonical isomorphism
               {2, 5, "", true},
               {5, 4, "~", true},
               {3, 4, "f", true},  // lower-block inclusion
               {4, 6, "", true},
               {6, 7, "", true}};
    c.note =
        "so(2,m) -> so(2,n) arrows are lower-block inclusions and '~' marks "
        "canonical isomorphisms; so(2,k) and so(2,p) stand for the nested "
        "chain of lower blocks of arbitrary rank";
    return c;
}

inline DiagramCatalog make_e6() {
    DiagramCatalog c;
    c.id = DiagramId::E6;
    c.title = "e6(-14)";
    c.nodes = {"e6(-14)",           // 0
               "su(1,1)",           // 1
               "su(1,1)+su(1,1)",   // 2
               "sp(4,R)",           // 3
               "su(2,2)",           // 4
               "su(1,1)+su(1,2)",   // 5
               "su(1,2)+su(1,2)",   // 6
               "su(2,3)",           // 7
               "so(2,5)",           // 8
               "so(2,6)",           // 9
               "su(1,1)+su(1,3)",   // 10
               "su(2,4)",           // 11
               "so*(10)",           // 12
               "so(2,7)",           // 13
               "su(1,1)+su(1,4)",   // 14
               "su(1,1)+su(1,5)",   // 15
               "so(2,8)"};          // 16
    c.edges = {{1, 3, "rho_3", false},
               {1, 2, "diagonal", false},
               {2, 5, "", true},
               {2, 3, "", false},
               {3, 4, "", true},
               {5, 6, "", true},
               {5, 10, "", true},
               {5, 7, "", true},
               {4, 7, "", true},
               {4, 8, "", true},
               {8, 9, "", true},
               {10, 14, "", true},
               {10, 11, "", true},
               {10, 12, "", true},
               {7, 11, "", true},
               {9, 12, "", true},
               {9, 13, "", true},
               {14, 15, "", true},
               {13, 16, "", true},
               {6, 11, "", true},
               {15, 0, "", true},
               {11, 0, "", true},
               {12, 0, "", true},
               {16, 0, "", true}};
    c.note =
        "subdiagrams containing both arrows out of su(1,1) do not commute; "
        "everything else commutes";
    return c;
}

inline DiagramCatalog make_e7() {
    DiagramCatalog c;
    c.id = DiagramId::E7;
    c.title = "e7(-25)";
    c.completeness_caveat = true;
    c.nodes = {"e7(-25)",                    // 0
               "so(2,10)+su(1,1)",           // 1
               "so*(12)",                    // 2
               "so(2,6)+su(1,1)",            // 3
               "su(3,3)",                    // 4
               "su(2,2)+su(1,1)",            // 5
               "sp(6,R)",                    // 6
               "su(1,1)+su(1,1)+su(1,1)",    // 7
               "sp(4,R)+su(1,1)",            // 8
               "su(1,1)",                    // 9
               "so(2,5)+su(1,1)",            // 10
               "so(2,7)+su(1,1)",            // 11
               "so(2,8)+su(1,1)",            // 12
               "so(2,9)+su(1,1)"};           // 13
    c.edges = {{9, 8, "", true},
               {9, 7, "", true},
               {9, 6, "", true},
               {7, 6, "", true},
               {7, 8, "", true},
               {6, 4, "", true},
               {8, 5, "", true},
               {4, 2, "", true},
               {5, 3, "", true},
               {3, 1, "", true},
               {3, 2, "", true},
               {2, 0, "", true},
               {1, 0, "", true},
               {10, 1, "std", true},
               {11, 1, "std", true},
               {12, 1, "std", true},
               {13, 1, "std", true}};
    c.note =
        "holomorphic homomorphisms only: tightness alone is not known to force "
        "holomorphy here, so exotic tight embeddings are not excluded; for "
        "readability not every inclusion between the classical subalgebras is "
        "displayed; the so(2,p)+su(1,1) nodes enter through the lower-block "
        "inclusion into so(2,10)+su(1,1) composed with its regular embedding";
    return c;
}

}  // namespace diagram_detail

inline const DiagramCatalog& diagram_catalog(DiagramId id) {
    static const DiagramCatalog so2p = diagram_detail::make_so2p();
    static const DiagramCatalog e6 = diagram_detail::make_e6();
    static const DiagramCatalog e7 = diagram_detail::make_e7();
    switch (id) {
        case DiagramId::SO2P: return so2p;
        case DiagramId::E6: return e6;
        case DiagramId::E7: return e7;
    }
    throw std::logic_error("diagram_catalog: bad id");
}

inline std::size_t diagram_node(const DiagramCatalog& c, const std::string& name) {
    for (std::size_t i = 0; i < c.nodes.size(); ++i)
        if (c.nodes[i] == name) return i;
    throw std::invalid_argument("diagram_node: no node '" + name + "' in " + c.title);
}

/// All directed paths from one node to another, as node index sequences.
/// The catalogs are acyclic, so the enumeration is finite and complete.
inline std::vector<std::vector<std::size_t>> diagram_paths(const DiagramCatalog& c,
                                                           std::size_t from,
                                                           std::size_t to) {
    if (from >= c.nodes.size() || to >= c.nodes.size())
        throw std::invalid_argument("diagram_paths: node index out of range");
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> acc{from};
    auto dfs = [&](auto&& self, std::size_t at) -> void {
        if (at == to) {
            out.push_back(acc);
            return;
        }
        for (const auto& e : c.edges) {
            if (e.from != at) continue;
            acc.push_back(e.to);
            self(self, e.to);
            acc.pop_back();
        }
    };
    dfs(dfs, from);
    return out;
}

inline std::vector<std::vector<std::size_t>> diagram_paths(DiagramId id,
                                                           const std::string& from,
                                                           const std::string& to) {
    const DiagramCatalog& c = diagram_catalog(id);
    return diagram_paths(c, diagram_node(c, from), diagram_node(c, to));
}

/// True when every consecutive node pair of the path is joined by an edge
/// with commutes = true.
inline bool path_commutes(const DiagramCatalog& c, const std::vector<std::size_t>& path) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) {
        bool found = false;
        for (const auto& e : c.edges) {
            if (e.from == path[i] && e.to == path[i + 1]) {
                found = true;
                if (!e.commutes) return false;
                break;
            }
        }
        if (!found) throw std::invalid_argument("path_commutes: not a path in " + c.title);
    }
    return true;
}

}  // namespace tighthom
