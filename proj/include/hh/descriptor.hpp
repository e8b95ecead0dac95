#pragma once

#include <map>

#include "hh/io.hpp"

namespace hh {

/// True iff pattern embeds into m (induced: the witness preserves and
/// reflects relations).
inline bool embeds_pattern(const Structure& m, const Structure& pattern) {
    if (m.signature() != pattern.signature()) throw Error("embeds_pattern: signature mismatch");
    bool found = false;
    for_each_map(pattern, m, MapKind::Emb, true, false, [&](const std::vector<int>&) {
        found = true;
        return false;
    });
    return found;
}

/// A finitely-axiomatized class of finite structures: everything over the
/// signature into which none of the forbidden patterns embeds. Hereditary
/// and isomorphism-invariant by construction.
struct ClassDescriptor {
    Signature signature;
    std::vector<Structure> forbidden;
    std::string name;

    bool operator==(const ClassDescriptor& o) const {
        return signature == o.signature && forbidden == o.forbidden && name == o.name;
    }
    bool operator!=(const ClassDescriptor& o) const { return !(*this == o); }
};

inline bool member_of(const ClassDescriptor& d, const Structure& m) {
    if (d.signature != m.signature()) throw Error("member_of: signature mismatch");
    for (const auto& p : d.forbidden)
        if (embeds_pattern(m, p)) return false;
    return true;
}

/// Named classes used throughout; parameters <= 0 mean unbounded.
inline ClassDescriptor descriptor_all_graphs() { return {Signature::graph(), {}, "graphs"}; }

inline ClassDescriptor descriptor_all_digraphs() { return {Signature::digraph(), {}, "digraphs"}; }

inline ClassDescriptor descriptor_henson(int n) {
    if (n < 3) throw Error("henson: parameter must be at least 3");
    return {Signature::graph(), {complete_graph(n)}, "henson(" + std::to_string(n) + ")"};
}

inline ClassDescriptor descriptor_henson_complement(int n) {
    if (n < 3) throw Error("henson_complement: parameter must be at least 3");
    return {Signature::graph(), {null_graph(n)}, "henson_complement(" + std::to_string(n) + ")"};
}

inline Structure two_cycle_digraph() { return digraph_from_arcs(2, {{0, 1}, {1, 0}}); }

inline ClassDescriptor descriptor_no_2cycles() {
    return {Signature::digraph(), {two_cycle_digraph()}, "no2cycles"};
}

inline ClassDescriptor descriptor_tournaments() {
    return {Signature::digraph(), {two_cycle_digraph(), Structure(Signature::digraph(), 2)}, "tournaments"};
}

inline ClassDescriptor descriptor_linear_orders() {
    // Transitive tournaments: ban 2-cycles, independent pairs and 3-cycles.
    return {Signature::digraph(),
            {two_cycle_digraph(), Structure(Signature::digraph(), 2),
             digraph_from_arcs(3, {{0, 1}, {1, 2}, {2, 0}})},
            "linear_orders"};
}

/// Disjoint unions of at most `count` cliques of size at most `clique_size`
/// (0 = unbounded): ban induced paths on 3 vertices, plus the size caps.
inline ClassDescriptor descriptor_union_of_completes(int count, int clique_size) {
    std::vector<Structure> forb = {path_graph(3)};
    if (clique_size > 0) forb.push_back(complete_graph(clique_size + 1));
    if (count > 0) forb.push_back(null_graph(count + 1));
    std::string nm = "union_of_completes(" + (count > 0 ? std::to_string(count) : std::string("w")) + "," +
                     (clique_size > 0 ? std::to_string(clique_size) : std::string("w")) + ")";
    return {Signature::graph(), std::move(forb), nm};
}

/// Complements of the preceding class: complete multipartite graphs with at
/// most `count` parts of size at most `part_size`.
inline ClassDescriptor descriptor_complement_union(int count, int part_size) {
    std::vector<Structure> forb = {graph_from_edges(3, {{0, 1}})};
    if (part_size > 0) forb.push_back(null_graph(part_size + 1));
    if (count > 0) forb.push_back(complete_graph(count + 1));
    std::string nm = "complement_union(" + (count > 0 ? std::to_string(count) : std::string("w")) + "," +
                     (part_size > 0 ? std::to_string(part_size) : std::string("w")) + ")";
    return {Signature::graph(), std::move(forb), nm};
}

/// Disjoint unions of tournaments: ban 2-cycles and every orientation of a
/// 3-vertex path with independent endpoints.
inline ClassDescriptor descriptor_union_of_tournaments() {
    std::vector<Structure> forb = {two_cycle_digraph()};
    forb.push_back(digraph_from_arcs(3, {{0, 1}, {1, 2}}));
    forb.push_back(digraph_from_arcs(3, {{0, 1}, {2, 1}}));
    forb.push_back(digraph_from_arcs(3, {{1, 0}, {1, 2}}));
    forb.push_back(digraph_from_arcs(3, {{1, 0}, {2, 1}}));
    return {Signature::digraph(), std::move(forb), "union_of_tournaments"};
}

/// One isomorphism-type-distinct one-point extension of A inside the class,
/// together with the canonical inclusion of A (A sits on indices 0..|A|-1).
struct OnePointExtension {
    Structure extension;
    PartialMap inclusion;
};

/// All one-point extensions of A in the class, complete and duplicate-free
/// up to isomorphisms of the new vertex's relation pattern (quotiented by
/// the automorphisms of A).
inline std::vector<OnePointExtension> one_point_extensions(const ClassDescriptor& d, const Structure& a) {
    if (!member_of(d, a)) throw Error("one_point_extensions: base structure is not in the class");
    const int n = a.size();
    const int v = n;

    // Free tuple choices involving the new vertex, flag-aware.
    struct Slot {
        std::vector<std::vector<std::pair<int, Tuple>>> options;
    };
    std::vector<Slot> slots;
    for (int rel = 0; rel < d.signature.size(); ++rel) {
        const Relation& r = d.signature.at(rel);
        if (r.arity == 2) {
            if (!r.irreflexive) {
                Slot s;
                s.options.push_back({});
                s.options.push_back({{rel, Tuple{v, v}}});
                slots.push_back(std::move(s));
            }
            for (int u = 0; u < n; ++u) {
                Slot s;
                s.options.push_back({});
                if (r.symmetric) {
                    s.options.push_back({{rel, Tuple{v, u}}});
                } else if (r.antisymmetric) {
                    s.options.push_back({{rel, Tuple{v, u}}});
                    s.options.push_back({{rel, Tuple{u, v}}});
                } else {
                    s.options.push_back({{rel, Tuple{v, u}}});
                    s.options.push_back({{rel, Tuple{u, v}}});
                    s.options.push_back({{rel, Tuple{v, u}}, {rel, Tuple{u, v}}});
                }
                slots.push_back(std::move(s));
            }
        } else {
            // Generic arity: any tuple over [0,n] that mentions v.
            std::vector<Tuple> all;
            Tuple cur(static_cast<std::size_t>(r.arity), 0);
            while (true) {
                if (std::find(cur.begin(), cur.end(), v) != cur.end()) all.push_back(cur);
                int i = r.arity - 1;
                while (i >= 0 && ++cur[static_cast<std::size_t>(i)] == n + 1) cur[static_cast<std::size_t>(i--)] = 0;
                if (i < 0) break;
            }
            for (const auto& t : all) {
                Slot s;
                s.options.push_back({});
                s.options.push_back({{rel, t}});
                slots.push_back(std::move(s));
            }
        }
    }

    double space = 1.0;
    for (const auto& s : slots) space *= static_cast<double>(s.options.size());
    if (space > 2e7) throw Error("one_point_extensions: pattern space too large");

    const auto auts = enumerate_maps(a, a, MapKind::Emb, true, true);

    std::vector<OnePointExtension> out;
    std::vector<std::vector<int>> seen_keys;
    std::vector<std::size_t> choice(slots.size(), 0);
    while (true) {
        Structure b(d.signature, n + 1);
        for (int rel = 0; rel < a.relation_count(); ++rel)
            for (const auto& t : a.tuples(rel)) b.add_tuple(rel, t);
        for (std::size_t i = 0; i < slots.size(); ++i)
            for (const auto& [rel, t] : slots[i].options[choice[i]]) b.add_tuple(rel, t);

        if (member_of(d, b)) {
            // Orbit key under the automorphisms of A (new vertex fixed).
            std::vector<int> key = b.flat_encoding();
            for (const auto& sigma : auts) {
                std::vector<int> perm(static_cast<std::size_t>(n + 1));
                for (int u = 0; u < n; ++u) perm[static_cast<std::size_t>(u)] = sigma[static_cast<std::size_t>(u)];
                perm[static_cast<std::size_t>(v)] = v;
                std::vector<int> cand = b.relabel(perm, n + 1).flat_encoding();
                if (cand < key) key = cand;
            }
            if (std::find(seen_keys.begin(), seen_keys.end(), key) == seen_keys.end()) {
                seen_keys.push_back(key);
                PartialMap incl(a, b);
                for (int u = 0; u < n; ++u) incl.img[static_cast<std::size_t>(u)] = u;
                out.push_back(OnePointExtension{std::move(b), std::move(incl)});
            }
        }

        std::size_t i = 0;
        while (i < slots.size() && ++choice[i] == slots[i].options.size()) choice[i++] = 0;
        if (i == slots.size() || slots.empty()) break;
    }
    return out;
}

/// All class members on exactly n vertices, one per isomorphism type, in
/// canonical-key order.
inline std::vector<Structure> age_types_of_size(const ClassDescriptor& d, int n) {
    std::vector<std::pair<std::vector<int>, Structure>> found;
    for_each_labelled_structure(d.signature, n, [&](const Structure& m) {
        if (!member_of(d, m)) return true;
        auto key = iso_key(m);
        for (const auto& [k, s] : found)
            if (k == key) return true;
        found.emplace_back(std::move(key), canonical_form(m));
        return true;
    });
    std::sort(found.begin(), found.end(), [](const auto& p, const auto& q) { return p.first < q.first; });
    std::vector<Structure> out;
    out.reserve(found.size());
    for (auto& [k, s] : found) out.push_back(std::move(s));
    return out;
}

/// Streams the class's isomorphism types by size, then canonical form.
class AgeTypeStream {
  public:
    explicit AgeTypeStream(ClassDescriptor d) : d_(std::move(d)) {}

    const Structure& next() {
        while (pos_ >= buffer_.size()) {
            buffer_ = age_types_of_size(d_, size_++);
            pos_ = 0;
        }
        return buffer_[pos_++];
    }

  private:
    ClassDescriptor d_;
    int size_ = 0;
    std::vector<Structure> buffer_;
    std::size_t pos_ = 0;
};

}  // namespace hh
