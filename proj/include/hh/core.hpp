#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace hh {

class Error : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

/// A relation tuple; entries are vertex indices.
using Tuple = std::vector<int>;

struct Relation {
    std::string name;
    int arity = 2;
    bool symmetric = false;
    bool irreflexive = false;
    bool antisymmetric = false;

    bool operator==(const Relation& o) const {
        return name == o.name && arity == o.arity && symmetric == o.symmetric &&
               irreflexive == o.irreflexive && antisymmetric == o.antisymmetric;
    }
};

/// A finite relational signature: an ordered list of named relations.
/// Flags (symmetric, irreflexive, antisymmetric) are only allowed at arity 2.
class Signature {
  public:
    Signature() = default;

    explicit Signature(std::vector<Relation> rels) : rels_(std::move(rels)) {
        for (std::size_t i = 0; i < rels_.size(); ++i) {
            const Relation& r = rels_[i];
            if (r.arity < 1) throw Error("relation '" + r.name + "': arity must be positive");
            if (r.arity != 2 && (r.symmetric || r.irreflexive || r.antisymmetric))
                throw Error("relation '" + r.name + "': flags only permitted at arity 2");
            for (std::size_t j = 0; j < i; ++j)
                if (rels_[j].name == r.name) throw Error("duplicate relation name '" + r.name + "'");
        }
    }

    static Signature graph() { return Signature({Relation{"edge", 2, true, true, false}}); }
    static Signature digraph() { return Signature({Relation{"arc", 2, false, true, false}}); }
    /// Strict total orders are represented with an antisymmetric irreflexive arc.
    static Signature order() { return Signature({Relation{"lt", 2, false, true, true}}); }

    int size() const { return static_cast<int>(rels_.size()); }
    const Relation& at(int i) const { return rels_.at(static_cast<std::size_t>(i)); }
    const std::vector<Relation>& relations() const { return rels_; }

    int index_of(const std::string& name) const {
        for (std::size_t i = 0; i < rels_.size(); ++i)
            if (rels_[i].name == name) return static_cast<int>(i);
        return -1;
    }

    bool is_graph_like() const {
        return rels_.size() == 1 && rels_[0].arity == 2 && rels_[0].symmetric && rels_[0].irreflexive;
    }

    bool operator==(const Signature& o) const { return rels_ == o.rels_; }
    bool operator!=(const Signature& o) const { return !(*this == o); }

  private:
    std::vector<Relation> rels_;
};

/// A finite relational structure: vertices 0..n-1 plus one sorted tuple table
/// per relation. Symmetric relations store both orientations, so tuple lookup
/// has uniform semantics. Treated as an immutable value once built.
class Structure {
  public:
    Structure() = default;

    Structure(Signature sig, int n) : sig_(std::move(sig)), n_(n) {
        if (n < 0) throw Error("domain size must be nonnegative");
        tables_.resize(static_cast<std::size_t>(sig_.size()));
    }

    const Signature& signature() const { return sig_; }
    int size() const { return n_; }
    int relation_count() const { return sig_.size(); }

    const std::vector<Tuple>& tuples(int rel) const { return tables_.at(static_cast<std::size_t>(rel)); }

    bool has_tuple(int rel, const Tuple& t) const {
        const auto& tab = tables_.at(static_cast<std::size_t>(rel));
        return std::binary_search(tab.begin(), tab.end(), t);
    }

    std::size_t tuple_count() const {
        std::size_t c = 0;
        for (const auto& tab : tables_) c += tab.size();
        return c;
    }

    /// Inserts a tuple, applying symmetric closure and enforcing flags.
    void add_tuple(int rel, const Tuple& t) {
        const Relation& r = sig_.at(rel);
        if (static_cast<int>(t.size()) != r.arity)
            throw Error("relation '" + r.name + "': expected arity " + std::to_string(r.arity) +
                        ", got " + std::to_string(t.size()));
        for (int v : t)
            if (v < 0 || v >= n_)
                throw Error("relation '" + r.name + "': index " + std::to_string(v) +
                            " out of range for domain " + std::to_string(n_));
        if (r.irreflexive && r.arity == 2 && t[0] == t[1])
            throw Error("relation '" + r.name + "': loop (" + std::to_string(t[0]) +
                        "," + std::to_string(t[1]) + ") violates irreflexive flag");
        if (r.antisymmetric && r.arity == 2 && t[0] != t[1] && has_tuple(rel, {t[1], t[0]}))
            throw Error("relation '" + r.name + "': pair (" + std::to_string(t[0]) + "," +
                        std::to_string(t[1]) + ") violates antisymmetric flag");
        insert_sorted(rel, t);
        if (r.symmetric && r.arity == 2 && t[0] != t[1]) insert_sorted(rel, {t[1], t[0]});
    }

    void add_tuple(const std::string& rel_name, const Tuple& t) {
        int rel = sig_.index_of(rel_name);
        if (rel < 0) throw Error("unknown relation '" + rel_name + "'");
        add_tuple(rel, t);
    }

    bool operator==(const Structure& o) const {
        return sig_ == o.sig_ && n_ == o.n_ && tables_ == o.tables_;
    }
    bool operator!=(const Structure& o) const { return !(*this == o); }

    /// Total order on structures over a fixed signature; used for canonical forms.
    std::vector<int> flat_encoding() const {
        std::vector<int> key;
        key.push_back(n_);
        for (const auto& tab : tables_) {
            key.push_back(static_cast<int>(tab.size()));
            for (const auto& t : tab) key.insert(key.end(), t.begin(), t.end());
        }
        return key;
    }

    /// Image of this structure under a vertex relabelling into a domain of
    /// size m (perm[v] = new index). Tuples are pushed through and re-sorted.
    Structure relabel(const std::vector<int>& perm, int m) const {
        Structure out(sig_, m);
        for (int rel = 0; rel < relation_count(); ++rel) {
            for (const auto& t : tuples(rel)) {
                Tuple img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) img[i] = perm.at(static_cast<std::size_t>(t[i]));
                out.insert_sorted_unchecked(rel, img);
            }
        }
        return out;
    }

  private:
    void insert_sorted(int rel, const Tuple& t) {
        auto& tab = tables_[static_cast<std::size_t>(rel)];
        auto it = std::lower_bound(tab.begin(), tab.end(), t);
        if (it == tab.end() || *it != t) tab.insert(it, t);
    }

    void insert_sorted_unchecked(int rel, const Tuple& t) { insert_sorted(rel, t); }

    Signature sig_;
    int n_ = 0;
    std::vector<std::vector<Tuple>> tables_;
};

/// Restriction to a vertex subset, re-indexed 0..|S|-1 in ascending vertex order.
inline Structure induced_substructure(const Structure& m, std::vector<int> subset) {
    std::sort(subset.begin(), subset.end());
    subset.erase(std::unique(subset.begin(), subset.end()), subset.end());
    for (int v : subset)
        if (v < 0 || v >= m.size()) throw Error("induced_substructure: index " + std::to_string(v) + " out of range");
    std::vector<int> pos(static_cast<std::size_t>(m.size()), -1);
    for (std::size_t i = 0; i < subset.size(); ++i) pos[static_cast<std::size_t>(subset[i])] = static_cast<int>(i);
    Structure out(m.signature(), static_cast<int>(subset.size()));
    for (int rel = 0; rel < m.relation_count(); ++rel) {
        for (const auto& t : m.tuples(rel)) {
            Tuple img;
            img.reserve(t.size());
            bool inside = true;
            for (int v : t) {
                if (pos[static_cast<std::size_t>(v)] < 0) { inside = false; break; }
                img.push_back(pos[static_cast<std::size_t>(v)]);
            }
            if (inside) out.add_tuple(rel, img);
        }
    }
    return out;
}

inline Structure disjoint_union(const Signature& sig, const std::vector<Structure>& parts) {
    int total = 0;
    for (const auto& p : parts) {
        if (p.signature() != sig) throw Error("disjoint_union: signature mismatch");
        total += p.size();
    }
    Structure out(sig, total);
    int offset = 0;
    for (const auto& p : parts) {
        for (int rel = 0; rel < p.relation_count(); ++rel)
            for (const auto& t : p.tuples(rel)) {
                Tuple img(t.size());
                for (std::size_t i = 0; i < t.size(); ++i) img[i] = t[i] + offset;
                out.add_tuple(rel, img);
            }
        offset += p.size();
    }
    return out;
}

inline Structure disjoint_union(const std::vector<Structure>& parts) {
    if (parts.empty()) throw Error("disjoint_union: empty list needs an explicit signature");
    return disjoint_union(parts.front().signature(), parts);
}

/// Complement on distinct pairs; only defined for graph-shaped signatures.
inline Structure complement_graph(const Structure& m) {
    if (!m.signature().is_graph_like())
        throw Error("complement_graph: signature must be a single symmetric irreflexive binary relation");
    Structure out(m.signature(), m.size());
    for (int u = 0; u < m.size(); ++u)
        for (int v = u + 1; v < m.size(); ++v)
            if (!m.has_tuple(0, {u, v})) out.add_tuple(0, {u, v});
    return out;
}

/// Convenience builders for the ubiquitous test fixtures.
inline Structure graph_from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
    Structure g(Signature::graph(), n);
    for (auto [u, v] : edges) g.add_tuple(0, {u, v});
    return g;
}

inline Structure complete_graph(int n) {
    Structure g(Signature::graph(), n);
    for (int u = 0; u < n; ++u)
        for (int v = u + 1; v < n; ++v) g.add_tuple(0, {u, v});
    return g;
}

inline Structure null_graph(int n) { return Structure(Signature::graph(), n); }

inline Structure path_graph(int n) {
    Structure g(Signature::graph(), n);
    for (int u = 0; u + 1 < n; ++u) g.add_tuple(0, {u, u + 1});
    return g;
}

inline Structure cycle_graph(int n) {
    Structure g(Signature::graph(), n);
    for (int u = 0; u < n; ++u) g.add_tuple(0, {u, (u + 1) % n});
    return g;
}

inline Structure digraph_from_arcs(int n, const std::vector<std::pair<int, int>>& arcs) {
    Structure d(Signature::digraph(), n);
    for (auto [u, v] : arcs) d.add_tuple(0, {u, v});
    return d;
}

namespace detail {

inline bool next_permutation_vec(std::vector<int>& p) {
    return std::next_permutation(p.begin(), p.end());
}

}  // namespace detail

/// Lexicographically least relabelling of m, found by exhaustive permutation
/// search. Intended for desk-scale structures; guarded at 10 vertices.
inline Structure canonical_form(const Structure& m, std::vector<int>* witness_perm = nullptr) {
    const int n = m.size();
    if (n > 10) throw Error("canonical_form: exhaustive search limited to 10 vertices, got " + std::to_string(n));
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 0);
    Structure best = m.relabel(perm, n);
    std::vector<int> best_perm = perm;
    std::vector<int> best_key = best.flat_encoding();
    while (detail::next_permutation_vec(perm)) {
        Structure cand = m.relabel(perm, n);
        std::vector<int> key = cand.flat_encoding();
        if (key < best_key) {
            best = std::move(cand);
            best_key = std::move(key);
            best_perm = perm;
        }
    }
    if (witness_perm) *witness_perm = best_perm;
    return best;
}

/// Canonical key usable for isomorphism-type dedup of small structures.
inline std::vector<int> iso_key(const Structure& m) { return canonical_form(m).flat_encoding(); }

inline bool isomorphic(const Structure& a, const Structure& b) {
    if (a.signature() != b.signature() || a.size() != b.size()) return false;
    if (a.tuple_count() != b.tuple_count()) return false;
    return iso_key(a) == iso_key(b);
}

namespace detail {

// One free choice in a labelled-structure enumeration: each option is the
// set of tuples (per relation) that the choice inserts.
struct Slot {
    std::vector<std::vector<std::pair<int, Tuple>>> options;
};

inline std::vector<Slot> enumeration_slots(const Signature& sig, int n) {
    std::vector<Slot> slots;
    for (int rel = 0; rel < sig.size(); ++rel) {
        const Relation& r = sig.at(rel);
        if (r.arity == 2) {
            for (int u = 0; u < n; ++u)
                for (int v = u; v < n; ++v) {
                    if (u == v) {
                        if (r.irreflexive) continue;
                        Slot s;
                        s.options.push_back({});
                        s.options.push_back({{rel, Tuple{u, u}}});
                        slots.push_back(std::move(s));
                        continue;
                    }
                    Slot s;
                    s.options.push_back({});
                    if (r.symmetric) {
                        s.options.push_back({{rel, Tuple{u, v}}, {rel, Tuple{v, u}}});
                    } else if (r.antisymmetric) {
                        s.options.push_back({{rel, Tuple{u, v}}});
                        s.options.push_back({{rel, Tuple{v, u}}});
                    } else {
                        s.options.push_back({{rel, Tuple{u, v}}});
                        s.options.push_back({{rel, Tuple{v, u}}});
                        s.options.push_back({{rel, Tuple{u, v}}, {rel, Tuple{v, u}}});
                    }
                    slots.push_back(std::move(s));
                }
        } else {
            // Generic arity: every tuple is an independent binary choice.
            std::vector<Tuple> all;
            if (n > 0) {
                Tuple cur(static_cast<std::size_t>(r.arity), 0);
                while (true) {
                    all.push_back(cur);
                    int i = r.arity - 1;
                    while (i >= 0 && ++cur[static_cast<std::size_t>(i)] == n) cur[static_cast<std::size_t>(i--)] = 0;
                    if (i < 0) break;
                }
            }
            for (const auto& t : all) {
                Slot s;
                s.options.push_back({});
                s.options.push_back({{rel, t}});
                slots.push_back(std::move(s));
            }
        }
    }
    return slots;
}

}  // namespace detail

/// Enumerates every labelled structure on n vertices over sig, respecting
/// flags. The callback returns false to stop early.
template <typename Fn>
void for_each_labelled_structure(const Signature& sig, int n, Fn&& fn) {
    auto slots = detail::enumeration_slots(sig, n);
    double total = 1.0;
    for (const auto& s : slots) total *= static_cast<double>(s.options.size());
    if (total > 2e7) throw Error("for_each_labelled_structure: search space too large");
    std::vector<std::size_t> choice(slots.size(), 0);
    while (true) {
        Structure m(sig, n);
        for (std::size_t i = 0; i < slots.size(); ++i)
            for (const auto& [rel, t] : slots[i].options[choice[i]]) m.add_tuple(rel, t);
        if (!fn(static_cast<const Structure&>(m))) return;
        std::size_t i = 0;
        while (i < slots.size() && ++choice[i] == slots[i].options.size()) choice[i++] = 0;
        if (i == slots.size()) break;
    }
}

/// Deterministic seeded RNG (splitmix64); identical streams across platforms.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform-ish draw in [0, n); n must be positive.
    std::uint64_t below(std::uint64_t n) { return next() % n; }

    bool coin() { return (next() & 1) != 0; }

    Rng fork() { return Rng(next()); }

  private:
    std::uint64_t state_;
};

}  // namespace hh
