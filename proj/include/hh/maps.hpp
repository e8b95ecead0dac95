#pragma once

#include <functional>
#include <optional>

#include "hh/core.hpp"

namespace hh {

constexpr int kUnset = -1;

/// The three kinds of finite partial map between structures.
enum class MapKind { Hom, Mono, Emb };

/// The six kinds of total self-map: endomorphism, epimorphism, monomorphism,
/// bimorphism, self-embedding, automorphism.
enum class EndoKind { H, E, M, B, I, A };

/// Underlying partial-map kind of a total-map kind (epimorphisms are
/// surjective homomorphisms, bimorphisms surjective monomorphisms,
/// automorphisms surjective embeddings).
inline MapKind base_kind(EndoKind y) {
    switch (y) {
        case EndoKind::H:
        case EndoKind::E: return MapKind::Hom;
        case EndoKind::M:
        case EndoKind::B: return MapKind::Mono;
        case EndoKind::I:
        case EndoKind::A: return MapKind::Emb;
    }
    throw Error("bad EndoKind");
}

inline bool surjective_kind(EndoKind y) {
    return y == EndoKind::E || y == EndoKind::B || y == EndoKind::A;
}

inline char kind_letter(MapKind x) {
    switch (x) {
        case MapKind::Hom: return 'H';
        case MapKind::Mono: return 'M';
        case MapKind::Emb: return 'I';
    }
    throw Error("bad MapKind");
}

inline char endo_letter(EndoKind y) {
    switch (y) {
        case EndoKind::H: return 'H';
        case EndoKind::E: return 'E';
        case EndoKind::M: return 'M';
        case EndoKind::B: return 'B';
        case EndoKind::I: return 'I';
        case EndoKind::A: return 'A';
    }
    throw Error("bad EndoKind");
}

/// A partial map between two structures. img[v] is the image of source
/// vertex v, or kUnset. Value type; structures are embedded copies.
struct PartialMap {
    Structure source;
    Structure target;
    std::vector<int> img;

    PartialMap() = default;
    PartialMap(Structure src, Structure tgt)
        : source(std::move(src)), target(std::move(tgt)), img(static_cast<std::size_t>(source.size()), kUnset) {}
    PartialMap(Structure src, Structure tgt, std::vector<int> assignment)
        : source(std::move(src)), target(std::move(tgt)), img(std::move(assignment)) {
        if (static_cast<int>(img.size()) != source.size()) throw Error("PartialMap: assignment size mismatch");
        for (int w : img)
            if (w != kUnset && (w < 0 || w >= target.size())) throw Error("PartialMap: image index out of range");
    }

    int at(int v) const { return img.at(static_cast<std::size_t>(v)); }
    bool defined(int v) const { return at(v) != kUnset; }

    std::vector<int> domain() const {
        std::vector<int> d;
        for (int v = 0; v < source.size(); ++v)
            if (defined(v)) d.push_back(v);
        return d;
    }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> p;
        for (int v = 0; v < source.size(); ++v)
            if (defined(v)) p.emplace_back(v, at(v));
        return p;
    }
};

struct MapClass {
    bool total = false;
    bool is_hom = false;
    bool is_mono = false;
    bool is_embedding = false;
    bool is_surjective = false;
};

/// Classifies an assignment A -> B. Hom: relation tuples inside the domain
/// land on relation tuples. Mono: hom and injective. Embedding: mono and
/// non-tuples over the domain land on non-tuples. Surjective: image covers
/// the whole target domain.
inline MapClass classify_map(const Structure& a, const Structure& b, const std::vector<int>& img) {
    if (a.signature() != b.signature()) throw Error("classify_map: signature mismatch");
    if (static_cast<int>(img.size()) != a.size()) throw Error("classify_map: assignment size mismatch");
    MapClass c;
    std::vector<int> dom;
    for (int v = 0; v < a.size(); ++v) {
        int w = img[static_cast<std::size_t>(v)];
        if (w == kUnset) continue;
        if (w < 0 || w >= b.size()) throw Error("classify_map: image index out of range");
        dom.push_back(v);
    }
    c.total = static_cast<int>(dom.size()) == a.size();

    c.is_hom = true;
    for (int rel = 0; rel < a.relation_count() && c.is_hom; ++rel) {
        for (const auto& t : a.tuples(rel)) {
            Tuple it(t.size());
            bool all = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                int w = img[static_cast<std::size_t>(t[i])];
                if (w == kUnset) { all = false; break; }
                it[i] = w;
            }
            if (all && !b.has_tuple(rel, it)) { c.is_hom = false; break; }
        }
    }

    bool injective = true;
    for (std::size_t i = 0; i < dom.size() && injective; ++i)
        for (std::size_t j = i + 1; j < dom.size(); ++j)
            if (img[static_cast<std::size_t>(dom[i])] == img[static_cast<std::size_t>(dom[j])]) {
                injective = false;
                break;
            }
    c.is_mono = c.is_hom && injective;

    c.is_embedding = c.is_mono;
    for (int rel = 0; rel < a.relation_count() && c.is_embedding; ++rel) {
        const int k = a.signature().at(rel).arity;
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        if (dom.empty()) continue;
        while (true) {
            Tuple t(static_cast<std::size_t>(k)), it(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) {
                t[static_cast<std::size_t>(i)] = dom[idx[static_cast<std::size_t>(i)]];
                it[static_cast<std::size_t>(i)] = img[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
            }
            if (!a.has_tuple(rel, t) && b.has_tuple(rel, it)) { c.is_embedding = false; break; }
            int i = k - 1;
            while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == dom.size()) idx[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
        }
    }

    std::vector<char> covered(static_cast<std::size_t>(b.size()), 0);
    for (int v : dom) covered[static_cast<std::size_t>(img[static_cast<std::size_t>(v)])] = 1;
    c.is_surjective = std::all_of(covered.begin(), covered.end(), [](char x) { return x != 0; });
    return c;
}

inline MapClass classify_map(const PartialMap& f) { return classify_map(f.source, f.target, f.img); }

inline bool has_kind(const MapClass& c, MapKind k) {
    switch (k) {
        case MapKind::Hom: return c.is_hom;
        case MapKind::Mono: return c.is_mono;
        case MapKind::Emb: return c.is_embedding;
    }
    return false;
}

namespace detail {

// Backtracking search over assignments A -> B with per-step consistency
// checks. Assignment order is ascending source vertex; candidate order is
// kUnset (when partial maps are allowed) then ascending target vertex.
class MapSearch {
  public:
    MapSearch(const Structure& a, const Structure& b, MapKind kind, bool total, bool surjective)
        : a_(a), b_(b), kind_(kind), total_(total), surjective_(surjective) {
        if (a.signature() != b.signature()) throw Error("map search: signature mismatch");
        incident_.resize(static_cast<std::size_t>(a_.size()));
        for (int rel = 0; rel < a_.relation_count(); ++rel)
            for (const auto& t : a_.tuples(rel)) {
                for (int v : t) {
                    auto& list = incident_[static_cast<std::size_t>(v)];
                    if (list.empty() || list.back() != std::make_pair(rel, t)) list.emplace_back(rel, t);
                }
            }
        has_higher_arity_ = false;
        for (int rel = 0; rel < a_.relation_count(); ++rel)
            if (a_.signature().at(rel).arity > 2) has_higher_arity_ = true;
    }

    // fn receives the finished assignment and returns false to stop.
    bool run(std::vector<int> seed, const std::function<bool(const std::vector<int>&)>& fn) {
        img_ = std::move(seed);
        img_.resize(static_cast<std::size_t>(a_.size()), kUnset);
        used_.assign(static_cast<std::size_t>(b_.size()), 0);
        covered_ = 0;
        for (int v = 0; v < a_.size(); ++v) {
            int w = img_[static_cast<std::size_t>(v)];
            if (w == kUnset) continue;
            if (used_[static_cast<std::size_t>(w)] == 0) ++covered_;
            ++used_[static_cast<std::size_t>(w)];
        }
        // Seeded part must already satisfy the kind's local constraints.
        if (kind_ != MapKind::Hom)
            for (int w = 0; w < b_.size(); ++w)
                if (used_[static_cast<std::size_t>(w)] > 1) return true;
        for (int v = 0; v < a_.size(); ++v)
            if (img_[static_cast<std::size_t>(v)] != kUnset && !consistent(v)) return true;
        return recurse(0, fn);
    }

  private:
    bool recurse(int v, const std::function<bool(const std::vector<int>&)>& fn) {
        while (v < a_.size() && img_[static_cast<std::size_t>(v)] != kUnset) ++v;
        if (v == a_.size()) {
            if (surjective_ && covered_ != b_.size()) return true;
            if (has_higher_arity_ && kind_ == MapKind::Emb) {
                MapClass c = classify_map(a_, b_, img_);
                if (!c.is_embedding) return true;
            }
            return fn(img_);
        }
        if (!total_) {
            if (!recurse(v + 1, fn)) return false;
        }
        for (int w = 0; w < b_.size(); ++w) {
            if (kind_ != MapKind::Hom && used_[static_cast<std::size_t>(w)] > 0) continue;
            img_[static_cast<std::size_t>(v)] = w;
            if (used_[static_cast<std::size_t>(w)] == 0) ++covered_;
            ++used_[static_cast<std::size_t>(w)];
            bool ok = consistent(v);
            if (ok && surjective_ && total_) {
                int remaining = 0;
                for (int u = v + 1; u < a_.size(); ++u)
                    if (img_[static_cast<std::size_t>(u)] == kUnset) ++remaining;
                if (b_.size() - covered_ > remaining) ok = false;
            }
            if (ok && !recurse(v + 1, fn)) return false;
            --used_[static_cast<std::size_t>(w)];
            if (used_[static_cast<std::size_t>(w)] == 0) --covered_;
            img_[static_cast<std::size_t>(v)] = kUnset;
        }
        return true;
    }

    // Checks constraints of tuples whose entries are all defined and involve v.
    bool consistent(int v) {
        for (const auto& [rel, t] : incident_[static_cast<std::size_t>(v)]) {
            Tuple it(t.size());
            bool all = true;
            for (std::size_t i = 0; i < t.size(); ++i) {
                int w = img_[static_cast<std::size_t>(t[i])];
                if (w == kUnset) { all = false; break; }
                it[i] = w;
            }
            if (all && !b_.has_tuple(rel, it)) return false;
        }
        if (kind_ == MapKind::Emb) {
            // Reflection for binary relations, incrementally against v.
            for (int rel = 0; rel < a_.relation_count(); ++rel) {
                if (a_.signature().at(rel).arity != 2) continue;
                const int iv = img_[static_cast<std::size_t>(v)];
                for (int u = 0; u < a_.size(); ++u) {
                    const int iu = img_[static_cast<std::size_t>(u)];
                    if (iu == kUnset) continue;
                    if (!a_.has_tuple(rel, {v, u}) && b_.has_tuple(rel, {iv, iu})) return false;
                    if (u != v && !a_.has_tuple(rel, {u, v}) && b_.has_tuple(rel, {iu, iv})) return false;
                }
            }
        }
        return true;
    }

    const Structure& a_;
    const Structure& b_;
    MapKind kind_;
    bool total_, surjective_;
    bool has_higher_arity_ = false;
    std::vector<std::vector<std::pair<int, Tuple>>> incident_;
    std::vector<int> img_;
    std::vector<int> used_;
    int covered_ = 0;
};

}  // namespace detail

/// Streams every map A -> B of the requested kind, each exactly once.
/// total=false additionally streams all partial maps (including the empty
/// one). fn returns false to stop early.
template <typename Fn>
void for_each_map(const Structure& a, const Structure& b, MapKind kind, bool total, bool surjective, Fn&& fn) {
    detail::MapSearch s(a, b, kind, total, surjective);
    std::function<bool(const std::vector<int>&)> cb = [&](const std::vector<int>& img) { return fn(img); };
    s.run({}, cb);
}

inline std::vector<std::vector<int>> enumerate_maps(const Structure& a, const Structure& b, MapKind kind,
                                                    bool total = true, bool surjective = false) {
    std::vector<std::vector<int>> out;
    for_each_map(a, b, kind, total, surjective, [&](const std::vector<int>& img) {
        out.push_back(img);
        return true;
    });
    return out;
}

inline long count_maps(const Structure& a, const Structure& b, MapKind kind, bool total = true,
                       bool surjective = false) {
    long c = 0;
    for_each_map(a, b, kind, total, surjective, [&](const std::vector<int>&) {
        ++c;
        return true;
    });
    return c;
}

/// Completes a partial assignment B -> M to a total map of the requested
/// kind, or returns nullopt after exhausting the search space. The seeded
/// part must itself satisfy the kind's constraints.
inline std::optional<std::vector<int>> complete_map(const Structure& b, const Structure& m,
                                                    const std::vector<int>& seed, MapKind target_kind,
                                                    bool surjective = false) {
    detail::MapSearch s(b, m, target_kind, true, surjective);
    std::optional<std::vector<int>> found;
    std::function<bool(const std::vector<int>&)> cb = [&](const std::vector<int>& img) {
        found = img;
        return false;
    };
    s.run(seed, cb);
    return found;
}

/// Extension-witness search: f is a partial map from B into M (defined on the
/// copy of A inside B); returns a total map g : B -> M of target_kind that
/// agrees with f, or nullopt.
inline std::optional<PartialMap> extend_map_within(const PartialMap& f, MapKind target_kind,
                                                   bool surjective = false) {
    auto r = complete_map(f.source, f.target, f.img, target_kind, surjective);
    if (!r) return std::nullopt;
    return PartialMap(f.source, f.target, *r);
}

/// Total self-maps of M of the six kinds, as raw assignments.
inline std::vector<std::vector<int>> enumerate_endomorphisms(const Structure& m, EndoKind kind) {
    return enumerate_maps(m, m, base_kind(kind), true, surjective_kind(kind));
}

/// One cheapest preimage per requested target vertex: the least-index subset
/// B with img(B) exactly A_indices. alpha must be total and cover A_indices.
inline std::vector<int> finite_preimage(const PartialMap& alpha, const std::vector<int>& a_indices) {
    std::vector<int> out;
    for (int a : a_indices) {
        if (a < 0 || a >= alpha.target.size()) throw Error("finite_preimage: index out of range");
        int pick = kUnset;
        for (int v = 0; v < alpha.source.size(); ++v)
            if (alpha.at(v) == a) { pick = v; break; }
        if (pick == kUnset)
            throw Error("finite_preimage: vertex " + std::to_string(a) + " has no preimage (map not surjective over the set)");
        out.push_back(pick);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Relational composition, first then second.
inline PartialMap compose_maps(const PartialMap& f, const PartialMap& g) {
    if (f.target != g.source) throw Error("compose_maps: middle structures differ");
    PartialMap out(f.source, g.target);
    for (int v = 0; v < f.source.size(); ++v) {
        int w = f.at(v);
        if (w == kUnset) continue;
        int z = g.at(w);
        if (z != kUnset) out.img[static_cast<std::size_t>(v)] = z;
    }
    return out;
}

inline PartialMap identity_map(const Structure& m) {
    PartialMap id(m, m);
    for (int v = 0; v < m.size(); ++v) id.img[static_cast<std::size_t>(v)] = v;
    return id;
}

}  // namespace hh
