#pragma once

#include "hh/maps.hpp"

namespace hh {

/// The three kinds of multifunction between structures: antihomomorphism,
/// antimonomorphism, inverse isomorphism. These are the converses of
/// homomorphisms, monomorphisms and isomorphisms respectively.
enum class CoKind { AntiHom, AntiMono, InvIso };

inline MapKind converse_kind(CoKind k) {
    switch (k) {
        case CoKind::AntiHom: return MapKind::Hom;
        case CoKind::AntiMono: return MapKind::Mono;
        case CoKind::InvIso: return MapKind::Emb;
    }
    throw Error("bad CoKind");
}

inline CoKind co_of(MapKind k) {
    switch (k) {
        case MapKind::Hom: return CoKind::AntiHom;
        case MapKind::Mono: return CoKind::AntiMono;
        case MapKind::Emb: return CoKind::InvIso;
    }
    throw Error("bad MapKind");
}

/// A partial multifunction between structures: img[v] is the (sorted) image
/// set of source vertex v, empty when undefined. The defining law is that
/// each target vertex occurs in at most one image set, i.e. the converse of
/// the pair set is a partial function.
struct Multifunction {
    Structure source;
    Structure target;
    std::vector<std::vector<int>> img;

    Multifunction() = default;
    Multifunction(Structure src, Structure tgt)
        : source(std::move(src)), target(std::move(tgt)), img(static_cast<std::size_t>(source.size())) {}

    const std::vector<int>& at(int v) const { return img.at(static_cast<std::size_t>(v)); }
    bool defined(int v) const { return !at(v).empty(); }

    void set(int v, std::vector<int> values) {
        std::sort(values.begin(), values.end());
        values.erase(std::unique(values.begin(), values.end()), values.end());
        img.at(static_cast<std::size_t>(v)) = std::move(values);
    }

    std::vector<std::pair<int, int>> pairs() const {
        std::vector<std::pair<int, int>> p;
        for (int v = 0; v < source.size(); ++v)
            for (int w : at(v)) p.emplace_back(v, w);
        return p;
    }

    /// Every source vertex has a nonempty image.
    bool total() const {
        for (int v = 0; v < source.size(); ++v)
            if (!defined(v)) return false;
        return true;
    }

    bool surjective() const {
        std::vector<char> hit(static_cast<std::size_t>(target.size()), 0);
        for (int v = 0; v < source.size(); ++v)
            for (int w : at(v)) hit[static_cast<std::size_t>(w)] = 1;
        return std::all_of(hit.begin(), hit.end(), [](char x) { return x != 0; });
    }

    /// Each image set is at most a singleton (the converse is injective).
    bool functional() const {
        for (int v = 0; v < source.size(); ++v)
            if (at(v).size() > 1) return false;
        return true;
    }
};

/// Checks the partial-multifunction law; throws on violation.
inline void validate_multifunction(const Multifunction& m) {
    std::vector<int> owner(static_cast<std::size_t>(m.target.size()), kUnset);
    for (int v = 0; v < m.source.size(); ++v)
        for (int w : m.at(v)) {
            if (w < 0 || w >= m.target.size()) throw Error("multifunction: target index out of range");
            int& o = owner[static_cast<std::size_t>(w)];
            if (o != kUnset && o != v)
                throw Error("multifunction: target vertex " + std::to_string(w) + " has two sources");
            o = v;
        }
}

/// Converse of a partial map is a multifunction, and vice versa; both are
/// involutions on the pair sets.
inline Multifunction converse(const PartialMap& f) {
    Multifunction m(f.target, f.source);
    for (int v = 0; v < f.source.size(); ++v) {
        int w = f.at(v);
        if (w == kUnset) continue;
        m.img[static_cast<std::size_t>(w)].push_back(v);
    }
    for (auto& set : m.img) std::sort(set.begin(), set.end());
    return m;
}

inline PartialMap converse(const Multifunction& m) {
    PartialMap f(m.target, m.source);
    for (int v = 0; v < m.source.size(); ++v)
        for (int w : m.at(v)) {
            int& slot = f.img.at(static_cast<std::size_t>(w));
            if (slot != kUnset && slot != v) throw Error("converse: multifunction law violated");
            slot = v;
        }
    return f;
}

/// Image of a single vertex.
inline std::vector<int> mf_image(const Multifunction& m, int v) {
    if (v < 0 || v >= m.source.size()) throw Error("mf_image: index out of range");
    return m.at(v);
}

/// Image of a tuple: the product of the coordinate images.
inline std::vector<Tuple> mf_image_tuple(const Multifunction& m, const Tuple& t) {
    std::vector<Tuple> out;
    for (int v : t)
        if (v < 0 || v >= m.source.size()) throw Error("mf_image: index out of range");
    Tuple cur(t.size());
    std::vector<std::size_t> idx(t.size(), 0);
    for (int v : t)
        if (m.at(v).empty()) return out;
    while (true) {
        for (std::size_t i = 0; i < t.size(); ++i) cur[i] = m.at(t[i])[idx[i]];
        out.push_back(cur);
        int i = static_cast<int>(t.size()) - 1;
        while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == m.at(t[static_cast<std::size_t>(i)]).size())
            idx[static_cast<std::size_t>(i--)] = 0;
        if (i < 0) break;
    }
    return out;
}

/// Image of a vertex set: the union of the images.
inline std::vector<int> mf_image_set(const Multifunction& m, const std::vector<int>& set) {
    std::vector<int> out;
    for (int v : set) {
        const auto& s = mf_image(m, v);
        out.insert(out.end(), s.begin(), s.end());
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Relational composition, first then second. The result always satisfies
/// the multifunction law when both inputs do.
inline Multifunction mf_compose(const Multifunction& f, const Multifunction& g) {
    if (f.target != g.source) throw Error("mf_compose: middle structures differ");
    Multifunction out(f.source, g.target);
    for (int v = 0; v < f.source.size(); ++v) {
        std::vector<int> acc;
        for (int w : f.at(v)) {
            const auto& s = g.at(w);
            acc.insert(acc.end(), s.begin(), s.end());
        }
        out.set(v, std::move(acc));
    }
    validate_multifunction(out);
    return out;
}

/// Multifunction followed by a partial map. Valid only when the composite
/// still satisfies the multifunction law (e.g. when the map is injective).
inline Multifunction mf_then_map(const Multifunction& f, const PartialMap& g) {
    if (f.target != g.source) throw Error("mf_then_map: middle structures differ");
    Multifunction out(f.source, g.target);
    for (int v = 0; v < f.source.size(); ++v) {
        std::vector<int> acc;
        for (int w : f.at(v)) {
            int z = g.at(w);
            if (z != kUnset) acc.push_back(z);
        }
        out.set(v, std::move(acc));
    }
    validate_multifunction(out);
    return out;
}

/// Partial map followed by a multifunction.
inline Multifunction map_then_mf(const PartialMap& f, const Multifunction& g) {
    if (f.target != g.source) throw Error("map_then_mf: middle structures differ");
    Multifunction out(f.source, g.target);
    for (int v = 0; v < f.source.size(); ++v) {
        int w = f.at(v);
        if (w == kUnset) continue;
        out.set(v, g.at(w));
    }
    validate_multifunction(out);
    return out;
}

inline Multifunction identity_multifunction(const Structure& m) {
    Multifunction id(m, m);
    for (int v = 0; v < m.size(); ++v) id.img[static_cast<std::size_t>(v)] = {v};
    return id;
}

/// Antihomomorphism test: every non-related tuple over the source maps only
/// to non-related tuples of the target.
inline bool is_antihomomorphism(const Multifunction& m) {
    if (m.source.signature() != m.target.signature()) throw Error("is_antihomomorphism: signature mismatch");
    std::vector<int> dom;
    for (int v = 0; v < m.source.size(); ++v)
        if (m.defined(v)) dom.push_back(v);
    if (dom.empty()) return true;
    for (int rel = 0; rel < m.source.relation_count(); ++rel) {
        const int k = m.source.signature().at(rel).arity;
        std::vector<std::size_t> idx(static_cast<std::size_t>(k), 0);
        while (true) {
            Tuple t(static_cast<std::size_t>(k));
            for (int i = 0; i < k; ++i) t[static_cast<std::size_t>(i)] = dom[idx[static_cast<std::size_t>(i)]];
            if (!m.source.has_tuple(rel, t)) {
                for (const Tuple& it : mf_image_tuple(m, t))
                    if (m.target.has_tuple(rel, it)) return false;
            }
            int i = k - 1;
            while (i >= 0 && ++idx[static_cast<std::size_t>(i)] == dom.size()) idx[static_cast<std::size_t>(i--)] = 0;
            if (i < 0) break;
        }
    }
    return true;
}

struct CoClass {
    bool is_antihom = false;
    bool is_antimono = false;
    bool is_inviso = false;
    bool total = false;
    bool surjective = false;
};

/// Full cokind classification. AntiMono additionally requires the pair set
/// to be a function (converse injective); InvIso requires the converse to be
/// an embedding onto its image.
inline CoClass classify_multifunction(const Multifunction& m) {
    CoClass c;
    validate_multifunction(m);
    c.is_antihom = is_antihomomorphism(m);
    c.is_antimono = c.is_antihom && m.functional();
    if (m.functional()) {
        MapClass conv = classify_map(converse(m));
        c.is_inviso = conv.is_embedding;
    }
    c.total = m.total();
    c.surjective = m.surjective();
    return c;
}

inline bool has_cokind(const CoClass& c, CoKind k) {
    switch (k) {
        case CoKind::AntiHom: return c.is_antihom;
        case CoKind::AntiMono: return c.is_antimono;
        case CoKind::InvIso: return c.is_inviso;
    }
    return false;
}

namespace detail {

// Candidate check for assigning the singleton {w} to source vertex v of a
// growing multifunction: all non-related source tuples that involve v and
// only defined vertices must map to non-related target tuples; for InvIso
// the image pattern must mirror the source pattern exactly.
inline bool mf_candidate_ok(const Multifunction& m, int v, int w, CoKind target) {
    for (int rel = 0; rel < m.source.relation_count(); ++rel) {
        if (m.source.signature().at(rel).arity != 2) continue;
        for (int u = 0; u < m.source.size(); ++u) {
            const auto& iu = (u == v) ? std::vector<int>{w} : m.at(u);
            if (iu.empty()) continue;
            for (int x : iu) {
                bool s_fwd = m.source.has_tuple(rel, {v, u});
                bool t_fwd = m.target.has_tuple(rel, {w, x});
                bool s_bwd = m.source.has_tuple(rel, {u, v});
                bool t_bwd = m.target.has_tuple(rel, {x, w});
                if (target == CoKind::InvIso) {
                    if (s_fwd != t_fwd || s_bwd != t_bwd) return false;
                } else {
                    if (!s_fwd && t_fwd) return false;
                    if (!s_bwd && t_bwd) return false;
                }
            }
        }
    }
    return true;
}

}  // namespace detail

/// Extension-witness search on the multifunction side: f is defined on the
/// copy of A inside B (source = B, target = M) and has the notion's source
/// cokind; searches for a total multifunction on B of target cokind agreeing
/// with f. New vertices receive singleton images: assigning any nonempty set
/// is possible only if each of its singleton subsets is (the constraints are
/// universally quantified over the image tuples and shrinkage preserves the
/// multifunction law), so exhausting singletons decides existence.
inline std::optional<Multifunction> extend_multifunction_within(const Multifunction& f, CoKind target_cokind) {
    validate_multifunction(f);
    // The incremental candidate check covers binary relations; the leaf
    // classification re-checks the whole candidate, so higher arities are
    // handled too (with weaker pruning).
    std::vector<int> todo;
    for (int v = 0; v < f.source.size(); ++v)
        if (!f.defined(v)) todo.push_back(v);

    std::vector<char> used(static_cast<std::size_t>(f.target.size()), 0);
    for (int v = 0; v < f.source.size(); ++v)
        for (int w : f.at(v)) used[static_cast<std::size_t>(w)] = 1;

    Multifunction g = f;
    std::function<bool(std::size_t)> rec = [&](std::size_t i) -> bool {
        if (i == todo.size()) {
            CoClass c = classify_multifunction(g);
            return has_cokind(c, target_cokind) && g.total();
        }
        int v = todo[i];
        for (int w = 0; w < f.target.size(); ++w) {
            if (used[static_cast<std::size_t>(w)]) continue;
            if (!detail::mf_candidate_ok(g, v, w, target_cokind)) continue;
            g.img[static_cast<std::size_t>(v)] = {w};
            used[static_cast<std::size_t>(w)] = 1;
            if (rec(i + 1)) return true;
            used[static_cast<std::size_t>(w)] = 0;
            g.img[static_cast<std::size_t>(v)].clear();
        }
        return false;
    };
    if (rec(0)) return g;
    return std::nullopt;
}

}  // namespace hh
