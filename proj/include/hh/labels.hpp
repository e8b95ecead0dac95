#pragma once

#include <array>
#include <cctype>

#include "hh/maps.hpp"

namespace hh {

/// One of the 18 homogeneity notions: partial maps of kind x extend to total
/// self-maps of kind y.
struct ClassLabel {
    MapKind x;
    EndoKind y;

    bool operator==(const ClassLabel& o) const { return x == o.x && y == o.y; }
    bool operator!=(const ClassLabel& o) const { return !(*this == o); }
};

inline std::string label_name(ClassLabel l) { return std::string{kind_letter(l.x), endo_letter(l.y)}; }

inline const std::array<ClassLabel, 18>& all_labels() {
    static const std::array<ClassLabel, 18> labels = [] {
        std::array<ClassLabel, 18> a{};
        const MapKind xs[] = {MapKind::Emb, MapKind::Mono, MapKind::Hom};
        const EndoKind ys[] = {EndoKind::H, EndoKind::E, EndoKind::M, EndoKind::B, EndoKind::I, EndoKind::A};
        int i = 0;
        for (MapKind x : xs)
            for (EndoKind y : ys) a[static_cast<std::size_t>(i++)] = ClassLabel{x, y};
        return a;
    }();
    return labels;
}

inline int label_index(ClassLabel l) {
    const auto& ls = all_labels();
    for (std::size_t i = 0; i < ls.size(); ++i)
        if (ls[i] == l) return static_cast<int>(i);
    throw Error("bad label");
}

inline ClassLabel parse_label(std::string s) {
    if (s.size() != 2) throw Error("label must be two letters, got '" + s + "'");
    for (char& c : s) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    MapKind x;
    switch (s[0]) {
        case 'I': x = MapKind::Emb; break;
        case 'M': x = MapKind::Mono; break;
        case 'H': x = MapKind::Hom; break;
        default: throw Error("bad partial-map letter '" + std::string{s[0]} + "' (want I, M or H)");
    }
    EndoKind y;
    switch (s[1]) {
        case 'H': y = EndoKind::H; break;
        case 'E': y = EndoKind::E; break;
        case 'M': y = EndoKind::M; break;
        case 'B': y = EndoKind::B; break;
        case 'I': y = EndoKind::I; break;
        case 'A': y = EndoKind::A; break;
        default: throw Error("bad total-map letter '" + std::string{s[1]} + "'");
    }
    return ClassLabel{x, y};
}

/// Forth family: the extended map need not be surjective (y in {H,M,I}).
inline bool is_forth(ClassLabel l) { return !surjective_kind(l.y); }

/// Back-and-forth family: y in {E,B,A}.
inline bool is_back(ClassLabel l) { return surjective_kind(l.y); }

namespace detail {

// Constraint strength of a partial-map kind: embeddings are the most
// constrained, homomorphisms the least. kind2 implies kind1 iff it is at
// least as strong.
inline int kind_rank(MapKind k) {
    switch (k) {
        case MapKind::Hom: return 0;
        case MapKind::Mono: return 1;
        case MapKind::Emb: return 2;
    }
    return -1;
}

// Inclusion of total-self-map classes: automorphisms are bijective
// self-embeddings, bimorphisms bijective monos, epimorphisms surjective
// endomorphisms.
inline bool endo_included(EndoKind a, EndoKind b) {
    auto bit = [](EndoKind k) { return 1 << static_cast<int>(k); };
    // closure[a] = set of kinds whose class contains the class of a
    static const auto closure = [] {
        std::array<int, 6> c{};
        auto idx = [](EndoKind k) { return static_cast<std::size_t>(k); };
        auto b = [](EndoKind k) { return 1 << static_cast<int>(k); };
        c[idx(EndoKind::H)] = b(EndoKind::H);
        c[idx(EndoKind::E)] = b(EndoKind::E) | b(EndoKind::H);
        c[idx(EndoKind::M)] = b(EndoKind::M) | b(EndoKind::H);
        c[idx(EndoKind::B)] = b(EndoKind::B) | b(EndoKind::E) | b(EndoKind::M) | b(EndoKind::H);
        c[idx(EndoKind::I)] = b(EndoKind::I) | b(EndoKind::M) | b(EndoKind::H);
        c[idx(EndoKind::A)] = b(EndoKind::A) | b(EndoKind::B) | b(EndoKind::I) | b(EndoKind::E) |
                              b(EndoKind::M) | b(EndoKind::H);
        return c;
    }();
    return (closure[static_cast<std::size_t>(a)] & bit(b)) != 0;
}

// a's class of structures is contained in b's, by the product rule: a implies
// b iff every b-input map is an a-input map and every a-output map is a
// b-output map.
inline bool product_leq(ClassLabel a, ClassLabel b) {
    return kind_rank(b.x) >= kind_rank(a.x) && endo_included(a.y, b.y);
}

}  // namespace detail

/// The three pairwise-equal classes: XI = XA for each partial-map kind X
/// (a countable structure is XI-homogeneous iff it is XA-homogeneous).
inline bool same_class(ClassLabel a, ClassLabel b) {
    if (a == b) return true;
    auto partner = [](ClassLabel l) -> std::optional<ClassLabel> {
        if (l.y == EndoKind::I) return ClassLabel{l.x, EndoKind::A};
        if (l.y == EndoKind::A) return ClassLabel{l.x, EndoKind::I};
        return std::nullopt;
    };
    auto p = partner(a);
    return p && *p == b;
}

/// Preferred representative of a label's equivalence class: IA over II,
/// MA over MI, HA over HI.
inline ClassLabel canonical_rep(ClassLabel l) {
    if (l.y == EndoKind::I) return ClassLabel{l.x, EndoKind::A};
    return l;
}

/// Containment order on homogeneity classes, after quotienting by the three
/// equalities. HA is the unique minimum, IH the unique maximum.
inline bool poset_leq(ClassLabel a, ClassLabel b) {
    ClassLabel as[2] = {a, a.y == EndoKind::I ? ClassLabel{a.x, EndoKind::A} : a};
    if (a.y == EndoKind::A) as[1] = ClassLabel{a.x, EndoKind::I};
    ClassLabel bs[2] = {b, b.y == EndoKind::I ? ClassLabel{b.x, EndoKind::A} : b};
    if (b.y == EndoKind::A) bs[1] = ClassLabel{b.x, EndoKind::I};
    for (ClassLabel aa : as)
        for (ClassLabel bb : bs)
            if (detail::product_leq(aa, bb)) return true;
    return false;
}

inline bool poset_strictly_less(ClassLabel a, ClassLabel b) { return poset_leq(a, b) && !poset_leq(b, a); }

/// No-implication family: a map of the output kind need not be a map of the
/// input kind, so the notion resists inductive extension arguments.
inline bool is_no_implication(ClassLabel l) {
    return detail::kind_rank(base_kind(l.y)) < detail::kind_rank(l.x);
}

inline bool is_implication(ClassLabel l) { return !is_no_implication(l); }

/// The surjective-kind correspondence (E,H), (B,M), (A,I) as label pairs.
inline const std::array<std::pair<EndoKind, EndoKind>, 3>& srelation() {
    static const std::array<std::pair<EndoKind, EndoKind>, 3> s = {
        std::make_pair(EndoKind::E, EndoKind::H),
        std::make_pair(EndoKind::B, EndoKind::M),
        std::make_pair(EndoKind::A, EndoKind::I)};
    return s;
}

}  // namespace hh
