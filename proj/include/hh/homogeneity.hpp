#pragma once

#include "hh/labels.hpp"

namespace hh {

struct DecideOutcome {
    bool holds = false;
    /// A non-extendable partial map when holds is false.
    std::optional<std::vector<int>> counterexample;
};

namespace detail {

// Reusable extension checker: one searcher per total-map kind, shared
// across the whole sweep of partial maps.
class EndoCompletion {
  public:
    explicit EndoCompletion(const Structure& m)
        : searches_{MapSearch(m, m, MapKind::Hom, true, false), MapSearch(m, m, MapKind::Hom, true, true),
                    MapSearch(m, m, MapKind::Mono, true, false), MapSearch(m, m, MapKind::Mono, true, true),
                    MapSearch(m, m, MapKind::Emb, true, false), MapSearch(m, m, MapKind::Emb, true, true)} {}

    bool extendable(const std::vector<int>& seed, EndoKind y) {
        int idx = 0;
        switch (base_kind(y)) {
            case MapKind::Hom: idx = 0; break;
            case MapKind::Mono: idx = 2; break;
            case MapKind::Emb: idx = 4; break;
        }
        if (surjective_kind(y)) ++idx;
        bool found = false;
        std::function<bool(const std::vector<int>&)> cb = [&](const std::vector<int>&) {
            found = true;
            return false;
        };
        searches_[static_cast<std::size_t>(idx)].run(seed, cb);
        return found;
    }

  private:
    std::array<MapSearch, 6> searches_;
};

}  // namespace detail

/// Applies the XY definition verbatim to a finite structure: every partial
/// map of kind x between induced substructures of m must extend to a total
/// self-map of kind y.
inline DecideOutcome decide_finite_homogeneity(const Structure& m, ClassLabel l) {
    DecideOutcome out;
    out.holds = true;
    detail::EndoCompletion completion(m);
    for_each_map(m, m, l.x, false, false, [&](const std::vector<int>& f) {
        if (!completion.extendable(f, l.y)) {
            out.holds = false;
            out.counterexample = f;
            return false;
        }
        return true;
    });
    return out;
}

struct Profile {
    std::array<bool, 18> sat{};
    std::array<std::optional<std::vector<int>>, 18> counterexamples;

    bool satisfied(ClassLabel l) const { return sat[static_cast<std::size_t>(label_index(l))]; }
};

/// All 18 decisions in one sweep over the partial homomorphisms of m, with
/// lazy per-map extension checks shared across labels. Default guard keeps
/// the exponential enumeration at desk scale; pass a larger guard to
/// override.
inline Profile full_profile(const Structure& m, int size_guard = 7) {
    if (m.size() > size_guard)
        throw Error("full_profile: structure has " + std::to_string(m.size()) + " vertices, guard is " +
                    std::to_string(size_guard) + " (override to proceed)");
    Profile p;
    p.sat.fill(true);

    const EndoKind ys[] = {EndoKind::H, EndoKind::E, EndoKind::M, EndoKind::B, EndoKind::I, EndoKind::A};
    detail::EndoCompletion completion(m);

    for_each_map(m, m, MapKind::Hom, false, false, [&](const std::vector<int>& f) {
        MapClass c = classify_map(m, m, f);
        std::array<std::optional<bool>, 6> ext;
        auto extendable = [&](EndoKind y) {
            auto& memo = ext[static_cast<std::size_t>(y)];
            if (!memo) memo = completion.extendable(f, y);
            return *memo;
        };
        for (EndoKind y : ys) {
            for (MapKind x : {MapKind::Hom, MapKind::Mono, MapKind::Emb}) {
                if (x == MapKind::Mono && !c.is_mono) continue;
                if (x == MapKind::Emb && !c.is_embedding) continue;
                const int idx = label_index(ClassLabel{x, y});
                if (!p.sat[static_cast<std::size_t>(idx)]) continue;
                if (!extendable(y)) {
                    p.sat[static_cast<std::size_t>(idx)] = false;
                    p.counterexamples[static_cast<std::size_t>(idx)] = f;
                }
            }
        }
        return true;
    });
    return p;
}

inline bool profile_upward_closed(const Profile& p) {
    for (ClassLabel a : all_labels())
        for (ClassLabel b : all_labels())
            if (p.satisfied(a) && poset_leq(a, b) && !p.satisfied(b)) return false;
    return true;
}

/// Minimal satisfied classes in the containment order, reported with the
/// preferred representatives (IA over II etc.). An all-false profile
/// yields the empty set: structures with no satisfied notion exist (a
/// one-edge graph with an isolated vertex already fails IH), so this is a
/// legitimate outcome rather than an internal error.
inline std::vector<ClassLabel> mhh_classes(const Profile& p) {
    if (!profile_upward_closed(p)) throw Error("mhh_classes: profile is not upward closed (classifier bug)");
    std::vector<ClassLabel> sat;
    for (ClassLabel l : all_labels())
        if (p.satisfied(l)) {
            ClassLabel rep = canonical_rep(l);
            bool dup = false;
            for (ClassLabel s : sat)
                if (s == rep) dup = true;
            if (!dup) sat.push_back(rep);
        }
    std::vector<ClassLabel> minimal;
    for (ClassLabel l : sat) {
        bool is_min = true;
        for (ClassLabel o : sat)
            if (!same_class(o, l) && poset_strictly_less(o, l)) is_min = false;
        if (is_min) minimal.push_back(l);
    }
    std::sort(minimal.begin(), minimal.end(),
              [](ClassLabel a, ClassLabel b) { return label_index(a) < label_index(b); });
    return minimal;
}

/// A finite structure is a core when every endomorphism is an embedding.
inline bool is_core_finite(const Structure& m) {
    bool core = true;
    for_each_map(m, m, MapKind::Hom, true, false, [&](const std::vector<int>& f) {
        if (!classify_map(m, m, f).is_embedding) {
            core = false;
            return false;
        }
        return true;
    });
    return core;
}

}  // namespace hh
