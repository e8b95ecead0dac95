#pragma once

#include "hh/descriptor.hpp"
#include "hh/labels.hpp"

namespace hh {

/// An amalgamation instance: f1 maps the base A into the left structure B1
/// (a total map of the notion's input kind), f2 embeds A into the right
/// structure B2. Sources of f1 and f2 coincide.
struct AmalgamInstance {
    PartialMap f1;  // A -> B1
    PartialMap f2;  // A -> B2, embedding
};

/// The anti square: f1 is a multifunction A -> B1 of the notion's cokind.
struct AntiAmalgamInstance {
    Multifunction f1;  // A -> B1
    PartialMap f2;     // A -> B2, embedding
};

struct AmalgamResult {
    Structure amalgam;  // D
    PartialMap g1;      // B1 -> D, embedding
    PartialMap g2;      // B2 -> D, kind Y
};

struct AntiAmalgamResult {
    Structure amalgam;
    PartialMap g1;       // B1 -> D, embedding
    Multifunction g2;    // B2 -> D, cokind Y
};

namespace detail {

inline void check_instance_common(const Structure& a1, const Structure& a2, const PartialMap& f2) {
    if (a1 != a2) throw Error("amalgam instance: f1 and f2 have different base structures");
    MapClass c = classify_map(f2);
    if (!c.total || !c.is_embedding) throw Error("amalgam instance: f2 must be a total embedding");
}

// Fresh-vertex layout shared by both free constructions: B1's vertices keep
// their indices, B2's vertices outside the image of f2 get ascending fresh
// indices after B1.
struct FreeLayout {
    std::vector<int> g2_img;  // B2 -> D
    int domain = 0;
};

inline FreeLayout free_layout(int n1, const PartialMap& f2, const std::vector<int>& a_to_b1) {
    FreeLayout out;
    const Structure& b2 = f2.target;
    std::vector<int> from_b2(static_cast<std::size_t>(b2.size()), kUnset);
    for (int a = 0; a < f2.source.size(); ++a) from_b2[static_cast<std::size_t>(f2.at(a))] = a_to_b1[static_cast<std::size_t>(a)];
    out.g2_img.assign(static_cast<std::size_t>(b2.size()), kUnset);
    int next = n1;
    for (int v = 0; v < b2.size(); ++v)
        out.g2_img[static_cast<std::size_t>(v)] =
            from_b2[static_cast<std::size_t>(v)] != kUnset ? from_b2[static_cast<std::size_t>(v)] : next++;
    out.domain = next;
    return out;
}

}  // namespace detail

/// Joint embedding: disjoint union when that stays in the class, otherwise a
/// bounded exhaustive search for a small joint host. Throws when the bound
/// is exhausted.
inline Structure jep_amalgam(const Structure& a, const Structure& b, const ClassDescriptor& d,
                             int size_bound = -1) {
    if (!member_of(d, a) || !member_of(d, b)) throw Error("jep_amalgam: inputs must belong to the class");
    Structure u = disjoint_union(d.signature, {a, b});
    if (member_of(d, u)) return u;
    if (size_bound < 0) size_bound = a.size() + b.size();
    for (int n = std::max(a.size(), b.size()); n <= size_bound; ++n) {
        std::optional<Structure> found;
        for_each_labelled_structure(d.signature, n, [&](const Structure& cand) {
            if (!member_of(d, cand)) return true;
            if (embeds_pattern(cand, a) && embeds_pattern(cand, b)) {
                found = cand;
                return false;
            }
            return true;
        });
        if (found) return *found;
    }
    throw Error("jep_amalgam: no joint host within size bound " + std::to_string(size_bound));
}

/// The XY square (input kind X, output kind Y): free amalgam first, bounded
/// exhaustive search second. Returns nullopt when every candidate up to
/// size_bound is exhausted.
inline std::optional<AmalgamResult> xy_amalgamate(const AmalgamInstance& inst, MapKind x, MapKind y,
                                                  const ClassDescriptor& d, int size_bound) {
    detail::check_instance_common(inst.f1.source, inst.f2.source, inst.f2);
    MapClass c1 = classify_map(inst.f1);
    if (!c1.total || !has_kind(c1, x)) throw Error("xy_amalgamate: f1 is not a total map of the input kind");
    const Structure& b1 = inst.f1.target;
    const Structure& b2 = inst.f2.target;
    if (b1.signature() != d.signature || b2.signature() != d.signature)
        throw Error("xy_amalgamate: signature mismatch with the class");
    if (!member_of(d, inst.f1.source) || !member_of(d, b1) || !member_of(d, b2))
        throw Error("xy_amalgamate: instance structures must belong to the class");

    auto finish = [&](const Structure& amalgam, std::vector<int> g1img, std::vector<int> g2img)
        -> std::optional<AmalgamResult> {
        PartialMap g1(b1, amalgam, std::move(g1img));
        PartialMap g2(b2, amalgam, std::move(g2img));
        MapClass cg1 = classify_map(g1), cg2 = classify_map(g2);
        if (!cg1.total || !cg1.is_embedding) return std::nullopt;
        if (!cg2.total || !has_kind(cg2, y)) return std::nullopt;
        if (compose_maps(inst.f1, g1).img != compose_maps(inst.f2, g2).img) return std::nullopt;
        return AmalgamResult{amalgam, std::move(g1), std::move(g2)};
    };

    // Free amalgam: push B2 through, identifying f2(A) with f1(A) inside B1.
    {
        auto layout = detail::free_layout(b1.size(), inst.f2, inst.f1.img);
        bool valid = true;
        Structure amalgam(d.signature, layout.domain);
        try {
            for (int rel = 0; rel < b1.relation_count(); ++rel)
                for (const auto& t : b1.tuples(rel)) amalgam.add_tuple(rel, t);
            for (int rel = 0; rel < b2.relation_count(); ++rel)
                for (const auto& t : b2.tuples(rel)) {
                    Tuple it(t.size());
                    for (std::size_t i = 0; i < t.size(); ++i)
                        it[i] = layout.g2_img[static_cast<std::size_t>(t[i])];
                    amalgam.add_tuple(rel, it);
                }
        } catch (const Error&) {
            valid = false;  // a signature flag rejected the overlay
        }
        if (valid && member_of(d, amalgam)) {
            std::vector<int> g1img(static_cast<std::size_t>(b1.size()));
            for (int v = 0; v < b1.size(); ++v) g1img[static_cast<std::size_t>(v)] = v;
            if (auto r = finish(amalgam, std::move(g1img), layout.g2_img)) return r;
        }
    }

    // Bounded fallback: sweep labelled class members, embeddings of B1 and
    // completions of the pinned g2.
    for (int n = b1.size(); n <= size_bound; ++n) {
        std::optional<AmalgamResult> found;
        for_each_labelled_structure(d.signature, n, [&](const Structure& cand) {
            if (!member_of(d, cand)) return true;
            bool stop = false;
            for_each_map(b1, cand, MapKind::Emb, true, false, [&](const std::vector<int>& g1img) {
                std::vector<int> seed(static_cast<std::size_t>(b2.size()), kUnset);
                for (int a = 0; a < inst.f2.source.size(); ++a)
                    seed[static_cast<std::size_t>(inst.f2.at(a))] =
                        g1img[static_cast<std::size_t>(inst.f1.at(a))];
                auto g2img = complete_map(b2, cand, seed, y, false);
                if (!g2img) return true;
                if (auto r = finish(cand, g1img, *g2img)) {
                    found = std::move(r);
                    stop = true;
                    return false;
                }
                return true;
            });
            return !stop;
        });
        if (found) return found;
    }
    return std::nullopt;
}

/// The anti square: embedding g1 and a multifunction g2 of the output cokind
/// with the mixed commuting condition. Free construction adds B2's fresh
/// vertices with no cross relations; bounded search otherwise.
inline std::optional<AntiAmalgamResult> anti_xy_amalgamate(const AntiAmalgamInstance& inst, CoKind x,
                                                           CoKind y, const ClassDescriptor& d,
                                                           int size_bound) {
    detail::check_instance_common(inst.f1.source, inst.f2.source, inst.f2);
    CoClass c1 = classify_multifunction(inst.f1);
    if (!inst.f1.total() || !has_cokind(c1, x))
        throw Error("anti_xy_amalgamate: f1 is not a total multifunction of the input cokind");
    const Structure& b1 = inst.f1.target;
    const Structure& b2 = inst.f2.target;
    if (!member_of(d, inst.f1.source) || !member_of(d, b1) || !member_of(d, b2))
        throw Error("anti_xy_amalgamate: instance structures must belong to the class");

    auto finish = [&](const Structure& amalgam, std::vector<int> g1img,
                      std::vector<std::vector<int>> g2img) -> std::optional<AntiAmalgamResult> {
        PartialMap g1(b1, amalgam, std::move(g1img));
        Multifunction g2(b2, amalgam);
        g2.img = std::move(g2img);
        MapClass cg1 = classify_map(g1);
        if (!cg1.total || !cg1.is_embedding) return std::nullopt;
        CoClass cg2 = classify_multifunction(g2);
        if (!g2.total() || !has_cokind(cg2, y)) return std::nullopt;
        if (mf_then_map(inst.f1, g1).pairs() != map_then_mf(inst.f2, g2).pairs()) return std::nullopt;
        return AntiAmalgamResult{amalgam, std::move(g1), std::move(g2)};
    };

    // Free construction: fresh copies of B2's new part, no cross relations.
    {
        const Structure& a = inst.f2.source;
        std::vector<int> in_image(static_cast<std::size_t>(b2.size()), kUnset);
        for (int v = 0; v < a.size(); ++v) in_image[static_cast<std::size_t>(inst.f2.at(v))] = v;
        std::vector<int> fresh(static_cast<std::size_t>(b2.size()), kUnset);
        int next = b1.size();
        for (int v = 0; v < b2.size(); ++v)
            if (in_image[static_cast<std::size_t>(v)] == kUnset) fresh[static_cast<std::size_t>(v)] = next++;

        bool valid = true;
        Structure amalgam(d.signature, next);
        try {
            for (int rel = 0; rel < b1.relation_count(); ++rel)
                for (const auto& t : b1.tuples(rel)) amalgam.add_tuple(rel, t);
            for (int rel = 0; rel < b2.relation_count(); ++rel)
                for (const auto& t : b2.tuples(rel)) {
                    Tuple it(t.size());
                    bool all_fresh = true;
                    for (std::size_t i = 0; i < t.size(); ++i) {
                        int f = fresh[static_cast<std::size_t>(t[i])];
                        if (f == kUnset) { all_fresh = false; break; }
                        it[i] = f;
                    }
                    if (all_fresh) amalgam.add_tuple(rel, it);
                }
        } catch (const Error&) {
            valid = false;
        }
        if (valid && member_of(d, amalgam)) {
            std::vector<int> g1img(static_cast<std::size_t>(b1.size()));
            for (int v = 0; v < b1.size(); ++v) g1img[static_cast<std::size_t>(v)] = v;
            std::vector<std::vector<int>> g2img(static_cast<std::size_t>(b2.size()));
            for (int v = 0; v < b2.size(); ++v) {
                if (in_image[static_cast<std::size_t>(v)] != kUnset)
                    g2img[static_cast<std::size_t>(v)] = inst.f1.at(in_image[static_cast<std::size_t>(v)]);
                else
                    g2img[static_cast<std::size_t>(v)] = {fresh[static_cast<std::size_t>(v)]};
            }
            if (auto r = finish(amalgam, std::move(g1img), std::move(g2img))) return r;
        }
    }

    // Bounded fallback: pin g2 on the image of f2, search singleton images
    // for the rest (sufficient: the constraints are monotone in image sets).
    for (int n = b1.size(); n <= size_bound; ++n) {
        std::optional<AntiAmalgamResult> found;
        for_each_labelled_structure(d.signature, n, [&](const Structure& cand) {
            if (!member_of(d, cand)) return true;
            bool stop = false;
            for_each_map(b1, cand, MapKind::Emb, true, false, [&](const std::vector<int>& g1img) {
                Multifunction pinned(b2, cand);
                for (int a = 0; a < inst.f2.source.size(); ++a) {
                    std::vector<int> set;
                    for (int w : inst.f1.at(a)) set.push_back(g1img[static_cast<std::size_t>(w)]);
                    pinned.set(inst.f2.at(a), std::move(set));
                }
                auto g2 = extend_multifunction_within(pinned, y);
                if (!g2) return true;
                if (auto r = finish(cand, g1img, g2->img)) {
                    found = std::move(r);
                    stop = true;
                    return false;
                }
                return true;
            });
            return !stop;
        });
        if (found) return found;
    }
    return std::nullopt;
}

/// Class-level AP verdicts with a concrete failed instance on FAIL.
struct ApReport {
    bool pass = true;
    long instances_checked = 0;
    int instance_size_bound = 0;
    int witness_size_bound = 0;
    bool anti = false;
    std::string notion;
    // populated on FAIL:
    std::optional<AmalgamInstance> failed;
    std::optional<AntiAmalgamInstance> failed_anti;
};

namespace detail {

// All total multifunctions A -> B1 of the given cokind (every assignment of
// pairwise-disjoint nonempty target subsets); exhaustive at instance scale.
inline std::vector<Multifunction> enumerate_cokind_multifunctions(const Structure& a, const Structure& b1,
                                                                  CoKind x) {
    std::vector<Multifunction> out;
    if (a.size() == 0) {
        Multifunction m(a, b1);
        out.push_back(m);
        return out;
    }
    std::vector<std::vector<int>> subsets;
    const int nb = b1.size();
    for (int mask = 1; mask < (1 << nb); ++mask) {
        std::vector<int> s;
        for (int v = 0; v < nb; ++v)
            if (mask & (1 << v)) s.push_back(v);
        subsets.push_back(std::move(s));
    }
    Multifunction m(a, b1);
    std::vector<int> used(static_cast<std::size_t>(nb), 0);
    std::function<void(int)> rec = [&](int v) {
        if (v == a.size()) {
            CoClass c = classify_multifunction(m);
            if (has_cokind(c, x)) out.push_back(m);
            return;
        }
        for (const auto& s : subsets) {
            bool clash = false;
            for (int w : s)
                if (used[static_cast<std::size_t>(w)]) clash = true;
            if (clash) continue;
            m.img[static_cast<std::size_t>(v)] = s;
            for (int w : s) used[static_cast<std::size_t>(w)] = 1;
            rec(v + 1);
            for (int w : s) used[static_cast<std::size_t>(w)] = 0;
            m.img[static_cast<std::size_t>(v)].clear();
        }
    };
    rec(0);
    return out;
}

}  // namespace detail

/// Sweeps amalgamation instances with |A|,|B1|,|B2| bounded and verifies the
/// square can always be completed within the witness bound. Deterministic;
/// stops at `probes` instances when the space is larger.
inline ApReport check_ap(const ClassDescriptor& d, ClassLabel notion, bool anti, int instance_size_bound,
                         int witness_size_bound, long probes = 1000000) {
    ApReport rep;
    rep.instance_size_bound = instance_size_bound;
    rep.witness_size_bound = witness_size_bound;
    rep.anti = anti;
    rep.notion = label_name(notion);
    const MapKind x = notion.x;
    const MapKind ybase = base_kind(notion.y);

    for (int na = 0; na <= instance_size_bound && rep.pass; ++na) {
        for (const Structure& a : age_types_of_size(d, na)) {
            if (!rep.pass) break;
            // enumerate B1 types and the f1 maps/multifunctions
            for (int n1 = 0; n1 <= instance_size_bound && rep.pass; ++n1) {
                for (const Structure& b1 : age_types_of_size(d, n1)) {
                    if (!rep.pass) break;
                    std::vector<AmalgamInstance> forward;
                    std::vector<AntiAmalgamInstance> backward;
                    if (!anti) {
                        for_each_map(a, b1, x, true, false, [&](const std::vector<int>& f1img) {
                            AmalgamInstance inst;
                            inst.f1 = PartialMap(a, b1, f1img);
                            forward.push_back(std::move(inst));
                            return true;
                        });
                    } else {
                        for (auto& m : detail::enumerate_cokind_multifunctions(a, b1, co_of(x))) {
                            AntiAmalgamInstance inst;
                            inst.f1 = std::move(m);
                            backward.push_back(std::move(inst));
                        }
                    }
                    if (forward.empty() && backward.empty()) continue;
                    // enumerate labelled B2 containing A as an induced prefix
                    for (int n2 = na; n2 <= instance_size_bound && rep.pass; ++n2) {
                        for_each_labelled_structure(d.signature, n2, [&](const Structure& b2) {
                            std::vector<int> prefix(static_cast<std::size_t>(na));
                            for (int v = 0; v < na; ++v) prefix[static_cast<std::size_t>(v)] = v;
                            if (induced_substructure(b2, prefix) != a) return true;
                            if (!member_of(d, b2)) return true;
                            PartialMap f2(a, b2);
                            for (int v = 0; v < na; ++v) f2.img[static_cast<std::size_t>(v)] = v;
                            if (!anti) {
                                for (const auto& inst0 : forward) {
                                    if (rep.instances_checked >= probes) return false;
                                    ++rep.instances_checked;
                                    AmalgamInstance inst = inst0;
                                    inst.f2 = f2;
                                    if (!xy_amalgamate(inst, x, ybase, d, witness_size_bound)) {
                                        rep.pass = false;
                                        rep.failed = inst;
                                        return false;
                                    }
                                }
                            } else {
                                for (const auto& inst0 : backward) {
                                    if (rep.instances_checked >= probes) return false;
                                    ++rep.instances_checked;
                                    AntiAmalgamInstance inst;
                                    inst.f1 = inst0.f1;
                                    inst.f2 = f2;
                                    if (!anti_xy_amalgamate(inst, co_of(x), co_of(ybase), d,
                                                            witness_size_bound)) {
                                        rep.pass = false;
                                        rep.failed_anti = inst;
                                        return false;
                                    }
                                }
                            }
                            return true;
                        });
                        if (rep.instances_checked >= probes) return rep;
                    }
                }
            }
        }
    }
    return rep;
}

}  // namespace hh
