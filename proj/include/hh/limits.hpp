#pragma once

#include "hh/catalog.hpp"
#include "hh/homogeneity.hpp"

namespace hh {

namespace detail {

inline void require_single_binary(const Signature& sig, const char* what) {
    if (sig.size() != 1 || sig.at(0).arity != 2)
        throw Error(std::string(what) + ": only single binary-relation signatures are supported here");
}

// Does host vertex v satisfy a demand table (out = tuple (fresh, u),
// in = tuple (u, fresh), fresh played by v)?
inline bool vertex_meets_demand(const Structure& host, int v,
                                const std::vector<std::pair<Tri, Tri>>& table) {
    for (std::size_t u = 0; u < table.size(); ++u) {
        const auto& [out, in] = table[u];
        if (out == Tri::Required && !host.has_tuple(0, {v, static_cast<int>(u)})) return false;
        if (out == Tri::Forbidden && host.has_tuple(0, {v, static_cast<int>(u)})) return false;
        if (in == Tri::Required && !host.has_tuple(0, {static_cast<int>(u), v})) return false;
        if (in == Tri::Forbidden && host.has_tuple(0, {static_cast<int>(u), v})) return false;
    }
    return true;
}

// Demand on the new point's image when extending a forward map f : A -> host
// to B = A + b of kind ybase. Returns nullopt when f itself already blocks
// any extension of that kind (a kind conflict).
inline std::optional<OnePointDemand> forward_demand(const Structure& a, const Structure& b,
                                                    const Structure& host, const std::vector<int>& f_img,
                                                    MapKind ybase) {
    require_single_binary(host.signature(), "forward_demand");
    if (b.has_tuple(0, {a.size(), a.size()}))
        throw Error("forward_demand: loop patterns at the new point are not supported");
    MapClass c = classify_map(a, host, f_img);
    if (ybase == MapKind::Mono && !c.is_mono) return std::nullopt;
    if (ybase == MapKind::Emb && !c.is_embedding) return std::nullopt;
    const int bv = a.size();
    const bool graph = host.signature().at(0).symmetric;
    OnePointDemand demand;
    for (int av = 0; av < a.size(); ++av) {
        const int img = f_img[static_cast<std::size_t>(av)];
        const bool fwd = b.has_tuple(0, {bv, av});
        const bool bwd = b.has_tuple(0, {av, bv});
        if (graph) {
            if (fwd) demand.require_edge(img);
            else if (ybase == MapKind::Emb) demand.forbid_edge(img);
        } else {
            VertexDemand e;
            e.vertex = img;
            if (fwd) e.out = Tri::Required;
            else if (ybase == MapKind::Emb) e.out = Tri::Forbidden;
            if (bwd) e.in = Tri::Required;
            else if (ybase == MapKind::Emb) e.in = Tri::Forbidden;
            if (e.out != Tri::Free || e.in != Tri::Free) demand.entries.push_back(e);
        }
    }
    return demand;
}

// Demand for the singleton image of the new point when extending a
// multifunction A -> host of cokind ybar. The antihomomorphism constraints
// are universally quantified over image tuples, so a candidate image set is
// admissible only if each of its singletons is; singleton search decides
// existence.
inline std::optional<OnePointDemand> anti_demand(const Structure& a, const Structure& b,
                                                 const Structure& host,
                                                 const std::vector<std::vector<int>>& mf_img, CoKind ybar) {
    require_single_binary(host.signature(), "anti_demand");
    if (!host.signature().at(0).irreflexive && host.size() > 0 && [&] {
            for (int v = 0; v < host.size(); ++v)
                if (host.has_tuple(0, {v, v})) return true;
            return false;
        }())
        throw Error("anti_demand: hosts with loops are not supported");
    Multifunction f(a, host);
    f.img = mf_img;
    CoClass c = classify_multifunction(f);
    if (ybar == CoKind::AntiMono && !c.is_antimono) return std::nullopt;
    if (ybar == CoKind::InvIso && !c.is_inviso) return std::nullopt;
    if (ybar == CoKind::AntiHom && !c.is_antihom) return std::nullopt;
    const int bv = a.size();
    const bool graph = host.signature().at(0).symmetric;
    OnePointDemand demand;
    for (int av = 0; av < a.size(); ++av) {
        const bool fwd = b.has_tuple(0, {bv, av});
        const bool bwd = b.has_tuple(0, {av, bv});
        for (int img : mf_img[static_cast<std::size_t>(av)]) {
            if (graph) {
                if (!fwd) demand.forbid_edge(img);
                else if (ybar == CoKind::InvIso) demand.require_edge(img);
            } else {
                VertexDemand e;
                e.vertex = img;
                if (!fwd) e.out = Tri::Forbidden;
                else if (ybar == CoKind::InvIso) e.out = Tri::Required;
                if (!bwd) e.in = Tri::Forbidden;
                else if (ybar == CoKind::InvIso) e.in = Tri::Required;
                if (e.out != Tri::Free || e.in != Tri::Free) demand.entries.push_back(e);
            }
        }
    }
    return demand;
}

inline std::optional<int> scan_for_vertex(const Structure& host, const OnePointDemand& demand,
                                          const std::vector<char>& excluded) {
    auto table = demand_table(demand, host.size());
    for (int v = 0; v < host.size(); ++v) {
        if (excluded[static_cast<std::size_t>(v)]) continue;
        if (vertex_meets_demand(host, v, table)) return v;
    }
    return std::nullopt;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// One-point extension property checks against oracles
// ---------------------------------------------------------------------------

struct EpInstance {
    Structure base;       // A
    Structure extension;  // B, one extra point
    bool anti = false;
    std::vector<int> map_img;                   // forward instances
    std::vector<std::vector<int>> mf_img;       // anti instances
    std::string reason;                         // "kind-conflict" | "no-vertex"
};

struct Verdict {
    enum class Status { Positive, Negative, Inconclusive };
    Status status = Status::Positive;
    long probes_run = 0;
    int a_size_bound = 0;
    bool anti = false;
    std::string notion;  // two letters, the (X, Y-base) pair probed
    std::optional<EpInstance> certificate;  // Negative / Inconclusive instance
    // a few positive samples: (instance index, witness vertex or -1=fresh)
    std::vector<std::pair<long, int>> witnesses;
};

inline const char* verdict_name(Verdict::Status s) {
    switch (s) {
        case Verdict::Status::Positive: return "POSITIVE";
        case Verdict::Status::Negative: return "NEGATIVE";
        case Verdict::Status::Inconclusive: return "INCONCLUSIVE";
    }
    return "?";
}

enum class ProbeOutcome { Extends, KindConflict, NoVertex, Unknown };

/// Decides one probe: does the instance extend with a present vertex, a
/// realizable fresh vertex, never, or is it undecidable for this host?
/// witness (when given) receives the present vertex or -1 for "fresh".
inline ProbeOutcome probe_ep_instance(const Oracle& host, MapKind ybase, const EpInstance& inst,
                                      int* witness = nullptr) {
    const Structure& approx = host.approximation();
    std::optional<OnePointDemand> demand;
    std::vector<char> excluded(static_cast<std::size_t>(approx.size()), 0);
    if (!inst.anti) {
        demand = detail::forward_demand(inst.base, inst.extension, approx, inst.map_img, ybase);
        if (ybase != MapKind::Hom)
            for (int img : inst.map_img)
                if (img != kUnset) excluded[static_cast<std::size_t>(img)] = 1;
    } else {
        demand = detail::anti_demand(inst.base, inst.extension, approx, inst.mf_img, co_of(ybase));
        for (const auto& set : inst.mf_img)
            for (int img : set) excluded[static_cast<std::size_t>(img)] = 1;
    }
    if (!demand) return ProbeOutcome::KindConflict;
    if (auto v = detail::scan_for_vertex(approx, *demand, excluded)) {
        if (witness) *witness = *v;
        return ProbeOutcome::Extends;
    }
    switch (host.can_realize(*demand)) {
        case Realizability::Yes:
            if (witness) *witness = -1;
            return ProbeOutcome::Extends;
        case Realizability::No: return ProbeOutcome::NoVertex;
        case Realizability::Unknown: return ProbeOutcome::Unknown;
    }
    return ProbeOutcome::Unknown;
}

struct EpParams {
    int a_size_bound = 3;
    long probes = 2000;
    int anti_image_bound = 2;   // max image-set size of enumerated instances
    int anti_pair_window = 16;  // multi-image sets drawn from this prefix
    long work_cap_factor = 400;
};

/// Probes the one-point (X, Y-base) extension property (or its anti twin)
/// of the host. Deterministic enumeration: base sizes ascending, canonical
/// types, extensions in pattern order, maps lexicographic, image sets by
/// total size. POSITIVE = every probed instance extends (bounded evidence);
/// NEGATIVE carries a replayable certificate.
inline Verdict check_1p_ep(const Oracle& host, MapKind x, MapKind ybase, bool anti, const EpParams& params) {
    Verdict verdict;
    verdict.a_size_bound = params.a_size_bound;
    verdict.anti = anti;
    verdict.notion = std::string{kind_letter(x), kind_letter(ybase)};
    const Structure& approx = host.approximation();
    long work = 0;
    const long work_cap = params.probes * params.work_cap_factor;

    auto probe = [&](const EpInstance& inst) -> bool {  // false = stop enumeration
        ++verdict.probes_run;
        int witness = -2;
        switch (probe_ep_instance(host, ybase, inst, &witness)) {
            case ProbeOutcome::Extends:
                if (verdict.witnesses.size() < 10) verdict.witnesses.emplace_back(verdict.probes_run, witness);
                return verdict.probes_run < params.probes;
            case ProbeOutcome::KindConflict:
                verdict.status = Verdict::Status::Negative;
                verdict.certificate = inst;
                verdict.certificate->reason = "kind-conflict";
                return false;
            case ProbeOutcome::NoVertex:
                verdict.status = Verdict::Status::Negative;
                verdict.certificate = inst;
                verdict.certificate->reason = "no-vertex";
                return false;
            case ProbeOutcome::Unknown:
                verdict.status = Verdict::Status::Inconclusive;
                verdict.certificate = inst;
                verdict.certificate->reason = "unknown-realizability";
                return false;
        }
        return false;
    };

    for (int na = 0; na <= params.a_size_bound; ++na) {
        for (const Structure& a : age_types_of_size(host.descriptor(), na)) {
            for (const auto& ext : one_point_extensions(host.descriptor(), a)) {
                bool keep_going = true;
                if (!anti) {
                    for_each_map(a, approx, x, true, false, [&](const std::vector<int>& f_img) {
                        if (++work > work_cap) return false;
                        EpInstance inst;
                        inst.base = a;
                        inst.extension = ext.extension;
                        inst.map_img = f_img;
                        keep_going = probe(inst);
                        return keep_going;
                    });
                } else {
                    // image-set assignments: sizes by total, then lexicographic
                    const int cap = x == MapKind::Hom ? params.anti_image_bound : 1;
                    const int window = std::min(approx.size(), params.anti_pair_window);
                    std::vector<std::vector<int>> img(static_cast<std::size_t>(na));
                    std::vector<char> used(static_cast<std::size_t>(approx.size()), 0);
                    std::function<bool(int, int)> rec = [&](int v, int budget) -> bool {
                        if (++work > work_cap) return false;
                        if (v == na) {
                            if (budget != 0) return true;  // exact total size per round
                            Multifunction m(a, approx);
                            m.img = img;
                            if (!has_cokind(classify_multifunction(m), co_of(x))) return true;
                            EpInstance inst;
                            inst.base = a;
                            inst.extension = ext.extension;
                            inst.anti = true;
                            inst.mf_img = img;
                            keep_going = probe(inst);
                            return keep_going;
                        }
                        const int remaining = na - v - 1;
                        for (int size = 1; size <= cap && size <= budget - remaining; ++size) {
                            const int limit = size == 1 ? approx.size() : window;
                            std::vector<int> set;
                            std::function<bool(int)> pick = [&](int from) -> bool {
                                if (static_cast<int>(set.size()) == size) {
                                    img[static_cast<std::size_t>(v)] = set;
                                    for (int w : set) used[static_cast<std::size_t>(w)] = 1;
                                    bool cont = rec(v + 1, budget - size);
                                    for (int w : set) used[static_cast<std::size_t>(w)] = 0;
                                    img[static_cast<std::size_t>(v)].clear();
                                    return cont;
                                }
                                for (int w = from; w < limit; ++w) {
                                    if (used[static_cast<std::size_t>(w)]) continue;
                                    set.push_back(w);
                                    if (!pick(w + 1)) return false;
                                    set.pop_back();
                                }
                                return true;
                            };
                            if (!pick(0)) return false;
                        }
                        return true;
                    };
                    for (int total = na; total <= na * cap && keep_going; ++total)
                        if (!rec(0, total)) break;
                }
                if (!keep_going || verdict.probes_run >= params.probes || work > work_cap)
                    return verdict;
            }
        }
    }
    return verdict;
}

/// Re-runs a NEGATIVE/INCONCLUSIVE certificate against the host and reports
/// whether the refusal reproduces.
inline bool replay_certificate(const Oracle& host, MapKind ybase, const EpInstance& inst) {
    ProbeOutcome out = probe_ep_instance(host, ybase, inst);
    return out == ProbeOutcome::KindConflict || out == ProbeOutcome::NoVertex;
}

/// Iterated one-point extension inside a fixed finite host: searches a chain
/// of one-point extensions of f through the new points of B (all witness
/// choices, backtracking). Agrees with the direct multi-point search for
/// implication notions.
inline bool one_point_iterate(const Structure& host, const Structure& b, const std::vector<int>& f_img,
                              MapKind ybase) {
    std::vector<int> todo;
    for (int v = 0; v < b.size(); ++v)
        if (f_img[static_cast<std::size_t>(v)] == kUnset) todo.push_back(v);
    std::function<bool(std::vector<int>&, std::size_t)> rec = [&](std::vector<int>& cur, std::size_t i) -> bool {
        if (i == todo.size()) return true;
        const int bv = todo[i];
        for (int w = 0; w < host.size(); ++w) {
            cur[static_cast<std::size_t>(bv)] = w;
            MapClass c = classify_map(b, host, cur);
            bool ok = false;
            switch (ybase) {
                case MapKind::Hom: ok = c.is_hom; break;
                case MapKind::Mono: ok = c.is_mono; break;
                case MapKind::Emb: ok = c.is_embedding; break;
            }
            if (ok && rec(cur, i + 1)) return true;
            cur[static_cast<std::size_t>(bv)] = kUnset;
        }
        return false;
    };
    std::vector<int> cur = f_img;
    return rec(cur, 0);
}

// ---------------------------------------------------------------------------
// Staged limit construction
// ---------------------------------------------------------------------------

struct LimitTask {
    int created_stage = -1;
    bool anti = false;
    Structure base;       // A (or P)
    Structure extension;  // B (or Q); A sits on the first |A| indices
    std::vector<int> f_img;                // forward: A -> M_created
    std::vector<std::vector<int>> mf_img;  // anti: P -> M_created
    int processed_stage = -1;
    std::vector<int> g_img;                // recorded forward extension B -> M
    std::vector<std::vector<int>> g_mf;    // recorded anti extension Q -> M
};

struct TaskLedger {
    std::vector<LimitTask> forward;
    std::vector<LimitTask> backward;
    std::size_t next_forward = 0;
    std::size_t next_backward = 0;

    long processed_count() const {
        long c = 0;
        for (const auto& t : forward) c += t.processed_stage >= 0;
        for (const auto& t : backward) c += t.processed_stage >= 0;
        return c;
    }
    long backlog() const {
        return static_cast<long>(forward.size() + backward.size()) - processed_count();
    }
};

struct LimitBuild {
    Structure result;
    TaskLedger ledger;
    ClassLabel notion;
    int stages = 0;
    std::uint64_t seed = 0;
    std::vector<std::string> stage_log;
};

namespace detail {

// Deterministic task source for build_limit. Yields at most one task per
// stage: first two-point bundles realizing every <=2-subset adjacency
// pattern over the first 6 vertices (what the one-point properties demand of
// early vertices), then a round-robin of one-point map tasks.
class TaskGenerator {
  public:
    explicit TaskGenerator(const ClassDescriptor& d) : d_(d), graph_(d.signature.is_graph_like()) {
        if (graph_) {
            for (int i = 0; i + 1 < 6; i += 2) bundles_.push_back({{i}, {i + 1}});
            std::vector<std::vector<int>> pairs;
            for (int i = 0; i < 6; ++i)
                for (int j = i + 1; j < 6; ++j) pairs.push_back({i, j});
            for (std::size_t i = 0; i < pairs.size(); i += 2) {
                if (i + 1 < pairs.size()) bundles_.push_back({pairs[i], pairs[i + 1]});
                else bundles_.push_back({pairs[i], {}});
            }
        }
    }

    std::optional<LimitTask> next(const Structure& m, int stage) {
        if (first_) {
            first_ = false;
            LimitTask t;
            t.created_stage = stage;
            t.base = Structure(d_.signature, 0);
            t.extension = Structure(d_.signature, graph_ ? 2 : 1);
            t.f_img = {};
            if (member_of(d_, t.extension)) return t;
        }
        while (bundle_pos_ < bundles_.size()) {
            const auto& [u1, u2] = bundles_[bundle_pos_];
            int needed = 0;
            for (int v : u1) needed = std::max(needed, v + 1);
            for (int v : u2) needed = std::max(needed, v + 1);
            if (needed > m.size()) return std::nullopt;  // wait for the vertices
            ++bundle_pos_;
            if (auto t = bundle_task(m, stage, u1, u2)) return t;
        }
        return round_robin(m, stage);
    }

  private:
    std::optional<LimitTask> bundle_task(const Structure& m, int stage, const std::vector<int>& u1,
                                         const std::vector<int>& u2) {
        std::vector<int> s = u1;
        s.insert(s.end(), u2.begin(), u2.end());
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        Structure a = induced_substructure(m, s);
        if (!member_of(d_, a)) return std::nullopt;
        const int extra = u2.empty() ? 1 : 2;
        Structure b(d_.signature, a.size() + extra);
        for (int rel = 0; rel < a.relation_count(); ++rel)
            for (const auto& t : a.tuples(rel)) b.add_tuple(rel, t);
        auto idx = [&](int v) {
            return static_cast<int>(std::find(s.begin(), s.end(), v) - s.begin());
        };
        for (int v : u1) b.add_tuple(0, {a.size(), idx(v)});
        if (!u2.empty())
            for (int v : u2) b.add_tuple(0, {a.size() + 1, idx(v)});
        if (!member_of(d_, b)) return std::nullopt;
        LimitTask t;
        t.created_stage = stage;
        t.base = a;
        t.extension = b;
        t.f_img.resize(s.size());
        for (std::size_t i = 0; i < s.size(); ++i) t.f_img[i] = s[i];  // identity embedding
        return t;
    }

    std::optional<LimitTask> round_robin(const Structure& m, int stage) {
        if (m.size() == 0) return std::nullopt;
        const int v = rr_counter_ % m.size();
        const int pattern = (rr_counter_ / m.size()) % (graph_ ? 2 : 3);
        ++rr_counter_;
        Structure a = induced_substructure(m, {v});
        Structure b(d_.signature, 2);
        if (graph_) {
            if (pattern == 1) b.add_tuple(0, {1, 0});
        } else {
            if (pattern == 1) b.add_tuple(0, {1, 0});
            if (pattern == 2) b.add_tuple(0, {0, 1});
        }
        if (!member_of(d_, b)) return std::nullopt;
        LimitTask t;
        t.created_stage = stage;
        t.base = a;
        t.extension = b;
        t.f_img = {v};
        return t;
    }

    const ClassDescriptor& d_;
    bool graph_;
    bool first_ = true;
    std::vector<std::pair<std::vector<int>, std::vector<int>>> bundles_;
    std::size_t bundle_pos_ = 0;
    long rr_counter_ = 0;
};

// Anti-task source: converse-identity multifunctions on one vertex with the
// extension point's relation pattern cycling.
class AntiTaskGenerator {
  public:
    AntiTaskGenerator(const ClassDescriptor& d) : d_(d), graph_(d.signature.is_graph_like()) {}

    std::optional<LimitTask> next(const Structure& m, int stage) {
        if (first_) {
            first_ = false;
            LimitTask t;
            t.created_stage = stage;
            t.anti = true;
            t.base = Structure(d_.signature, 0);
            t.extension = Structure(d_.signature, 1);
            if (member_of(d_, t.extension)) return t;
        }
        if (m.size() == 0) return std::nullopt;
        const int v = counter_ % m.size();
        const int pattern = (counter_ / m.size()) % (graph_ ? 2 : 3);
        ++counter_;
        LimitTask t;
        t.created_stage = stage;
        t.anti = true;
        t.base = induced_substructure(m, {v});
        Structure b(d_.signature, 2);
        if (pattern == 1) b.add_tuple(0, {1, 0});
        if (!graph_ && pattern == 2) b.add_tuple(0, {0, 1});
        if (!member_of(d_, b)) return std::nullopt;
        t.extension = b;
        t.mf_img = {{v}};
        return t;
    }

  private:
    const ClassDescriptor& d_;
    bool graph_;
    bool first_ = true;
    long counter_ = 0;
};

// Free one-step extension of the approximation by a forward task: B's new
// points become fresh vertices, related to the image of A per B's tuples.
// Returns the extension map B -> M' or nullopt when the grown structure
// leaves the class or the extension misses the kind.
inline std::optional<std::vector<int>> apply_forward_task(Structure& m, const ClassDescriptor& d,
                                                          const LimitTask& task, MapKind ybase) {
    const Structure& a = task.base;
    const Structure& b = task.extension;
    const int fresh = b.size() - a.size();
    Structure grown(d.signature, m.size() + fresh);
    for (int rel = 0; rel < m.relation_count(); ++rel)
        for (const auto& t : m.tuples(rel)) grown.add_tuple(rel, t);
    std::vector<int> g(static_cast<std::size_t>(b.size()), kUnset);
    for (int v = 0; v < a.size(); ++v) g[static_cast<std::size_t>(v)] = task.f_img[static_cast<std::size_t>(v)];
    for (int v = a.size(); v < b.size(); ++v) g[static_cast<std::size_t>(v)] = m.size() + (v - a.size());
    try {
        for (int rel = 0; rel < b.relation_count(); ++rel)
            for (const auto& t : b.tuples(rel)) {
                Tuple it(t.size());
                bool touches_fresh = false;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    it[i] = g[static_cast<std::size_t>(t[i])];
                    if (t[i] >= a.size()) touches_fresh = true;
                }
                if (touches_fresh) grown.add_tuple(rel, it);
            }
    } catch (const Error&) {
        return std::nullopt;
    }
    if (!member_of(d, grown)) return std::nullopt;
    if (!has_kind(classify_map(b, grown, g), ybase)) return std::nullopt;
    m = std::move(grown);
    return g;
}

// Free anti step: Q's new points become fresh vertices with Q's internal
// tuples and no cross relations.
inline std::optional<std::vector<std::vector<int>>> apply_anti_task(Structure& m, const ClassDescriptor& d,
                                                                    const LimitTask& task, CoKind ybar) {
    const Structure& p = task.base;
    const Structure& q = task.extension;
    const int fresh = q.size() - p.size();
    Structure grown(d.signature, m.size() + fresh);
    for (int rel = 0; rel < m.relation_count(); ++rel)
        for (const auto& t : m.tuples(rel)) grown.add_tuple(rel, t);
    try {
        for (int rel = 0; rel < q.relation_count(); ++rel)
            for (const auto& t : q.tuples(rel)) {
                Tuple it(t.size());
                bool all_fresh = true;
                for (std::size_t i = 0; i < t.size(); ++i) {
                    if (t[i] < p.size()) { all_fresh = false; break; }
                    it[i] = m.size() + (t[i] - p.size());
                }
                if (all_fresh) grown.add_tuple(rel, it);
            }
    } catch (const Error&) {
        return std::nullopt;
    }
    if (!member_of(d, grown)) return std::nullopt;
    std::vector<std::vector<int>> g(static_cast<std::size_t>(q.size()));
    for (int v = 0; v < p.size(); ++v) g[static_cast<std::size_t>(v)] = task.mf_img[static_cast<std::size_t>(v)];
    for (int v = p.size(); v < q.size(); ++v)
        g[static_cast<std::size_t>(v)] = {m.size() + (v - p.size())};
    Multifunction gm(q, grown);
    gm.img = g;
    if (!has_cokind(classify_multifunction(gm), ybar)) return std::nullopt;
    m = std::move(grown);
    return g;
}

}  // namespace detail

/// Builds a staged approximation of the generic structure for the notion:
/// forth-only notions alternate joint-embedding stages (even) with
/// amalgamation stages (odd); back-and-forth notions cycle joint embedding,
/// amalgamation and anti-amalgamation mod 3. Tasks are queued FIFO (at most
/// one new task per queue per stage), so every processed task satisfies
/// processed_stage >= created_stage and any fixed prefix of the queue is
/// eventually drained.
inline LimitBuild build_limit(const ClassDescriptor& d, ClassLabel notion, int stages, std::uint64_t seed) {
    if (is_no_implication(notion))
        throw Error("build_limit: notion " + label_name(notion) + " resists the inductive construction (no-implication family)");
    if (stages < 0) throw Error("build_limit: stages must be nonnegative");
    const bool back = is_back(notion);
    const MapKind ybase = base_kind(notion.y);

    LimitBuild out;
    out.notion = notion;
    out.stages = stages;
    out.seed = seed;

    AgeTypeStream types(d);
    Structure m = types.next();  // first isomorphism type (the empty structure)
    detail::TaskGenerator forward_gen(d);
    detail::AntiTaskGenerator anti_gen(d);

    for (int stage = 0; stage < stages; ++stage) {
        // enqueue at most one task per queue per stage
        if (auto t = forward_gen.next(m, stage)) out.ledger.forward.push_back(std::move(*t));
        if (back)
            if (auto t = anti_gen.next(m, stage)) out.ledger.backward.push_back(std::move(*t));

        const int phase = back ? stage % 3 : stage % 2;
        if (phase == 0) {
            const Structure& t = types.next();
            m = disjoint_union(d.signature, {m, t});
            if (!member_of(d, m))
                throw Error("build_limit: joint embedding left the class at stage " + std::to_string(stage));
            out.stage_log.push_back("stage " + std::to_string(stage) + ": jep merge of a " +
                                    std::to_string(t.size()) + "-vertex type");
        } else if (phase == 1) {
            if (out.ledger.next_forward < out.ledger.forward.size()) {
                LimitTask& task = out.ledger.forward[out.ledger.next_forward++];
                auto g = detail::apply_forward_task(m, d, task, ybase);
                if (!g)
                    throw Error("build_limit: amalgamation failed at stage " + std::to_string(stage) +
                                " (task created at stage " + std::to_string(task.created_stage) + ")");
                task.processed_stage = stage;
                task.g_img = *g;
                out.stage_log.push_back("stage " + std::to_string(stage) + ": amalgamation task #" +
                                        std::to_string(out.ledger.next_forward - 1));
            } else {
                out.stage_log.push_back("stage " + std::to_string(stage) + ": amalgamation queue empty");
            }
        } else {
            if (out.ledger.next_backward < out.ledger.backward.size()) {
                LimitTask& task = out.ledger.backward[out.ledger.next_backward++];
                auto g = detail::apply_anti_task(m, d, task, co_of(ybase));
                if (!g)
                    throw Error("build_limit: anti-amalgamation failed at stage " + std::to_string(stage) +
                                " (task created at stage " + std::to_string(task.created_stage) + ")");
                task.processed_stage = stage;
                task.g_mf = *g;
                out.stage_log.push_back("stage " + std::to_string(stage) + ": anti-amalgamation task #" +
                                        std::to_string(out.ledger.next_backward - 1));
            } else {
                out.stage_log.push_back("stage " + std::to_string(stage) + ": anti queue empty");
            }
        }
    }
    out.result = std::move(m);
    return out;
}

struct AuditReport {
    bool ok = true;
    long verified = 0;
    long backlog = 0;
    std::string first_failure;
};

/// Re-verifies every processed task's recorded extension inside the final
/// structure: agreement with the task's map, the required kind/cokind, and
/// the scheduling contract. Kinds that only preserve (hom, mono, antihom)
/// persist under later monotone growth, so verification against the final
/// structure is sound.
inline AuditReport audit_limit(const Structure& final_m, const TaskLedger& ledger, ClassLabel notion) {
    AuditReport rep;
    const MapKind ybase = base_kind(notion.y);
    auto fail = [&](const std::string& why) {
        if (rep.ok) rep.first_failure = why;
        rep.ok = false;
    };
    for (std::size_t i = 0; i < ledger.forward.size(); ++i) {
        const LimitTask& t = ledger.forward[i];
        if (t.processed_stage < 0) continue;
        if (t.processed_stage < t.created_stage) fail("forward task " + std::to_string(i) + ": processed before created");
        std::vector<int> g = t.g_img;
        bool agree = g.size() == static_cast<std::size_t>(t.extension.size());
        for (int v = 0; v < t.base.size() && agree; ++v)
            if (g[static_cast<std::size_t>(v)] != t.f_img[static_cast<std::size_t>(v)]) agree = false;
        if (!agree) {
            fail("forward task " + std::to_string(i) + ": extension does not agree with the task map");
            continue;
        }
        MapClass c = classify_map(t.extension, final_m, g);
        if (!c.total || !has_kind(c, ybase))
            fail("forward task " + std::to_string(i) + ": extension lost the required kind");
        ++rep.verified;
    }
    for (std::size_t i = 0; i < ledger.backward.size(); ++i) {
        const LimitTask& t = ledger.backward[i];
        if (t.processed_stage < 0) continue;
        if (t.processed_stage < t.created_stage) fail("anti task " + std::to_string(i) + ": processed before created");
        bool agree = t.g_mf.size() == static_cast<std::size_t>(t.extension.size());
        for (int v = 0; v < t.base.size() && agree; ++v)
            if (t.g_mf[static_cast<std::size_t>(v)] != t.mf_img[static_cast<std::size_t>(v)]) agree = false;
        if (!agree) {
            fail("anti task " + std::to_string(i) + ": extension does not agree with the task multifunction");
            continue;
        }
        Multifunction g(t.extension, final_m);
        g.img = t.g_mf;
        CoClass c = classify_multifunction(g);
        if (!g.total() || !has_cokind(c, co_of(ybase)))
            fail("anti task " + std::to_string(i) + ": extension lost the required cokind");
        ++rep.verified;
    }
    rep.backlog = ledger.backlog();
    return rep;
}

// ---------------------------------------------------------------------------
// Endomorphism growth and equivalence maps
// ---------------------------------------------------------------------------

struct GrowResult {
    std::vector<int> img;  // over the final approximation of the host
    int steps_done = 0;
    bool total = false;
    bool surjective = false;
    std::optional<std::string> failure;
    Structure final_host;
};

namespace detail {

// One forth step into `target`: find or realize an image vertex for
// source-vertex sv under map img (source = `source` structure).
inline std::optional<int> forth_witness(const Structure& source, Oracle* target_oracle,
                                        const Structure& target, std::vector<int>& img, int sv,
                                        MapKind ybase) {
    require_single_binary(source.signature(), "forth step");
    const bool graph = source.signature().at(0).symmetric;
    OnePointDemand demand;
    for (int u = 0; u < source.size(); ++u) {
        int iu = u < static_cast<int>(img.size()) ? img[static_cast<std::size_t>(u)] : kUnset;
        if (iu == kUnset || u == sv) continue;
        const bool fwd = source.has_tuple(0, {sv, u});
        const bool bwd = source.has_tuple(0, {u, sv});
        if (graph) {
            if (fwd) demand.require_edge(iu);
            else if (ybase == MapKind::Emb) demand.forbid_edge(iu);
        } else {
            VertexDemand e;
            e.vertex = iu;
            if (fwd) e.out = Tri::Required;
            else if (ybase == MapKind::Emb) e.out = Tri::Forbidden;
            if (bwd) e.in = Tri::Required;
            else if (ybase == MapKind::Emb) e.in = Tri::Forbidden;
            if (e.out != Tri::Free || e.in != Tri::Free) demand.entries.push_back(e);
        }
    }
    std::vector<char> excluded(static_cast<std::size_t>(target.size()), 0);
    if (ybase != MapKind::Hom)
        for (int iu : img)
            if (iu != kUnset) excluded[static_cast<std::size_t>(iu)] = 1;
    if (auto v = scan_for_vertex(target, demand, excluded)) return v;
    if (target_oracle && target_oracle->growable()) return target_oracle->realize(demand);
    return std::nullopt;
}

// One back step: find or realize a preimage vertex in `source` for the
// target vertex tv, keeping img of kind ybase (equivalently extending the
// converse multifunction by its cokind).
inline std::optional<int> back_witness(Oracle* source_oracle, const Structure& source,
                                       const Structure& target, std::vector<int>& img, int tv,
                                       MapKind ybase) {
    require_single_binary(source.signature(), "back step");
    const bool graph = source.signature().at(0).symmetric;
    OnePointDemand demand;
    for (int u = 0; u < source.size(); ++u) {
        int iu = u < static_cast<int>(img.size()) ? img[static_cast<std::size_t>(u)] : kUnset;
        if (iu == kUnset) continue;
        // the fresh preimage's relations to u must push forward into (tv, iu)
        const bool fwd_ok = target.has_tuple(0, {tv, iu});
        const bool bwd_ok = target.has_tuple(0, {iu, tv});
        if (graph) {
            if (!fwd_ok) demand.forbid_edge(u);
            else if (ybase == MapKind::Emb) demand.require_edge(u);
        } else {
            VertexDemand e;
            e.vertex = u;
            if (!fwd_ok) e.out = Tri::Forbidden;
            else if (ybase == MapKind::Emb) e.out = Tri::Required;
            if (!bwd_ok) e.in = Tri::Forbidden;
            else if (ybase == MapKind::Emb) e.in = Tri::Required;
            if (e.out != Tri::Free || e.in != Tri::Free) demand.entries.push_back(e);
        }
    }
    std::vector<char> excluded(static_cast<std::size_t>(source.size()), 0);
    for (std::size_t u = 0; u < img.size(); ++u)
        if (img[u] != kUnset) excluded[u] = 1;  // preimages must be new vertices
    if (auto v = scan_for_vertex(source, demand, excluded)) return v;
    if (source_oracle && source_oracle->growable()) return source_oracle->realize(demand);
    return std::nullopt;
}

}  // namespace detail

/// Grows a partial self-map of the host toward an endomorphism of the
/// notion's type: forth steps adjoin the least vertex missing from the
/// domain; for back-and-forth notions, odd steps adjoin the least vertex
/// missing from the image by extending the converse multifunction.
inline GrowResult grow_endomorphism(Oracle& host, const std::vector<int>& start, ClassLabel notion,
                                    int steps) {
    if (is_no_implication(notion))
        throw Error("grow_endomorphism: notion " + label_name(notion) + " is in the no-implication family");
    const MapKind ybase = base_kind(notion.y);
    const bool back = is_back(notion);
    GrowResult res;
    res.img = start;

    for (int k = 0; k < steps; ++k) {
        const Structure& approx = host.approximation();
        res.img.resize(static_cast<std::size_t>(approx.size()), kUnset);
        const bool do_back = back && (k % 2 == 1);
        if (!do_back) {
            int sv = -1;
            for (int v = 0; v < approx.size(); ++v)
                if (res.img[static_cast<std::size_t>(v)] == kUnset) { sv = v; break; }
            if (sv < 0) { ++res.steps_done; continue; }
            auto w = detail::forth_witness(approx, &host, host.approximation(), res.img, sv, ybase);
            if (!w) {
                res.failure = "forth step " + std::to_string(k) + ": no image for vertex " + std::to_string(sv);
                break;
            }
            res.img.resize(static_cast<std::size_t>(host.approximation().size()), kUnset);
            res.img[static_cast<std::size_t>(sv)] = *w;
        } else {
            std::vector<char> covered(static_cast<std::size_t>(approx.size()), 0);
            for (int iu : res.img)
                if (iu != kUnset) covered[static_cast<std::size_t>(iu)] = 1;
            int tv = -1;
            for (int v = 0; v < approx.size(); ++v)
                if (!covered[static_cast<std::size_t>(v)]) { tv = v; break; }
            if (tv < 0) { ++res.steps_done; continue; }
            auto u = detail::back_witness(&host, host.approximation(), host.approximation(), res.img, tv, ybase);
            if (!u) {
                res.failure = "back step " + std::to_string(k) + ": no preimage for vertex " + std::to_string(tv);
                break;
            }
            res.img.resize(static_cast<std::size_t>(host.approximation().size()), kUnset);
            res.img[static_cast<std::size_t>(*u)] = tv;
        }
        ++res.steps_done;
    }
    res.final_host = host.approximation();
    res.img.resize(static_cast<std::size_t>(res.final_host.size()), kUnset);
    MapClass c = classify_map(res.final_host, res.final_host, res.img);
    res.total = c.total;
    res.surjective = c.is_surjective;
    return res;
}

/// Ledger text format: a header naming the notion, stages, seed and the
/// signature, then one record per task:
///   task F|A <created>|<processed>|<base>|<extension>|<map>|<extension-map>
/// with the compact structure/assignment encodings.
inline std::string serialize_ledger(const LimitBuild& build, const Signature& sig) {
    std::ostringstream out;
    out << "ledger " << label_name(build.notion) << ' ' << build.stages << ' ' << build.seed << "\n";
    out << "signature " << signature_decl(sig) << "\n";
    auto emit = [&](const LimitTask& t, char tag) {
        out << "task " << tag << ' ' << t.created_stage << '|' << t.processed_stage << '|'
            << compact_structure(t.base) << '|' << compact_structure(t.extension) << '|';
        if (tag == 'F') {
            out << compact_assignment(t.f_img) << '|' << compact_assignment(t.g_img);
        } else {
            out << compact_image_sets(t.mf_img) << '|' << compact_image_sets(t.g_mf);
        }
        out << "\n";
    };
    for (const auto& t : build.ledger.forward) emit(t, 'F');
    for (const auto& t : build.ledger.backward) emit(t, 'A');
    return out.str();
}

struct ParsedLedger {
    ClassLabel notion{MapKind::Hom, EndoKind::H};
    int stages = 0;
    std::uint64_t seed = 0;
    TaskLedger ledger;
};

inline ParsedLedger parse_ledger(std::istream& in) {
    ParsedLedger out;
    std::string line;
    int line_no = 0;
    std::optional<Signature> sig;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        auto toks = detail::tokenize(detail::strip_comment(line));
        if (toks.empty()) continue;
        if (!have_header) {
            if (toks[0] != "ledger" || toks.size() != 4)
                throw Error("line " + std::to_string(line_no) + ": expected 'ledger <notion> <stages> <seed>'");
            out.notion = parse_label(toks[1]);
            out.stages = detail::parse_int(toks[2], line_no, "stage count");
            out.seed = std::stoull(toks[3]);
            have_header = true;
            continue;
        }
        if (!sig) {
            if (toks[0] != "signature")
                throw Error("line " + std::to_string(line_no) + ": expected a signature line");
            sig = detail::parse_signature_tokens(toks, 1, line_no);
            continue;
        }
        if (toks[0] != "task" || toks.size() < 3)
            throw Error("line " + std::to_string(line_no) + ": expected a task record");
        const bool anti = toks[1] == "A";
        // re-join the remainder of the line after "task X "
        auto rest_pos = line.find(toks[1]);
        std::string rest = line.substr(rest_pos + toks[1].size() + 1);
        auto fields = detail::split(rest, '|');
        if (fields.size() != 6)
            throw Error("line " + std::to_string(line_no) + ": task record needs 6 fields, got " +
                        std::to_string(fields.size()));
        LimitTask t;
        t.anti = anti;
        t.created_stage = detail::parse_int(detail::tokenize(fields[0])[0], line_no, "created stage");
        t.processed_stage = detail::parse_int(detail::tokenize(fields[1])[0], line_no, "processed stage");
        t.base = parse_compact_structure(*sig, fields[2]);
        t.extension = parse_compact_structure(*sig, fields[3]);
        if (!anti) {
            t.f_img = parse_compact_assignment(t.base.size(), fields[4]);
            t.f_img.resize(static_cast<std::size_t>(t.base.size()), kUnset);
            if (t.processed_stage >= 0) t.g_img = parse_compact_assignment(t.extension.size(), fields[5]);
            out.ledger.forward.push_back(std::move(t));
        } else {
            t.mf_img = parse_compact_image_sets(t.base.size(), fields[4]);
            if (t.processed_stage >= 0) t.g_mf = parse_compact_image_sets(t.extension.size(), fields[5]);
            out.ledger.backward.push_back(std::move(t));
        }
    }
    if (!have_header) throw Error("empty ledger file");
    return out;
}

struct EquivResult {
    std::vector<int> img;  // hostA approx -> hostB approx
    int steps_done = 0;
    std::optional<std::string> failure;
    Structure final_a, final_b;
    std::vector<std::string> log;
};

/// Grows an equivalence map between two hosts sharing an age: forth steps
/// extend the domain through hostB's one-point property, back steps (for
/// back-and-forth notions) pull preimages from hostA for hostB's earliest
/// uncovered vertices.
inline EquivResult build_equivalence_map(Oracle& host_a, Oracle& host_b, ClassLabel notion, int steps) {
    if (is_no_implication(notion))
        throw Error("build_equivalence_map: notion " + label_name(notion) + " is in the no-implication family");
    if (host_a.descriptor().signature != host_b.descriptor().signature ||
        host_a.descriptor().forbidden != host_b.descriptor().forbidden)
        throw Error("build_equivalence_map: hosts declare different age descriptors");
    const MapKind ybase = base_kind(notion.y);
    const bool back = is_back(notion);
    EquivResult res;

    for (int k = 0; k < steps; ++k) {
        res.img.resize(static_cast<std::size_t>(host_a.approximation().size()), kUnset);
        const bool do_back = back && (k % 2 == 1);
        if (!do_back) {
            int sv = -1;
            for (int v = 0; v < host_a.approximation().size(); ++v)
                if (res.img[static_cast<std::size_t>(v)] == kUnset) { sv = v; break; }
            if (sv < 0) {
                // domain exhausted: ask hostA for a fresh unconstrained vertex
                OnePointDemand none;
                auto fresh = host_a.realize(none);
                if (!fresh) { ++res.steps_done; continue; }
                sv = *fresh;
                res.img.resize(static_cast<std::size_t>(host_a.approximation().size()), kUnset);
            }
            auto w = detail::forth_witness(host_a.approximation(), &host_b, host_b.approximation(), res.img,
                                           sv, ybase);
            if (!w) {
                res.failure = "forth step " + std::to_string(k) + ": stuck on vertex " + std::to_string(sv);
                break;
            }
            res.img[static_cast<std::size_t>(sv)] = *w;
            res.log.push_back("step " + std::to_string(k) + ": " + std::to_string(sv) + " -> " + std::to_string(*w));
        } else {
            std::vector<char> covered(static_cast<std::size_t>(host_b.approximation().size()), 0);
            for (int iu : res.img)
                if (iu != kUnset) covered[static_cast<std::size_t>(iu)] = 1;
            int tv = -1;
            for (int v = 0; v < host_b.approximation().size(); ++v)
                if (!covered[static_cast<std::size_t>(v)]) { tv = v; break; }
            if (tv < 0) { ++res.steps_done; continue; }
            auto u = detail::back_witness(&host_a, host_a.approximation(), host_b.approximation(), res.img,
                                          tv, ybase);
            if (!u) {
                res.failure = "back step " + std::to_string(k) + ": no preimage for " + std::to_string(tv);
                break;
            }
            res.img.resize(static_cast<std::size_t>(host_a.approximation().size()), kUnset);
            res.img[static_cast<std::size_t>(*u)] = tv;
            res.log.push_back("step " + std::to_string(k) + ": " + std::to_string(*u) + " <- " + std::to_string(tv));
        }
        ++res.steps_done;
    }
    res.final_a = host_a.approximation();
    res.final_b = host_b.approximation();
    res.img.resize(static_cast<std::size_t>(res.final_a.size()), kUnset);
    return res;
}

}  // namespace hh
