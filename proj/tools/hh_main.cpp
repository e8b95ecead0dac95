// Command-line workbench for finite relational structures: classification
// against the eighteen homogeneity notions, map enumeration, amalgamation,
// extension-property probes, staged generic-structure builds and catalog
// oracle queries.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "hh/hh.hpp"

using json = nlohmann::ordered_json;
using namespace hh;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNegative = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInconclusive = 3;

ClassDescriptor named_class(const std::string& spec) {
    auto colon = spec.find(':');
    std::string base = colon == std::string::npos ? spec : spec.substr(0, colon);
    std::vector<int> params;
    if (colon != std::string::npos)
        for (const auto& p : detail::split(spec.substr(colon + 1), ','))
            params.push_back(detail::parse_catalog_param(p));
    auto want = [&](std::size_t k) {
        if (params.size() != k) throw Error("class '" + base + "' expects " + std::to_string(k) + " parameter(s)");
    };
    if (base == "graphs") { want(0); return descriptor_all_graphs(); }
    if (base == "digraphs") { want(0); return descriptor_all_digraphs(); }
    if (base == "henson") { want(1); return descriptor_henson(params[0]); }
    if (base == "henson_complement") { want(1); return descriptor_henson_complement(params[0]); }
    if (base == "no2cycles") { want(0); return descriptor_no_2cycles(); }
    if (base == "tournaments") { want(0); return descriptor_tournaments(); }
    if (base == "linear_orders") { want(0); return descriptor_linear_orders(); }
    if (base == "union_of_completes") { want(2); return descriptor_union_of_completes(params[0], params[1]); }
    if (base == "complement_union") { want(2); return descriptor_complement_union(params[0], params[1]); }
    if (base == "union_of_tournaments") { want(0); return descriptor_union_of_tournaments(); }
    throw Error("unknown class '" + base +
                "' (known: graphs, digraphs, henson:n, henson_complement:n, no2cycles, tournaments, "
                "linear_orders, union_of_completes:m,s, complement_union:m,s, union_of_tournaments)");
}

std::string label_set_text(const std::vector<ClassLabel>& labels) {
    std::string out = "{";
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (i) out += ", ";
        out += label_name(labels[i]);
    }
    return out + "}";
}

OnePointDemand parse_query(const std::string& text, bool graph) {
    OnePointDemand demand;
    for (const auto& tok : detail::tokenize(text)) {
        auto colon = tok.find(':');
        if (colon == std::string::npos) throw Error("query item '" + tok + "': expected kind:v1,v2,...");
        std::string kind = tok.substr(0, colon);
        for (const auto& vs : detail::split(tok.substr(colon + 1), ',')) {
            int v = detail::parse_int(vs, 0, "vertex index");
            if (graph) {
                if (kind == "adj") demand.require_edge(v);
                else if (kind == "nonadj") demand.forbid_edge(v);
                else throw Error("graph query kinds are adj/nonadj, got '" + kind + "'");
            } else {
                if (kind == "out") demand.arc_out(v);
                else if (kind == "in") demand.arc_in(v);
                else if (kind == "two") demand.two_cycle(v);
                else if (kind == "ind") demand.independent(v);
                else throw Error("digraph query kinds are out/in/two/ind, got '" + kind + "'");
            }
        }
    }
    return demand;
}

json instance_to_json(const EpInstance& inst) {
    json j;
    j["base"] = compact_structure(inst.base);
    j["extension"] = compact_structure(inst.extension);
    j["anti"] = inst.anti;
    if (inst.anti) j["multifunction"] = compact_image_sets(inst.mf_img);
    else j["map"] = compact_assignment(inst.map_img);
    j["reason"] = inst.reason;
    return j;
}

void print_instance(std::ostream& os, const EpInstance& inst) {
    os << "  base:      " << compact_structure(inst.base) << "\n";
    os << "  extension: " << compact_structure(inst.extension) << "\n";
    if (inst.anti) os << "  multifunction: " << compact_image_sets(inst.mf_img) << "\n";
    else os << "  map: " << compact_assignment(inst.map_img) << "\n";
    os << "  reason: " << inst.reason << "\n";
}

MapKind parse_kind_letter(const std::string& s) {
    if (s.size() != 1) throw Error("kind must be one letter (H, M or I)");
    switch (std::toupper(static_cast<unsigned char>(s[0]))) {
        case 'H': return MapKind::Hom;
        case 'M': return MapKind::Mono;
        case 'I': return MapKind::Emb;
        default: throw Error("kind must be H, M or I");
    }
}

int cmd_classify(const std::string& file, bool as_json, int max_size) {
    Structure m = load_structure_file(file);
    Profile p = full_profile(m, max_size);
    auto mhh = mhh_classes(p);
    if (as_json) {
        json j;
        j["file"] = file;
        j["vertices"] = m.size();
        json labels;
        for (ClassLabel l : all_labels()) labels[label_name(l)] = p.satisfied(l);
        j["labels"] = labels;
        json mh = json::array();
        for (ClassLabel l : mhh) mh.push_back(label_name(l));
        j["mhh"] = mh;
        std::cout << j.dump(2) << "\n";
    } else {
        for (ClassLabel l : all_labels())
            std::cout << label_name(l) << ": " << (p.satisfied(l) ? "yes" : "no") << "\n";
        std::cout << "mhh: " << label_set_text(mhh) << "\n";
    }
    return kExitOk;
}

int cmd_maps(const std::string& afile, const std::string& bfile, const std::string& type, bool partial,
             bool surjective, bool count_only, long limit, bool as_json) {
    Structure a = load_structure_file(afile);
    Structure b = load_structure_file(bfile);
    MapKind kind = type == "hom" ? MapKind::Hom : type == "mono" ? MapKind::Mono : MapKind::Emb;
    if (count_only) {
        long c = count_maps(a, b, kind, !partial, surjective);
        if (as_json) {
            json j;
            j["count"] = c;
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << c << "\n";
        }
        return kExitOk;
    }
    long emitted = 0;
    json arr = json::array();
    for_each_map(a, b, kind, !partial, surjective, [&](const std::vector<int>& img) {
        if (as_json) arr.push_back(compact_assignment(img));
        else std::cout << compact_assignment(img) << "\n";
        return ++emitted < limit;
    });
    if (as_json) {
        json j;
        j["maps"] = arr;
        std::cout << j.dump(2) << "\n";
    }
    return kExitOk;
}

int cmd_extend(const std::string& mapfile, const std::string& kind_s, bool surjective, bool anti,
               bool as_json) {
    LoadedMapFile data = load_map_file(mapfile);
    if (!anti) {
        PartialMap f = data.as_map();
        auto g = extend_map_within(f, parse_kind_letter(kind_s), surjective);
        if (as_json) {
            json j;
            j["found"] = g.has_value();
            if (g) j["extension"] = compact_assignment(g->img);
            std::cout << j.dump(2) << "\n";
        } else if (g) {
            std::cout << "extension: " << compact_assignment(g->img) << "\n";
        } else {
            std::cout << "no extension\n";
        }
        return g ? kExitOk : kExitNegative;
    }
    Multifunction f = data.as_multifunction();
    CoKind ck = co_of(parse_kind_letter(kind_s));
    auto g = extend_multifunction_within(f, ck);
    if (as_json) {
        json j;
        j["found"] = g.has_value();
        if (g) j["extension"] = compact_image_sets(g->img);
        std::cout << j.dump(2) << "\n";
    } else if (g) {
        std::cout << "extension: " << compact_image_sets(g->img) << "\n";
    } else {
        std::cout << "no extension\n";
    }
    return g ? kExitOk : kExitNegative;
}

int cmd_amalgamate(const std::string& f1file, const std::string& f2file, const std::string& cls,
                   const std::string& xy, bool anti, int max_size, const std::string& outfile, bool as_json) {
    ClassDescriptor d = named_class(cls);
    ClassLabel notion = parse_label(xy);
    LoadedMapFile f1 = load_map_file(f1file);
    LoadedMapFile f2 = load_map_file(f2file);
    json j;
    if (!anti) {
        AmalgamInstance inst;
        inst.f1 = f1.as_map();
        inst.f2 = f2.as_map();
        auto r = xy_amalgamate(inst, notion.x, base_kind(notion.y), d, max_size);
        if (!r) {
            if (as_json) {
                j["found"] = false;
                std::cout << j.dump(2) << "\n";
            } else
                std::cout << "no amalgam within size bound " << max_size << "\n";
            return kExitNegative;
        }
        if (!outfile.empty()) save_structure_file(outfile, r->amalgam);
        if (as_json) {
            j["found"] = true;
            j["amalgam"] = compact_structure(r->amalgam);
            j["g1"] = compact_assignment(r->g1.img);
            j["g2"] = compact_assignment(r->g2.img);
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << serialize_structure(r->amalgam);
            std::cout << "g1: " << compact_assignment(r->g1.img) << "\n";
            std::cout << "g2: " << compact_assignment(r->g2.img) << "\n";
        }
        return kExitOk;
    }
    AntiAmalgamInstance inst;
    inst.f1 = f1.as_multifunction();
    inst.f2 = f2.as_map();
    auto r = anti_xy_amalgamate(inst, co_of(notion.x), co_of(base_kind(notion.y)), d, max_size);
    if (!r) {
        if (as_json) {
            j["found"] = false;
            std::cout << j.dump(2) << "\n";
        } else
            std::cout << "no amalgam within size bound " << max_size << "\n";
        return kExitNegative;
    }
    if (!outfile.empty()) save_structure_file(outfile, r->amalgam);
    if (as_json) {
        j["found"] = true;
        j["amalgam"] = compact_structure(r->amalgam);
        j["g1"] = compact_assignment(r->g1.img);
        j["g2"] = compact_image_sets(r->g2.img);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << serialize_structure(r->amalgam);
        std::cout << "g1: " << compact_assignment(r->g1.img) << "\n";
        std::cout << "g2: " << compact_image_sets(r->g2.img) << "\n";
    }
    return kExitOk;
}

int cmd_check_ap(const std::string& cls, const std::string& xy, bool anti, int bound, int witness_bound,
                 long probes, bool as_json) {
    ClassDescriptor d = named_class(cls);
    ClassLabel notion = parse_label(xy);
    ApReport rep = check_ap(d, notion, anti, bound, witness_bound, probes);
    if (as_json) {
        json j;
        j["class"] = d.name;
        j["notion"] = rep.notion;
        j["anti"] = rep.anti;
        j["verdict"] = rep.pass ? "PASS" : "FAIL";
        j["instances_checked"] = rep.instances_checked;
        j["instance_size_bound"] = rep.instance_size_bound;
        j["witness_size_bound"] = rep.witness_size_bound;
        if (rep.failed) {
            j["failed"]["base"] = compact_structure(rep.failed->f1.source);
            j["failed"]["left"] = compact_structure(rep.failed->f1.target);
            j["failed"]["right"] = compact_structure(rep.failed->f2.target);
            j["failed"]["f1"] = compact_assignment(rep.failed->f1.img);
        }
        if (rep.failed_anti) {
            j["failed"]["base"] = compact_structure(rep.failed_anti->f1.source);
            j["failed"]["left"] = compact_structure(rep.failed_anti->f1.target);
            j["failed"]["right"] = compact_structure(rep.failed_anti->f2.target);
            j["failed"]["f1"] = compact_image_sets(rep.failed_anti->f1.img);
        }
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << (rep.pass ? "PASS" : "FAIL") << " " << (rep.anti ? "anti-" : "") << rep.notion
                  << "AP for " << d.name << " (" << rep.instances_checked << " instances, |A|,|B| <= "
                  << rep.instance_size_bound << ", witness <= " << rep.witness_size_bound << ")\n";
        if (rep.failed) {
            std::cout << "failed instance:\n  A:  " << compact_structure(rep.failed->f1.source)
                      << "\n  B1: " << compact_structure(rep.failed->f1.target)
                      << "\n  B2: " << compact_structure(rep.failed->f2.target)
                      << "\n  f1: " << compact_assignment(rep.failed->f1.img) << "\n";
        }
        if (rep.failed_anti) {
            std::cout << "failed instance:\n  A:  " << compact_structure(rep.failed_anti->f1.source)
                      << "\n  B1: " << compact_structure(rep.failed_anti->f1.target)
                      << "\n  B2: " << compact_structure(rep.failed_anti->f2.target)
                      << "\n  f1: " << compact_image_sets(rep.failed_anti->f1.img) << "\n";
        }
    }
    return rep.pass ? kExitOk : kExitNegative;
}

int cmd_check_ep(const std::string& oracle_spec, const std::string& approx_file, const std::string& xy,
                 bool anti, int bound, long probes, std::uint64_t seed, int grow_to, bool as_json) {
    std::optional<Oracle> host;
    if (!approx_file.empty()) {
        host = Oracle::snapshot(load_structure_file(approx_file));
    } else {
        host = Oracle::make(oracle_spec, seed);
        host->grow(grow_to);
    }
    ClassLabel notion = parse_label(xy);
    EpParams params;
    params.a_size_bound = bound;
    params.probes = probes;
    Verdict v = check_1p_ep(*host, notion.x, base_kind(notion.y), anti, params);
    if (as_json) {
        json j;
        j["host"] = approx_file.empty() ? oracle_spec : approx_file;
        j["notion"] = v.notion;
        j["anti"] = v.anti;
        j["verdict"] = verdict_name(v.status);
        j["probes"] = v.probes_run;
        j["a_size_bound"] = v.a_size_bound;
        j["approximation_size"] = host->approximation().size();
        if (v.certificate) j["certificate"] = instance_to_json(*v.certificate);
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << verdict_name(v.status) << " 1P" << (v.anti ? "-anti-" : "") << v.notion << "EP for "
                  << (approx_file.empty() ? oracle_spec : approx_file) << " (" << v.probes_run
                  << " probes, |A| <= " << v.a_size_bound << ", approximation "
                  << host->approximation().size() << " vertices)\n";
        if (v.certificate) print_instance(std::cout, *v.certificate);
    }
    switch (v.status) {
        case Verdict::Status::Positive: return kExitOk;
        case Verdict::Status::Negative: return kExitNegative;
        case Verdict::Status::Inconclusive: return kExitInconclusive;
    }
    return kExitUsage;
}

int cmd_build(const std::string& cls, const std::string& notion_s, int stages, std::uint64_t seed,
              const std::string& outfile, const std::string& ledgerfile, bool as_json) {
    ClassDescriptor d = named_class(cls);
    ClassLabel notion = parse_label(notion_s);
    if (is_no_implication(notion))
        throw Error("notion " + label_name(notion) + " resists the inductive construction (no-implication family)");
    LimitBuild b;
    try {
        b = build_limit(d, notion, stages, seed);
    } catch (const Error& e) {
        // a stage could not be completed: the class lacks the needed
        // amalgamation property (within the free-step strategy)
        std::cout << "FAIL " << e.what() << "\n";
        return kExitNegative;
    }
    if (!outfile.empty()) save_structure_file(outfile, b.result);
    if (!ledgerfile.empty()) {
        std::ofstream out(ledgerfile);
        if (!out) throw Error("cannot write ledger file '" + ledgerfile + "'");
        out << serialize_ledger(b, d.signature);
    }
    AuditReport ar = audit_limit(b.result, b.ledger, notion);
    if (as_json) {
        json j;
        j["class"] = d.name;
        j["notion"] = label_name(notion);
        j["stages"] = stages;
        j["seed"] = seed;
        j["vertices"] = b.result.size();
        j["tasks_created"] = b.ledger.forward.size() + b.ledger.backward.size();
        j["tasks_processed"] = b.ledger.processed_count();
        j["backlog"] = ar.backlog;
        j["audit"] = ar.ok;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "built " << b.result.size() << " vertices over " << stages << " stages ("
                  << b.ledger.processed_count() << " tasks processed, backlog " << ar.backlog << ")\n";
        std::cout << "audit: " << (ar.ok ? "ok" : ("FAILED: " + ar.first_failure)) << "\n";
    }
    return ar.ok ? kExitOk : kExitNegative;
}

int cmd_audit(const std::string& structure_file, const std::string& ledger_file, bool as_json) {
    Structure m = load_structure_file(structure_file);
    std::ifstream in(ledger_file);
    if (!in) throw Error("cannot open ledger file '" + ledger_file + "'");
    ParsedLedger pl = parse_ledger(in);
    AuditReport ar = audit_limit(m, pl.ledger, pl.notion);
    if (as_json) {
        json j;
        j["notion"] = label_name(pl.notion);
        j["verified"] = ar.verified;
        j["backlog"] = ar.backlog;
        j["ok"] = ar.ok;
        if (!ar.ok) j["failure"] = ar.first_failure;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "verified " << ar.verified << " processed tasks, backlog " << ar.backlog << "\n";
        std::cout << (ar.ok ? "audit ok" : ("audit FAILED: " + ar.first_failure)) << "\n";
    }
    return ar.ok ? kExitOk : kExitNegative;
}

int cmd_grow(const std::string& oracle_spec, const std::string& approx_file, const std::string& pairs,
             const std::string& notion_s, int steps, std::uint64_t seed, int grow_to, bool as_json) {
    std::optional<Oracle> host;
    if (!approx_file.empty()) host = Oracle::snapshot(load_structure_file(approx_file));
    else {
        host = Oracle::make(oracle_spec, seed);
        host->grow(grow_to);
    }
    std::vector<int> start = parse_compact_assignment(host->approximation().size(), pairs);
    ClassLabel notion = parse_label(notion_s);
    GrowResult r = grow_endomorphism(*host, start, notion, steps);
    if (as_json) {
        json j;
        j["map"] = compact_assignment(r.img);
        j["steps"] = r.steps_done;
        j["total"] = r.total;
        j["surjective"] = r.surjective;
        if (r.failure) j["failure"] = *r.failure;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "map: " << compact_assignment(r.img) << "\n";
        std::cout << "steps: " << r.steps_done << (r.total ? ", total" : "")
                  << (r.surjective ? ", surjective" : "") << "\n";
        if (r.failure) std::cout << "stuck: " << *r.failure << "\n";
    }
    return r.failure ? kExitNegative : kExitOk;
}

int cmd_equiv(const std::string& oracle_a, const std::string& oracle_b, const std::string& notion_s,
              int steps, std::uint64_t seed, int grow_to, bool as_json) {
    Oracle a = Oracle::make(oracle_a, seed);
    Oracle b = Oracle::make(oracle_b, seed + 1);
    a.grow(grow_to);
    b.grow(grow_to);
    ClassLabel notion = parse_label(notion_s);
    EquivResult r = build_equivalence_map(a, b, notion, steps);
    if (as_json) {
        json j;
        j["map"] = compact_assignment(r.img);
        j["steps"] = r.steps_done;
        json log = json::array();
        for (const auto& l : r.log) log.push_back(l);
        j["log"] = log;
        if (r.failure) j["failure"] = *r.failure;
        std::cout << j.dump(2) << "\n";
    } else {
        for (const auto& l : r.log) std::cout << l << "\n";
        std::cout << "map: " << compact_assignment(r.img) << "\n";
        if (r.failure) std::cout << "stuck: " << *r.failure << "\n";
    }
    return r.failure ? kExitNegative : kExitOk;
}

int cmd_oracle(const std::string& spec, const std::string& query, int grow_to, std::uint64_t seed,
               const std::string& export_file, bool as_json) {
    Oracle o = Oracle::make(spec, seed);
    if (grow_to > 0) o.grow(grow_to);
    std::optional<int> realized;
    bool refused = false;
    if (!query.empty()) {
        OnePointDemand demand = parse_query(query, o.graph_like());
        realized = o.realize(demand);
        refused = !realized.has_value();
    }
    if (!export_file.empty()) save_structure_file(export_file, o.approximation());
    if (as_json) {
        json j;
        j["oracle"] = spec;
        j["size"] = o.approximation().size();
        if (!query.empty()) {
            j["query"] = query;
            j["realized"] = !refused;
            if (realized) j["vertex"] = *realized;
        }
        std::cout << j.dump(2) << "\n";
    } else {
        if (!query.empty()) {
            if (realized) std::cout << "realized as vertex " << *realized << "\n";
            else std::cout << "refused\n";
        }
        std::cout << "approximation: " << o.approximation().size() << " vertices\n";
        if (export_file.empty() && query.empty()) std::cout << serialize_structure(o.approximation());
    }
    return refused ? kExitNegative : kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"workbench for homogeneity notions of finite relational structures"};
    app.require_subcommand(1);

    std::uint64_t seed = 0;
    bool as_json = false;
    app.add_option("--seed", seed, "rng seed (default 0)");
    app.add_flag("--json", as_json, "machine-readable output");

    auto* classify = app.add_subcommand("classify", "decide all 18 notions for a finite structure");
    std::string classify_file;
    int classify_max = 7;
    classify->add_option("file", classify_file, "structure file")->required();
    classify->add_option("--max-size", classify_max, "vertex-count guard (default 7)");

    auto* maps = app.add_subcommand("maps", "enumerate maps between two structures");
    std::string maps_a, maps_b, maps_type = "hom";
    bool maps_partial = false, maps_surjective = false, maps_count = false;
    long maps_limit = 1000000;
    maps->add_option("source", maps_a, "source structure file")->required();
    maps->add_option("target", maps_b, "target structure file")->required();
    maps->add_option("--type", maps_type, "hom | mono | emb (default hom)")
        ->check(CLI::IsMember({"hom", "mono", "emb"}));
    maps->add_flag("--partial", maps_partial, "include partial maps");
    maps->add_flag("--surjective", maps_surjective, "require surjectivity");
    maps->add_flag("--count", maps_count, "print the count only");
    maps->add_option("--limit", maps_limit, "cap on emitted maps");

    auto* extend = app.add_subcommand("extend", "extension-witness search for a partial map file");
    std::string extend_map, extend_kind = "H";
    bool extend_surjective = false, extend_anti = false;
    extend->add_option("mapfile", extend_map, "map file (source = the structure to cover)")->required();
    extend->add_option("--kind", extend_kind, "target kind letter H | M | I");
    extend->add_flag("--surjective", extend_surjective, "require surjectivity (forward only)");
    extend->add_flag("--anti", extend_anti, "treat the file as a multifunction, extend by cokind");

    auto* amalg = app.add_subcommand("amalgamate", "complete an amalgamation square");
    std::string am_f1, am_f2, am_class = "graphs", am_xy = "HH", am_out;
    bool am_anti = false;
    int am_max = 6;
    amalg->add_option("--f1", am_f1, "map file A -> B1 (multifunction with --anti)")->required();
    amalg->add_option("--f2", am_f2, "map file A -> B2 (an embedding)")->required();
    amalg->add_option("--class", am_class, "class name (default graphs)");
    amalg->add_option("--xy", am_xy, "notion letters (default HH)");
    amalg->add_flag("--anti", am_anti, "anti square");
    amalg->add_option("--max-size", am_max, "witness size bound (default 6)");
    amalg->add_option("--out", am_out, "write the amalgam to this structure file");

    auto* cap = app.add_subcommand("check-ap", "bounded class-level amalgamation-property check");
    std::string cap_class, cap_xy = "HH";
    bool cap_anti = false;
    int cap_bound = 3, cap_witness = 6;
    long cap_probes = 1000000;
    cap->add_option("--class", cap_class, "class name")->required();
    cap->add_option("--xy", cap_xy, "notion letters (default HH)");
    cap->add_flag("--anti", cap_anti, "check the anti square");
    cap->add_option("--bound", cap_bound, "instance size bound (default 3)");
    cap->add_option("--witness-bound", cap_witness, "witness size bound (default 6)");
    cap->add_option("--probes", cap_probes, "instance cap");

    auto* cep = app.add_subcommand("check-ep", "one-point extension-property probe against an oracle");
    std::string cep_oracle, cep_approx, cep_xy = "HH";
    bool cep_anti = false;
    int cep_bound = 3, cep_grow = 30;
    long cep_probes = 2000;
    cep->add_option("--oracle", cep_oracle, "catalog oracle spec, e.g. henson_complement:3");
    cep->add_option("--approx", cep_approx, "snapshot host from a structure file instead");
    cep->add_option("--xy", cep_xy, "notion letters; E/B/A map to their base kinds (default HH)");
    cep->add_flag("--anti", cep_anti, "probe the anti property");
    cep->add_option("--bound", cep_bound, "base size bound (default 3)");
    cep->add_option("--probes", cep_probes, "probe budget (default 2000)");
    cep->add_option("--grow", cep_grow, "grow the oracle to this size first (default 30)");

    auto* build = app.add_subcommand("build", "staged generic-structure construction");
    std::string build_class = "graphs", build_notion = "HH", build_out, build_ledger;
    int build_stages = 30;
    build->add_option("--class", build_class, "class name (default graphs)");
    build->add_option("--notion", build_notion, "notion letters (default HH)");
    build->add_option("--stages", build_stages, "stage count (default 30)");
    build->add_option("--out", build_out, "write the approximation to this file");
    build->add_option("--ledger", build_ledger, "write the task ledger to this file");

    auto* audit = app.add_subcommand("audit", "re-verify a build ledger against its structure");
    std::string audit_struct, audit_ledger;
    audit->add_option("structure", audit_struct, "structure file")->required();
    audit->add_option("ledger", audit_ledger, "ledger file")->required();

    auto* grow = app.add_subcommand("grow", "grow a partial self-map toward an endomorphism");
    std::string grow_oracle, grow_approx, grow_pairs, grow_notion = "HH";
    int grow_steps = 10, grow_size = 12;
    grow->add_option("--oracle", grow_oracle, "catalog oracle spec");
    grow->add_option("--approx", grow_approx, "finite host from a structure file");
    grow->add_option("--pairs", grow_pairs, "starting map, e.g. \"0:1 2:0\"");
    grow->add_option("--notion", grow_notion, "notion letters (default HH)");
    grow->add_option("--steps", grow_steps, "rounds (default 10)");
    grow->add_option("--grow", grow_size, "grow a catalog oracle to this size first");

    auto* equiv = app.add_subcommand("equiv", "grow an equivalence map between two oracles");
    std::string eq_a, eq_b, eq_notion = "MB";
    int eq_steps = 10, eq_grow = 10;
    equiv->add_option("--oracle-a", eq_a, "first oracle spec")->required();
    equiv->add_option("--oracle-b", eq_b, "second oracle spec")->required();
    equiv->add_option("--notion", eq_notion, "notion letters (default MB)");
    equiv->add_option("--steps", eq_steps, "rounds (default 10)");
    equiv->add_option("--grow", eq_grow, "initial oracle size (default 10)");

    auto* orc = app.add_subcommand("oracle", "query or export a catalog oracle");
    std::string orc_spec, orc_query, orc_export;
    int orc_grow = 0;
    orc->add_option("name", orc_spec, "oracle spec, e.g. random_graph or henson:3")->required();
    orc->add_option("--query", orc_query, "realization request, e.g. \"adj:0,2 nonadj:1\" or \"out:0 in:1\"");
    orc->add_option("--grow", orc_grow, "grow to this size first");
    orc->add_option("--export", orc_export, "write the approximation to this file");

    for (CLI::App* sc : app.get_subcommands([](CLI::App*) { return true; })) sc->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (classify->parsed()) return cmd_classify(classify_file, as_json, classify_max);
        if (maps->parsed())
            return cmd_maps(maps_a, maps_b, maps_type, maps_partial, maps_surjective, maps_count, maps_limit,
                            as_json);
        if (extend->parsed()) return cmd_extend(extend_map, extend_kind, extend_surjective, extend_anti, as_json);
        if (amalg->parsed()) return cmd_amalgamate(am_f1, am_f2, am_class, am_xy, am_anti, am_max, am_out, as_json);
        if (cap->parsed())
            return cmd_check_ap(cap_class, cap_xy, cap_anti, cap_bound, cap_witness, cap_probes, as_json);
        if (cep->parsed()) {
            if (cep_oracle.empty() && cep_approx.empty()) throw Error("check-ep needs --oracle or --approx");
            return cmd_check_ep(cep_oracle, cep_approx, cep_xy, cep_anti, cep_bound, cep_probes, seed, cep_grow,
                                as_json);
        }
        if (build->parsed())
            return cmd_build(build_class, build_notion, build_stages, seed, build_out, build_ledger, as_json);
        if (audit->parsed()) return cmd_audit(audit_struct, audit_ledger, as_json);
        if (grow->parsed()) {
            if (grow_oracle.empty() && grow_approx.empty()) throw Error("grow needs --oracle or --approx");
            return cmd_grow(grow_oracle, grow_approx, grow_pairs, grow_notion, grow_steps, seed, grow_size, as_json);
        }
        if (equiv->parsed()) return cmd_equiv(eq_a, eq_b, eq_notion, eq_steps, seed, eq_grow, as_json);
        if (orc->parsed()) return cmd_oracle(orc_spec, orc_query, orc_grow, seed, orc_export, as_json);
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
