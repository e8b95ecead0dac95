#include <catch2/catch_amalgamated.hpp>

#include "hh/homogeneity.hpp"

using namespace hh;

namespace {
ClassLabel L(const char* s) { return parse_label(s); }
}

TEST_CASE("decide fixtures", "[homogeneity]") {
    REQUIRE(decide_finite_homogeneity(complete_graph(3), L("HA")).holds);

    auto he = decide_finite_homogeneity(null_graph(3), L("HE"));
    REQUIRE(!he.holds);
    REQUIRE(he.counterexample.has_value());
    // the returned counterexample must genuinely fail to extend
    REQUIRE(!complete_map(null_graph(3), null_graph(3), *he.counterexample, MapKind::Hom, true).has_value());

    auto ia = decide_finite_homogeneity(path_graph(3), L("IA"));
    REQUIRE(!ia.holds);
    REQUIRE(ia.counterexample.has_value());
    REQUIRE(!complete_map(path_graph(3), path_graph(3), *ia.counterexample, MapKind::Emb, true).has_value());
}

TEST_CASE("profile of K3 and K1: everything holds", "[homogeneity]") {
    Profile p3 = full_profile(complete_graph(3));
    Profile p1 = full_profile(complete_graph(1));
    for (ClassLabel l : all_labels()) {
        REQUIRE(p3.satisfied(l));
        REQUIRE(p1.satisfied(l));
    }
    REQUIRE(mhh_classes(p3) == std::vector<ClassLabel>{L("HA")});
}

TEST_CASE("profile of null3: upward closure of {MA, HH}", "[homogeneity]") {
    Profile p = full_profile(null_graph(3));
    for (ClassLabel l : all_labels()) {
        bool expect = poset_leq(L("MA"), l) || poset_leq(L("HH"), l);
        REQUIRE(p.satisfied(l) == expect);
    }
    auto mhh = mhh_classes(p);
    REQUIRE(mhh == std::vector<ClassLabel>{L("MA"), L("HH")});
}

TEST_CASE("mhh of an artificial profile", "[homogeneity]") {
    Profile p;
    for (ClassLabel l : all_labels())
        p.sat[static_cast<std::size_t>(label_index(l))] =
            poset_leq(L("IA"), l) || poset_leq(L("MM"), l) || poset_leq(L("HH"), l);
    auto mhh = mhh_classes(p);
    REQUIRE(mhh == std::vector<ClassLabel>{L("IA"), L("MM"), L("HH")});
}

TEST_CASE("a graph can satisfy no notion at all", "[homogeneity]") {
    // K2 with an isolated vertex: the partial iso {0 -> 2} cannot extend to
    // any endomorphism, so even IH fails and the profile is all-false.
    Structure m = graph_from_edges(3, {{0, 1}});
    Profile p = full_profile(m);
    REQUIRE(!p.satisfied(L("IH")));
    for (ClassLabel l : all_labels()) REQUIRE(!p.satisfied(l));
    REQUIRE(mhh_classes(p).empty());
}

TEST_CASE("mhh rejects non-upward-closed profiles", "[homogeneity]") {
    Profile p;
    p.sat.fill(false);
    p.sat[static_cast<std::size_t>(label_index(L("HA")))] = true;  // HA without its upward closure
    REQUIRE_THROWS_AS(mhh_classes(p), Error);
}

TEST_CASE("profiles of all graphs up to 4 vertices are upward closed", "[homogeneity][property]") {
    for (int n = 1; n <= 4; ++n)
        for_each_labelled_structure(Signature::graph(), n, [&](const Structure& m) {
            Profile p = full_profile(m);
            REQUIRE(profile_upward_closed(p));
            // the three double lines hold at finite scale
            REQUIRE(p.satisfied(L("II")) == p.satisfied(L("IA")));
            REQUIRE(p.satisfied(L("MI")) == p.satisfied(L("MA")));
            REQUIRE(p.satisfied(L("HI")) == p.satisfied(L("HA")));
            // E/B/A collapse on finite structures
            for (MapKind x : {MapKind::Emb, MapKind::Mono, MapKind::Hom}) {
                bool e = p.satisfied({x, EndoKind::E});
                REQUIRE(e == p.satisfied({x, EndoKind::B}));
                REQUIRE(e == p.satisfied({x, EndoKind::A}));
            }
            return true;
        });
}

TEST_CASE("injectivity restriction: HM or HB forces injective partial homs", "[homogeneity][property]") {
    for (int n = 1; n <= 4; ++n)
        for_each_labelled_structure(Signature::graph(), n, [&](const Structure& m) {
            bool has_noninjective_partial_hom = false;
            for_each_map(m, m, MapKind::Hom, false, false, [&](const std::vector<int>& f) {
                MapClass c = classify_map(m, m, f);
                if (c.is_hom && !c.is_mono) {
                    has_noninjective_partial_hom = true;
                    return false;
                }
                return true;
            });
            if (has_noninjective_partial_hom) {
                Profile p = full_profile(m);
                REQUIRE(!p.satisfied(L("HM")));
                REQUIRE(!p.satisfied(L("HB")));
            }
            return true;
        });
}

TEST_CASE("cores: fixtures and the MH restriction", "[homogeneity]") {
    REQUIRE(is_core_finite(complete_graph(3)));
    REQUIRE(!is_core_finite(null_graph(2)));
    REQUIRE(!is_core_finite(path_graph(3)));

    // A finite core with a non-iso partial mono is not MH-homogeneous.
    for (int n = 1; n <= 4; ++n)
        for_each_labelled_structure(Signature::graph(), n, [&](const Structure& m) {
            if (!is_core_finite(m)) return true;
            bool mono_not_iso = false;
            for_each_map(m, m, MapKind::Mono, false, false, [&](const std::vector<int>& f) {
                if (!classify_map(m, m, f).is_embedding) {
                    mono_not_iso = true;
                    return false;
                }
                return true;
            });
            if (mono_not_iso) REQUIRE(!full_profile(m).satisfied(L("MH")));
            return true;
        });
}

TEST_CASE("digraph profiles: the 3-cycle is fully homogeneous", "[homogeneity]") {
    Structure c3 = digraph_from_arcs(3, {{0, 1}, {1, 2}, {2, 0}});
    Profile p = full_profile(c3);
    for (ClassLabel l : all_labels()) REQUIRE(p.satisfied(l));
    REQUIRE(mhh_classes(p) == std::vector<ClassLabel>{L("HA")});

    // a single arc cannot even extend the iso sending its tail to its head
    Profile arc = full_profile(digraph_from_arcs(2, {{0, 1}}));
    REQUIRE(mhh_classes(arc).empty());
}

TEST_CASE("size guard", "[homogeneity]") {
    REQUIRE_THROWS_AS(full_profile(null_graph(8)), Error);
    REQUIRE_NOTHROW(full_profile(null_graph(5)));
}
