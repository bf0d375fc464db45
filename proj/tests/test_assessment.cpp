#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <string>
#include <vector>

#include "elastic/assessment.hpp"
#include "elastic/timeline.hpp"
#include "fixtures.hpp"

using namespace elastic;

namespace {

// Builds a composite by picking one parent id per chunk ("-" for idle).
CompositeService pick(const ChunkedTimeline& tl, const std::vector<std::string>& ids) {
    REQUIRE(ids.size() == tl.chunks.size());
    CompositeService comp;
    for (std::size_t i = 0; i < ids.size(); ++i) {
        bool found = false;
        for (const auto& ps : tl.partials_by_chunk[i]) {
            const std::string label = ps.is_idle() ? "-" : ps.parent_id;
            if (label == ids[i]) {
                comp.partials.push_back(ps);
                found = true;
                break;
            }
        }
        REQUIRE(found);
    }
    return comp;
}

ChunkedTimeline s1_timeline() {
    return chunk_window(select_nearby(fixtures::s1_services(), fixtures::s1_query()),
                        fixtures::s1_query());
}

}  // namespace

TEST_CASE("tec sums partial energies, idles contribute nothing") {
    auto tl = s1_timeline();
    auto c1 = pick(tl, {"A", "A"});
    auto c2 = pick(tl, {"A", "B"});
    CHECK(tec(c1) == doctest::Approx(150.0));
    CHECK(tec(c2) == doctest::Approx(250.0));
}

TEST_CASE("agr matches the hand-computed values") {
    auto tl = s1_timeline();
    auto q = fixtures::s1_query();
    auto c1 = pick(tl, {"A", "A"});
    c1.tec = tec(c1);
    CHECK(agr(c1, q) == doctest::Approx(0.25).epsilon(1e-9));

    auto c2 = pick(tl, {"A", "B"});
    c2.tec = tec(c2);
    CHECK(agr(c2, q) == doctest::Approx(49.0 / 300.0).epsilon(1e-9));
}

TEST_CASE("agr is undefined for an all-idle composite") {
    std::vector<EnergyService> none;
    auto q = fixtures::make_query("q", "void", 0, 30, 60, 100, 1000);
    auto tl = chunk_window(none, q);
    auto comp = pick(tl, {"-"});
    comp.tec = tec(comp);
    CHECK(comp.tec == 0.0);
    CHECK_THROWS_AS(agr(comp, q), UndefinedAggregateError);
    CHECK_FALSE(assess(comp, q, {}));
}

TEST_CASE("normalized agr variant is the weighted mean") {
    auto tl = s1_timeline();
    auto q = fixtures::s1_query();
    auto c2 = pick(tl, {"A", "B"});
    c2.tec = tec(c2);
    // weights (dec/TEC)(du_i/du): 0.2*1/3 and 0.8*2/3
    const double w1 = 0.2 / 3.0, w2 = 1.6 / 3.0;
    const double expected = (w1 * 0.9 + w2 * 0.5) / (w1 + w2);
    CHECK(agr(c2, q, AgrVariant::kNormalized) == doctest::Approx(expected));
}

TEST_CASE("agr never exceeds the best member reliability") {
    for (uint64_t seed : {11ULL, 12ULL, 13ULL}) {
        auto env = generate_environment(fixtures::small_env_config(seed));
        for (const auto& q : env.queries) {
            auto tl = chunk_window(select_nearby(env.services, q), q);
            // greedy pick: max-dec partial per chunk
            CompositeService comp;
            double max_rel = 0.0;
            for (const auto& chunk_ps : tl.partials_by_chunk) {
                const PartialService* best = &chunk_ps.front();
                for (const auto& ps : chunk_ps)
                    if (ps.dec > best->dec) best = &ps;
                comp.partials.push_back(*best);
                if (!best->is_idle()) max_rel = std::max(max_rel, best->reliability);
            }
            comp.tec = tec(comp);
            if (comp.tec <= 0.0) continue;
            CHECK(agr(comp, q) <= max_rel + 1e-12);
            CHECK(agr(comp, q, AgrVariant::kNormalized) <= max_rel + 1e-12);
        }
    }
}

TEST_CASE("rem_re clamps at zero and matches the hand values") {
    auto tl = s1_timeline();
    auto q = fixtures::s1_query();
    auto c1 = pick(tl, {"A", "A"});
    c1.tec = tec(c1);
    c1.agr = agr(c1, q);
    CHECK(rem_re(c1, q) == doctest::Approx(162.5));

    auto c2 = pick(tl, {"A", "B"});
    c2.tec = tec(c2);
    c2.agr = agr(c2, q);
    CHECK(rem_re(c2, q) == doctest::Approx(200.0 - 250.0 * 49.0 / 300.0));

    // over-provisioned composite clamps to zero
    CompositeService rich = c2;
    rich.tec = 1000.0;
    rich.agr = 0.9;
    CHECK(rem_re(rich, q) == 0.0);
}

TEST_CASE("extension_pool takes area services overlapping the extension window") {
    auto q = fixtures::s1_query();  // window [30, 60]
    std::vector<EnergyService> services = {
        fixtures::make_service("in", "cafe", 30, 90, 300, 1.0, 0.8),
        fixtures::make_service("late", "cafe", 60, 90, 300, 1.0, 0.8),
        fixtures::make_service("early", "cafe", 0, 30, 300, 1.0, 0.8),
        fixtures::make_service("elsewhere", "park", 30, 90, 300, 1.0, 0.8),
        fixtures::make_service("hot", "cafe", 35, 55, 4000, 1.0, 0.8),
    };
    auto pool = extension_pool(services, q);
    REQUIRE(pool.size() == 2);
    CHECK(pool[0].id == "in");
    CHECK(pool[1].id == "hot");  // CI does not gate the extension pool
}

TEST_CASE("ext_q hand values, sentinel and linearity") {
    auto q = fixtures::s1_query();
    auto pool = fixtures::s1_pool();
    CHECK(ext_q(162.5, q, pool) == doctest::Approx(32.5));
    CHECK(ext_q(200.0 - 250.0 * 49.0 / 300.0, q, pool) ==
          doctest::Approx(31.8333333333).epsilon(1e-9));
    // nothing left to deliver
    CHECK(ext_q(0.0, q, pool) == 0.0);
    // empty pool -> 2*du sentinel
    CHECK(ext_q(100.0, q, {}) == doctest::Approx(60.0));
    // linear in the remainder
    CHECK(ext_q(325.0, q, pool) == doctest::Approx(65.0));
}

TEST_CASE("ext_q averages rates over the pool") {
    auto q = fixtures::s1_query();
    std::vector<EnergyService> pool = {
        fixtures::make_service("p1", "cafe", 30, 60, 200, 1.0, 0.8),
        fixtures::make_service("p2", "cafe", 30, 60, 600, 0.5, 0.8),
    };
    // mean I = 400, mean tsr = 0.75 -> 300 mAh/h
    CHECK(ext_q(150.0, q, pool) == doctest::Approx(30.0));
}

TEST_CASE("assess fills the metric chain in order") {
    auto tl = s1_timeline();
    auto q = fixtures::s1_query();
    auto comp = pick(tl, {"A", "B"});
    REQUIRE(assess(comp, q, fixtures::s1_pool()));
    CHECK(comp.tec == doctest::Approx(250.0));
    CHECK(comp.agr == doctest::Approx(49.0 / 300.0));
    CHECK(comp.rem_re == doctest::Approx(200.0 - 250.0 * 49.0 / 300.0));
    CHECK(comp.ext_q == doctest::Approx(31.8333333333).epsilon(1e-9));
    CHECK(comp.signature() == "A+B");
}
