#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <map>

#include "elastic/composer.hpp"
#include "elastic/timeline.hpp"
#include "fixtures.hpp"

using namespace elastic;

TEST_CASE("select_nearby filters by area, intensity cap and overlap") {
    std::vector<EnergyService> pool = {
        fixtures::make_service("ok", "cafe", 5, 40, 300, 1.0, 0.9),
        fixtures::make_service("wrong_area", "park", 5, 40, 300, 1.0, 0.9),
        fixtures::make_service("too_hot", "cafe", 5, 40, 5000, 1.0, 0.9),
        fixtures::make_service("before", "cafe", 0, 10, 300, 1.0, 0.9),
        fixtures::make_service("after", "cafe", 45, 60, 300, 1.0, 0.9),
        fixtures::make_service("touch_start", "cafe", 0, 11, 300, 1.0, 0.9),
    };
    auto q = fixtures::make_query("q", "cafe", 10, 30, 60, 100, 1000);
    auto nearby = select_nearby(pool, q);
    REQUIRE(nearby.size() == 2);
    // ordered by start_time then id
    CHECK(nearby[0].id == "touch_start");
    CHECK(nearby[1].id == "ok");
}

TEST_CASE("chunk_window on the two-service scenario") {
    auto tl = chunk_window(select_nearby(fixtures::s1_services(), fixtures::s1_query()),
                           fixtures::s1_query());
    REQUIRE(tl.chunks.size() == 2);
    CHECK(tl.chunks[0].start == 0);
    CHECK(tl.chunks[0].end == 10);
    CHECK(tl.chunks[1].start == 10);
    CHECK(tl.chunks[1].end == 30);
    REQUIRE(tl.partials_by_chunk[0].size() == 1);
    CHECK(tl.partials_by_chunk[0][0].parent_id == "A");
    REQUIRE(tl.partials_by_chunk[1].size() == 2);
}

TEST_CASE("single covering service yields one chunk") {
    std::vector<EnergyService> s = {
        fixtures::make_service("only", "cafe", 0, 40, 300, 1.0, 0.9)};
    auto q = fixtures::make_query("q", "cafe", 0, 30, 60, 100, 1000);
    auto tl = chunk_window(select_nearby(s, q), q);
    REQUIRE(tl.chunks.size() == 1);
    CHECK(tl.chunks[0].start == 0);
    CHECK(tl.chunks[0].end == 30);
}

TEST_CASE("five-service layout produces the expected chunk structure") {
    auto q = fixtures::five_service_query();
    auto tl = chunk_window(select_nearby(fixtures::five_service_layout(), q), q);
    REQUIRE(tl.chunks.size() == 7);
    std::vector<std::size_t> counts;
    for (const auto& ps : tl.partials_by_chunk) counts.push_back(ps.size());
    CHECK(counts == std::vector<std::size_t>{2, 3, 4, 3, 2, 3, 2});
    CHECK(count_compositions(tl) == 864);
}

TEST_CASE("min_lch coalesces boundaries closer than the threshold") {
    // boundaries at 10 and 11; with min_lch=2 the later one (11) is dropped
    std::vector<EnergyService> s = {
        fixtures::make_service("a", "z", 0, 10, 300, 1.0, 0.9),
        fixtures::make_service("b", "z", 11, 30, 300, 1.0, 0.9),
        fixtures::make_service("c", "z", 0, 30, 200, 1.0, 0.9)};
    auto q = fixtures::make_query("q", "z", 0, 30, 60, 100, 1000);

    auto fine = chunk_window(select_nearby(s, q), q, 1);
    CHECK(fine.chunks.size() == 3);

    auto coarse = chunk_window(select_nearby(s, q), q, 2);
    REQUIRE(coarse.chunks.size() == 2);
    CHECK(coarse.chunks[0].end == 10);
}

TEST_CASE("trailing boundary too close to the window end is dropped") {
    std::vector<EnergyService> s = {
        fixtures::make_service("a", "z", 0, 29, 300, 1.0, 0.9),
        fixtures::make_service("b", "z", 0, 30, 200, 1.0, 0.9)};
    auto q = fixtures::make_query("q", "z", 0, 30, 60, 100, 1000);
    auto tl = chunk_window(select_nearby(s, q), q, 2);
    REQUIRE(tl.chunks.size() == 1);
    CHECK(tl.chunks[0].end == 30);
}

TEST_CASE("uncovered stretches carry an idle placeholder") {
    std::vector<EnergyService> s = {
        fixtures::make_service("a", "z", 0, 10, 300, 1.0, 0.9)};
    auto q = fixtures::make_query("q", "z", 0, 30, 60, 100, 1000);
    auto tl = chunk_window(select_nearby(s, q), q);
    REQUIRE(tl.chunks.size() == 2);
    REQUIRE(tl.partials_by_chunk[1].size() == 1);
    CHECK(tl.partials_by_chunk[1][0].is_idle());
    CHECK(tl.partials_by_chunk[1][0].dec == 0.0);
    CHECK(tl.partials_by_chunk[1][0].reliability == 1.0);
}

TEST_CASE("merge_chunks_by_max merges runs sharing the max-energy parent") {
    auto q = fixtures::six_chunk_query();
    auto tl = chunk_window(select_nearby(fixtures::six_chunk_layout(), q), q, 1);
    REQUIRE(tl.chunks.size() == 6);
    for (const auto& ps : tl.partials_by_chunk) CHECK(ps.size() == 4);

    auto merged = merge_chunks_by_max(tl);
    REQUIRE(merged.chunks.size() == 4);
    std::vector<std::size_t> counts;
    for (const auto& ps : merged.partials_by_chunk) counts.push_back(ps.size());
    CHECK(counts == std::vector<std::size_t>{5, 5, 4, 4});
    CHECK(merged.chunks[0].start == 0);
    CHECK(merged.chunks[0].end == 20);
    CHECK(merged.chunks[1].end == 40);
    CHECK(count_compositions(merged) == 400);

    // merging is a fixpoint: applying again changes nothing
    auto again = merge_chunks_by_max(merged);
    CHECK(again.chunks.size() == merged.chunks.size());
}

TEST_CASE("merged partial energy is the union of the parent's pieces") {
    auto q = fixtures::six_chunk_query();
    auto merged = merge_chunks_by_max(
        chunk_window(select_nearby(fixtures::six_chunk_layout(), q), q, 1));
    // chunk 0 is [0,20]; M1 runs 1000 mA the whole stretch
    const auto& ps0 = merged.partials_by_chunk[0];
    auto m1 = std::find_if(ps0.begin(), ps0.end(),
                           [](const PartialService& p) { return p.parent_id == "M1"; });
    REQUIRE(m1 != ps0.end());
    CHECK(m1->dec == doctest::Approx(20.0 / 60.0 * 1000.0));
    // F3 only covers [0,10] of the merged chunk
    auto f3 = std::find_if(ps0.begin(), ps0.end(),
                           [](const PartialService& p) { return p.parent_id == "F3"; });
    REQUIRE(f3 != ps0.end());
    CHECK(f3->dec == doctest::Approx(10.0 / 60.0 * 400.0));
}

TEST_CASE("timeline invariants hold on random environments") {
    for (uint64_t seed : {1ULL, 2ULL, 3ULL, 4ULL, 5ULL}) {
        auto env = generate_environment(fixtures::small_env_config(seed));
        for (const auto& q : env.queries) {
            auto nearby = select_nearby(env.services, q);
            auto tl = chunk_window(nearby, q);

            // chunks tile the query window with no gaps and honor min_lch
            REQUIRE(!tl.chunks.empty());
            CHECK(tl.chunks.front().start == q.t_s);
            CHECK(tl.chunks.back().end == q.soft_deadline());
            for (std::size_t i = 0; i < tl.chunks.size(); ++i) {
                if (i > 0) CHECK(tl.chunks[i].start == tl.chunks[i - 1].end);
                CHECK(tl.chunks[i].length() >= std::min<Minutes>(
                          kDefaultMinLch, q.duration_du));
            }

            // per-parent partial energies never exceed the advertised dec
            std::map<std::string, double> by_parent;
            for (const auto& chunk_ps : tl.partials_by_chunk)
                for (const auto& ps : chunk_ps)
                    if (!ps.is_idle()) by_parent[ps.parent_id] += ps.dec;
            for (const auto& s : env.services) {
                auto it = by_parent.find(s.id);
                if (it != by_parent.end())
                    CHECK(it->second <= s.dec_advertised * (1 + 1e-9));
            }

            // merging preserves the tiling
            auto merged = merge_chunks_by_max(tl);
            CHECK(merged.chunks.front().start == q.t_s);
            CHECK(merged.chunks.back().end == q.soft_deadline());
            CHECK(merged.chunks.size() <= tl.chunks.size());
        }
    }
}
