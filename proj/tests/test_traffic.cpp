#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <sstream>

#include "leosim/traffic.hpp"

using namespace leosim;

TEST_CASE("workload determinism") {
    auto grid = build_zone_grid(4, 2);
    DistParams p;
    auto a = generate_workload(grid, 600.0, 1.0 / 60.0, p, 42);
    auto b = generate_workload(grid, 600.0, 1.0 / 60.0, p, 42);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        CHECK(a[i].arrival_s == b[i].arrival_s);
        CHECK(a[i].source_vn == b[i].source_vn);
        REQUIRE(a[i].subtasks.size() == b[i].subtasks.size());
        for (std::size_t j = 0; j < a[i].subtasks.size(); ++j) {
            CHECK(a[i].subtasks[j].compute_gflo == b[i].subtasks[j].compute_gflo);
            CHECK(a[i].subtasks[j].volume_gb == b[i].subtasks[j].volume_gb);
        }
    }
    auto c = generate_workload(grid, 600.0, 1.0 / 60.0, p, 43);
    CHECK(a.size() != c.size());  // different seed, different realization
}

TEST_CASE("workload structural invariants") {
    auto grid = build_zone_grid(4, 2);
    DistParams p;
    auto tasks = generate_workload(grid, 1200.0, 1.0 / 30.0, p, 7);
    REQUIRE(!tasks.empty());
    double prev = 0;
    for (const auto& t : tasks) {
        CHECK(t.arrival_s >= prev);
        prev = t.arrival_s;
        REQUIRE(!t.subtasks.empty());
        for (const auto& st : t.subtasks) {
            CHECK(st.compute_gflo > 0);
            CHECK(st.volume_gb > 0);
            CHECK(st.memory_gb > 0);
            CHECK((st.deadline_s == p.deadline1_s || st.deadline_s == p.deadline2_s));
            CHECK(st.created_at_s == t.arrival_s);
            CHECK(st.source_vn == t.source_vn);
            CHECK(st.dest_lon_rad >= -kPi);
            CHECK(st.dest_lon_rad < kPi);
            CHECK(std::abs(st.dest_lat_rad) <= kPi / 2);
            // All subtasks of one task share the destination.
            CHECK(st.dest_lon_rad == t.subtasks.front().dest_lon_rad);
        }
    }
    CHECK_THROWS_AS(generate_workload(grid, 0.0, 1.0, p, 1), std::domain_error);
    CHECK_THROWS_AS(generate_workload(grid, 1.0, 0.0, p, 1), std::domain_error);
}

TEST_CASE("Poisson arrival count: empirical mean in [55, 65]") {
    auto grid = build_zone_grid(1, 1);
    DistParams p;
    double total = 0;
    for (std::uint64_t seed = 0; seed < 200; ++seed)
        total += static_cast<double>(
            generate_workload(grid, 3600.0, 1.0 / 60.0, p, seed).size());
    double mean = total / 200.0;
    CHECK(mean > 55.0);
    CHECK(mean < 65.0);
}

TEST_CASE("degenerate distribution: sigma = 0 gives the mean exactly") {
    auto grid = build_zone_grid(2, 1);
    DistParams p;
    p.std_volume_gb = 0;
    p.std_compute_gflo = 0;
    auto tasks = generate_workload(grid, 2000.0, 1.0 / 60.0, p, 5);
    REQUIRE(!tasks.empty());
    for (const auto& t : tasks)
        for (const auto& st : t.subtasks) {
            CHECK_THAT(st.volume_gb, Catch::Matchers::WithinRel(0.1, 1e-12));
            CHECK_THAT(st.compute_gflo,
                       Catch::Matchers::WithinRel(p.mean_compute_gflo, 1e-12));
        }
}

TEST_CASE("moment matching: sample means within 3 standard errors") {
    detail::LogNormal c(50.0, 2.0), v(0.1, 0.02);
    std::mt19937_64 rng(123);
    const int n = 100'000;
    double sc = 0, sv = 0;
    for (int i = 0; i < n; ++i) {
        sc += c.sample(rng);
        sv += v.sample(rng);
    }
    CHECK_THAT(sc / n, Catch::Matchers::WithinAbs(50.0, 3.0 * 2.0 / std::sqrt(n)));
    CHECK_THAT(sv / n, Catch::Matchers::WithinAbs(0.1, 3.0 * 0.02 / std::sqrt(n)));
}

TEST_CASE("per-VN arrival streams are uncorrelated") {
    // Counts in disjoint 100 s windows for two VNs of the same workload.
    auto grid = build_zone_grid(2, 1);
    DistParams p;
    const int windows = 400;
    const double win = 100.0;
    std::vector<double> c0(windows, 0), c1(windows, 0);
    auto tasks = generate_workload(grid, windows * win, 1.0 / 60.0, p, 31);
    for (const auto& t : tasks) {
        int w = static_cast<int>(t.arrival_s / win);
        if (w >= windows) continue;
        (t.source_vn == 0 ? c0 : c1)[w] += 1;
    }
    double m0 = 0, m1 = 0;
    for (int i = 0; i < windows; ++i) {
        m0 += c0[i];
        m1 += c1[i];
    }
    m0 /= windows;
    m1 /= windows;
    double num = 0, d0 = 0, d1 = 0;
    for (int i = 0; i < windows; ++i) {
        num += (c0[i] - m0) * (c1[i] - m1);
        d0 += (c0[i] - m0) * (c0[i] - m0);
        d1 += (c1[i] - m1) * (c1[i] - m1);
    }
    double r = num / std::sqrt(d0 * d1);
    CHECK(std::abs(r) < 0.1);
}

TEST_CASE("destination_vn containment and boundary rule") {
    auto grid = build_zone_grid(36, 18);
    Subtask st;
    st.dest_lon_rad = 0.0;
    st.dest_lat_rad = 0.0;
    int vn = destination_vn(st, grid);
    auto [lon0, lat0] = grid.zone_min(vn);
    // Boundary point belongs to the zone it opens.
    CHECK_THAT(lon0, Catch::Matchers::WithinAbs(0.0, 1e-12));
    CHECK_THAT(lat0, Catch::Matchers::WithinAbs(0.0, 1e-12));
    st.dest_lat_rad = kPi / 2;  // north pole clamps into the top row
    CHECK(grid.row_of(destination_vn(st, grid)) == 17);
}

TEST_CASE("workload CSV round trip") {
    auto grid = build_zone_grid(3, 2);
    DistParams p;
    auto tasks = generate_workload(grid, 900.0, 1.0 / 45.0, p, 9);
    REQUIRE(!tasks.empty());
    std::stringstream ss;
    write_workload_csv(ss, tasks);
    auto back = read_workload_csv(ss);
    REQUIRE(back.size() == tasks.size());
    for (std::size_t i = 0; i < tasks.size(); ++i) {
        CHECK(back[i].arrival_s == tasks[i].arrival_s);
        CHECK(back[i].source_vn == tasks[i].source_vn);
        REQUIRE(back[i].subtasks.size() == tasks[i].subtasks.size());
        for (std::size_t j = 0; j < tasks[i].subtasks.size(); ++j) {
            const auto &a = tasks[i].subtasks[j], &b = back[i].subtasks[j];
            CHECK(a.compute_gflo == b.compute_gflo);
            CHECK(a.volume_gb == b.volume_gb);
            CHECK(a.memory_gb == b.memory_gb);
            CHECK(a.deadline_s == b.deadline_s);
            CHECK(a.dest_lon_rad == b.dest_lon_rad);
            CHECK(a.dest_lat_rad == b.dest_lat_rad);
        }
    }
    std::stringstream empty;
    CHECK_THROWS_AS(read_workload_csv(empty), std::runtime_error);
}
