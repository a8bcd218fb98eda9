#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "doctest.h"

#include "degradex/errors.hpp"
#include "degradex/genome.hpp"
#include "degradex/ngram.hpp"
#include "degradex/rng.hpp"
#include "degradex/trajectory.hpp"
#include "support/synthetic.hpp"

using namespace degradex;

TEST_CASE("measure labels round-trip through the parser") {
    const Measure cases[] = {
        {MeasureKind::TripletEntropy, 3},   {MeasureKind::TripletEntropy, 5},
        {MeasureKind::EntropyDelta, 3},     {MeasureKind::EntropyDelta, 2},
        {MeasureKind::HellingerToParent, 2}, {MeasureKind::HellingerToParent, 4},
        {MeasureKind::HammingOrigin, 0},    {MeasureKind::LevenshteinOrigin, 0},
    };
    for (const Measure& m : cases) {
        const Measure back = measure_from_string(measure_label(m));
        CHECK(back.kind == m.kind);
        if (m.kind != MeasureKind::HammingOrigin && m.kind != MeasureKind::LevenshteinOrigin) {
            CHECK(back.n == m.n);
        }
    }
    CHECK(measure_label({MeasureKind::TripletEntropy, 3}) == "triplet_entropy");
    CHECK(measure_label({MeasureKind::TripletEntropy, 5}) == "entropy_5");
    CHECK(measure_label({MeasureKind::EntropyDelta, 3}) == "entropy_delta");
    CHECK(measure_label({MeasureKind::HellingerToParent, 2}) == "hellinger_to_parent_2");
    CHECK(measure_label({MeasureKind::HammingOrigin, 0}) == "hamming_origin");
    CHECK(measure_label({MeasureKind::LevenshteinOrigin, 0}) == "levenshtein_origin");
}

TEST_CASE("measure parser accepts short aliases") {
    CHECK(measure_from_string("entropy").kind == MeasureKind::TripletEntropy);
    CHECK(measure_from_string("entropy").n == 3);
    CHECK(measure_from_string("hellinger_4").kind == MeasureKind::HellingerToParent);
    CHECK(measure_from_string("hellinger_4").n == 4);
    CHECK(measure_from_string("hamming").kind == MeasureKind::HammingOrigin);
    CHECK(measure_from_string("levenshtein").kind == MeasureKind::LevenshteinOrigin);
    CHECK_THROWS_AS(measure_from_string("edit"), ConfigError);
    CHECK_THROWS_AS(measure_from_string("entropy_0"), ConfigError);
    CHECK_THROWS_AS(measure_from_string("entropy_x"), ConfigError);
}

TEST_CASE("origin names round-trip") {
    for (const OriginKind o : {OriginKind::Parent, OriginKind::Start, OriginKind::Reference}) {
        CHECK(origin_from_string(std::string(to_string(o))) == o);
    }
    CHECK_THROWS_AS(origin_from_string("self"), ConfigError);
}

namespace {

Genome make_genome(const std::string& id, std::uint64_t seed, std::size_t len) {
    Rng rng(seed);
    return Genome{id, "", synthetic::uniform_sequence(rng, len)};
}

}  // namespace

TEST_CASE("trajectory spec validation") {
    const Genome g = make_genome("v1", 501, 400);
    MutationConfig cfg;
    TrajectorySpec spec;
    spec.checkpoints = {0, 50};

    SUBCASE("no measures") {
        spec.measures.clear();
        CHECK_THROWS_AS(run_trajectory(g, cfg, spec), ConfigError);
    }
    SUBCASE("no checkpoints") {
        spec.checkpoints.clear();
        CHECK_THROWS_AS(run_trajectory(g, cfg, spec), ConfigError);
    }
    SUBCASE("checkpoints must start at zero") {
        spec.checkpoints = {50, 100};
        CHECK_THROWS_AS(run_trajectory(g, cfg, spec), ConfigError);
    }
    SUBCASE("hamming forbidden once lengths can drift") {
        spec.measures = {{MeasureKind::HammingOrigin, 0}};
        cfg.p_ins = 1e-4;
        CHECK_THROWS_AS(run_trajectory(g, cfg, spec), HammingWithIndels);
    }
    SUBCASE("hamming allowed under inversions") {
        spec.measures = {{MeasureKind::HammingOrigin, 0}};
        cfg.p_inv = 0.5;
        CHECK_NOTHROW(run_trajectory(g, cfg, spec));
    }
    SUBCASE("reference origin needs a reference") {
        spec.origin = OriginKind::Reference;
        CHECK_THROWS_AS(run_trajectory(g, cfg, spec), ConfigError);
    }
    SUBCASE("word order bounds") {
        spec.measures = {{MeasureKind::TripletEntropy, 0}};
        CHECK_THROWS_AS(run_trajectory(g, cfg, spec), ConfigError);
        spec.measures = {{MeasureKind::TripletEntropy, 9}};
        CHECK_THROWS_AS(run_trajectory(g, cfg, spec), ConfigError);
    }
}

TEST_CASE("checkpoint zero reports the undisturbed input") {
    const Genome g = make_genome("t0", 503, 2000);
    MutationConfig cfg;
    cfg.p_snp = 0.01;
    cfg.seed = 9;
    TrajectorySpec spec;
    spec.checkpoints = {0, 100, 200};
    spec.measures = {{MeasureKind::TripletEntropy, 3},
                     {MeasureKind::EntropyDelta, 3},
                     {MeasureKind::HellingerToParent, 3},
                     {MeasureKind::HammingOrigin, 0},
                     {MeasureKind::LevenshteinOrigin, 0}};
    const Trajectory tr = run_trajectory(g, cfg, spec);
    REQUIRE(tr.values.size() == 5);
    for (const auto& row : tr.values) REQUIRE(row.size() == 3);
    CHECK(tr.genome_id == "t0");
    CHECK(tr.checkpoints == spec.checkpoints);

    const double h0 = entropy(ngram_distribution(g.bases, 3));
    CHECK(tr.values[0][0] == doctest::Approx(h0).epsilon(1e-12));
    CHECK(tr.values[1][0] == 0.0);
    CHECK(tr.values[2][0] == 0.0);
    CHECK(tr.values[3][0] == 0.0);
    CHECK(tr.values[4][0] == 0.0);

    // 100 iterations at 1% per base leave visible damage
    CHECK(tr.values[3][1] > 0.0);
    CHECK(tr.values[4][1] > 0.0);
    CHECK(tr.values[2][1] > 0.0);
}

TEST_CASE("reference origin subtracts the initial distance") {
    const Genome g = make_genome("ga", 505, 1500);
    const Genome ref = make_genome("ref", 506, 1500);
    TrajectorySpec spec;
    spec.checkpoints = {0, 50, 100};
    spec.measures = {{MeasureKind::HammingOrigin, 0}, {MeasureKind::LevenshteinOrigin, 0}};
    spec.origin = OriginKind::Reference;

    SUBCASE("zero rates pin every checkpoint at zero") {
        MutationConfig cfg;
        cfg.p_snp = 0.0;
        cfg.seed = 3;
        const Trajectory tr = run_trajectory(g, cfg, spec, &ref);
        for (const auto& row : tr.values) {
            for (const double v : row) CHECK(v == 0.0);
        }
    }
    SUBCASE("active rates still zero the first checkpoint") {
        MutationConfig cfg;
        cfg.p_snp = 0.01;
        cfg.seed = 3;
        const Trajectory tr = run_trajectory(g, cfg, spec, &ref);
        CHECK(tr.values[0][0] == 0.0);
        CHECK(tr.values[1][0] == 0.0);
        CHECK(tr.values[0][2] != 0.0);
    }
}

TEST_CASE("start origin matches parent origin on the same run") {
    const Genome g = make_genome("gs", 507, 800);
    MutationConfig cfg;
    cfg.p_snp = 0.02;
    cfg.seed = 12;
    TrajectorySpec spec;
    spec.checkpoints = {0, 40, 80};
    spec.measures = {{MeasureKind::LevenshteinOrigin, 0}};
    spec.origin = OriginKind::Parent;
    const Trajectory a = run_trajectory(g, cfg, spec);
    spec.origin = OriginKind::Start;
    const Trajectory b = run_trajectory(g, cfg, spec);
    CHECK(a.values == b.values);
}

TEST_CASE("quadratic fit recovers planted coefficients") {
    // checkpoint-scale abscissa, entropy-scale ordinate
    const double c0 = 5.52, c1 = 3.1e-4, c2 = -7.7e-8;
    std::vector<double> ts, ys;
    for (int t = 0; t <= 2000; t += 100) {
        ts.push_back(t);
        ys.push_back(c0 + c1 * t + c2 * t * t);
    }
    const QuadraticFit fit = quadratic_fit(ts, ys);
    CHECK(fit.c0 == doctest::Approx(c0).epsilon(1e-9));
    CHECK(fit.c1 == doctest::Approx(c1).epsilon(1e-9));
    CHECK(fit.c2 == doctest::Approx(c2).epsilon(1e-9));
    CHECK(fit.r2 == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(evaluate_fit(fit, 500.0) == doctest::Approx(c0 + c1 * 500 + c2 * 250000));
}

TEST_CASE("quadratic fit residuals are orthogonal to the design") {
    Rng rng(509);
    std::vector<double> ts, ys;
    for (int t = 0; t <= 2000; t += 100) {
        ts.push_back(t);
        ys.push_back(5.0 + 2e-4 * t - 5e-8 * t * t + 0.01 * (rng.uniform() - 0.5));
    }
    const QuadraticFit fit = quadratic_fit(ts, ys);
    double s0 = 0, s1 = 0, s2 = 0, scale = 0;
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double u = ts[i] / 2000.0;  // fit's internal coordinates
        const double r = ys[i] - evaluate_fit(fit, ts[i]);
        s0 += r;
        s1 += r * u;
        s2 += r * u * u;
        scale += std::fabs(ys[i]);
    }
    CHECK(std::fabs(s0) / scale < 1e-8);
    CHECK(std::fabs(s1) / scale < 1e-8);
    CHECK(std::fabs(s2) / scale < 1e-8);
    CHECK(fit.r2 >= 0.0);
    CHECK(fit.r2 <= 1.0);
}

TEST_CASE("quadratic fit on flat data") {
    const std::vector<double> ts{0, 1, 2, 3};
    const std::vector<double> ys{4.25, 4.25, 4.25, 4.25};
    const QuadraticFit fit = quadratic_fit(ts, ys);
    CHECK(fit.c0 == doctest::Approx(4.25).epsilon(1e-12));
    CHECK(fit.c1 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.c2 == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(fit.r2 == 1.0);
}

TEST_CASE("quadratic fit degenerate designs") {
    CHECK_THROWS_AS(quadratic_fit({0, 1}, {1, 2}), DegenerateDesign);
    CHECK_THROWS_AS(quadratic_fit({0, 1, 1, 0}, {1, 2, 2, 1}), DegenerateDesign);
    CHECK_THROWS_AS(quadratic_fit({0, 1, 2}, {1, 2}), DegenerateDesign);
}

TEST_CASE("batch run appends the fit target when absent") {
    const std::vector<Genome> corpus{make_genome("b1", 511, 600), make_genome("b2", 512, 600)};
    MutationConfig cfg;
    cfg.p_snp = 0.005;
    cfg.seed = 77;
    TrajectorySpec spec;
    spec.checkpoints = {0, 50, 100, 150};
    spec.measures = {{MeasureKind::HellingerToParent, 3}};

    const BatchResult r = batch_run(corpus, cfg, spec, FitTarget::Entropy);
    REQUIRE(r.measures.size() == 2);
    CHECK(r.fit_measure == 1);
    CHECK(r.measures[1].kind == MeasureKind::TripletEntropy);
    CHECK(r.measures[1].n == 3);
    REQUIRE(r.trajectories.size() == 2);
    CHECK(r.trajectories[0].values.size() == 2);
    CHECK(r.ok == std::vector<bool>{true, true});
    CHECK(r.errors.empty());
    CHECK(r.min_r2 <= 1.0);
    CHECK(r.pct1_r2 >= r.min_r2);

    // already-present target keeps its slot
    spec.measures = {{MeasureKind::TripletEntropy, 3}, {MeasureKind::HellingerToParent, 3}};
    const BatchResult r2 = batch_run(corpus, cfg, spec, FitTarget::Entropy);
    CHECK(r2.measures.size() == 2);
    CHECK(r2.fit_measure == 0);

    spec.measures = {{MeasureKind::TripletEntropy, 3}};
    const BatchResult r3 = batch_run(corpus, cfg, spec, FitTarget::EntropyDelta);
    CHECK(r3.measures.size() == 2);
    CHECK(r3.fit_measure == 1);
    CHECK(r3.measures[1].kind == MeasureKind::EntropyDelta);
}

TEST_CASE("batch seeding is independent of corpus order") {
    std::vector<Genome> corpus{make_genome("o1", 513, 500), make_genome("o2", 514, 500),
                               make_genome("o3", 515, 500)};
    MutationConfig cfg;
    cfg.p_snp = 0.01;
    cfg.seed = 1234;
    TrajectorySpec spec;
    spec.checkpoints = {0, 30, 60};

    const BatchResult fwd = batch_run(corpus, cfg, spec);
    std::reverse(corpus.begin(), corpus.end());
    const BatchResult rev = batch_run(corpus, cfg, spec);

    for (std::size_t i = 0; i < 3; ++i) {
        const std::size_t j = 2 - i;
        REQUIRE(fwd.trajectories[i].genome_id == rev.trajectories[j].genome_id);
        CHECK(fwd.trajectories[i].seed == rev.trajectories[j].seed);
        CHECK(fwd.trajectories[i].values == rev.trajectories[j].values);
        CHECK(fwd.fits[i].c0 == rev.fits[j].c0);
    }
    CHECK(fwd.trajectories[0].seed == derive_seed(1234, "o1"));
}

TEST_CASE("batch run isolates per-genome failures") {
    // hamming against a fixed-length reference fails only for the
    // genome whose length differs
    std::vector<Genome> corpus{make_genome("f1", 516, 400), make_genome("f2", 517, 399),
                               make_genome("f3", 518, 400)};
    const Genome ref = make_genome("fref", 519, 400);
    MutationConfig cfg;
    cfg.p_snp = 0.01;
    cfg.seed = 5;
    TrajectorySpec spec;
    spec.checkpoints = {0, 20, 40};
    spec.measures = {{MeasureKind::HammingOrigin, 0}};
    spec.origin = OriginKind::Reference;
    spec.reference_id = "fref";

    const BatchResult r = batch_run(corpus, cfg, spec, FitTarget::Entropy, 1, &ref);
    CHECK(r.ok == std::vector<bool>{true, false, true});
    REQUIRE(r.errors.size() == 1);
    CHECK(r.errors[0].genome_id == "f2");
    CHECK_FALSE(r.errors[0].message.empty());
}

TEST_CASE("batch run refuses an empty corpus") {
    MutationConfig cfg;
    TrajectorySpec spec;
    CHECK_THROWS_AS(batch_run({}, cfg, spec), CorpusEmpty);
}

TEST_CASE("threaded batch matches the serial batch") {
    const std::vector<Genome> corpus = synthetic::markov2_corpus(521, 6, 400, 0.3, 1, "th");
    MutationConfig cfg;
    cfg.p_snp = 0.01;
    cfg.seed = 88;
    TrajectorySpec spec;
    spec.checkpoints = {0, 25, 50};
    const BatchResult serial = batch_run(corpus, cfg, spec, FitTarget::Entropy, 1);
    const BatchResult threaded = batch_run(corpus, cfg, spec, FitTarget::Entropy, 4);
    for (std::size_t i = 0; i < corpus.size(); ++i) {
        CHECK(serial.trajectories[i].values == threaded.trajectories[i].values);
    }
    CHECK(serial.min_r2 == threaded.min_r2);
}
