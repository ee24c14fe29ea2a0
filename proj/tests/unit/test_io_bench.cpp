#include <doctest.h>

#include <cmath>
#include <sstream>

#include <json.hpp>

#include "nlwt/bench.hpp"
#include "nlwt/metrics.hpp"

using namespace nlwt;

namespace {

// a plan small enough for unit-test turnaround
BenchmarkPlan tiny_plan(std::uint32_t realizations = 5) {
    BenchmarkPlan plan;
    Signal ecg = synth_ecg(3, 360.0, 60.0, 2, 0.0);
    RecordFile record = record_from_signal(ecg, "ecg");
    record.source_path = "synth_small";
    plan.records.push_back(std::move(record));
    plan.realizations = realizations;
    plan.nlwt_params.M = 200;
    plan.nlm_params.patch_half_width = 5;
    plan.nlm_params.search_half_width = 200;
    return plan;
}

} // namespace

TEST_CASE("read_csv parses the documented format") {
    std::istringstream in("# fs=360\nMLII\n0.1\n0.2\n");
    const RecordFile r = read_csv(in, "mem");
    CHECK(r.channel_count() == 1);
    CHECK(r.length() == 2);
    CHECK(r.sample_rate_hz == 360.0);
    CHECK(r.channel_names[0] == "MLII");
    CHECK(r.channels[0][0] == 0.1);
    CHECK(r.channels[0][1] == 0.2);
}

TEST_CASE("read_csv drops a leading time column") {
    std::istringstream in("# fs=250\ntime,V5,V6\n0.0,1.0,2.0\n0.004,3.0,4.0\n");
    const RecordFile r = read_csv(in, "mem");
    CHECK(r.channel_count() == 2);
    CHECK(r.channel_names == std::vector<std::string>{"V5", "V6"});
    CHECK(r.channels[0] == std::vector<double>{1.0, 3.0});
    CHECK(r.channels[1] == std::vector<double>{2.0, 4.0});
}

TEST_CASE("read_csv reports ragged rows with their line number") {
    std::istringstream in("# fs=360\na,b\n1.0,2.0\n3.0\n");
    try {
        read_csv(in, "mem");
        FAIL("expected RaggedRows");
    } catch (const RaggedRows& e) {
        CHECK(e.line == 4);
    }
}

TEST_CASE("read_csv needs a sample rate unless overridden") {
    std::istringstream in("ch\n1.0\n");
    CHECK_THROWS_AS(read_csv(in, "mem"), MissingSampleRate);
    std::istringstream again("ch\n1.0\n");
    const RecordFile r = read_csv(again, "mem", 500.0);
    CHECK(r.sample_rate_hz == 500.0);
}

TEST_CASE("read_csv flags bad numbers with line and column") {
    std::istringstream in("# fs=360\na,b\n1.0,oops\n");
    try {
        read_csv(in, "mem");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.line == 3);
        CHECK(e.column == 2);
    }
}

TEST_CASE("csv round-trip preserves 12 significant digits") {
    RecordFile r;
    r.sample_rate_hz = 360.0;
    r.channel_names = {"x", "y"};
    r.channels = {{0.123456789012345, -1.0e-7, 3.0},
                  {9.87654321098765e4, 0.5, -2.25}};
    std::ostringstream out;
    write_csv(r, out);
    std::istringstream in(out.str());
    const RecordFile back = read_csv(in, "mem");
    REQUIRE(back.channel_count() == 2);
    for (std::size_t c = 0; c < 2; ++c)
        for (std::size_t i = 0; i < 3; ++i)
            CHECK(back.channels[c][i] ==
                  doctest::Approx(r.channels[c][i]).epsilon(1e-11));
}

TEST_CASE("derive_seed separates realizations and nothing else") {
    const std::uint64_t a = derive_seed(1, "rec", "ch", 10.0, 0);
    CHECK(a == derive_seed(1, "rec", "ch", 10.0, 0));
    CHECK(a != derive_seed(1, "rec", "ch", 10.0, 1));
    CHECK(a != derive_seed(1, "rec", "ch", 15.0, 0));
    CHECK(a != derive_seed(1, "rec", "other", 10.0, 0));
    CHECK(a != derive_seed(2, "rec", "ch", 10.0, 0));
}

TEST_CASE("run_benchmark emits the expected cardinality") {
    const BenchmarkPlan plan = tiny_plan();
    const std::vector<DenoiseReport> rows = run_benchmark(plan);
    std::size_t runs = 0, averages = 0;
    for (const DenoiseReport& r : rows)
        (r.kind == DenoiseReport::Kind::run ? runs : averages) += 1;
    CHECK(runs == 40);     // 1 record * 1 channel * 4 snrs * 5 realizations * 2 methods
    CHECK(averages == 8);  // per (method, snr)
}

TEST_CASE("benchmark reports are byte-identical across runs and worker counts") {
    BenchmarkPlan plan = tiny_plan(2);
    plan.snr_db = {10.0, 20.0};
    std::ostringstream a, b;
    write_report(run_benchmark(plan), ReportFormat::json, a);
    plan.workers = 4;
    write_report(run_benchmark(plan), ReportFormat::json, b);
    CHECK(a.str() == b.str());
}

TEST_CASE("average rows are the arithmetic mean of their runs") {
    BenchmarkPlan plan = tiny_plan(5);
    plan.snr_db = {10.0};
    plan.methods = {Method::nlwt};
    const std::vector<DenoiseReport> rows = run_benchmark(plan);

    double imp_sum = 0.0, mse_sum = 0.0;
    std::size_t n = 0;
    const DenoiseReport* avg = nullptr;
    for (const DenoiseReport& r : rows) {
        if (r.kind == DenoiseReport::Kind::run) {
            imp_sum += *r.snr_imp_db;
            mse_sum += r.mse;
            ++n;
        } else {
            avg = &r;
        }
    }
    REQUIRE(avg != nullptr);
    REQUIRE(n == 5);
    CHECK(avg->n == 5);
    CHECK(*avg->snr_imp_db == doctest::Approx(imp_sum / 5.0).epsilon(1e-12));
    CHECK(avg->mse == doctest::Approx(mse_sum / 5.0).epsilon(1e-12));
}

TEST_CASE("per-lead averaging equals the mean over channel rows") {
    BenchmarkPlan plan = tiny_plan(2);
    plan.snr_db = {15.0};
    plan.methods = {Method::nlwt};
    // second synthetic lead with different morphology scale
    Signal lead2 = plan.records[0].channel(0);
    for (double& x : lead2.samples) x = 0.7 * x + 0.1;
    plan.records[0].channel_names.push_back("lead2");
    plan.records[0].channels.push_back(lead2.samples);

    const std::vector<DenoiseReport> rows = run_benchmark(plan);
    double imp_sum = 0.0;
    std::size_t n = 0;
    const DenoiseReport* avg = nullptr;
    for (const DenoiseReport& r : rows) {
        if (r.kind == DenoiseReport::Kind::run) {
            imp_sum += *r.snr_imp_db;
            ++n;
        } else {
            avg = &r;
        }
    }
    REQUIRE(n == 4); // 2 leads * 2 realizations
    REQUIRE(avg != nullptr);
    CHECK(*avg->snr_imp_db == doctest::Approx(imp_sum / 4.0).epsilon(1e-12));
}

TEST_CASE("estimate_noise runs on the estimated sigma and records the path") {
    BenchmarkPlan plan = tiny_plan(1);
    plan.snr_db = {10.0};
    plan.estimate_noise = true;
    const std::vector<DenoiseReport> rows = run_benchmark(plan);
    for (const DenoiseReport& r : rows) {
        CHECK(r.sigma_source == "estimated");
        if (r.kind == DenoiseReport::Kind::run && r.method == Method::nlm)
            CHECK(r.nlm_params.mu > 0.0);
    }
}

TEST_CASE("harness does not mutate input records") {
    BenchmarkPlan plan = tiny_plan(1);
    plan.snr_db = {10.0};
    const std::vector<double> before = plan.records[0].channels[0];
    run_benchmark(plan);
    CHECK(plan.records[0].channels[0] == before);
}

TEST_CASE("write_report json round-trips values and embeds parameters") {
    BenchmarkPlan plan = tiny_plan(1);
    plan.snr_db = {10.0};
    const std::vector<DenoiseReport> rows = run_benchmark(plan);
    std::ostringstream out;
    write_report(rows, ReportFormat::json, out);

    const nlohmann::json arr = nlohmann::json::parse(out.str());
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == rows.size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const nlohmann::json& j = arr[i];
        CHECK(j.at("schema_version") == 1);
        CHECK(j.at("mse").get<double>() == rows[i].mse);
        CHECK(j.at("prd_percent").get<double>() == rows[i].prd_percent);
        if (rows[i].snr_imp_db)
            CHECK(j.at("snr_imp_db").get<double>() == *rows[i].snr_imp_db);

        // PRD is recomputable from MSE and the stored clean power
        const double prd_back = 100.0 * std::sqrt(j.at("mse").get<double>() /
                                                  j.at("clean_power").get<double>());
        CHECK(prd_back == doctest::Approx(j.at("prd_percent").get<double>()).epsilon(1e-9));

        CHECK(j.at("params").contains("sigma_source"));
        if (j.at("method") == "nlwt") CHECK(j.at("params").at("c").get<double>() == 3.8);
    }
}

TEST_CASE("write_report emits a header-only csv and an empty json array") {
    std::ostringstream csv, json;
    write_report({}, ReportFormat::csv, csv);
    write_report({}, ReportFormat::json, json);
    CHECK(csv.str() ==
          "# schema_version=1\n"
          "kind,record,channel,method,snr_in_db,realization,seed,snr_imp_db,perfect,"
          "mse,prd_percent,clean_power,runtime_ms,n,sigma_source,params\n");
    CHECK(nlohmann::json::parse(json.str()).empty());
}

TEST_CASE("plan validation") {
    BenchmarkPlan plan;
    CHECK_THROWS_AS(plan.validate(), InvalidParameter); // no records
    plan = tiny_plan();
    plan.realizations = 0;
    CHECK_THROWS_AS(plan.validate(), InvalidParameter);
    plan = tiny_plan();
    plan.snr_db.clear();
    CHECK_THROWS_AS(plan.validate(), InvalidParameter);
}
